"""Tests for the lexical scorer (remote scorer tests live in test_remote_http)."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from swarmcomm.errors import ConfigError
from swarmcomm.scoring import LexicalScorer, parse_scorer

scorer = LexicalScorer()


class TestLexicalScorer:
    def test_identity(self):
        assert scorer.score("go to grid 18 23", "go to grid 18 23") == 1.0

    def test_disjoint(self):
        assert scorer.score("alpha beta", "gamma delta") == 0.0

    def test_half_recall(self):
        # precision 1.0, recall 0.5, F1 = 2/3
        assert scorer.score("a b c d", "a b") == pytest.approx(2 / 3, abs=1e-12)

    def test_empty_versus_empty(self):
        assert scorer.score("", "") == 1.0
        assert scorer.score("!!!", "??") == 1.0  # no tokens on either side

    def test_empty_versus_nonempty(self):
        assert scorer.score("alpha", "") == 0.0
        assert scorer.score("", "alpha") == 0.0

    def test_case_and_order_invariant(self):
        assert scorer.score("Grid 18 Move", "move grid 18") == 1.0

    def test_multiset_counts_matter(self):
        # "a a" vs "a": overlap 1, precision 1, recall 0.5
        assert scorer.score("a a", "a") == pytest.approx(2 / 3, abs=1e-12)


words = st.lists(st.sampled_from("alpha beta gamma delta echo 18 23 go".split()),
                 max_size=12)


@given(words, words)
def test_f1_is_symmetric(a, b):
    left, right = " ".join(a), " ".join(b)
    assert scorer.score(left, right) == pytest.approx(scorer.score(right, left), abs=1e-12)


@given(words)
def test_self_score_is_the_maximum(a):
    text = " ".join(a)
    assert scorer.score(text, text) == 1.0


@given(words, words)
def test_score_stays_in_unit_interval(a, b):
    value = scorer.score(" ".join(a), " ".join(b))
    assert 0.0 <= value <= 1.0


class TestParseScorer:
    def test_selectors(self):
        assert parse_scorer("lexical").name == "lexical"
        assert parse_scorer("none") is None

    def test_remote_requires_url(self):
        with pytest.raises(ConfigError):
            parse_scorer("remote")

    def test_unknown(self):
        with pytest.raises(ConfigError):
            parse_scorer("cosine")
