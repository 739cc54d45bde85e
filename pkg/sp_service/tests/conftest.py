"""Shared fixtures: a tiny deterministic encoder so tests run offline.

The real service defaults to a large NLI encoder; CI budgets cannot load it,
so these tests build a ~25k-parameter randomly initialized BERT once (fixed
seed) and persist it under ``fixtures/generated``. Identity scores, response
contracts, and determinism hold for any encoder, this one included.
"""

from pathlib import Path

import pytest
import torch
from transformers import BertConfig, BertModel, BertTokenizer

FIXTURES = Path(__file__).parent / "fixtures"
GENERATED = FIXTURES / "generated"

_SPECIALS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]
_WORDS = ["move", "go", "to", "grid", "cell", "target", "area", "the", "and",
          "rescue", "units", "compressed", "instruction", "18", "23"]
_CHARS = list("abcdefghijklmnopqrstuvwxyz0123456789")


def build_tiny_model(path: Path) -> None:
    path.mkdir(parents=True, exist_ok=True)
    vocab = _SPECIALS + _WORDS + _CHARS + ["##" + c for c in _CHARS]
    (path / "vocab.txt").write_text("\n".join(vocab) + "\n", encoding="utf-8")
    tokenizer = BertTokenizer(str(path / "vocab.txt"), do_lower_case=True)
    tokenizer.save_pretrained(path)
    torch.manual_seed(0)
    config = BertConfig(
        vocab_size=len(vocab), hidden_size=32, num_hidden_layers=2,
        num_attention_heads=2, intermediate_size=64, max_position_embeddings=128,
    )
    BertModel(config).save_pretrained(path)


@pytest.fixture(scope="session")
def tiny_model_path() -> str:
    path = GENERATED / "tiny-model"
    if not (path / "vocab.txt").exists():
        build_tiny_model(path)
    return str(path)


@pytest.fixture(scope="session")
def scorer(tiny_model_path):
    from sp_service.scoring import BertScorer

    return BertScorer(tiny_model_path)


@pytest.fixture(scope="session")
def client(tiny_model_path):
    from fastapi.testclient import TestClient

    from sp_service.app import ModelHolder, create_app

    holder = ModelHolder(model_id=tiny_model_path)
    with TestClient(create_app(holder)) as test_client:
        yield test_client
