"""Semantic preservation scorers.

``LexicalScorer`` is the deterministic desk-scale stand-in (unigram token F1);
``RemoteScorer`` bridges to the BERTScore microservice over HTTP. Both return a
value in [0, 1]; out-of-range service responses are rejected, never clamped.
"""

from __future__ import annotations

import re
import threading
from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass

from . import transport
from .errors import ConfigError, ScorerError, TransportError

_TOKEN_RE = re.compile(r"[a-z0-9]+")


class SemanticScorer(ABC):
    """Behavioral contract: similarity of the compressed text to the original."""

    name: str

    @abstractmethod
    def score(self, original: str, compressed: str) -> float:
        """Similarity in [0, 1]; 1.0 is the maximum, reached on identical input."""


def _tokens(text: str) -> Counter[str]:
    return Counter(_TOKEN_RE.findall(text.lower()))


class LexicalScorer(SemanticScorer):
    """Unigram token F1 over lowercased alphanumeric runs."""

    name = "lexical"

    def score(self, original: str, compressed: str) -> float:
        reference = _tokens(original)
        candidate = _tokens(compressed)
        if not reference and not candidate:
            return 1.0
        if not reference or not candidate:
            return 0.0
        overlap = sum((reference & candidate).values())
        if overlap == 0:
            return 0.0
        precision = overlap / sum(candidate.values())
        recall = overlap / sum(reference.values())
        return 2 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class RemoteScorerConfig:
    """Connection settings for the semantic-preservation scoring service."""

    base_url: str
    timeout: float = 30.0
    max_retries: int = 2
    max_in_flight: int = 4
    backoff_base: float = 0.5

    def __post_init__(self) -> None:
        if self.timeout <= 0:
            raise ConfigError("timeout must be positive")
        if self.max_retries < 0:
            raise ConfigError("max_retries must be non-negative")


class RemoteScorer(SemanticScorer):
    """Scores through the ``POST /score`` endpoint of the scoring service."""

    name = "remote"

    def __init__(self, config: RemoteScorerConfig) -> None:
        self.config = config
        self._in_flight = threading.Semaphore(config.max_in_flight)

    def score(self, original: str, compressed: str) -> float:
        url = self.config.base_url.rstrip("/") + "/score"
        with self._in_flight:
            try:
                body = transport.post_json(
                    url,
                    {"original": original, "compressed": compressed},
                    timeout=self.config.timeout,
                    max_retries=self.config.max_retries,
                    backoff_base=self.config.backoff_base,
                )
            except TransportError as exc:
                raise ScorerError(f"scoring service failed: {exc}") from exc
        for field in ("precision", "recall", "f1"):
            value = body.get(field)
            if not isinstance(value, (int, float)) or not 0 <= value <= 1:
                raise ScorerError(
                    f"service response field {field!r} out of [0, 1]: {value!r}"
                )
        return float(body["f1"])


def parse_scorer(spec_text: str, remote: RemoteScorerConfig | None = None) -> SemanticScorer | None:
    """Build a scorer from a CLI selector (``lexical``, ``remote``, or ``none``)."""
    if spec_text == "lexical":
        return LexicalScorer()
    if spec_text == "remote":
        if remote is None:
            raise ConfigError("remote scorer selected but no service URL configured")
        return RemoteScorer(remote)
    if spec_text == "none":
        return None
    raise ConfigError(f"unknown scorer {spec_text!r}")
