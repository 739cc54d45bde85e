"""BERTScore-style scoring over a transformer encoder.

Both texts are embedded with the configured model, token embeddings from the
configured hidden layer are L2-normalized, and greedy maximum cosine matching
yields precision (over the compressed tokens), recall (over the original
tokens), and their harmonic mean. Special tokens are excluded from matching.
Inference runs on CPU in eval mode with a single thread, so results are
deterministic for a fixed model and input.
"""

from __future__ import annotations

from dataclasses import dataclass

import torch
from transformers import AutoModel, AutoTokenizer

#: Default encoder; any Hugging Face model id or local path works.
DEFAULT_MODEL = "microsoft/deberta-v3-xlarge-mnli"

MAX_TOKENS = 510


@dataclass(frozen=True)
class ScoreResult:
    precision: float
    recall: float
    f1: float


class EmptyTextError(ValueError):
    """A text produced no scoreable tokens."""


def _clamp(value: float) -> float:
    return min(1.0, max(0.0, value))


class BertScorer:
    """Loads the encoder once and scores sentence pairs under a lock-free API.

    Callers that need bounded concurrency wrap :meth:`score` themselves; the
    method itself is a pure function of its inputs once the model is loaded.
    """

    def __init__(self, model_id: str = DEFAULT_MODEL, layer: int | None = None) -> None:
        torch.set_num_threads(1)
        self.model_id = model_id
        self.tokenizer = AutoTokenizer.from_pretrained(model_id)
        self.model = AutoModel.from_pretrained(model_id)
        self.model.eval()
        num_layers = self.model.config.num_hidden_layers
        self.layer = num_layers if layer is None else layer
        if not 0 <= self.layer <= num_layers:
            raise ValueError(
                f"layer {self.layer} out of range for a {num_layers}-layer model"
            )
        # Truncation must respect the encoder's positional capacity (minus the
        # two special tokens), not just the generic ceiling.
        positions = getattr(self.model.config, "max_position_embeddings", None)
        self.max_tokens = MAX_TOKENS if positions is None else max(
            1, min(MAX_TOKENS, positions - 2)
        )

    def _embed(self, text: str) -> torch.Tensor:
        encoded = self.tokenizer(
            text, return_tensors="pt", truncation=True, max_length=self.max_tokens
        )
        with torch.no_grad():
            output = self.model(**encoded, output_hidden_states=True)
        hidden = output.hidden_states[self.layer][0]
        token_ids = encoded["input_ids"][0]
        special_ids = set(self.tokenizer.all_special_ids)
        keep = torch.tensor(
            [token_id.item() not in special_ids for token_id in token_ids]
        )
        hidden = hidden[keep]
        if hidden.shape[0] == 0:
            raise EmptyTextError(f"no scoreable tokens in {text!r}")
        return hidden / hidden.norm(dim=-1, keepdim=True).clamp(min=1e-12)

    def score(
        self, original: str, compressed: str, *, rescale: bool = False,
        baseline: float = 0.0,
    ) -> ScoreResult:
        """Greedy-matching similarity of *compressed* against *original*.

        With ``rescale`` the raw values are mapped through
        ``(x - baseline) / (1 - baseline)``; all outputs are clamped to [0, 1]
        at this boundary.
        """
        reference = self._embed(original)
        candidate = self._embed(compressed)
        similarity = candidate @ reference.T
        precision = similarity.max(dim=1).values.mean().item()
        recall = similarity.max(dim=0).values.mean().item()
        if rescale and baseline < 1.0:
            precision = (precision - baseline) / (1.0 - baseline)
            recall = (recall - baseline) / (1.0 - baseline)
        precision = _clamp(precision)
        recall = _clamp(recall)
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        return ScoreResult(precision=precision, recall=recall, f1=_clamp(f1))
