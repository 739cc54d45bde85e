"""Semantic-preservation scoring microservice."""

from .app import ModelHolder, create_app
from .scoring import DEFAULT_MODEL, BertScorer, ScoreResult

__all__ = ["BertScorer", "DEFAULT_MODEL", "ModelHolder", "ScoreResult", "create_app"]
