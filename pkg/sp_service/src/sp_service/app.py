"""HTTP surface: POST /score and GET /health.

The model loads once at startup; /health answers 503 until it is ready and
afterward reports the configured model and layer. Requests are scored one at a
time behind a lock. Malformed request bodies answer 400 (including empty
texts, which have no defined score).
"""

from __future__ import annotations

import os
import threading
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .scoring import DEFAULT_MODEL, BertScorer, EmptyTextError


class ScoreRequest(BaseModel):
    original: str
    compressed: str
    rescale: bool = False


class ScoreResponse(BaseModel):
    precision: float
    recall: float
    f1: float


class ModelHolder:
    """Owns the scorer and serializes inference (one request at a time)."""

    def __init__(self, model_id: str | None = None, layer: int | None = None,
                 rescale_baseline: float = 0.0) -> None:
        self.model_id = model_id or os.environ.get("SP_MODEL", DEFAULT_MODEL)
        env_layer = os.environ.get("SP_LAYER")
        self.layer = layer if layer is not None else (
            int(env_layer) if env_layer is not None else None
        )
        self.rescale_baseline = rescale_baseline
        self.scorer: BertScorer | None = None
        self._lock = threading.Lock()

    @property
    def ready(self) -> bool:
        return self.scorer is not None

    def load(self) -> None:
        if self.scorer is None:
            self.scorer = BertScorer(self.model_id, layer=self.layer)

    def score(self, request: ScoreRequest) -> ScoreResponse:
        assert self.scorer is not None
        with self._lock:
            result = self.scorer.score(
                request.original, request.compressed,
                rescale=request.rescale, baseline=self.rescale_baseline,
            )
        return ScoreResponse(
            precision=result.precision, recall=result.recall, f1=result.f1
        )


def create_app(holder: ModelHolder | None = None, load_on_startup: bool = True) -> FastAPI:
    holder = holder or ModelHolder()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        if load_on_startup:
            holder.load()
        yield

    app = FastAPI(title="sp-service", lifespan=lifespan)
    app.state.holder = holder

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    @app.get("/health")
    async def health():
        if not holder.ready:
            return JSONResponse(status_code=503, content={"status": "loading"})
        scorer = holder.scorer
        return {
            "status": "ok",
            "model": holder.model_id,
            "layer": scorer.layer,
            "idf_weighting": False,
            "rescale_baseline": holder.rescale_baseline,
        }

    @app.post("/score", response_model=ScoreResponse)
    async def score(request: ScoreRequest):
        if not holder.ready:
            return JSONResponse(status_code=503, content={"detail": "model not loaded"})
        if not request.original.strip() or not request.compressed.strip():
            return JSONResponse(
                status_code=400,
                content={"detail": "both texts must contain scoreable content"},
            )
        try:
            return holder.score(request)
        except EmptyTextError as exc:
            return JSONResponse(status_code=400, content={"detail": str(exc)})

    return app
