"""Compression engines turning the raw briefing into the transmitted message.

The commander compresses exactly once per run; relays and executors forward the
result verbatim. Besides the remote LLM engine this module ships deterministic
engines used as oracles in tests and ablations: ``identity`` (no compression),
``fixed-ratio`` (exact target byte length), and ``template`` (field extraction
into a compact pipe-delimited line).
"""

from __future__ import annotations

import dataclasses
import logging
import math
import os
import re
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction

from . import transport
from .core import Message
from .errors import ConfigError, EngineError, TransportError

log = logging.getLogger(__name__)

#: Default user-message preamble asking the model to compress the briefing.
DEFAULT_DIRECTIVE = (
    "Compress the following task briefing as far as possible while keeping "
    "everything needed to execute it (target area, speed, roles, positions). "
    "Reply with the compressed instruction only.\n\n"
)


class CompressionEngine(ABC):
    """Behavioral contract: turn a raw message into its transmitted form."""

    name: str

    @abstractmethod
    def compress(self, raw: Message, context: str) -> Message:
        """Compress *raw*; *context* is the system-prompt text for the run."""


class IdentityEngine(CompressionEngine):
    """Forwards the briefing unchanged (compression ratio exactly 1.0)."""

    name = "identity"

    def compress(self, raw: Message, context: str) -> Message:
        return Message(raw.text)


class FixedRatioEngine(CompressionEngine):
    """Deterministic engine whose output is exactly ``ceil(ratio * len)`` bytes.

    The prefix of the raw bytes is truncated at a UTF-8 boundary and padded
    with ``.`` up to the target length, so the output is always valid UTF-8.
    """

    def __init__(self, ratio: float) -> None:
        if not 0 < ratio <= 1:
            raise ConfigError(f"fixed-ratio engine needs 0 < ratio <= 1, got {ratio}")
        self.ratio = ratio
        # Exact rational arithmetic: ceil(0.2 * 35) must be 7, not 8.
        self._fraction = Fraction(str(ratio))
        self.name = f"fixed-ratio:{ratio}"

    def target_bytes(self, raw_len: int) -> int:
        return int(math.ceil(self._fraction * raw_len))

    def compress(self, raw: Message, context: str) -> Message:
        target = self.target_bytes(raw.byte_len)
        prefix = raw.text.encode("utf-8")[:target]
        valid = prefix.decode("utf-8", errors="ignore").encode("utf-8")
        return Message((valid + b"." * (target - len(valid))).decode("utf-8"))


_TARGET_RE = re.compile(r"Target area: \[(-?\d+),(-?\d+)\]x\[(-?\d+),(-?\d+)\]")
_SPEED_RE = re.compile(r"Speed: (\d+(?:\.\d+)?) m/s")
_ROSTER_RE = re.compile(
    r"UAV-\d+ \((?:commander|relay|executor)\) at "
    r"\((-?\d+(?:\.\d+)?), (-?\d+(?:\.\d+)?)\)"
)


class TemplateEngine(CompressionEngine):
    """Extracts the task fields from the rendered briefing into one compact line.

    Briefings that do not parse fall back to identity with a logged warning.
    """

    name = "template"

    def compress(self, raw: Message, context: str) -> Message:
        target = _TARGET_RE.search(raw.text)
        speed = _SPEED_RE.search(raw.text)
        roster = _ROSTER_RE.findall(raw.text)
        if target is None or speed is None or not roster:
            log.warning("template engine could not parse the briefing; forwarding as-is")
            return Message(raw.text)
        positions = ";".join(f"{x},{y}" for x, y in roster)
        line = (
            f"TGT={target.group(1)},{target.group(2)},{target.group(3)},{target.group(4)}"
            f"|SPD={speed.group(1)}|ACT=GOTO|POS={positions}"
        )
        return Message(line)


@dataclass(frozen=True)
class RemoteEngineConfig:
    """Connection settings for a chat-completion-style compression endpoint."""

    endpoint: str
    model: str
    token_env: str = "SWARMCOMM_API_TOKEN"
    timeout: float = 30.0
    max_retries: int = 2
    temperature: float = 0.0
    max_in_flight: int = 4
    backoff_base: float = 0.5
    directive: str = DEFAULT_DIRECTIVE

    def __post_init__(self) -> None:
        if self.timeout <= 0:
            raise ConfigError("timeout must be positive")
        if self.max_retries < 0:
            raise ConfigError("max_retries must be non-negative")
        if self.max_in_flight < 1:
            raise ConfigError("max_in_flight must be at least 1")


class RemoteEngine(CompressionEngine):
    """Compresses through a chat-completion HTTP endpoint.

    The system prompt travels as the system message and the briefing, prefixed
    by the compression directive, as the user message. Failures abort the run
    rather than silently falling back, since a fallback would corrupt the
    compression statistics.
    """

    def __init__(self, config: RemoteEngineConfig) -> None:
        self.config = config
        self.name = f"remote:{config.model}"
        self._in_flight = threading.Semaphore(config.max_in_flight)

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        token = os.environ.get(self.config.token_env)
        if token:
            headers["Authorization"] = f"Bearer {token}"
        return headers

    def compress(self, raw: Message, context: str) -> Message:
        payload = {
            "model": self.config.model,
            "temperature": self.config.temperature,
            "messages": [
                {"role": "system", "content": context},
                {"role": "user", "content": self.config.directive + raw.text},
            ],
        }
        with self._in_flight:
            try:
                body = transport.post_json(
                    self.config.endpoint,
                    payload,
                    headers=self._headers(),
                    timeout=self.config.timeout,
                    max_retries=self.config.max_retries,
                    backoff_base=self.config.backoff_base,
                )
            except TransportError as exc:
                raise EngineError(f"remote compression failed: {exc}") from exc
        try:
            text = body["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError):
            raise EngineError(f"malformed completion response: {body!r}") from None
        if not isinstance(text, str) or not text:
            raise EngineError("remote engine returned empty output")
        return Message(text)


def parse_engine(spec_text: str, remote: RemoteEngineConfig | None = None) -> CompressionEngine:
    """Build an engine from a CLI selector such as ``identity`` or ``fixed-ratio:0.5``."""
    kind, _, argument = spec_text.partition(":")
    if kind == "identity":
        return IdentityEngine()
    if kind == "fixed-ratio":
        try:
            ratio = float(argument)
        except ValueError:
            raise ConfigError(f"fixed-ratio needs a numeric ratio, got {argument!r}") from None
        return FixedRatioEngine(ratio)
    if kind == "template":
        return TemplateEngine()
    if kind == "remote":
        if remote is None:
            raise ConfigError("remote engine selected but no endpoint configured")
        if argument:
            remote = dataclasses.replace(remote, model=argument)
        return RemoteEngine(remote)
    raise ConfigError(f"unknown engine {spec_text!r}")
