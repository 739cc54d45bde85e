"""Exception types shared across the package."""


class SwarmCommError(Exception):
    """Base class for all swarmcomm errors."""


class UnknownScenarioError(SwarmCommError, ValueError):
    """Requested scenario name is not a known preset."""


class PlacementError(SwarmCommError, RuntimeError):
    """Rejection sampling could not produce a feasible placement."""


class ConfigError(SwarmCommError, ValueError):
    """Invalid engine, scorer, or experiment configuration."""


class EngineError(SwarmCommError, RuntimeError):
    """A compression engine failed; the affected run must abort."""


class ScorerError(SwarmCommError, RuntimeError):
    """A semantic scorer failed; the trial's SP is recorded as missing."""


class MetricError(SwarmCommError, ValueError):
    """A metric was requested on inputs where it is undefined."""


class TransportError(SwarmCommError, RuntimeError):
    """An HTTP request failed after exhausting its retry budget."""
