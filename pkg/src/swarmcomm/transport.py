"""HTTP helper with bounded retries, shared by the remote engine and scorer."""

from __future__ import annotations

import time

import requests

from .errors import TransportError

#: HTTP statuses treated as transient and therefore retried.
RETRYABLE_STATUSES = frozenset({429, 500, 502, 503, 504})


def post_json(
    url: str,
    payload: dict,
    *,
    headers: dict[str, str] | None = None,
    timeout: float,
    max_retries: int,
    backoff_base: float = 0.5,
) -> dict:
    """POST *payload* as JSON and return the decoded JSON response body.

    Transient failures (connection errors, timeouts, retryable statuses) are
    retried up to ``max_retries`` times with exponential backoff; any other
    HTTP error fails immediately.
    """
    attempts = max_retries + 1
    last_error = "unknown error"
    for attempt in range(attempts):
        if attempt:
            time.sleep(backoff_base * 2 ** (attempt - 1))
        try:
            response = requests.post(url, json=payload, headers=headers, timeout=timeout)
        except requests.Timeout as exc:
            last_error = f"timeout after {timeout}s: {exc}"
            continue
        except requests.ConnectionError as exc:
            last_error = f"connection failed: {exc}"
            continue
        if response.status_code in RETRYABLE_STATUSES:
            last_error = f"HTTP {response.status_code}"
            continue
        if response.status_code != 200:
            raise TransportError(f"{url} answered HTTP {response.status_code}")
        try:
            return response.json()
        except ValueError as exc:
            raise TransportError(f"{url} returned a non-JSON body: {exc}") from exc
    raise TransportError(f"{url} failed after {attempts} attempts ({last_error})")
