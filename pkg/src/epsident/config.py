"""Global comparison tolerance.

All "<=" checks against identification conditions, compatibility
constraints, and mass budgets use one configurable tolerance.  The default
is 1e-9; the CLI additionally honours the ``EPSIDENT_TOLERANCE`` environment
variable.  Library users change it through :func:`set_tolerance`.
"""

from __future__ import annotations

import os

DEFAULT_TOLERANCE = 1e-9
TOLERANCE_ENV_VAR = "EPSIDENT_TOLERANCE"

_tolerance = DEFAULT_TOLERANCE


def get_tolerance() -> float:
    """Current global comparison tolerance."""
    return _tolerance


def set_tolerance(value: float) -> None:
    """Set the global comparison tolerance (must be a finite value >= 0)."""
    v = float(value)
    if not (v >= 0.0) or v != v or v == float("inf"):
        raise ValueError(f"tolerance must be a finite non-negative number, got {value!r}")
    global _tolerance
    _tolerance = v


def apply_env_tolerance(environ=os.environ) -> float | None:
    """Apply ``EPSIDENT_TOLERANCE`` from the environment, if set.

    Returns the applied value, or None when the variable is absent.
    Used by the CLI entry point; library code never reads the environment.
    """
    raw = environ.get(TOLERANCE_ENV_VAR)
    if raw is None:
        return None
    try:
        value = float(raw)
    except ValueError as exc:
        raise ValueError(f"{TOLERANCE_ENV_VAR} must be a number, got {raw!r}") from exc
    set_tolerance(value)
    return value
