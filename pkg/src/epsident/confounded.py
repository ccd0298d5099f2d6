"""Near-point identification of P(y_x) under one binary confounder.

On the graph U -> X, U -> Y, X -> Y the effect needs the full joint with U,
which is impractical to estimate when P(u) is tiny.  But a sandwich holds
from P(x), P(y|x) and a slack constant c with P(u) <= P(x) - c:

    P(y|x) - (1 + 1/P(x)) * P(u)  <=  P(y_x)  <=  P(y|x) + (1 + 1/c) * P(u),

so an upper bound on P(u) narrows P(y_x) to an interval of width

    (2 + 1/c + 1/P(x)) * P(u).

Requiring that width to be at most 2*eps gives the firing condition

    P(u) <= 2cP(x) / (2cP(x) + P(x) + c) * eps,

under which P(y_x) is identified to

    q = P(y|x) + (P(x) - c) / (2cP(x) + P(x) + c) * eps

with radius eps.  Larger c both fires more easily and pulls q closer to
P(y|x), so automatic selection maximizes c over a grid.

A coarser route needs only P(x) >= 1/2: fixing c = 0.4 and bounding
1/P(x) <= 2 gives the wider sandwich slopes 3 and 3.5, the condition
P(u) <= (4/13) * eps, and the center q = P(y|x) + eps/13.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import get_tolerance
from .distributions import Condition, EpsIdentification
from .engine import NotIdentified
from .errors import InvalidDistribution, NoFeasibleC
from .interval import Interval

__all__ = [
    "ConfoundedEffectInput",
    "AUTO_C_GRID_STEP",
    "eps_identify_effect_confounded",
    "eps_identify_effect_confounded_simple",
    "effect_sandwich",
]

AUTO_C_GRID_STEP = 1e-4

EFFECT_CONFOUNDED = "y_x"  # quantity token the identifications carry


@dataclass(frozen=True, slots=True)
class ConfoundedEffectInput:
    """Inputs for the confounded-effect identification.

    ``c`` is an explicit slack constant (0 < c <= p_x - u_max) or None for
    automatic maximization over the grid.
    """

    p_y_given_x: float
    p_x: float
    u_max: float
    c: float | None = None

    def __post_init__(self) -> None:
        for name in ("p_y_given_x", "p_x", "u_max"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0) or not math.isfinite(v):
                raise InvalidDistribution(f"{name} must be in [0,1], got {v!r}")
        if self.p_x <= 0.0:
            raise InvalidDistribution("p_x must be positive")
        if self.c is not None:
            c = float(self.c)
            if not (0.0 < c <= self.p_x - self.u_max + get_tolerance()):
                raise InvalidDistribution(
                    f"c must satisfy 0 < c <= p_x - u_max = {self.p_x - self.u_max:.6g}, got {c!r}"
                )
            object.__setattr__(self, "c", c)


def _threshold_factor(c: float, p_x: float) -> float:
    return 2.0 * c * p_x / (2.0 * c * p_x + p_x + c)


def _center_offset(c: float, p_x: float) -> float:
    return (p_x - c) / (2.0 * c * p_x + p_x + c)


def _condition(inp: ConfoundedEffectInput, c: float, eps: float) -> Condition:
    return Condition(
        entry_id="effect-confounded",
        premise=f"P(u) <= 2cP(x)/(2cP(x)+P(x)+c) * eps  [c={c:g}]",
        premise_value=inp.u_max,
        threshold="2cP(x)/(2cP(x)+P(x)+c) * eps",
        threshold_value=_threshold_factor(c, inp.p_x) * eps,
        center="P(y|x) + (P(x)-c)/(2cP(x)+P(x)+c) * eps",
    )


def eps_identify_effect_confounded(
    inp: ConfoundedEffectInput,
    eps: float,
) -> EpsIdentification | NotIdentified:
    """Identify P(y_x) from P(x), P(y|x), and a confounder-mass bound.

    With an explicit slack constant the condition is checked as stated and a
    failing margin is reported.  With ``c=None`` the constant is maximized
    left-to-right over a grid of step ``AUTO_C_GRID_STEP`` on
    (0, p_x - u_max]; :class:`NoFeasibleC` is raised when no grid value
    fires.
    """
    if not (eps > 0.0) or not math.isfinite(eps):
        raise InvalidDistribution(f"eps must be positive, got {eps!r}")
    tol = get_tolerance()
    if inp.c is not None:
        condition = _condition(inp, inp.c, eps)
        if inp.u_max > condition.threshold_value + tol:
            return NotIdentified(EFFECT_CONFOUNDED, condition)
        q = inp.p_y_given_x + _center_offset(inp.c, inp.p_x) * eps
        return EpsIdentification(EFFECT_CONFOUNDED, q, eps, condition)

    c_top = inp.p_x - inp.u_max
    if c_top <= 0.0:
        raise NoFeasibleC(f"p_x - u_max = {c_top:.6g} leaves no positive slack constant")
    best = None
    steps = int(math.floor(c_top / AUTO_C_GRID_STEP + 1e-12))
    for k in range(1, steps + 1):
        c = k * AUTO_C_GRID_STEP
        if inp.u_max <= _threshold_factor(c, inp.p_x) * eps + tol:
            best = c
    if c_top - steps * AUTO_C_GRID_STEP > 1e-12:
        if inp.u_max <= _threshold_factor(c_top, inp.p_x) * eps + tol:
            best = c_top
    if best is None:
        raise NoFeasibleC(
            f"no slack constant on the {AUTO_C_GRID_STEP:g}-step grid over (0, {c_top:.6g}] fires at eps={eps:g}"
        )
    condition = _condition(inp, best, eps)
    q = inp.p_y_given_x + _center_offset(best, inp.p_x) * eps
    return EpsIdentification(EFFECT_CONFOUNDED, q, eps, condition)


def eps_identify_effect_confounded_simple(
    p_y_given_x: float,
    p_x: float,
    u_max: float,
    eps: float,
) -> EpsIdentification | NotIdentified:
    """The coarse route: requires P(x) >= 1/2, fires when P(u) <= (4/13)*eps,
    and identifies P(y_x) to P(y|x) + eps/13."""
    if not (eps > 0.0) or not math.isfinite(eps):
        raise InvalidDistribution(f"eps must be positive, got {eps!r}")
    for name, v in (("p_y_given_x", p_y_given_x), ("p_x", p_x), ("u_max", u_max)):
        if not (0.0 <= v <= 1.0):
            raise InvalidDistribution(f"{name} must be in [0,1], got {v!r}")
    tol = get_tolerance()
    if p_x < 0.5 - tol:
        raise InvalidDistribution(f"the simple route requires P(x) >= 0.5, got {p_x!r}")
    condition = Condition(
        entry_id="effect-confounded-simple",
        premise="P(u) <= (4/13) * eps  [P(x) >= 1/2, c = 0.4]",
        premise_value=u_max,
        threshold="(4/13) * eps",
        threshold_value=4.0 / 13.0 * eps,
        center="P(y|x) + eps/13",
    )
    if u_max > condition.threshold_value + tol:
        return NotIdentified(EFFECT_CONFOUNDED, condition)
    return EpsIdentification(EFFECT_CONFOUNDED, p_y_given_x + eps / 13.0, eps, condition)


def effect_sandwich(p_y_given_x: float, p_x: float, p_u: float, c: float) -> Interval:
    """The raw sandwich on P(y_x) for a known confounder mass P(u).

    Valid for any model on the confounder graph with the given P(x), P(y|x)
    and 0 < c <= P(x) - P(u); endpoints are not clamped to [0,1].
    """
    for name, v in (("p_y_given_x", p_y_given_x), ("p_x", p_x), ("p_u", p_u)):
        if not (0.0 <= v <= 1.0):
            raise InvalidDistribution(f"{name} must be in [0,1], got {v!r}")
    if p_x <= 0.0:
        raise InvalidDistribution("p_x must be positive")
    if not (0.0 < c <= p_x - p_u + get_tolerance()):
        raise InvalidDistribution(
            f"c must satisfy 0 < c <= p_x - p_u = {p_x - p_u:.6g}, got {c!r}"
        )
    lo = p_y_given_x - (1.0 + 1.0 / p_x) * p_u
    hi = p_y_given_x + (1.0 + 1.0 / c) * p_u
    return Interval(lo, hi)
