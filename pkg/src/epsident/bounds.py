"""Closed-form tight bounds and point identification under monotonicity.

For binary treatment X and outcome Y, with experimental quantities P(y_x),
P(y_{x'}) and the observational joint P(X,Y):

* causal effects obey  P(t,o) <= P(o_t) <= 1 - P(t,o')  (Tian & Pearl 2000),
* the three counterfactual probabilities

      pns = P(y_x, y'_{x'}),
      pn  = P(y'_{x'} | x, y),
      ps  = P(y_x | x', y')

  have tight bounds given by small max/min systems over the same atoms, and
* when Y is monotone in X (no unit is harmed by treatment) all three are
  point identified.

The argument systems live in :mod:`epsident.catalog`; this module evaluates
them on concrete data and owns the adjustment over one explicit binary
covariate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import catalog
from .config import get_tolerance
from .distributions import (
    ExperimentalDistribution,
    ObservationalDistribution,
    check_compatibility,
    require_atoms,
)
from .errors import (
    EmptyStratum,
    Incompatible,
    InvalidDistribution,
    MonotonicityRefuted,
    ZeroDenominator,
)
from .interval import Interval

__all__ = [
    "MonotoneIdentification",
    "CovariateJoint",
    "EvaluatedArgument",
    "causal_effect_bounds",
    "effect_bounds",
    "pns_bounds",
    "pn_bounds",
    "ps_bounds",
    "bound_arguments",
    "identify_monotone",
    "adjust_over_covariate",
    "EFFECT_VARIANTS",
    "EFFECT_LABELS",
]

Treatment = Literal["x", "x'"]
Outcome = Literal["y", "y'"]

#: effect variant token -> (treatment, outcome)
EFFECT_VARIANTS: dict[str, tuple[str, str]] = {
    "y_x": ("x", "y"),
    "yp_x": ("x", "y'"),
    "y_xp": ("x'", "y"),
    "yp_xp": ("x'", "y'"),
}
EFFECT_LABELS = {
    "y_x": "P(y_x)",
    "yp_x": "P(y'_x)",
    "y_xp": "P(y_{x'})",
    "yp_xp": "P(y'_{x'})",
}

_EFFECT_CELLS = {
    ("x", "y"): ("p_xy", "p_xyp"),
    ("x", "y'"): ("p_xyp", "p_xy"),
    ("x'", "y"): ("p_xpy", "p_xpyp"),
    ("x'", "y'"): ("p_xpyp", "p_xpy"),
}


@dataclass(frozen=True, slots=True)
class MonotoneIdentification:
    """Point values of the three counterfactual probabilities under monotonicity."""

    pns: float
    pn: float
    ps: float


@dataclass(frozen=True, slots=True)
class EvaluatedArgument:
    """One bound argument evaluated on concrete data (pre-clamp value)."""

    name: str
    side: str
    label: str
    value: float


def _refuse_incompatible(exp, obs) -> None:
    report = check_compatibility(exp, obs)
    if report.violations:
        raise Incompatible(report.violations)


def causal_effect_bounds(
    obs: ObservationalDistribution,
    treatment: Treatment = "x",
    outcome: Outcome = "y",
) -> Interval:
    """Bounds [P(t,o), 1 - P(t,o')] on the causal effect P(o_t) from the joint alone."""
    key = (treatment, outcome)
    if key not in _EFFECT_CELLS:
        raise InvalidDistribution(f"treatment/outcome must be x|x', y|y', got {key!r}")
    main, comp = _EFFECT_CELLS[key]
    values = require_atoms(None, obs, (main, comp), "causal effect bounds")
    return Interval(values[main], 1.0 - values[comp])


def effect_bounds(obs: ObservationalDistribution, variant: str) -> Interval:
    """:func:`causal_effect_bounds` addressed by variant token (see EFFECT_VARIANTS)."""
    if variant not in EFFECT_VARIANTS:
        raise InvalidDistribution(f"unknown effect variant {variant!r}")
    t, o = EFFECT_VARIANTS[variant]
    return causal_effect_bounds(obs, t, o)


def _evaluate_args(args, values) -> list[EvaluatedArgument]:
    out = []
    for arg in args:
        value = arg.expr.value_from_atoms(values)
        if arg.denominator is not None:
            value = value / values[arg.denominator]
        out.append(EvaluatedArgument(arg.name, arg.side, arg.label, value))
    return out


def bound_arguments(
    quantity: str,
    exp: ExperimentalDistribution,
    obs: ObservationalDistribution,
) -> list[EvaluatedArgument]:
    """Every max/min argument of a quantity's tight bounds, with raw values.

    Raw means pre-clamp: ratio arguments may fall outside [0,1] on noisy
    inputs, which is exactly what reports should surface.
    """
    if quantity == "pns":
        lowers, uppers = catalog.PNS_LOWER_ARGS, catalog.PNS_UPPER_ARGS
    elif quantity == "pn":
        lowers, uppers = catalog.PN_LOWER_ARGS, catalog.PN_UPPER_ARGS
    elif quantity == "ps":
        lowers, uppers = catalog.PS_LOWER_ARGS, catalog.PS_UPPER_ARGS
    else:
        raise InvalidDistribution(f"unknown quantity {quantity!r}")
    atoms: list[str] = []
    for arg in lowers + uppers:
        atoms.extend(arg.expr.atoms())
        if arg.denominator is not None:
            atoms.append(arg.denominator)
    values = require_atoms(exp, obs, tuple(dict.fromkeys(atoms)), f"{quantity} bounds")
    den = lowers[0].denominator
    if den is not None and values[den] <= get_tolerance():
        from .forms import QUANTITY_LABELS

        raise ZeroDenominator(f"{QUANTITY_LABELS[den]} = 0, {quantity} is undefined")
    return _evaluate_args(lowers + uppers, values)


def _bounds_from_arguments(quantity, exp, obs) -> Interval:
    evaluated = bound_arguments(quantity, exp, obs)
    _refuse_incompatible(exp, obs)
    lo = max(a.value for a in evaluated if a.side == "lower")
    hi = min(a.value for a in evaluated if a.side == "upper")
    # ratio arguments can stray outside [0,1] within rounding; the printed
    # max/min against the constant arguments already clamp otherwise
    return Interval(lo, hi).clamped(0.0, 1.0)


def pns_bounds(exp: ExperimentalDistribution, obs: ObservationalDistribution) -> Interval:
    """Tight bounds on P(y_x, y'_{x'}) from full experimental + observational data."""
    return _bounds_from_arguments("pns", exp, obs)


def pn_bounds(exp: ExperimentalDistribution, obs: ObservationalDistribution) -> Interval:
    """Tight bounds on P(y'_{x'} | x, y); requires P(x,y) > 0."""
    return _bounds_from_arguments("pn", exp, obs)


def ps_bounds(exp: ExperimentalDistribution, obs: ObservationalDistribution) -> Interval:
    """Tight bounds on P(y_x | x', y'); requires P(x',y') > 0."""
    return _bounds_from_arguments("ps", exp, obs)


def identify_monotone(
    exp: ExperimentalDistribution,
    obs: ObservationalDistribution,
) -> MonotoneIdentification:
    """Point identification of pns/pn/ps assuming Y monotone in X.

    Monotonicity is a user-asserted assumption; it is refuted (and
    :class:`MonotonicityRefuted` raised) exactly when the data contradict its
    observable implication P(y_x) >= P(y) >= P(y_{x'}).
    """
    values = require_atoms(
        exp, obs, ("p_y_do_x", "p_y_do_xp", "p_xy", "p_xpy", "p_xpyp"), "monotone identification"
    )
    tol = get_tolerance()
    p_y = values["p_xy"] + values["p_xpy"]
    p_yx, p_yxp = values["p_y_do_x"], values["p_y_do_xp"]
    if p_yx < p_y - tol or p_y < p_yxp - tol:
        raise MonotonicityRefuted(
            f"P(y_x) >= P(y) >= P(y_{{x'}}) fails: {p_yx:.6g}, {p_y:.6g}, {p_yxp:.6g}"
        )
    _refuse_incompatible(exp, obs)
    if values["p_xy"] <= tol:
        raise ZeroDenominator("P(x,y) = 0, pn is undefined")
    if values["p_xpyp"] <= tol:
        raise ZeroDenominator("P(x',y') = 0, ps is undefined")
    return MonotoneIdentification(
        pns=p_yx - p_yxp,
        pn=(p_y - p_yxp) / values["p_xy"],
        ps=(p_yx - p_y) / values["p_xpyp"],
    )


class CovariateJoint:
    """Full joint P(X, Y, U) over binary treatment, outcome, and one covariate.

    ``cells[i, j, k]`` is P(X=i-state, Y=j-state, U=k-state) with index 0
    meaning x/y/u and index 1 the complement.
    """

    __slots__ = ("cells",)

    def __init__(self, cells) -> None:
        arr = np.asarray(cells, dtype=float)
        if arr.shape != (2, 2, 2):
            raise InvalidDistribution(f"covariate joint must have shape (2,2,2), got {arr.shape}")
        tol = get_tolerance()
        if arr.min() < -tol:
            raise InvalidDistribution("covariate joint cells must be non-negative")
        if abs(arr.sum() - 1.0) > tol:
            raise InvalidDistribution(f"covariate joint must sum to 1, got {arr.sum()!r}")
        self.cells = np.clip(arr, 0.0, None)
        self.cells.flags.writeable = False

    @staticmethod
    def _x_index(treatment: str) -> int:
        if treatment not in ("x", "x'"):
            raise InvalidDistribution(f"treatment must be x|x', got {treatment!r}")
        return 0 if treatment == "x" else 1

    @staticmethod
    def _y_index(outcome: str) -> int:
        if outcome not in ("y", "y'"):
            raise InvalidDistribution(f"outcome must be y|y', got {outcome!r}")
        return 0 if outcome == "y" else 1

    def p_u(self, k: int) -> float:
        return float(self.cells[:, :, k].sum())

    def p_xu(self, i: int, k: int) -> float:
        return float(self.cells[i, :, k].sum())

    def relabeled_u(self) -> "CovariateJoint":
        return CovariateJoint(self.cells[:, :, ::-1])


def adjust_over_covariate(
    joint: CovariateJoint,
    treatment: Treatment = "x",
    outcome: Outcome = "y",
) -> float:
    """Covariate-adjusted effect  sum_u P(outcome | treatment, u) P(u).

    Strata with P(u) = 0 contribute nothing; a stratum with P(u) > 0 but
    P(treatment, u) = 0 leaves the conditional undefined and raises
    :class:`EmptyStratum`.
    """
    i = CovariateJoint._x_index(treatment)
    j = CovariateJoint._y_index(outcome)
    tol = get_tolerance()
    total = 0.0
    for k in (0, 1):
        pu = joint.p_u(k)
        if pu <= tol:
            continue
        ptu = joint.p_xu(i, k)
        if ptu <= tol:
            raise EmptyStratum(
                f"P({treatment}, u{'' if k == 0 else chr(39)}) = 0 while P(u) = {pu:.6g}"
            )
        total += joint.cells[i, j, k] / ptu * pu
    return total
