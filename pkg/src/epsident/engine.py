"""Near-point identification engine.

Scans the generated condition catalogs against whatever data are available.
A condition fires when its premise is certified, i.e. when the premise's
largest possible value given the supplied atoms and asserted marginal bounds
is at most the threshold.  A fired condition reports a center q whose value
must be exactly computable; the certificate is that the target lies in
[q - eps, q + eps] for every model consistent with the data.

Partial data shrink the evaluated set: entries whose premise involves a
quantity carrying no information at all, or whose center is not exactly
computable, are reported as not evaluated rather than silently dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import catalog
from .bounds import EFFECT_LABELS, EFFECT_VARIANTS, effect_bounds, pn_bounds, pns_bounds, ps_bounds
from .config import get_tolerance
from .distributions import (
    Assumptions,
    Condition,
    EpsIdentification,
    ExperimentalDistribution,
    ObservationalDistribution,
    check_compatibility,
)
from .errors import Incompatible, InvalidDistribution, MissingData, ZeroDenominator
from .forms import QUANTITY_LABELS, QUANTITIES
from .interval import Interval

__all__ = [
    "QuantityRanges",
    "NotIdentified",
    "NotEvaluated",
    "EpsReport",
    "eps_identify_pns",
    "eps_identify_pn",
    "eps_identify_ps",
    "eps_identify_effect",
    "eps_identify_effects",
    "EffectScan",
    "minimal_epsilon",
]

_EXACT = 1e-12


class QuantityRanges:
    """Value intervals for every named quantity, from partial data plus bounds.

    Present atoms give exact (degenerate) intervals.  Absent joint cells are
    bracketed by the unassigned mass; marginals use the fact that missing
    mass can concentrate inside or outside them; asserted marginal bounds
    intersect in, on both a marginal and its complement.  A quantity is
    ``informative`` when its interval is narrower than the vacuous [0,1].
    """

    def __init__(
        self,
        exp: ExperimentalDistribution | None = None,
        obs: ObservationalDistribution | None = None,
        assumptions: Assumptions | None = None,
    ) -> None:
        iv: dict[str, Interval] = {}

        def put(name: str, lo: float, hi: float) -> None:
            lo, hi = max(lo, 0.0), min(hi, 1.0)
            if lo > hi + get_tolerance():
                raise Incompatible(
                    [f"{QUANTITY_LABELS[name]} constrained to empty range [{lo:.6g}, {hi:.6g}]"]
                )
            iv[name] = Interval(min(lo, hi), hi)

        for name, comp in (("p_y_do_x", "p_yp_do_x"), ("p_y_do_xp", "p_yp_do_xp")):
            v = getattr(exp, name) if exp is not None else None
            if v is None:
                put(name, 0.0, 1.0)
                put(comp, 0.0, 1.0)
            else:
                put(name, v, v)
                put(comp, 1.0 - v, 1.0 - v)

        cells = ("p_xy", "p_xyp", "p_xpy", "p_xpyp")
        present = {c: (obs.cell(c) if obs is not None else None) for c in cells}
        mass = sum(v for v in present.values() if v is not None)
        free = max(0.0, 1.0 - mass)
        for c in cells:
            v = present[c]
            if v is None:
                put(c, 0.0, free if obs is not None else 1.0)
            else:
                put(c, v, v)

        def subset(name: str, a: str, b: str) -> None:
            va, vb = present[a], present[b]
            lo = (va or 0.0) + (vb or 0.0)
            hi = lo + (free if (va is None or vb is None) else 0.0)
            if obs is None:
                lo, hi = 0.0, 1.0
            put(name, lo, hi)

        subset("p_x", "p_xy", "p_xyp")
        subset("p_xp", "p_xpy", "p_xpyp")
        subset("p_y", "p_xy", "p_xpy")
        subset("p_yp", "p_xyp", "p_xpyp")

        if assumptions is not None:
            for name, comp in (("p_x", "p_xp"), ("p_xp", "p_x"), ("p_y", "p_yp"), ("p_yp", "p_y")):
                ub = getattr(assumptions, f"{name}_max")
                if ub is None:
                    continue
                cur = iv[name]
                put(name, cur.lo, min(cur.hi, ub))
                cur = iv[comp]
                put(comp, max(cur.lo, 1.0 - ub), cur.hi)
                # a marginal bound also caps its member cells
                for cell in (
                    ("p_xy", "p_xyp") if name == "p_x"
                    else ("p_xpy", "p_xpyp") if name == "p_xp"
                    else ("p_xy", "p_xpy") if name == "p_y"
                    else ("p_xyp", "p_xpyp")
                ):
                    cur = iv[cell]
                    put(cell, cur.lo, min(cur.hi, ub))

        self._iv = iv

    def interval(self, name: str) -> Interval:
        return self._iv[name]

    def exact(self, name: str) -> float | None:
        r = self._iv[name]
        return r.midpoint if r.width <= _EXACT else None

    def informative(self, name: str) -> bool:
        r = self._iv[name]
        return r.lo > get_tolerance() or r.hi < 1.0 - get_tolerance() or r.width <= _EXACT

    def upper_value(self, terms) -> float:
        """Largest possible value of a signed sum of quantities (conservative:
        treats quantities as independent, which can only loosen, never break,
        a premise certificate)."""
        total = 0.0
        for coef, name in terms:
            r = self._iv[name]
            total += coef * (r.hi if coef > 0 else r.lo)
        return total

    def exact_value(self, terms) -> float | None:
        total = 0.0
        for coef, name in terms:
            v = self.exact(name)
            if v is None:
                return None
            total += coef * v
        return total


@dataclass(frozen=True, slots=True)
class NotIdentified:
    """A condition that was evaluated and did not fire, with its margin."""

    quantity: str
    condition: Condition

    @property
    def margin(self) -> float:
        return self.condition.premise_value - self.condition.threshold_value


@dataclass(frozen=True, slots=True)
class NotEvaluated:
    """A condition skipped because data atoms are missing."""

    entry_id: str
    premise: str
    center: str
    missing: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "entry_id": self.entry_id,
            "premise": self.premise,
            "center": self.center,
            "missing": list(self.missing),
        }


@dataclass(frozen=True, slots=True)
class EpsReport:
    """Everything the pair-scan produced for one quantity at one radius."""

    quantity: str
    eps: float
    fired: tuple[EpsIdentification, ...]
    tightest: EpsIdentification | None
    not_evaluated: tuple[NotEvaluated, ...]

    def to_json_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "eps": self.eps,
            "fired": [f.to_json_dict() for f in self.fired],
            "tightest": None if self.tightest is None else self.tightest.to_json_dict(),
            "not_evaluated": [n.to_json_dict() for n in self.not_evaluated],
        }


def _refuse_incompatible(exp, obs) -> None:
    if exp is None or obs is None:
        return
    report = check_compatibility(exp, obs)
    if report.violations:
        raise Incompatible(report.violations)


def _tight_interval(quantity, exp, obs) -> Interval | None:
    if exp is None or obs is None:
        return None
    fn = {"pns": pns_bounds, "pn": pn_bounds, "ps": ps_bounds}[quantity]
    try:
        return fn(exp, obs)
    except (MissingData, ZeroDenominator):
        return None


def _scan(
    quantity: str,
    exp: ExperimentalDistribution | None,
    obs: ObservationalDistribution | None,
    eps: float,
    assumptions: Assumptions | None,
    denominator: str | None,
) -> EpsReport:
    if not (eps > 0.0) or not math.isfinite(eps):
        raise InvalidDistribution(f"eps must be positive, got {eps!r}")
    ranges = QuantityRanges(exp, obs, assumptions)
    tol = get_tolerance()

    den_value = None
    if denominator is not None:
        den_value = ranges.exact(denominator)
        if den_value is not None and den_value <= tol:
            raise ZeroDenominator(f"{QUANTITY_LABELS[denominator]} = 0, {quantity} is undefined")
    _refuse_incompatible(exp, obs)

    fired: list[tuple[int, EpsIdentification]] = []
    skipped: list[NotEvaluated] = []
    for index, entry in enumerate(catalog.CATALOGS[quantity]):
        missing: list[str] = []
        if denominator is not None and den_value is None:
            missing.append(denominator)
        missing.extend(
            name for _, name in entry.premise.terms if not ranges.informative(name)
        )
        center_value = ranges.exact_value(entry.center.terms)
        if center_value is None:
            missing.extend(
                name for _, name in entry.center.terms if ranges.exact(name) is None
            )
        if missing:
            ordered = sorted(set(missing), key=QUANTITIES.index)
            skipped.append(
                NotEvaluated(entry.entry_id, entry.premise_label, entry.center_label, tuple(ordered))
            )
            continue
        threshold = 2.0 * eps * (den_value if den_value is not None else 1.0)
        premise_value = ranges.upper_value(entry.premise.terms)
        if premise_value > threshold + tol:
            continue
        q = center_value / (den_value if den_value is not None else 1.0)
        q += entry.center_sign * eps
        condition = Condition(
            entry_id=entry.entry_id,
            premise=entry.premise_label,
            premise_value=premise_value,
            threshold="2*eps" if denominator is None else f"2*eps*{QUANTITY_LABELS[denominator]}",
            threshold_value=threshold,
            center=entry.center_label,
        )
        fired.append((index, EpsIdentification(quantity, q, eps, condition)))

    tight = _tight_interval(quantity, exp, obs)
    tightest = None
    if fired:
        def sort_key(item):
            index, ident = item
            width = 2.0 * ident.eps
            if tight is not None:
                width = ident.certified.intersect(tight).width
            return (width, index)

        tightest = min(fired, key=sort_key)[1]

    return EpsReport(
        quantity=quantity,
        eps=eps,
        fired=tuple(ident for _, ident in fired),
        tightest=tightest,
        not_evaluated=tuple(skipped),
    )


def eps_identify_pns(
    exp: ExperimentalDistribution | None = None,
    obs: ObservationalDistribution | None = None,
    eps: float = 0.0,
    assumptions: Assumptions | None = None,
) -> EpsReport:
    """Scan all published near-point conditions for P(y_x, y'_{x'})."""
    return _scan("pns", exp, obs, eps, assumptions, None)


def eps_identify_pn(
    exp: ExperimentalDistribution | None = None,
    obs: ObservationalDistribution | None = None,
    eps: float = 0.0,
    assumptions: Assumptions | None = None,
) -> EpsReport:
    """Scan all published near-point conditions for P(y'_{x'} | x, y)."""
    return _scan("pn", exp, obs, eps, assumptions, "p_xy")


def eps_identify_ps(
    exp: ExperimentalDistribution | None = None,
    obs: ObservationalDistribution | None = None,
    eps: float = 0.0,
    assumptions: Assumptions | None = None,
) -> EpsReport:
    """Scan all published near-point conditions for P(y_x | x', y')."""
    return _scan("ps", exp, obs, eps, assumptions, "p_xpyp")


# ---------------------------------------------------------------------------
# Causal effects from one joint cell and a marginal bound
# ---------------------------------------------------------------------------

_EFFECT_INPUTS = {
    # variant -> (cell atom, bounded marginal)
    "y_x": ("p_xy", "p_xp"),
    "yp_x": ("p_xyp", "p_xp"),
    "y_xp": ("p_xpy", "p_x"),
    "yp_xp": ("p_xpyp", "p_x"),
}


def eps_identify_effect(
    p_txy: float,
    other_marginal_ub: float,
    eps: float,
    variant: str = "y_x",
) -> EpsIdentification | NotIdentified:
    """Identify a causal effect from its joint cell and the opposite
    treatment marginal.

    The effect P(o_t) lies in [P(t,o), P(t,o) + P(t-complement)], an interval
    of width exactly the opposite marginal.  So an upper bound ub on that
    marginal with ub <= 2*eps certifies  P(o_t) ~ P(t,o) + eps.
    """
    if variant not in _EFFECT_INPUTS:
        raise InvalidDistribution(f"unknown effect variant {variant!r}")
    if not (eps > 0.0) or not math.isfinite(eps):
        raise InvalidDistribution(f"eps must be positive, got {eps!r}")
    for name, v in (("p_txy", p_txy), ("other_marginal_ub", other_marginal_ub)):
        if not (0.0 <= v <= 1.0):
            raise InvalidDistribution(f"{name} must be in [0,1], got {v!r}")
    cell, marginal = _EFFECT_INPUTS[variant]
    condition = Condition(
        entry_id=f"effect-{variant}",
        premise=f"{QUANTITY_LABELS[marginal]} <= 2*eps",
        premise_value=other_marginal_ub,
        threshold="2*eps",
        threshold_value=2.0 * eps,
        center=f"{QUANTITY_LABELS[cell]} + eps",
    )
    if other_marginal_ub > 2.0 * eps + get_tolerance():
        return NotIdentified(variant, condition)
    return EpsIdentification(variant, p_txy + eps, eps, condition)


@dataclass(frozen=True, slots=True)
class EffectScan:
    """Per-variant effect identifications resolvable from a dataset."""

    results: dict[str, EpsIdentification | NotIdentified]
    skipped: dict[str, tuple[str, ...]]


def eps_identify_effects(
    eps: float,
    obs: ObservationalDistribution | None = None,
    assumptions: Assumptions | None = None,
) -> EffectScan:
    """Run :func:`eps_identify_effect` for every variant the data support.

    The marginal bound comes from the joint when both its cells are present,
    else from an asserted assumption; variants lacking either the cell or any
    marginal bound are skipped with the missing quantity names.
    """
    ranges = QuantityRanges(None, obs, assumptions)
    results: dict[str, EpsIdentification | NotIdentified] = {}
    skipped: dict[str, tuple[str, ...]] = {}
    for variant, (cell, marginal) in _EFFECT_INPUTS.items():
        missing = []
        cell_value = ranges.exact(cell)
        if cell_value is None:
            missing.append(cell)
        ub = ranges.interval(marginal).hi
        if not ranges.informative(marginal):
            missing.append(marginal)
        if missing:
            skipped[variant] = tuple(missing)
            continue
        results[variant] = eps_identify_effect(cell_value, ub, eps, variant)
    return EffectScan(results, skipped)


def minimal_epsilon(
    quantity: str,
    exp: ExperimentalDistribution | None = None,
    obs: ObservationalDistribution | None = None,
) -> tuple[float, float]:
    """Smallest certifiable radius and its center: half-width and midpoint of
    the quantity's tight bounds.

    The quantity is identifiable to q_star within every radius >= eps_star
    and within no smaller radius.
    """
    if quantity == "pns":
        interval = pns_bounds(exp, obs)
    elif quantity == "pn":
        interval = pn_bounds(exp, obs)
    elif quantity == "ps":
        interval = ps_bounds(exp, obs)
    elif quantity in EFFECT_VARIANTS:
        interval = effect_bounds(obs, quantity)
    else:
        raise InvalidDistribution(f"unknown quantity {quantity!r}")
    return interval.width / 2.0, interval.midpoint


QUANTITY_DISPLAY = {
    "pns": "PNS",
    "pn": "PN",
    "ps": "PS",
    "benefit": "benefit",
    **EFFECT_LABELS,
}
