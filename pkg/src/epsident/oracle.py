"""Independent brute-force verifier over the response-type polytope.

Any model of binary treatment X and binary outcome Y, however confounded,
induces a joint distribution over (response type, X) with the four response
types

    complier      y_x  and y'_{x'}
    always-taker  y_x  and y_{x'}
    never-taker   y'_x and y'_{x'}
    defier        y'_x and y_{x'}

and conversely every such 8-cell joint is realized by some model.  All
quantities this package bounds are linear in those 8 cells (after fixing
known denominators), so their exact feasible ranges are linear programs over
the polytope cut out of the simplex by the supplied data.

The LP is solved by exact enumeration of basic feasible solutions of the
equality system (at most C(n, rank) small linear solves), which avoids any
dependence on iterative-solver tolerances: a vertex value is a ratio of
small determinants of 0/1 matrices and float data, accurate to machine
precision.  That exactness is what the bound-tightness tests lean on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, NamedTuple

import numpy as np

from .config import get_tolerance
from .distributions import (
    Assumptions,
    ExperimentalDistribution,
    ObservationalDistribution,
)
from .errors import Infeasible, InvalidDistribution, MissingData, Unsupported, ZeroDenominator
from .interval import Interval

__all__ = [
    "RESPONSE_TYPES",
    "ResponseTypeJoint",
    "SampledScenario",
    "ConfoundedScm",
    "sample_joint",
    "feasible_vertices",
    "feasible_range",
    "confounded_effect_range",
    "grid_scms",
]

RESPONSE_TYPES = ("complier", "always_taker", "never_taker", "defier")

# flat variable order: (type, x-state) row-major over the table above
_VAR_NAMES = tuple(f"{t}|{x}" for t in RESPONSE_TYPES for x in ("x", "x'"))
_N = 8

_ROWS = {
    # experimental marginals
    "p_y_do_x": np.array([1, 1, 1, 1, 0, 0, 0, 0], dtype=float),
    "p_y_do_xp": np.array([0, 0, 1, 1, 0, 0, 1, 1], dtype=float),
    # observational cells
    "p_xy": np.array([1, 0, 1, 0, 0, 0, 0, 0], dtype=float),
    "p_xyp": np.array([0, 0, 0, 0, 1, 0, 1, 0], dtype=float),
    "p_xpy": np.array([0, 0, 0, 1, 0, 0, 0, 1], dtype=float),
    "p_xpyp": np.array([0, 1, 0, 0, 0, 1, 0, 0], dtype=float),
}

_MARGINAL_ROWS = {
    "p_x_max": _ROWS["p_xy"] + _ROWS["p_xyp"],
    "p_xp_max": _ROWS["p_xpy"] + _ROWS["p_xpyp"],
    "p_y_max": _ROWS["p_xy"] + _ROWS["p_xpy"],
    "p_yp_max": _ROWS["p_xyp"] + _ROWS["p_xpyp"],
}

_OBJECTIVES = {
    "pns": np.array([1, 1, 0, 0, 0, 0, 0, 0], dtype=float),
    "y_x": _ROWS["p_y_do_x"],
    "yp_x": 1.0 - _ROWS["p_y_do_x"],
    "y_xp": _ROWS["p_y_do_xp"],
    "yp_xp": 1.0 - _ROWS["p_y_do_xp"],
    # pn/ps numerators; the known denominator is divided through afterwards
    "pn": np.array([1, 0, 0, 0, 0, 0, 0, 0], dtype=float),
    "ps": np.array([0, 1, 0, 0, 0, 0, 0, 0], dtype=float),
}

TARGETS = ("pns", "pn", "ps", "y_x", "yp_x", "y_xp", "yp_xp", "benefit")


class ResponseTypeJoint:
    """Joint distribution over (response type, observed treatment).

    ``cells[i, j]`` is P(type_i, X=j-state) with rows ordered
    complier, always-taker, never-taker, defier and columns x, x'.
    """

    __slots__ = ("cells",)

    def __init__(self, cells) -> None:
        arr = np.asarray(cells, dtype=float)
        if arr.shape != (4, 2):
            raise InvalidDistribution(f"response-type joint must be (4,2), got {arr.shape}")
        tol = get_tolerance()
        if arr.min() < -tol:
            raise InvalidDistribution("response-type joint cells must be non-negative")
        if abs(arr.sum() - 1.0) > tol:
            raise InvalidDistribution(f"response-type joint must sum to 1, got {arr.sum()!r}")
        self.cells = np.clip(arr, 0.0, None)
        self.cells.flags.writeable = False

    def as_vector(self) -> np.ndarray:
        return self.cells.reshape(-1)

    def type_marginal(self, name: str) -> float:
        return float(self.cells[RESPONSE_TYPES.index(name)].sum())

    # forward maps -----------------------------------------------------

    def experimental(self) -> ExperimentalDistribution:
        q = self.as_vector()
        return ExperimentalDistribution(
            p_y_do_x=float(_ROWS["p_y_do_x"] @ q),
            p_y_do_xp=float(_ROWS["p_y_do_xp"] @ q),
        )

    def observational(self) -> ObservationalDistribution:
        q = self.as_vector()
        return ObservationalDistribution(
            p_xy=float(_ROWS["p_xy"] @ q),
            p_xyp=float(_ROWS["p_xyp"] @ q),
            p_xpy=float(_ROWS["p_xpy"] @ q),
            p_xpyp=float(_ROWS["p_xpyp"] @ q),
        )

    # ground-truth quantities -------------------------------------------

    def pns(self) -> float:
        return self.type_marginal("complier")

    def pn(self) -> float:
        p_xy = float(_ROWS["p_xy"] @ self.as_vector())
        if p_xy <= get_tolerance():
            raise ZeroDenominator("P(x,y) = 0, pn is undefined")
        return float(self.cells[0, 0]) / p_xy

    def ps(self) -> float:
        p_xpyp = float(_ROWS["p_xpyp"] @ self.as_vector())
        if p_xpyp <= get_tolerance():
            raise ZeroDenominator("P(x',y') = 0, ps is undefined")
        return float(self.cells[0, 1]) / p_xpyp

    def effect(self, variant: str) -> float:
        return float(_OBJECTIVES[variant] @ self.as_vector())


class SampledScenario(NamedTuple):
    joint: ResponseTypeJoint
    experimental: ExperimentalDistribution
    observational: ObservationalDistribution


def sample_joint(seed: int, defier_free: bool = False) -> SampledScenario:
    """Deterministic pseudo-random joint plus its induced distributions.

    The induced pair is compatible by construction.  With ``defier_free``
    the defier row is zero, i.e. the sampled model is monotone.
    """
    rng = np.random.default_rng(seed)
    if defier_free:
        cells = np.zeros((4, 2))
        cells[:3, :] = rng.dirichlet(np.ones(6)).reshape(3, 2)
    else:
        cells = rng.dirichlet(np.ones(8)).reshape(4, 2)
    joint = ResponseTypeJoint(cells)
    return SampledScenario(joint, joint.experimental(), joint.observational())


def _constraint_system(exp, obs, assumptions):
    """Equality system over the 8 cells plus one slack per marginal bound."""
    rows: list[np.ndarray] = [np.ones(_N)]
    rhs: list[float] = [1.0]
    slack_rows: list[np.ndarray] = []
    n_atoms = 0
    if exp is not None:
        for name in ("p_y_do_x", "p_y_do_xp"):
            v = getattr(exp, name)
            if v is not None:
                rows.append(_ROWS[name])
                rhs.append(v)
                n_atoms += 1
    if obs is not None:
        for name in ("p_xy", "p_xyp", "p_xpy", "p_xpyp"):
            v = obs.cell(name)
            if v is not None:
                rows.append(_ROWS[name])
                rhs.append(v)
                n_atoms += 1
    if assumptions is not None:
        for name, row in _MARGINAL_ROWS.items():
            v = getattr(assumptions, name)
            if v is not None:
                slack_rows.append(row)
                rhs.append(v)
                n_atoms += 1
    if n_atoms == 0:
        raise MissingData(["any data atom"], "feasible range")
    n_slack = len(slack_rows)
    A = np.zeros((len(rows) + n_slack, _N + n_slack))
    for i, row in enumerate(rows):
        A[i, :_N] = row
    for k, row in enumerate(slack_rows):
        A[len(rows) + k, :_N] = row
        A[len(rows) + k, _N + k] = 1.0
    return A, np.array(rhs, dtype=float)


def _row_reduce(A: np.ndarray, b: np.ndarray):
    """Gaussian elimination with partial pivoting; returns the independent
    system or None when inconsistent."""
    M = np.hstack([A, b[:, None]]).astype(float)
    n_rows, n_cols = A.shape
    r = 0
    for col in range(n_cols):
        piv = None
        best = 1e-12
        for i in range(r, n_rows):
            if abs(M[i, col]) > best:
                best = abs(M[i, col])
                piv = i
        if piv is None:
            continue
        M[[r, piv]] = M[[piv, r]]
        M[r] /= M[r, col]
        for i in range(n_rows):
            if i != r and abs(M[i, col]) > 1e-15:
                M[i] -= M[i, col] * M[r]
        r += 1
        if r == n_rows:
            break
    # dependent rows must be consistent within the data tolerance
    for i in range(r, n_rows):
        if abs(M[i, -1]) > 1e-9:
            return None
    return M[:r, :n_cols], M[:r, -1]


def feasible_vertices(
    exp: ExperimentalDistribution | None = None,
    obs: ObservationalDistribution | None = None,
    assumptions: Assumptions | None = None,
) -> np.ndarray:
    """All vertices of the feasible polytope, one row per vertex.

    Columns are the 8 response-type cells (slack coordinates for marginal
    bounds are dropped).  Raises :class:`Infeasible` when no joint matches
    the supplied data.
    """
    A, b = _constraint_system(exp, obs, assumptions)
    reduced = _row_reduce(A, b)
    if reduced is None:
        raise Infeasible("supplied data atoms are mutually inconsistent")
    Ared, bred = reduced
    r, n = Ared.shape
    verts: list[np.ndarray] = []
    for cols in combinations(range(n), r):
        B = Ared[:, cols]
        try:
            sol = np.linalg.solve(B, bred)
        except np.linalg.LinAlgError:
            continue
        if sol.min() < -1e-9:
            continue
        q = np.zeros(n)
        q[list(cols)] = sol
        if np.abs(A @ q - b).max() > 1e-7:
            continue
        verts.append(np.clip(q[:_N], 0.0, None))
    if not verts:
        raise Infeasible("no response-type joint matches the supplied data")
    return np.unique(np.round(np.array(verts), 12), axis=0)


def feasible_range(
    target: str,
    exp: ExperimentalDistribution | None = None,
    obs: ObservationalDistribution | None = None,
    assumptions: Assumptions | None = None,
    payoffs=None,
    vertices: np.ndarray | None = None,
) -> Interval:
    """Exact [min, max] of a target over every joint consistent with the data.

    ``target`` is one of ``pns|pn|ps|y_x|yp_x|y_xp|yp_xp|benefit``; the
    benefit target needs ``payoffs`` (an object with beta/gamma/theta/delta).
    ``vertices`` can pass a precomputed :func:`feasible_vertices` result when
    ranging several targets over one dataset.

    pn and ps are ratios with data-fixed denominators, hence linear; they are
    ``Unsupported`` without the observational joint.
    """
    if target == "benefit":
        if payoffs is None:
            raise Unsupported("benefit target requires payoffs")
        obj = np.repeat(
            np.array([payoffs.beta, payoffs.gamma, payoffs.theta, payoffs.delta], dtype=float), 2
        )
        den = 1.0
    elif target in ("pn", "ps"):
        den_name = "p_xy" if target == "pn" else "p_xpyp"
        den = None if obs is None else obs.cell(den_name)
        if den is None:
            raise Unsupported(f"{target} needs the observational cell {den_name}")
        if den <= get_tolerance():
            raise ZeroDenominator(f"{den_name} = 0, {target} is undefined")
        obj = _OBJECTIVES[target]
    elif target in _OBJECTIVES:
        obj = _OBJECTIVES[target]
        den = 1.0
    else:
        raise Unsupported(f"unknown target {target!r}")
    if vertices is None:
        vertices = feasible_vertices(exp, obs, assumptions)
    values = vertices @ obj / den
    return Interval(float(values.min()), float(values.max()))


# ---------------------------------------------------------------------------
# The single-binary-confounder graph U -> X, U -> Y, X -> Y
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ConfoundedScm:
    """Parameters of the confounder graph: P(u), P(x|u), and P(y|x,u)."""

    p_u: float
    p_x_given_u: float
    p_x_given_up: float
    p_y_given_xu: float
    p_y_given_xup: float
    p_y_given_xpu: float
    p_y_given_xpup: float

    def __post_init__(self) -> None:
        for name in self.__dataclass_fields__:
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0) or not math.isfinite(v):
                raise InvalidDistribution(f"{name} must be in [0,1], got {v!r}")

    @property
    def p_x(self) -> float:
        return self.p_x_given_u * self.p_u + self.p_x_given_up * (1.0 - self.p_u)

    @property
    def p_xy(self) -> float:
        return (
            self.p_y_given_xu * self.p_x_given_u * self.p_u
            + self.p_y_given_xup * self.p_x_given_up * (1.0 - self.p_u)
        )

    @property
    def p_y_given_x(self) -> float | None:
        px = self.p_x
        if px <= get_tolerance():
            return None
        return self.p_xy / px

    @property
    def p_y_do_x(self) -> float:
        """Interventional effect by direct enumeration of the covariate."""
        return self.p_y_given_xu * self.p_u + self.p_y_given_xup * (1.0 - self.p_u)

    @property
    def p_y_do_xp(self) -> float:
        return self.p_y_given_xpu * self.p_u + self.p_y_given_xpup * (1.0 - self.p_u)


def confounded_effect_range(
    p_x: float,
    p_y_given_x: float,
    u_max: float,
    grid_step: float = 1e-3,
) -> Interval:
    """Range of P(y_x) over confounder models matching P(x) and P(y|x).

    Models are scanned on a grid over (P(u), P(x|u)); the remaining free
    parameters are eliminated exactly: P(x|u') is solved from P(x), and
    P(y_x) is affine in P(y|x,u) over its feasible interval, so only the
    interval endpoints matter.  Raises :class:`Infeasible` when no grid model
    matches.
    """
    if grid_step <= 0:
        raise InvalidDistribution(f"grid_step must be positive, got {grid_step!r}")
    for name, v in (("p_x", p_x), ("p_y_given_x", p_y_given_x), ("u_max", u_max)):
        if not (0.0 <= v <= 1.0):
            raise InvalidDistribution(f"{name} must be in [0,1], got {v!r}")
    if p_x <= get_tolerance():
        raise InvalidDistribution("p_x must be positive for P(y|x) to be defined")

    def axis(stop: float) -> np.ndarray:
        vals = np.arange(0.0, stop + grid_step / 2, grid_step)
        if vals[-1] < stop - 1e-15:
            vals = np.append(vals, stop)
        return np.minimum(vals, stop)

    pu = np.repeat(axis(u_max), len(axis(1.0)))
    pxu = np.tile(axis(1.0), len(axis(u_max)))

    tol = 1e-12
    lo = math.inf
    hi = -math.inf

    # P(u) = 1 rows: P(x|u') unconstrained, P(u|x) = 1
    full = pu >= 1.0 - tol
    if np.any(full) and abs(p_x - pxu[full]).min() <= grid_step:
        lo = min(lo, p_y_given_x)
        hi = max(hi, p_y_given_x)

    pu_, pxu_ = pu[~full], pxu[~full]
    pxup = (p_x - pxu_ * pu_) / (1.0 - pu_)
    ok = (pxup >= -tol) & (pxup <= 1.0 + tol)
    pu_, pxu_ = pu_[ok], pxu_[ok]
    if pu_.size:
        w = pxu_ * pu_ / p_x  # P(u | x)
        sat = w >= 1.0 - tol  # P(y|x,u) pinned to P(y|x); P(y|x,u') free
        if np.any(sat):
            vals_lo = p_y_given_x * pu_[sat]
            vals_hi = vals_lo + (1.0 - pu_[sat])
            lo = min(lo, float(vals_lo.min()))
            hi = max(hi, float(vals_hi.max()))
        pu_, w = pu_[~sat], w[~sat]
        if pu_.size:
            a_lo = np.zeros_like(w)
            a_hi = np.ones_like(w)
            pos = w > tol
            a_lo[pos] = np.clip((p_y_given_x - 1.0 + w[pos]) / w[pos], 0.0, 1.0)
            a_hi[pos] = np.clip(p_y_given_x / w[pos], 0.0, 1.0)
            for a in (a_lo, a_hi):
                vals = a * pu_ + (p_y_given_x - a * w) * (1.0 - pu_) / (1.0 - w)
                lo = min(lo, float(vals.min()))
                hi = max(hi, float(vals.max()))

    if not math.isfinite(lo):
        raise Infeasible("no grid model matches the supplied P(x) and P(y|x)")
    return Interval(max(lo, 0.0), min(hi, 1.0))


def grid_scms(
    u_values,
    x_values,
    y_values,
) -> Iterator[ConfoundedScm]:
    """Enumerate confounder models on a parameter grid (for sweep checks)."""
    for p_u in u_values:
        for p_x_given_u in x_values:
            for p_x_given_up in x_values:
                for p_y_given_xu in y_values:
                    for p_y_given_xup in y_values:
                        yield ConfoundedScm(
                            p_u=float(p_u),
                            p_x_given_u=float(p_x_given_u),
                            p_x_given_up=float(p_x_given_up),
                            p_y_given_xu=float(p_y_given_xu),
                            p_y_given_xup=float(p_y_given_xup),
                            p_y_given_xpu=0.0,
                            p_y_given_xpup=0.0,
                        )
