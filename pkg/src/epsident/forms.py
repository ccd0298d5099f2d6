"""Linear forms over the primitive data atoms.

The tight bounds on the counterfactual quantities are max/min over small
sets of arguments, each argument affine in six primitive atoms:

    p_y_do_x, p_y_do_xp            (experimental)
    p_xy, p_xyp, p_xpy, p_xpyp     (observational joint cells)

Pair conditions are differences of such arguments.  To state each condition
in its conventional simplified shape (and to evaluate it from partial data),
a difference is mechanically normalized:

1. reduce cell coefficients modulo the identity  sum(cells) = 1, picking the
   shift that zeroes the most cells;
2. group equal-coefficient cell pairs into marginals P(x), P(x'), P(y), P(y');
3. fold a +-1 constant into a complement quantity, e.g. 1 - P(y_x) = P(y'_x).

The resulting :class:`GroupedExpr` is a signed sum of named quantities.  It
evaluates exactly from full data, and one-sidedly (an upper bound) from
partial data plus asserted marginal bounds, which is what premise checks
need.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

EXP_ATOMS = ("p_y_do_x", "p_y_do_xp")
CELL_ATOMS = ("p_xy", "p_xyp", "p_xpy", "p_xpyp")
ATOMS = EXP_ATOMS + CELL_ATOMS

#: quantities a grouped expression may reference, in canonical display order
QUANTITIES = (
    "p_y_do_x",
    "p_y_do_xp",
    "p_yp_do_x",
    "p_yp_do_xp",
    "p_x",
    "p_xp",
    "p_y",
    "p_yp",
    "p_xy",
    "p_xyp",
    "p_xpy",
    "p_xpyp",
)

QUANTITY_LABELS = {
    "p_y_do_x": "P(y_x)",
    "p_y_do_xp": "P(y_{x'})",
    "p_yp_do_x": "P(y'_x)",
    "p_yp_do_xp": "P(y'_{x'})",
    "p_x": "P(x)",
    "p_xp": "P(x')",
    "p_y": "P(y)",
    "p_yp": "P(y')",
    "p_xy": "P(x,y)",
    "p_xyp": "P(x,y')",
    "p_xpy": "P(x',y)",
    "p_xpyp": "P(x',y')",
}

#: primitive atoms each quantity is computed from
QUANTITY_ATOMS: dict[str, tuple[str, ...]] = {
    "p_y_do_x": ("p_y_do_x",),
    "p_y_do_xp": ("p_y_do_xp",),
    "p_yp_do_x": ("p_y_do_x",),
    "p_yp_do_xp": ("p_y_do_xp",),
    "p_x": ("p_xy", "p_xyp"),
    "p_xp": ("p_xpy", "p_xpyp"),
    "p_y": ("p_xy", "p_xpy"),
    "p_yp": ("p_xyp", "p_xpyp"),
    "p_xy": ("p_xy",),
    "p_xyp": ("p_xyp",),
    "p_xpy": ("p_xpy",),
    "p_xpyp": ("p_xpyp",),
}

_QUANTITY_FROM_ATOMS: dict[str, Callable[[Mapping[str, float]], float]] = {
    "p_y_do_x": lambda a: a["p_y_do_x"],
    "p_y_do_xp": lambda a: a["p_y_do_xp"],
    "p_yp_do_x": lambda a: 1.0 - a["p_y_do_x"],
    "p_yp_do_xp": lambda a: 1.0 - a["p_y_do_xp"],
    "p_x": lambda a: a["p_xy"] + a["p_xyp"],
    "p_xp": lambda a: a["p_xpy"] + a["p_xpyp"],
    "p_y": lambda a: a["p_xy"] + a["p_xpy"],
    "p_yp": lambda a: a["p_xyp"] + a["p_xpyp"],
    "p_xy": lambda a: a["p_xy"],
    "p_xyp": lambda a: a["p_xyp"],
    "p_xpy": lambda a: a["p_xpy"],
    "p_xpyp": lambda a: a["p_xpyp"],
}


def quantity_from_atoms(name: str, atoms: Mapping[str, float]) -> float:
    """Value of a named quantity given all its primitive atoms (KeyError if absent)."""
    return _QUANTITY_FROM_ATOMS[name](atoms)


_ETA = 1e-12  # coefficients are small integers; exact comparisons with slack


@dataclass(frozen=True, slots=True)
class LinearForm:
    """const + sum(coef * atom) over the six primitive atoms."""

    const: float
    coefs: tuple[float, ...]  # aligned with ATOMS

    @staticmethod
    def zero() -> "LinearForm":
        return LinearForm(0.0, (0.0,) * len(ATOMS))

    @staticmethod
    def constant(value: float) -> "LinearForm":
        return LinearForm(float(value), (0.0,) * len(ATOMS))

    @staticmethod
    def atom(name: str, coef: float = 1.0) -> "LinearForm":
        coefs = [0.0] * len(ATOMS)
        coefs[ATOMS.index(name)] = float(coef)
        return LinearForm(0.0, tuple(coefs))

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(
            self.const + other.const,
            tuple(a + b for a, b in zip(self.coefs, other.coefs)),
        )

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(
            self.const - other.const,
            tuple(a - b for a, b in zip(self.coefs, other.coefs)),
        )

    def __neg__(self) -> "LinearForm":
        return LinearForm(-self.const, tuple(-a for a in self.coefs))


def _mode_shift(cell_coefs: list[float]) -> float:
    """Shift that zeroes the most cell coefficients; ties prefer no shift."""
    counts: dict[float, int] = {}
    for c in cell_coefs:
        counts[c] = counts.get(c, 0) + 1
    best = max(counts.values())
    candidates = sorted(v for v, n in counts.items() if n == best)
    if any(abs(v) <= _ETA for v in candidates):
        return 0.0
    return min(candidates, key=lambda v: (abs(v), v))


@dataclass(frozen=True, slots=True)
class GroupedExpr:
    """A signed sum of named quantities, with a rendered label."""

    terms: tuple[tuple[float, str], ...]
    label: str

    def quantities(self) -> tuple[str, ...]:
        return tuple(name for _, name in self.terms)

    def atoms(self) -> tuple[str, ...]:
        seen: list[str] = []
        for _, name in self.terms:
            for atom in QUANTITY_ATOMS[name]:
                if atom not in seen:
                    seen.append(atom)
        return tuple(seen)

    def value_from_atoms(self, atoms: Mapping[str, float]) -> float:
        """Exact value given every referenced primitive atom."""
        return sum(c * quantity_from_atoms(name, atoms) for c, name in self.terms)

    def is_zero(self) -> bool:
        return not self.terms


def _render(terms: tuple[tuple[float, str], ...]) -> str:
    if not terms:
        return "0"
    parts: list[str] = []
    for coef, name in terms:
        mag = abs(coef)
        body = QUANTITY_LABELS[name]
        if abs(mag - 1.0) > _ETA:
            body = f"{mag:g}*{body}"
        if not parts:
            parts.append(body if coef > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coef > 0 else f"- {body}")
    return " ".join(parts)


def group(form: LinearForm) -> GroupedExpr:
    """Normalize a linear form into a signed sum of named quantities.

    Raises ValueError when a nonzero constant survives every folding rule;
    the catalog arguments never trigger that.
    """
    coefs = dict(zip(ATOMS, form.coefs))
    const = form.const

    # 1. reduce cells modulo sum(cells) = 1
    shift = _mode_shift([coefs[c] for c in CELL_ATOMS])
    if abs(shift) > _ETA:
        for c in CELL_ATOMS:
            coefs[c] -= shift
        const += shift

    terms: dict[str, float] = {}

    # 2. equal-coefficient cell pairs become marginals
    for pair, marginal in (
        (("p_xy", "p_xpy"), "p_y"),
        (("p_xyp", "p_xpyp"), "p_yp"),
        (("p_xy", "p_xyp"), "p_x"),
        (("p_xpy", "p_xpyp"), "p_xp"),
    ):
        a, b = pair
        if abs(coefs[a]) > _ETA and abs(coefs[a] - coefs[b]) <= _ETA:
            terms[marginal] = terms.get(marginal, 0.0) + coefs[a]
            coefs[a] = coefs[b] = 0.0

    # 3. fold +-1 constants into complements of experimental quantities
    for name, comp in (("p_y_do_xp", "p_yp_do_xp"), ("p_y_do_x", "p_yp_do_x")):
        if const >= 1.0 - _ETA and abs(coefs[name] + 1.0) <= _ETA:
            terms[comp] = terms.get(comp, 0.0) + 1.0
            const -= 1.0
            coefs[name] = 0.0
        elif const <= -1.0 + _ETA and abs(coefs[name] - 1.0) <= _ETA:
            terms[comp] = terms.get(comp, 0.0) - 1.0
            const += 1.0
            coefs[name] = 0.0

    # 4. fold +-1 constants into complements of marginals
    for name, comp in (("p_y", "p_yp"), ("p_yp", "p_y"), ("p_x", "p_xp"), ("p_xp", "p_x")):
        have = terms.get(name, 0.0)
        if const >= 1.0 - _ETA and abs(have + 1.0) <= _ETA:
            terms[comp] = terms.get(comp, 0.0) + 1.0
            const -= 1.0
            del terms[name]
        elif const <= -1.0 + _ETA and abs(have - 1.0) <= _ETA:
            terms[comp] = terms.get(comp, 0.0) - 1.0
            const += 1.0
            del terms[name]

    for name, coef in coefs.items():
        if abs(coef) > _ETA:
            terms[name] = terms.get(name, 0.0) + coef

    if abs(const) > _ETA:
        raise ValueError(f"cannot express residual constant {const} as named quantities")

    ordered = tuple(
        sorted(
            ((c, n) for n, c in terms.items() if abs(c) > _ETA),
            key=lambda t: (t[0] < 0, QUANTITIES.index(t[1])),
        )
    )
    return GroupedExpr(ordered, _render(ordered))
