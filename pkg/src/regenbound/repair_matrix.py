"""
Regions of the (d+1) x (d+1) repair matrix and the entropy bounds they give.

Cell ``(x, y)`` holds the helper data sent by node ``x`` to the replacement
of node ``y``; the diagonal is empty.  A region is a trapezium of cells below
the diagonal, split into groups, each made of a full rectangle ``R`` (rows
bounded through the row-sum proposition) and a triangle ``T`` (bounded by
``beta`` per cell).  Comparing the resulting upper bound on the joint
entropy with the column-sum lower bound yields a lower bound on the gap
``eps`` between functional and exact file sizes.

Only ``n = d + 1`` is modelled here.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .tradeoff import CodeParams, q0_of, q1_of, rational


class CaseMismatchError(ValueError):
    pass


class RenderError(ValueError):
    pass


class Case(str, enum.Enum):
    C1A = "1a"
    C1B = "1b"
    C2A = "2a"
    C2B = "2b"

    @property
    def family(self) -> int:
        return 1 if self in (Case.C1A, Case.C1B) else 2


class RepairSymbol(NamedTuple):
    x: int
    y: int


class LinearForm(NamedTuple):
    """``beta * b + theta * t + eps * e`` with rational coefficients."""
    beta: Fraction
    theta: Fraction
    eps: Fraction

    def __add__(self, other):
        return LinearForm(*(a + b for a, b in zip(self, other)))

    def scale(self, c) -> "LinearForm":
        return LinearForm(*(c * a for a in self))

    def evaluate(self, beta, theta, eps=0) -> Fraction:
        return self.beta * beta + self.theta * theta + self.eps * eps


ZERO = LinearForm(Fraction(0), Fraction(0), Fraction(0))


def form(beta=0, theta=0, eps=0) -> LinearForm:
    return LinearForm(Fraction(beta), Fraction(theta), Fraction(eps))


@dataclass(frozen=True)
class RegionSpec:
    case: Case
    p: int
    q: int
    k: int
    d: int
    cells: frozenset
    groups: tuple          # ((R_i, T_i), ...)

    @property
    def columns(self) -> list:
        return sorted({c.y for c in self.cells})


class CaseBounds(NamedTuple):
    upper: LinearForm
    lower: LinearForm


def case_q(k: int, p: int, case: Case) -> int:
    return q0_of(k, p) if case.family == 1 else q1_of(k, p)


def build_region(params: CodeParams, p: int, case) -> RegionSpec:
    case = Case(case)
    k, d = params.k, params.d
    if case.family == 1 and not 2 <= p <= k - 1:
        raise CaseMismatchError(f"case {case.value} needs p in 2..k-1, got p={p}")
    if case.family == 2 and not 1 <= p <= k - 2:
        raise CaseMismatchError(f"case {case.value} needs p in 1..k-2, got p={p}")
    q = case_q(k, p, case)
    if case in (Case.C1A, Case.C2A) and q < 1:
        raise CaseMismatchError(f"case {case.value} needs q >= 1, got q={q} for (k, p) = ({k}, {p})")
    if case in (Case.C1B, Case.C2B) and q != 0:
        raise CaseMismatchError(f"case {case.value} needs q = 0, got q={q} for (k, p) = ({k}, {p})")

    w = p if case.family == 1 else p + 1
    if case in (Case.C1A, Case.C2A):
        y_hi = (q + 1) * w - 1
        groups = []
        for i in range(1, q + 1):
            ys = range(w * i, w * (i + 1))
            rect = {RepairSymbol(x, y) for y in ys for x in range(w * (i + 1), d + 2)}
            tri = {RepairSymbol(x, y) for y in ys
                   for x in range(w * i + 1, w * (i + 1)) if x > y}
            groups.append((frozenset(rect), frozenset(tri)))
    else:
        y_hi = k
        ys = range(w, k + 1)
        rect = {RepairSymbol(x, y) for y in ys for x in range(k + 1, d + 2)}
        tri = {RepairSymbol(x, y) for y in ys for x in range(w + 1, k + 1) if x > y}
        groups = [(frozenset(rect), frozenset(tri))]
    cells = frozenset(RepairSymbol(x, y) for x in range(w + 1, d + 2)
                      for y in range(w, y_hi + 1) if x > y)
    return RegionSpec(case, p, q, k, d, cells, tuple(groups))


def _row_form(case: Case, width: int) -> LinearForm:
    # joint entropy of one row of `width` cells
    if case.family == 1:
        return form(1, width - 1, width)
    return form(2, -1, width)


def upper_bound_form(region: RegionSpec) -> LinearForm:
    """Upper bound on the region's joint entropy, rebuilt from cell counts."""
    total = ZERO
    for rect, tri in region.groups:
        rows = sorted({c.x for c in rect})
        width = len({c.y for c in rect})
        assert len(rect) == len(rows) * width, "rectangle is not full"
        total = total + _row_form(region.case, width).scale(len(rows))
        total = total + form(len(tri))
    return total


def lower_bound_form(region: RegionSpec) -> LinearForm:
    """Column-sum lower bound, with alpha = (d-p+1)beta - theta substituted."""
    d, p = region.d, region.p
    total = form(eps=-1)
    for y in region.columns:
        if y <= p:
            total = total + form(d - p + 1, -1)
        else:
            total = total + form(d - y + 1)
    return total


def case_bounds(region: RegionSpec) -> CaseBounds:
    return CaseBounds(upper_bound_form(region), lower_bound_form(region))


def epsilon_form(region: RegionSpec):
    """Return ``(b, t)`` with the smallest admissible eps equal to ``b*beta + t*theta``."""
    up, lo = case_bounds(region)
    denom = up.eps - lo.eps
    assert denom > 0
    return (lo.beta - up.beta) / denom, (lo.theta - up.theta) / denom


def solve_epsilon(region: RegionSpec, beta, theta) -> Fraction:
    b, t = epsilon_form(region)
    return b * rational(beta) + t * rational(theta)


def row_sum_identity(d: int, p_eff: int, q: int):
    """Both sides of sum_{i=1..q} (d - (i+1) p_eff + 2) = q (d - p_eff (q+3)/2 + 2)."""
    if q < 1 or p_eff < 1:
        raise ValueError(f"need q >= 1 and p_eff >= 1, got q={q}, p_eff={p_eff}")
    lhs = Fraction(sum(d - (i + 1) * p_eff + 2 for i in range(1, q + 1)))
    rhs = q * (d - Fraction(p_eff * (q + 3), 2) + 2)
    return lhs, rhs


def applicable_cases(k: int, p: int) -> list:
    """Cases usable at p: at most one per family, picked by q0 / q1."""
    out = []
    if 2 <= p <= k - 1:
        out.append(Case.C1A if q0_of(k, p) >= 1 else Case.C1B)
    if 1 <= p <= k - 2:
        out.append(Case.C2A if q1_of(k, p) >= 1 else Case.C2B)
    return out


MAX_RENDER = 40


def render_region(region: RegionSpec) -> str:
    """Text picture of the repair matrix: rows are helpers, columns repaired nodes.

    ``\\`` marks the diagonal, ``R<i>`` / ``T<i>`` the rectangle and triangle
    of group i, and ``.`` unused cells.
    """
    size = region.d + 1
    if size > MAX_RENDER:
        raise RenderError(f"d+1 = {size} exceeds the render limit {MAX_RENDER}")
    label = {}
    for i, (rect, tri) in enumerate(region.groups, start=1):
        label.update((c, f"R{i}") for c in rect)
        label.update((c, f"T{i}") for c in tri)
    width = max(3, max((len(s) for s in label.values()), default=0), len(str(size))) + 1
    lines = ["x\\y".rjust(width) + "".join(str(y).rjust(width) for y in range(1, size + 1))]
    for x in range(1, size + 1):
        row = [str(x).rjust(width)]
        for y in range(1, size + 1):
            if x == y:
                mark = "\\"
            else:
                mark = label.get(RepairSymbol(x, y), ".")
            row.append(mark.rjust(width))
        lines.append("".join(row))
    return "\n".join(lines) + "\n"
