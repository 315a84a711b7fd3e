"""
Two-phase primal simplex over exact rationals.

The tableau holds integers: each row has its own positive denominator and
is reduced by its gcd after every update, so no Fraction objects are built
in the inner loop.  Rows live in int64 numpy arrays while the entries are
provably small enough, and in arrays of Python ints after that.  All
structural variables are non-negative.

Pricing is Dantzig's rule, switching to Bland's rule after a run of
degenerate pivots and back once the objective moves; the method therefore
always terminates.
"""

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

LE, EQ, GE = "<=", "=", ">="
_FLIP = {LE: GE, GE: LE, EQ: EQ}

DEGENERATE_LIMIT = 50


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


@dataclass
class LinprogResult:
    status: Status
    value: Optional[Fraction] = None
    x: dict = field(default_factory=dict)
    duals: Optional[list] = None
    pivots: int = 0


def _int_row(values):
    """Scale a list of Fractions to ``(ints, den)`` with den > 0."""
    den = 1
    for v in values:
        if v.denominator != 1:
            den = den * v.denominator // math.gcd(den, v.denominator)
    return [v.numerator * (den // v.denominator) for v in values], den


# int64 is used while every intermediate provably stays below this bound
_SAFE = 1 << 62


def _absmax(a) -> int:
    return int(np.abs(a).max()) if a.size else 0


def _gcd(arr, extra) -> int:
    """gcd of a 1-d array and one more integer, exact for Python-int arrays."""
    if arr.dtype == object:
        return math.gcd(int(extra), *(int(v) for v in arr))
    return int(np.gcd(np.gcd.reduce(arr), extra))


def _row_gcds(block, dens):
    if block.dtype == object:
        return np.array([_gcd(r, d) for r, d in zip(block, dens)], dtype=object)
    return np.gcd(np.gcd.reduce(block, axis=1), dens)


class _Tableau:
    """Integer rows ``T[i] / dens[i]``; the last column is the right-hand side.

    Storage is int64 until a pivot could overflow, after which the arrays
    switch to Python ints (dtype object) for the rest of the solve.
    """

    def __init__(self, rows, dens, basis):
        self.T = np.array(rows, dtype=object).reshape(len(rows), -1)
        self.dens = np.array(dens, dtype=object)
        self._shrink()
        self.basis = basis
        self.obj = None      # reduced costs, last entry = minus objective value
        self.obj_den = 1
        self.pivots = 0

    def _shrink(self):
        if _absmax(self.T) < _SAFE and _absmax(self.dens) < _SAFE:
            self.T = self.T.astype(np.int64)
            self.dens = self.dens.astype(np.int64)

    def _widen(self):
        self.T = self.T.astype(object)
        self.dens = self.dens.astype(object)
        self.obj = self.obj.astype(object)

    @property
    def big(self) -> bool:
        return self.T.dtype == object

    def set_costs(self, cost):
        width = self.T.shape[1]
        obj = [Fraction(0)] * width
        for c, v in cost.items():
            obj[c] = Fraction(v)
        obj, od = _int_row(obj)
        obj = np.array(obj, dtype=object)
        for i, col in enumerate(self.basis):
            cb = Fraction(cost.get(col, 0))
            if cb:
                den = int(self.dens[i])
                row = np.array([int(v) for v in self.T[i]], dtype=object)
                obj = obj * (cb.denominator * den) - row * (cb.numerator * od)
                od = od * cb.denominator * den
                g = math.gcd(od, *obj)
                obj, od = obj // g, od // g
        self.obj, self.obj_den = obj, od
        if not self.big and _absmax(obj) < _SAFE:
            self.obj = obj.astype(np.int64)

    def value(self) -> Fraction:
        return -Fraction(int(self.obj[-1]), int(self.obj_den))

    def pivot(self, r, s):
        row = self.T[r].copy()
        a = row[s]
        if a < 0:
            row, a = -row, -a
        g = _gcd(row, a)
        if g > 1:
            row, a = row // g, a // g
        col = self.T[:, s].copy()
        col[r] = 0
        idx = np.nonzero(col)[0]
        f = self.obj[s]
        if not self.big:
            bound = max(_absmax(self.T[idx]), _absmax(self.dens[idx]), abs(int(f)),
                        _absmax(self.obj), int(self.obj_den)) * int(a) \
                + max(_absmax(col), abs(int(f))) * _absmax(row)
            if bound >= _SAFE:
                self._widen()
                row, col = row.astype(object), col.astype(object)
                a = int(a)
        self.T[r] = row
        self.dens[r] = a
        if idx.size:
            sub = self.T[idx] * a - np.outer(col[idx], row)
            dens = self.dens[idx] * a
            g = _row_gcds(sub, dens)
            self.T[idx] = sub // g[:, None]
            self.dens[idx] = dens // g
        if f:
            obj = self.obj * a - f * row
            od = self.obj_den * a
            g = _gcd(obj, od)
            self.obj, self.obj_den = obj // g, od // g
        self.basis[r] = s
        self.pivots += 1

    def drop_rows(self, keep):
        self.T = self.T[keep]
        self.dens = self.dens[keep]
        self.basis = [self.basis[i] for i in keep]

    def run(self, banned=frozenset()):
        """Minimize the current costs; return OPTIMAL or UNBOUNDED."""
        allowed = np.ones(self.T.shape[1] - 1, dtype=bool)
        allowed[list(banned)] = False
        bland = False
        streak = 0
        while True:
            neg = np.nonzero((self.obj[:-1] < 0) & allowed)[0]
            if not neg.size:
                return Status.OPTIMAL
            if bland:
                s = int(neg[0])
            else:
                s = int(neg[np.argmin(self.obj[neg])])
            col = self.T[:, s]
            best = None
            for i in np.nonzero(col > 0)[0]:
                a, b = int(col[i]), int(self.T[i, -1])
                if best is None:
                    best = (i, a, b)
                    continue
                _, a0, b0 = best
                lhs, rhs = b * a0, b0 * a
                if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best[0]]):
                    best = (i, a, b)
            if best is None:
                return Status.UNBOUNDED
            degenerate = best[2] == 0
            self.pivot(int(best[0]), s)
            if degenerate:
                streak += 1
                if streak >= DEGENERATE_LIMIT:
                    bland = True
            else:
                streak = 0
                bland = False


def linprog(n_cols, cost, constraints, maximize=False) -> LinprogResult:
    """Optimize ``cost . x`` subject to ``constraints`` and ``x >= 0``.

    ``cost`` maps column -> coefficient; each constraint is ``(coefs, rel,
    rhs)`` with ``coefs`` a column -> coefficient map and ``rel`` one of
    ``"<="``, ``"="``, ``">="``.  Duals are returned per constraint in the
    caller's orientation: ``value == sum(y_i * rhs_i)`` and, for a
    maximization, ``sum_i y_i A_i >= cost`` with ``y_i >= 0`` on ``<=`` rows
    and ``y_i <= 0`` on ``>=`` rows (mirrored for minimization).
    """
    specs = []
    nxt = n_cols
    artificial = set()
    for coefs, rel, b in constraints:
        if rel not in _FLIP:
            raise ValueError(f"unknown relation {rel!r}")
        b = Fraction(b)
        coefs = {c: Fraction(v) for c, v in coefs.items() if v}
        s = 1
        if b < 0 or (b == 0 and rel == GE):
            coefs = {c: -v for c, v in coefs.items()}
            b, rel, s = -b, _FLIP[rel], -1
        extra = {}
        if rel == GE:
            extra[nxt] = Fraction(-1)
            nxt += 1
        ident = nxt
        extra[ident] = Fraction(1)
        if rel != LE:
            artificial.add(ident)
        nxt += 1
        specs.append((coefs, extra, b, s, ident))

    width = nxt + 1
    rows, dens, basis, idents, signs = [], [], [], [], []
    for coefs, extra, b, s, ident in specs:
        vals = [Fraction(0)] * width
        for c, v in coefs.items():
            vals[c] = v
        for c, v in extra.items():
            vals[c] = v
        vals[-1] = b
        row, den = _int_row(vals)
        rows.append(row)
        dens.append(den)
        basis.append(ident)
        idents.append(ident)
        signs.append(s)

    tab = _Tableau(rows, dens, basis)
    if artificial:
        tab.set_costs({a: 1 for a in artificial})
        tab.run()
        if tab.value() != 0:
            return LinprogResult(Status.INFEASIBLE, pivots=tab.pivots)
        keep = []
        for i in range(len(tab.basis)):
            if tab.basis[i] in artificial:
                row = tab.T[i]
                j = next((c for c in range(width - 1) if row[c] and c not in artificial), None)
                if j is None:
                    continue        # redundant row
                tab.pivot(i, j)
            keep.append(i)
        tab.drop_rows(keep)

    sgn = -1 if maximize else 1
    costs = {c: sgn * Fraction(v) for c, v in cost.items() if v}
    tab.set_costs(costs)
    status = tab.run(banned=artificial)
    if status is Status.UNBOUNDED:
        return LinprogResult(status, pivots=tab.pivots)

    value = tab.value() * sgn
    x = {}
    for col, row, den in zip(tab.basis, tab.T, tab.dens):
        if col < n_cols and row[-1]:
            x[col] = Fraction(int(row[-1]), int(den))
    duals = [-sgn * s * Fraction(int(tab.obj[e]), int(tab.obj_den))
             for e, s in zip(idents, signs)]
    return LinprogResult(Status.OPTIMAL, value, x, duals, tab.pivots)
