"""
Linear programs over joint-entropy coordinates.

A set of ``n_v`` random variables is indexed by bit position; the joint
entropy of a subset is the coordinate keyed by its bitmask, e.g. ``0b101``
is ``H(X0, X2)``.  The empty set is coordinate 0 and is identically zero,
so it never appears in expressions.

Adding the elemental inequalities gives the Shannon outer bound; problems
are then solved exactly by :mod:`regenbound.simplex`.
"""

import enum
import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import simplex
from .simplex import Status

MAX_VARS = 12


class EntropyError(ValueError):
    pass


class VarSet:
    """Ordered, uniquely labelled random variables."""

    def __init__(self, labels):
        labels = tuple(labels)
        if not 1 <= len(labels) <= MAX_VARS:
            raise EntropyError(f"need 1..{MAX_VARS} variables, got {len(labels)}")
        if len(set(labels)) != len(labels):
            raise EntropyError(f"duplicate labels in {labels}")
        for lab in labels:
            if not lab or any(ch.isspace() for ch in lab):
                raise EntropyError(f"labels must be non-empty without whitespace: {lab!r}")
        self.labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}

    @property
    def n_v(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.n_v) - 1

    def mask(self, *labels) -> int:
        out = 0
        for lab in labels:
            if isinstance(lab, (list, tuple, set, frozenset)):
                out |= self.mask(*lab)
            else:
                try:
                    out |= 1 << self._index[lab]
                except KeyError:
                    raise EntropyError(f"unknown variable {lab!r}") from None
        return out

    def names(self, mask: int) -> list:
        return [lab for i, lab in enumerate(self.labels) if mask >> i & 1]

    def __eq__(self, other):
        return isinstance(other, VarSet) and other.labels == self.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"VarSet({list(self.labels)})"


class EntropyExpr:
    """Sparse linear combination of joint entropies plus a constant."""

    __slots__ = ("terms", "constant")

    def __init__(self, terms=None, constant=0):
        clean = {}
        for mask, coef in (terms or {}).items():
            if mask <= 0:
                raise EntropyError(f"subset masks must be positive, got {mask}")
            coef = Fraction(coef)
            if coef:
                clean[mask] = clean.get(mask, 0) + coef
        self.terms = {m: c for m, c in sorted(clean.items()) if c}
        self.constant = Fraction(constant)

    def __add__(self, other):
        if not isinstance(other, EntropyExpr):
            return EntropyExpr(self.terms, self.constant + Fraction(other))
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return EntropyExpr(terms, self.constant + other.constant)

    __radd__ = __add__

    def __neg__(self):
        return EntropyExpr({m: -c for m, c in self.terms.items()}, -self.constant)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        c = Fraction(c)
        return EntropyExpr({m: c * v for m, v in self.terms.items()}, c * self.constant)

    __rmul__ = __mul__

    def key(self):
        return tuple(self.terms.items()), self.constant

    def __eq__(self, other):
        return isinstance(other, EntropyExpr) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def max_mask(self) -> int:
        return max(self.terms, default=0)

    def evaluate(self, h) -> Fraction:
        return sum((c * h.get(m, 0) for m, c in self.terms.items()), self.constant)

    def __repr__(self):
        parts = [f"{c:+}*H[{m}]" for m, c in self.terms.items()]
        if self.constant or not parts:
            parts.append(f"{self.constant:+}")
        return " ".join(parts)


def H(mask: int) -> EntropyExpr:
    return EntropyExpr({mask: 1}) if mask else EntropyExpr()


def cond_entropy(a: int, b: int = 0) -> EntropyExpr:
    """H(A | B) = H(A u B) - H(B)."""
    return H(a | b) - H(b)


def mutual_info(a: int, b: int, c: int = 0) -> EntropyExpr:
    """I(A; B | C) = H(AC) + H(BC) - H(ABC) - H(C)."""
    return H(a | c) + H(b | c) - H(a | b | c) - H(c)


def num_elemental(n_v: int) -> int:
    if n_v == 1:
        return 1
    return n_v + n_v * (n_v - 1) // 2 * 2 ** (n_v - 2)


def elemental_inequalities(n_v: int) -> list:
    """Elemental Shannon inequalities ``expr >= 0`` on ``n_v`` variables."""
    if not 1 <= n_v <= MAX_VARS:
        raise EntropyError(f"n_v must lie in 1..{MAX_VARS}, got {n_v}")
    return list(_elemental(n_v))


@functools.lru_cache(maxsize=None)
def _elemental(n_v: int) -> tuple:
    full = (1 << n_v) - 1
    out = [cond_entropy(1 << i, full ^ (1 << i)) for i in range(n_v)]
    for i, j in itertools.combinations(range(n_v), 2):
        rest = full ^ (1 << i) ^ (1 << j)
        # every subset K of the remaining variables
        k = rest
        subsets = []
        while True:
            subsets.append(k)
            if k == 0:
                break
            k = (k - 1) & rest
        for k in sorted(subsets):
            out.append(mutual_info(1 << i, 1 << j, k))
    return tuple(out)


class Relation(str, enum.Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class Sense(str, enum.Enum):
    MAX = "max"
    MIN = "min"


@dataclass(frozen=True)
class Constraint:
    expr: EntropyExpr
    rel: Relation
    rhs: Fraction


@dataclass
class LPProblem:
    varset: VarSet
    objective: EntropyExpr = field(default_factory=EntropyExpr)
    sense: Sense = Sense.MAX
    constraints: list = field(default_factory=list)

    @property
    def n_v(self) -> int:
        return self.varset.n_v

    def add(self, expr: EntropyExpr, rel, rhs=0):
        """Append ``expr rel rhs``; the expression's constant moves to the right."""
        rel = Relation(rel)
        if expr.max_mask() > self.varset.full:
            raise EntropyError("constraint mentions a subset outside the variable set")
        rhs = Fraction(rhs) - expr.constant
        self.constraints.append(Constraint(EntropyExpr(expr.terms), rel, rhs))
        return self

    def add_elemental(self):
        # the cached expressions are shared, which is safe as nothing mutates them
        self.constraints.extend(Constraint(e, Relation.GE, Fraction(0))
                                for e in elemental_inequalities(self.n_v))
        return self


def shannon_problem(varset: VarSet, objective: EntropyExpr, sense=Sense.MAX) -> LPProblem:
    prob = LPProblem(varset, objective, Sense(sense))
    return prob.add_elemental()


def functional_dependency(problem: LPProblem, of: int, given: int):
    """Constrain the variables in ``of`` to be a function of those in ``given``."""
    if not of:
        raise EntropyError("dependent set must be non-empty")
    if of & given:
        raise EntropyError("dependent and conditioning sets overlap")
    problem.add(cond_entropy(of, given), Relation.EQ, 0)


@dataclass
class LPSolution:
    status: Status
    value: Optional[Fraction] = None
    dual_certificate: Optional[list] = None
    primal: dict = field(default_factory=dict)


def _primal_rows(problem):
    return [({m - 1: c for m, c in con.expr.terms.items()}, con.rel.value, con.rhs)
            for con in problem.constraints]


def solve(problem: LPProblem) -> LPSolution:
    """Optimize the problem over non-negative entropy coordinates.

    The simplex runs on the dual, which has one row per subset instead of
    one per constraint; its optimal point is the certificate.  A
    minimization is handled as the maximization of the negated objective.
    """
    if problem.n_v > MAX_VARS:
        raise EntropyError(f"too many variables: {problem.n_v} > {MAX_VARS}")
    flip = 1 if problem.sense is Sense.MAX else -1
    n_masks = problem.varset.full

    # multiplier of constraint i is sum(sgn * x[col]) over its (col, sgn) pairs
    parts = []
    col = 0
    for con in problem.constraints:
        if con.rel is Relation.LE:
            parts.append([(col, 1)])
            col += 1
        elif con.rel is Relation.GE:
            parts.append([(col, -1)])
            col += 1
        else:
            parts.append([(col, 1), (col + 1, -1)])
            col += 2
    n_dual = col

    dual_rows = [dict() for _ in range(n_masks)]
    dual_cost = {}
    for con, pp in zip(problem.constraints, parts):
        for c, sg in pp:
            if con.rhs:
                dual_cost[c] = sg * con.rhs
            for m, a in con.expr.terms.items():
                dual_rows[m - 1][c] = sg * a
    rows = [(dual_rows[m - 1], ">=", flip * problem.objective.terms.get(m, 0))
            for m in range(1, n_masks + 1)]
    res = simplex.linprog(n_dual, dual_cost, rows, maximize=False)

    if res.status is Status.UNBOUNDED:
        return LPSolution(Status.INFEASIBLE)
    if res.status is Status.INFEASIBLE:
        # primal is unbounded or infeasible; a feasibility run tells which
        feas = simplex.linprog(n_masks, {}, _primal_rows(problem))
        status = Status.INFEASIBLE if feas.status is Status.INFEASIBLE else Status.UNBOUNDED
        return LPSolution(status)

    ys = []
    for pp in parts:
        ys.append(flip * sum((sg * res.x.get(c, Fraction(0)) for c, sg in pp), Fraction(0)))
    value = flip * res.value + problem.objective.constant
    primal = {i + 1: v for i, v in enumerate(res.duals) if v}
    return LPSolution(Status.OPTIMAL, value, ys, primal)


def check_certificate(problem: LPProblem, solution: LPSolution) -> bool:
    """Recombine the dual multipliers and confirm they prove the optimum.

    For a maximization the multipliers must be non-negative on ``<=`` rows and
    non-positive on ``>=`` rows, their combination of constraint left-hand
    sides must dominate the objective coordinate-wise (entropies are
    non-negative), and their combination of right-hand sides must equal the
    reported value.  A minimization is the mirror image.
    """
    y = solution.dual_certificate
    if solution.status is not Status.OPTIMAL or y is None or len(y) != len(problem.constraints):
        return False
    flip = 1 if problem.sense is Sense.MAX else -1
    combo = {}
    bound = problem.objective.constant
    for lam, con in zip(y, problem.constraints):
        lam = Fraction(lam)
        if con.rel is Relation.LE and flip * lam < 0:
            return False
        if con.rel is Relation.GE and flip * lam > 0:
            return False
        for m, c in con.expr.terms.items():
            combo[m] = combo.get(m, 0) + lam * c
        bound += lam * con.rhs
    for m in range(1, problem.varset.full + 1):
        diff = combo.get(m, 0) - problem.objective.terms.get(m, 0)
        if flip * diff < 0:
            return False
    return bound == solution.value


# text format, one record per line:
#   lp <n_v> <max|min>
#   labels <l1> ... <ln>
#   objective <mask>:<coef> ... [const:<c>]
#   c <mask>:<coef> ... <rel> <rhs>

def _fmt(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _terms(expr: EntropyExpr) -> list:
    return [f"{m}:{'+' if c > 0 else ''}{_fmt(c)}" for m, c in expr.terms.items()]


def dumps(problem: LPProblem) -> str:
    lines = [f"lp {problem.n_v} {problem.sense.value}",
             "labels " + " ".join(problem.varset.labels)]
    obj = _terms(problem.objective)
    if problem.objective.constant:
        obj.append(f"const:{_fmt(problem.objective.constant)}")
    lines.append(" ".join(["objective"] + obj))
    for con in problem.constraints:
        lines.append(" ".join(["c"] + _terms(con.expr) + [con.rel.value, _fmt(con.rhs)]))
    return "\n".join(lines) + "\n"


def _parse_terms(tokens, lineno):
    terms, const = {}, Fraction(0)
    for tok in tokens:
        key, sep, val = tok.partition(":")
        if not sep:
            raise EntropyError(f"line {lineno}: bad term {tok!r}")
        try:
            if key == "const":
                const = Fraction(val)
            else:
                terms[int(key)] = Fraction(val)
        except (ValueError, ZeroDivisionError):
            raise EntropyError(f"line {lineno}: bad term {tok!r}") from None
    return terms, const


def loads(text: str) -> LPProblem:
    problem = None
    labels = None
    header = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens or tokens[0].startswith("#"):
            continue
        head, rest = tokens[0], tokens[1:]
        if head == "lp":
            if len(rest) != 2:
                raise EntropyError(f"line {lineno}: expected 'lp <n_v> <sense>'")
            try:
                header = (int(rest[0]), Sense(rest[1]))
            except ValueError as exc:
                raise EntropyError(f"line {lineno}: {exc}") from None
        elif head == "labels":
            if header is None or len(rest) != header[0]:
                raise EntropyError(f"line {lineno}: labels do not match header")
            labels = VarSet(rest)
            problem = LPProblem(labels, sense=header[1])
        elif head == "objective":
            if problem is None:
                raise EntropyError(f"line {lineno}: objective before labels")
            terms, const = _parse_terms(rest, lineno)
            problem.objective = EntropyExpr(terms, const)
        elif head == "c":
            if problem is None or len(rest) < 2:
                raise EntropyError(f"line {lineno}: malformed constraint")
            terms, _ = _parse_terms(rest[:-2], lineno)
            try:
                problem.add(EntropyExpr(terms), Relation(rest[-2]), Fraction(rest[-1]))
            except ValueError as exc:
                raise EntropyError(f"line {lineno}: {exc}") from None
        else:
            raise EntropyError(f"line {lineno}: unknown record {head!r}")
    if problem is None:
        raise EntropyError("no problem found")
    return problem


def dumps_solution(sol: LPSolution) -> str:
    lines = [f"status {sol.status.value}"]
    if sol.value is not None:
        lines.append(f"value {_fmt(sol.value)}")
    for i, lam in enumerate(sol.dual_certificate or []):
        if lam:
            lines.append(f"dual {i} {_fmt(lam)}")
    return "\n".join(lines) + "\n"
