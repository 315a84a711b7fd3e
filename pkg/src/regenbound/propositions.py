"""
Small LP instances certifying the two entropy bounds on repair data.

* Column bound: helper data ``S`` that, together with ``W_A``, determines
  ``W_L`` has entropy at least the functional-repair conditional entropy of
  ``W_L`` given ``W_A``, less the gap ``eps``.
* Row bound: the data one node ``m`` sends to the ``ell`` nodes of ``L`` has
  joint entropy at most ``beta + (ell-1) theta + ell eps`` (when ``r = p``) or
  ``2 beta - theta + ell eps`` (when ``r = p + 1``).

Each instance only carries the variables its derivation touches, with the
node-level consequences of the regenerating structure (storage and transfer
caps, near-optimal conditional entropies) added as linear constraints.
"""

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .entropy import (
    H, LPProblem, Relation, Sense, Status, VarSet, check_certificate,
    cond_entropy, functional_dependency, solve,
)
from .tradeoff import rational


class Which(str, enum.Enum):
    PROP1 = "prop1"
    PROP2 = "prop2"


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class PropInstance:
    """Parameters of one certification LP.

    For the row bound ``r = |R|`` and ``ell = |L|``.  For the column bound
    ``r = |A|`` (so ``A = [1..r]``) and ``ell = |L|`` with ``L = [r+1 .. r+ell]``.
    ``alpha`` is always ``(d - p + 1) beta - theta``.
    """
    which: Which
    r: int
    ell: int
    p: int
    d: int
    k: int
    alpha: Fraction
    beta: Fraction
    theta: Fraction
    epsilon: Fraction

    @classmethod
    def make(cls, which, r, ell, p, d, k, beta, theta, epsilon=0):
        beta, theta, epsilon = rational(beta), rational(theta), rational(epsilon)
        inst = cls(Which(which), r, ell, p, d, k, (d - p + 1) * beta - theta,
                   beta, theta, epsilon)
        inst.validate()
        return inst

    def validate(self):
        if not 1 <= self.k <= self.d:
            raise InstanceError(f"need 1 <= k <= d, got k={self.k}, d={self.d}")
        if not 1 <= self.p <= self.k:
            raise InstanceError(f"p must lie in 1..k, got {self.p}")
        if self.beta <= 0 or not 0 <= self.theta < self.beta:
            raise InstanceError("need beta > 0 and 0 <= theta < beta")
        if self.alpha != (self.d - self.p + 1) * self.beta - self.theta:
            raise InstanceError("alpha must equal (d-p+1)*beta - theta")
        if self.epsilon < 0:
            raise InstanceError("epsilon must be >= 0")
        if self.which is Which.PROP2:
            if self.r not in (self.p, self.p + 1):
                raise InstanceError(f"r must be p or p+1, got r={self.r}, p={self.p}")
            if not 2 <= self.ell <= self.r:
                raise InstanceError(f"need 2 <= ell <= r, got ell={self.ell}, r={self.r}")
            if not self.r < self.k:
                raise InstanceError(f"need r < k, got r={self.r}, k={self.k}")
        else:
            if self.r < 0 or self.ell < 1 or self.r + self.ell > self.k:
                raise InstanceError(
                    f"need A=[1..r], L=[r+1..r+ell] inside [1..k], got r={self.r}, ell={self.ell}")


def min_sum(alpha, beta, d: int, lo: int, hi: int) -> Fraction:
    """sum_{i=lo..hi} min(alpha, (d-i+1) beta)."""
    return sum((min(alpha, (d - i + 1) * beta) for i in range(lo, hi + 1)), Fraction(0))


def closed_form(inst: PropInstance) -> Fraction:
    if inst.which is Which.PROP1:
        return min_sum(inst.alpha, inst.beta, inst.d, inst.r + 1, inst.r + inst.ell) - inst.epsilon
    if inst.r == inst.p:
        return inst.beta + (inst.ell - 1) * inst.theta + inst.ell * inst.epsilon
    return 2 * inst.beta - inst.theta + inst.ell * inst.epsilon


def build_prop2_instance(inst: PropInstance, aggregate: bool = True) -> LPProblem:
    """Maximize H(S_m^L) over W_m, W_R and the helper data S_m^j, j in L.

    With ``aggregate`` the nodes of R outside L, which only ever appear
    together, become one variable ``WR`` capped at ``(r - ell) alpha``.  That
    is a relaxation of the per-node model, so its optimum is an upper bound
    on the per-node optimum, and it keeps ``ell = 2`` instances at six
    variables.
    """
    if inst.which is not Which.PROP2:
        raise InstanceError("not a row-bound instance")
    inst.validate()
    r, ell, d = inst.r, inst.ell, inst.d
    alpha, beta, eps = inst.alpha, inst.beta, inst.epsilon
    L = list(range(1, ell + 1))
    W = {j: f"W{j}" for j in L}
    S = {j: f"S{j}" for j in L}
    if aggregate:
        rest = ["WR"] if r > ell else []
        caps = {"WR": (r - ell) * alpha}
    else:
        rest = [f"W{j}" for j in range(ell + 1, r + 1)]
        caps = {}
    V = VarSet(["Wm"] + [W[j] for j in L] + rest + [S[j] for j in L])
    all_s = V.mask(list(S.values()))
    w_r = V.mask([W[j] for j in L] + rest)
    wm = V.mask("Wm")
    prob = LPProblem(V, H(all_s), Sense.MAX).add_elemental()
    for j in L:
        prob.add(H(V.mask(S[j])), Relation.LE, beta)
    functional_dependency(prob, all_s, wm)
    for lab in ["Wm"] + [W[j] for j in L] + rest:
        prob.add(H(V.mask(lab)), Relation.LE, caps.get(lab, alpha))
    for j in L:
        others = w_r & ~V.mask(W[j])
        prob.add(cond_entropy(V.mask(W[j]), others | V.mask(S[j])), Relation.LE, (d - r) * beta)
        prob.add(cond_entropy(V.mask(W[j]), others), Relation.GE,
                 min(alpha, (d - r + 1) * beta) - eps)
    prob.add(H(wm | w_r), Relation.GE, min_sum(alpha, beta, d, 1, r + 1) - eps)
    return prob


def build_prop1_instance(inst: PropInstance) -> LPProblem:
    """Minimize H(S) where S together with W_A determines W_L."""
    if inst.which is not Which.PROP1:
        raise InstanceError("not a column-bound instance")
    inst.validate()
    labels = (["WA"] if inst.r > 0 else []) + ["WL", "S"]
    V = VarSet(labels)
    wa = V.mask("WA") if inst.r > 0 else 0
    wl, s = V.mask("WL"), V.mask("S")
    prob = LPProblem(V, H(s), Sense.MIN).add_elemental()
    functional_dependency(prob, wl, s | wa)
    prob.add(cond_entropy(wl, wa), Relation.GE,
             min_sum(inst.alpha, inst.beta, inst.d, inst.r + 1, inst.r + inst.ell) - inst.epsilon)
    return prob


@dataclass(frozen=True)
class PropReport:
    instance: PropInstance
    lp_value: Fraction
    closed_form: Fraction
    holds: bool
    certified: bool

    @property
    def slack(self) -> Fraction:
        """Distance from the LP optimum to the closed form (0 means tight)."""
        if self.instance.which is Which.PROP2:
            return self.closed_form - self.lp_value
        return self.lp_value - self.closed_form


def verify_proposition(inst: PropInstance, aggregate: bool = True) -> PropReport:
    if inst.which is Which.PROP2:
        prob = build_prop2_instance(inst, aggregate)
    else:
        prob = build_prop1_instance(inst)
    sol = solve(prob)
    if sol.status is not Status.OPTIMAL:
        raise InstanceError(f"LP for {inst} ended {sol.status.value}")
    rhs = closed_form(inst)
    holds = sol.value <= rhs if inst.which is Which.PROP2 else sol.value >= rhs
    return PropReport(inst, sol.value, rhs, holds, check_certificate(prob, sol))


def default_grid(max_d: int = 6, beta=4) -> list:
    """Instances for p in {2, 3}, four theta values and eps in {0, beta/10}."""
    beta = rational(beta)
    thetas = [beta * i / 4 for i in range(4)]
    epss = [Fraction(0), beta / 10]
    out = []
    for p in (2, 3):
        for r in (p, p + 1):
            k = r + 1
            for d in range(k, max_d + 1):
                for theta, eps in itertools.product(thetas, epss):
                    out.append(PropInstance.make(Which.PROP2, r, 2, p, d, k, beta, theta, eps))
        for d in range(p + 1, max_d + 1):
            k = min(d, p + 2)
            # L starts at column p, as in the trapezium regions
            for theta, eps in itertools.product(thetas, epss):
                out.append(PropInstance.make(Which.PROP1, p - 1, k - p + 1, p, d, k,
                                             beta, theta, eps))
    return out
