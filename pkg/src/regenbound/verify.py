"""
Verification grids run by ``regenbound verify`` and the acceptance tests.

Each check returns a ``CheckReport`` with pass/fail counts and the first
failing instance.  ``fault=True`` perturbs one coefficient so that the
detection path itself can be exercised.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .propositions import default_grid, verify_proposition
from .repair_matrix import applicable_cases, build_region, row_sum_identity, solve_epsilon
from .tradeoff import CodeParams, RegimeCoordinates, epsilon0, epsilon1


@dataclass
class CheckReport:
    name: str
    passed: int = 0
    failed: int = 0
    first_failure: Optional[str] = None
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0

    def record(self, good: bool, describe):
        if good:
            self.passed += 1
            return
        self.failed += 1
        if self.first_failure is None:
            self.first_failure = describe()

    def summary(self) -> str:
        line = f"{self.name}: {self.passed} passed, {self.failed} failed"
        if self.first_failure:
            line += f"\n  first failure: {self.first_failure}"
        return line


def table_grid(ks=range(3, 9), extra_d=4, beta=8):
    """Yield ``(k, d, p, theta, beta)`` over the closed-form oracle grid."""
    beta = Fraction(beta)
    for k in ks:
        for d in range(k, k + extra_d + 1):
            for p in range(1, k + 1):
                for i in range(8):
                    yield k, d, p, beta * i / 8, beta


def check_table(fault: bool = False, **grid) -> CheckReport:
    """Region summations against the closed-form eps0 / eps1."""
    rep = CheckReport("table-oracle")
    for k, d, p, theta, beta in table_grid(**grid):
        params = CodeParams(d + 1, k, d)
        rc = RegimeCoordinates(p, theta)
        for case in applicable_cases(k, p):
            got = solve_epsilon(build_region(params, p, case), beta, theta)
            want = (epsilon0 if case.family == 1 else epsilon1)(params, rc, beta)
            if fault:
                want += Fraction(1, 1000)
                fault = False
            rep.record(got == want, lambda: (
                f"n={d + 1} k={k} d={d} p={p} case={case.value} theta={theta} "
                f"beta={beta}: summation {got} != closed form {want}"))
    return rep


def check_row_sums(max_q=6, max_p=6, max_size=20, fault: bool = False) -> CheckReport:
    """lhs == rhs for 1 <= q, p_eff <= 6 and p_eff (q+1) <= d+1 <= max_size."""
    rep = CheckReport("row-sum-identity")
    for q, pe in itertools.product(range(1, max_q + 1), range(1, max_p + 1)):
        for d in range(pe * (q + 1) - 1, max_size):
            lhs, rhs = row_sum_identity(d, pe, q)
            if fault:
                rhs += 1
                fault = False
            rep.record(lhs == rhs, lambda: f"d={d} p_eff={pe} q={q}: {lhs} != {rhs}")
    return rep


def check_props(max_d: int = 6, fault: bool = False) -> CheckReport:
    """LP optima against the closed forms, each with a checked dual certificate."""
    rep = CheckReport("lp-propositions")
    for inst in default_grid(max_d=max_d):
        r = verify_proposition(inst)
        holds = r.holds
        if fault:
            holds = False
            fault = False
        rep.record(holds and r.certified, lambda: (
            f"{inst.which.value} r={inst.r} ell={inst.ell} p={inst.p} d={inst.d} "
            f"k={inst.k} alpha={inst.alpha} beta={inst.beta} theta={inst.theta} "
            f"eps={inst.epsilon}: lp={r.lp_value} closed form={r.closed_form} "
            f"certified={r.certified}"))
    return rep


def run(which: str, max_d: int = 6, fault: bool = False) -> list:
    """Run ``identities``, ``props`` or ``all``; ``fault`` hits the first check run."""
    reports = []
    if which in ("identities", "all"):
        reports.append(check_table(fault=fault))
        reports.append(check_row_sums())
        fault = False
    if which in ("props", "all"):
        reports.append(check_props(max_d=max_d, fault=fault))
    return reports
