"""
Closed-form bounds on the storage / repair-bandwidth tradeoff of
regenerating codes.

Every quantity is an exact ``Fraction``.  A code is described by
``CodeParams(n, k, d)`` and an operating point by ``OperatingPoint(alpha,
beta)``: each node stores ``alpha`` symbols, and a failed node is repaired by
downloading ``beta`` symbols from each of ``d`` helpers.

Points between MBR and MSR are addressed through regime coordinates
``(p, theta)`` defined by ``alpha = (d - p + 1) * beta - theta`` with
``theta`` in ``[0, beta)``.  On each such segment the exact-repair file size
is at most the functional-repair optimum minus a gap ``eps0`` / ``eps1``.
"""

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional


class BoundError(ValueError):
    """Invalid parameters or operating point."""


class RegimeError(BoundError):
    pass


class DomainError(BoundError):
    pass


def rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted, pass a Fraction or 'p/q' string")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise BoundError(f"not a rational number: {value!r}") from exc


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int

    def __post_init__(self):
        for name in ("n", "k", "d"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise BoundError(f"{name} must be a positive integer, got {v!r}")
        if not (self.k <= self.d <= self.n - 1):
            raise BoundError(
                f"need 1 <= k <= d <= n-1, got (n, k, d) = ({self.n}, {self.k}, {self.d})")


@dataclass(frozen=True)
class OperatingPoint:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", rational(self.alpha))
        object.__setattr__(self, "beta", rational(self.beta))
        if self.alpha < 0:
            raise BoundError(f"alpha must be >= 0, got {self.alpha}")
        if self.beta <= 0:
            raise BoundError(f"beta must be > 0, got {self.beta}")

    def scaled(self, lam) -> "OperatingPoint":
        lam = rational(lam)
        return OperatingPoint(lam * self.alpha, lam * self.beta)


@dataclass(frozen=True)
class RegimeCoordinates:
    p: int
    theta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "theta", rational(self.theta))
        if self.p < 1:
            raise RegimeError(f"p must be >= 1, got {self.p}")
        if self.theta < 0:
            raise RegimeError(f"theta must be >= 0, got {self.theta}")


class Regime(str, enum.Enum):
    P1 = "P1"
    PMID = "PMid"
    PKM1 = "PKm1"
    NONE = "NoImprovement"


@dataclass(frozen=True)
class BoundResult:
    b_cutset: Fraction
    b_functional: Fraction
    b_exact: Fraction
    eps0: Optional[Fraction]
    eps1: Optional[Fraction]
    q0: Optional[int]
    q1: Optional[int]
    regime: Regime
    improved: bool
    p: int
    theta: Fraction
    clamped: bool = False

    def to_dict(self) -> dict:
        out = {}
        for key, value in self.__dict__.items():
            if isinstance(value, Regime):
                value = value.value
            elif isinstance(value, Fraction):
                value = format_rational(value)
            out[key] = value
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "BoundResult":
        def opt(v):
            return None if v is None else Fraction(v)
        return cls(
            b_cutset=Fraction(data["b_cutset"]),
            b_functional=Fraction(data["b_functional"]),
            b_exact=Fraction(data["b_exact"]),
            eps0=opt(data["eps0"]),
            eps1=opt(data["eps1"]),
            q0=data["q0"],
            q1=data["q1"],
            regime=Regime(data["regime"]),
            improved=bool(data["improved"]),
            p=int(data["p"]),
            theta=Fraction(data["theta"]),
            clamped=bool(data.get("clamped", False)),
        )


@dataclass(frozen=True)
class NormalizedPoint:
    alpha_bar: Fraction
    gamma_bar: Fraction


@dataclass(frozen=True)
class GapResult:
    gap: Fraction
    regime: Regime


def cut_set_bound(params: CodeParams, pt: OperatingPoint) -> Fraction:
    """Largest file size any functional-repair code can store at ``pt``."""
    d = params.d
    return sum((min(pt.alpha, (d - i + 1) * pt.beta) for i in range(1, params.k + 1)),
               Fraction(0))


def clamp(params: CodeParams, pt: OperatingPoint):
    """Return ``(point, clamped)`` with alpha capped at the MBR value ``d*beta``."""
    cap = params.d * pt.beta
    if pt.alpha > cap:
        return OperatingPoint(cap, pt.beta), True
    return pt, False


def to_regime(params: CodeParams, pt: OperatingPoint) -> RegimeCoordinates:
    d, k = params.d, params.k
    lo, hi = (d - k) * pt.beta, d * pt.beta
    if not (lo < pt.alpha <= hi):
        raise RegimeError(
            f"alpha = {format_rational(pt.alpha)} outside the valid interval "
            f"((d-k)*beta, d*beta] = ({format_rational(lo)}, {format_rational(hi)}]")
    p = d + 1 - math.ceil(pt.alpha / pt.beta)
    theta = (d - p + 1) * pt.beta - pt.alpha
    return RegimeCoordinates(p, theta)


def from_regime(params: CodeParams, rc: RegimeCoordinates, beta) -> OperatingPoint:
    beta = rational(beta)
    _check_regime(params, rc, beta)
    return OperatingPoint((params.d - rc.p + 1) * beta - rc.theta, beta)


def _check_regime(params, rc, beta):
    if not 1 <= rc.p <= params.k:
        raise RegimeError(f"p must lie in 1..{params.k}, got {rc.p}")
    if not 0 <= rc.theta < beta:
        raise RegimeError(f"theta must lie in [0, beta), got {rc.theta}")


def functional_optimal_B(params: CodeParams, rc: RegimeCoordinates, beta) -> Fraction:
    """File size of an optimal functional-repair code at regime point ``rc``."""
    beta = rational(beta)
    _check_regime(params, rc, beta)
    d, k, p = params.d, params.k, rc.p
    alpha = (d - p + 1) * beta - rc.theta
    return p * alpha + sum(((d - i + 1) * beta for i in range(p + 1, k + 1)), Fraction(0))


def theta_boundary(params: CodeParams, beta) -> Fraction:
    """Largest theta (exclusive) at p = k-1 where the exact bound improves."""
    c = params.d - params.k + 1
    return Fraction(c, c + 1) * rational(beta)


def q0_of(k: int, p: int) -> int:
    return (k - p + 1) // p


def q1_of(k: int, p: int) -> int:
    return (k - p) // (p + 1)


def epsilon0(params: CodeParams, rc: RegimeCoordinates, beta) -> Fraction:
    """Gap bound obtained from column groups of width p.

    May be negative for large theta; callers combine it with ``max``.
    """
    beta = rational(beta)
    d, k, p, theta = params.d, params.k, rc.p, rc.theta
    if not 2 <= p <= k - 1:
        raise DomainError(f"epsilon0 needs p in 2..k-1 = 2..{k - 1}, got p={p}")
    q0 = q0_of(k, p)
    assert (q0 == 0) == (k - p + 1 < p)
    if q0 == 0:
        c = d - k + 1
        return (c * (k - p) * (beta - theta) - theta) / (c * (k - p + 1) + 1)
    m = q0 * (d - Fraction(p * (q0 + 3), 2) + 2)
    return (m * (p - 1) * (beta - theta) - theta) / (m * p + 1)


def epsilon1(params: CodeParams, rc: RegimeCoordinates, beta) -> Fraction:
    """Gap bound obtained from column groups of width p+1."""
    beta = rational(beta)
    d, k, p, theta = params.d, params.k, rc.p, rc.theta
    if not 1 <= p <= k - 2:
        raise DomainError(f"epsilon1 needs p in 1..k-2 = 1..{k - 2}, got p={p}")
    q1 = q1_of(k, p)
    assert (q1 == 0) == (k - p < p + 1)
    if q1 == 0:
        c = d - k + 1
        return c * ((k - p - 2) * beta + theta) / (c * (k - p) + 1)
    m = q1 * (d - Fraction((p + 1) * (q1 + 3), 2) + 2)
    return m * ((p - 1) * beta + theta) / (m * (p + 1) + 1)


def classify(params: CodeParams, rc: RegimeCoordinates, beta) -> Regime:
    k, p = params.k, rc.p
    if k < 3:
        return Regime.NONE
    if p == 1 and rc.theta != 0:
        return Regime.P1
    if 2 <= p <= k - 2:
        return Regime.PMID
    if p == k - 1 and rc.theta < theta_boundary(params, beta):
        return Regime.PKM1
    return Regime.NONE


def exact_repair_bound(params: CodeParams, pt: OperatingPoint) -> BoundResult:
    """Upper bound on the file size of an exact-repair code at ``pt``.

    Points outside the improving regimes get ``b_exact == b_functional`` and
    ``regime == Regime.NONE``.
    """
    pt, clamped = clamp(params, pt)
    rc = to_regime(params, pt)
    beta = pt.beta
    k, p = params.k, rc.p
    b_hat = functional_optimal_B(params, rc, beta)
    cutset = cut_set_bound(params, pt)

    eps0 = eps1 = q0 = q1 = None
    if 2 <= p <= k - 1:
        eps0, q0 = epsilon0(params, rc, beta), q0_of(k, p)
    if 1 <= p <= k - 2:
        eps1, q1 = epsilon1(params, rc, beta), q1_of(k, p)

    regime = classify(params, rc, beta)
    if regime is Regime.P1:
        gap = eps1
    elif regime is Regime.PMID:
        gap = max(eps0, eps1)
    elif regime is Regime.PKM1:
        gap = eps0
    else:
        gap = Fraction(0)
    b_exact = b_hat - gap
    improved = b_exact < b_hat
    assert improved == (regime is not Regime.NONE)
    return BoundResult(
        b_cutset=cutset, b_functional=b_hat, b_exact=b_exact,
        eps0=eps0, eps1=eps1, q0=q0, q1=q1, regime=regime, improved=improved,
        p=p, theta=rc.theta, clamped=clamped)


def corollary_gap(params: CodeParams, pt: OperatingPoint) -> GapResult:
    """Distance in beta/B between the exact-repair and functional curves."""
    res = exact_repair_bound(params, pt)
    if res.regime is Regime.NONE:
        return GapResult(Fraction(0), Regime.NONE)
    beta = clamp(params, pt)[0].beta
    return GapResult(beta / res.b_exact - beta / res.b_functional, res.regime)


def normalize(params: CodeParams, pt: OperatingPoint, B) -> NormalizedPoint:
    B = rational(B)
    if B <= 0:
        raise DomainError(f"file size must be positive, got {B}")
    n = params.n
    return NormalizedPoint(n * pt.alpha / B, n * params.d * pt.beta / B)


def mbr_file_size(params: CodeParams, beta) -> Fraction:
    d = params.d
    return sum(((d - i + 1) for i in range(1, params.k + 1))) * rational(beta)


class Extremal(NamedTuple):
    point: OperatingPoint
    B: Fraction


def extremal_points(params: CodeParams, beta):
    """Return ``(msr, mbr)``, each an ``(OperatingPoint, B)`` pair at this beta."""
    beta = rational(beta)
    d, k = params.d, params.k
    msr_alpha = (d - k + 1) * beta
    msr = Extremal(OperatingPoint(msr_alpha, beta), k * msr_alpha)
    mbr = Extremal(OperatingPoint(d * beta, beta), mbr_file_size(params, beta))
    return msr, mbr


def space_sharing(params: CodeParams, beta, t) -> Extremal:
    t = rational(t)
    if not 0 <= t <= 1:
        raise DomainError(f"sharing fraction t must lie in [0, 1], got {t}")
    msr, mbr = extremal_points(params, beta)
    alpha = (1 - t) * msr.point.alpha + t * mbr.point.alpha
    return Extremal(OperatingPoint(alpha, msr.point.beta), (1 - t) * msr.B + t * mbr.B)
