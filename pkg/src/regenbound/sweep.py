"""
Tradeoff curves at a fixed file size.

All bounds are homogeneous of degree one, so each curve is determined by
its value ``f(rho)`` at unit beta, ``rho = alpha / beta``.  On every interval
between consecutive breakpoints of ``f`` the bound is affine, which lets the
minimal alpha for a given beta be solved in closed form per segment.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction

from .tradeoff import (
    BoundError, CodeParams, OperatingPoint, RegimeCoordinates, cut_set_bound,
    epsilon0, epsilon1, exact_repair_bound, mbr_file_size, normalize, rational,
    theta_boundary,
)


class CurveKind(str, enum.Enum):
    FUNCTIONAL = "functional"
    EXACT = "exact"
    SHARING = "sharing"


@dataclass(frozen=True)
class SweepPoint:
    kind: CurveKind
    alpha: Fraction
    beta: Fraction
    alpha_bar: Fraction
    gamma_bar: Fraction


def unit_bound(params: CodeParams, rho, kind: CurveKind) -> Fraction:
    """File-size bound at ``alpha = rho``, ``beta = 1``."""
    rho = rational(rho)
    d, k = params.d, params.k
    if kind is CurveKind.FUNCTIONAL:
        return cut_set_bound(params, OperatingPoint(rho, 1))
    if kind is CurveKind.EXACT:
        return exact_repair_bound(params, OperatingPoint(rho, 1)).b_exact
    lo, hi = d - k + 1, d
    b_lo, b_hi = k * lo, mbr_file_size(params, 1)
    if lo == hi:
        return Fraction(b_lo)
    rho = min(max(rho, Fraction(lo)), Fraction(hi))
    t = (rho - lo) / (hi - lo)
    return (1 - t) * b_lo + t * b_hi


def breakpoints(params: CodeParams, kind: CurveKind) -> list:
    """Sorted ratios alpha/beta in [d-k+1, d] where the curve may bend."""
    d, k = params.d, params.k
    pts = {Fraction(d - k + 1), Fraction(d)}
    if kind is CurveKind.SHARING:
        return sorted(pts)
    pts.update(Fraction(d - p + 1) for p in range(1, k + 1))
    if kind is CurveKind.EXACT and k >= 3:
        pts.add(d - k + 2 - theta_boundary(params, 1))
        for p in range(2, k - 1):
            e0 = [epsilon0(params, RegimeCoordinates(p, t), 1) for t in (0, 1)]
            e1 = [epsilon1(params, RegimeCoordinates(p, t), 1) for t in (0, 1)]
            slope = (e0[1] - e0[0]) - (e1[1] - e1[0])
            if slope != 0:
                t_star = (e1[0] - e0[0]) / slope
                if 0 < t_star < 1:
                    pts.add(d - p + 1 - t_star)
    return sorted(pts)


def min_alpha(params: CodeParams, beta, B, kind: CurveKind, rhos=None):
    """Smallest alpha (infimum) whose bound at ``beta`` reaches ``B``.

    Returns None when even ``alpha = d*beta`` does not reach ``B``.
    """
    beta, B = rational(beta), rational(B)
    if rhos is None:
        rhos = breakpoints(params, kind)
    target = B / beta
    f = lambda r: unit_bound(params, r, kind)
    if f(rhos[0]) >= target:
        return rhos[0] * beta
    for a, b in zip(rhos, rhos[1:]):
        # affine on (a, b]; recover the left limit from two interior samples
        u, v = a + (b - a) / 3, a + 2 * (b - a) / 3
        fu, fv = f(u), f(v)
        slope = (fv - fu) / (v - u)
        f_a = fu - slope * (u - a)
        f_b = f(b)
        if max(f_a, f_b) < target:
            continue
        if f_a >= target:
            return a * beta
        return (a + (target - f_a) / slope) * beta
    return None


def sweep_curve(params: CodeParams, B, grid: int, kind: CurveKind) -> list:
    """Sample the curve of ``kind`` at file size ``B``.

    Beta runs over ``grid`` evenly spaced values between the MBR and MSR
    requirements, plus the betas at which the curve has a vertex.  Points
    are returned in order of decreasing normalized repair bandwidth.
    """
    B = rational(B)
    kind = CurveKind(kind)
    if grid < 2:
        raise BoundError(f"grid must be >= 2, got {grid}")
    if B <= 0:
        raise BoundError(f"file size must be positive, got {B}")
    rhos = breakpoints(params, kind)
    beta_lo = B / unit_bound(params, rhos[-1], kind)
    beta_hi = B / unit_bound(params, rhos[0], kind)
    betas = {beta_lo + i * (beta_hi - beta_lo) / (grid - 1) for i in range(grid)}
    betas.update(B / unit_bound(params, r, kind) for r in rhos)
    out = []
    for beta in sorted(betas, reverse=True):
        alpha = min_alpha(params, beta, B, kind, rhos)
        if alpha is None:
            continue
        pt = OperatingPoint(alpha, beta)
        nb = normalize(params, pt, B)
        out.append(SweepPoint(kind, alpha, beta, nb.alpha_bar, nb.gamma_bar))
    return out
