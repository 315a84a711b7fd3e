from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regenbound.tradeoff import (
    BoundError, BoundResult, CodeParams, DomainError, OperatingPoint, Regime,
    RegimeCoordinates, RegimeError, classify, corollary_gap, cut_set_bound,
    epsilon0, epsilon1, exact_repair_bound, extremal_points, from_regime,
    functional_optimal_B, mbr_file_size, normalize, rational, space_sharing,
    theta_boundary, to_regime,
)


def P(n, k, d):
    return CodeParams(n, k, d)


def pt(a, b):
    return OperatingPoint(F(a), F(b))


# ---- parameters ----

@pytest.mark.parametrize("n,k,d", [(3, 3, 2), (4, 2, 1), (4, 3, 4), (0, 1, 1)])
def test_code_params_rejects_bad_triples(n, k, d):
    with pytest.raises(BoundError):
        CodeParams(n, k, d)


def test_rational_rejects_floats_and_garbage():
    with pytest.raises(TypeError):
        rational(0.5)
    with pytest.raises(BoundError):
        rational("1/0")
    with pytest.raises(BoundError):
        rational("abc")
    assert rational("17/2") == F(17, 2)


def test_operating_point_needs_positive_beta():
    with pytest.raises(BoundError):
        OperatingPoint(1, 0)
    with pytest.raises(BoundError):
        OperatingPoint(-1, 1)


# ---- cut-set bound ----

@pytest.mark.parametrize("alpha,expected", [(2, 5), (3, 6), (1, 3)])
def test_cut_set_examples(alpha, expected):
    assert cut_set_bound(P(4, 3, 3), pt(alpha, 1)) == expected


# ---- regime coordinates ----

def test_to_regime_examples():
    assert to_regime(P(4, 3, 3), pt(8, 3)) == RegimeCoordinates(1, 1)
    assert to_regime(P(4, 3, 3), pt(9, 3)) == RegimeCoordinates(1, 0)
    assert to_regime(P(5, 3, 4), pt(2, 1)) == RegimeCoordinates(3, 0)


def test_to_regime_rejects_low_alpha_with_interval():
    with pytest.raises(RegimeError, match=r"\(1, 4\]"):
        to_regime(P(5, 3, 4), pt(1, 1))


def test_sub_msr_alpha_lands_at_p_equal_k():
    # between (d-k) beta and the MSR point, theta is positive at p = k
    rc = to_regime(P(5, 3, 4), pt(F(3, 2), 1))
    assert rc == RegimeCoordinates(3, F(1, 2))
    assert classify(P(5, 3, 4), rc, 1) is Regime.NONE


rationals = st.fractions(min_value=F(1, 50), max_value=50, max_denominator=60)


@st.composite
def code_and_point(draw, max_k=8):
    k = draw(st.integers(1, max_k))
    d = draw(st.integers(k, k + 4))
    n = draw(st.integers(d + 1, d + 3))
    beta = draw(rationals)
    # alpha strictly inside ((d-k) beta, d beta]
    frac = draw(st.fractions(min_value=0, max_value=1, max_denominator=40))
    lo, hi = (d - k) * beta, d * beta
    alpha = hi - frac * (hi - lo)
    if alpha == lo:
        alpha = hi
    return CodeParams(n, k, d), OperatingPoint(alpha, beta)


@given(code_and_point())
def test_regime_round_trip(cp):
    params, point = cp
    rc = to_regime(params, point)
    assert 0 <= rc.theta < point.beta
    assert 1 <= rc.p <= params.k
    assert from_regime(params, rc, point.beta) == point


# ---- functional optimum ----

def test_functional_examples():
    assert functional_optimal_B(P(4, 3, 3), RegimeCoordinates(1, 1), 3) == 17
    assert functional_optimal_B(P(4, 3, 3), RegimeCoordinates(1, 0), 1) == 6
    assert functional_optimal_B(P(5, 4, 4), RegimeCoordinates(2, 3), 7) == 57


@given(code_and_point())
def test_functional_equals_cut_set(cp):
    params, point = cp
    rc = to_regime(params, point)
    assert functional_optimal_B(params, rc, point.beta) == cut_set_bound(params, point)


# ---- closed-form epsilons ----

def sym(f, params, p, beta, theta):
    return f(params, RegimeCoordinates(p, theta), beta)


@pytest.mark.parametrize("theta", [F(0), F(1, 3), F(1, 2), F(5, 7)])
def test_epsilon_examples(theta):
    b = F(1)
    assert sym(epsilon0, P(4, 3, 3), 2, b, theta) == (b - 2 * theta) / 3
    assert sym(epsilon0, P(5, 4, 4), 2, b, theta) == (2 * b - 3 * theta) / 5
    assert sym(epsilon1, P(4, 3, 3), 1, b, theta) == theta / 3
    assert sym(epsilon1, P(5, 4, 4), 1, b, theta) == 2 * theta / 5
    assert sym(epsilon1, P(5, 4, 4), 2, b, theta) == theta / 3


def test_epsilon0_vanishes_at_boundary_k4():
    assert sym(epsilon0, P(5, 4, 4), 3, 1, F(1, 2)) == 0


def test_epsilon_domain_errors():
    with pytest.raises(DomainError):
        sym(epsilon0, P(5, 4, 4), 1, 1, 0)
    with pytest.raises(DomainError):
        sym(epsilon0, P(5, 4, 4), 4, 1, 0)
    with pytest.raises(DomainError):
        sym(epsilon1, P(5, 4, 4), 3, 1, 0)


def _eps_from_sums(params, p, theta, beta, w):
    """Independent oracle: rebuild eps from explicit row and column sums.

    With column groups of width ``w`` (p or p+1), a full rectangle row of
    width ``m`` costs beta + (m-1) theta + m eps when w = p and
    2 beta - theta + m eps when w = p+1; triangle cells cost beta each.  The
    column side is the sum of min(alpha, (d-y+1) beta) minus eps.
    """
    d, k = params.d, params.k
    alpha = (d - p + 1) * beta - theta
    q = (k - w + 1) // w
    if q >= 1:
        rects = [(w, d - (i + 1) * w + 2) for i in range(1, q + 1)]
        cols = range(w, (q + 1) * w)
    else:
        rects = [(k - w + 1, d - k + 1)]
        cols = range(w, k + 1)
    const = eps = 0
    for m, rows in rects:
        row = beta + (m - 1) * theta if w == p else 2 * beta - theta
        const += rows * row + m * (m - 1) // 2 * beta
        eps += rows * m
    low = sum(min(alpha, (d - y + 1) * beta) for y in cols)
    return (low - const) / (eps + 1)


@settings(max_examples=150)
@given(st.integers(3, 8), st.integers(0, 4), st.data())
def test_epsilons_match_explicit_sums(k, extra, data):
    d = k + extra
    params = P(d + 1, k, d)
    beta = data.draw(rationals)
    theta = beta * data.draw(st.fractions(min_value=0, max_value=F(29, 30), max_denominator=30))
    p = data.draw(st.integers(1, k - 1))
    if p >= 2:
        assert sym(epsilon0, params, p, beta, theta) == _eps_from_sums(params, p, theta, beta, p)
    if p <= k - 2:
        assert sym(epsilon1, params, p, beta, theta) == _eps_from_sums(params, p, theta, beta, p + 1)


# ---- exact repair bound ----

def test_exact_bound_worked_example():
    res = exact_repair_bound(P(4, 3, 3), pt(8, 3))
    assert res.b_functional == 17
    assert res.eps1 == F(1, 3)
    assert res.b_exact == F(50, 3)
    assert res.regime is Regime.P1 and res.improved
    assert (res.p, res.theta) == (1, 1)


def test_exact_bound_mbr_not_improved():
    res = exact_repair_bound(P(4, 3, 3), pt(9, 3))
    assert res.b_exact == res.b_functional == 18
    assert not res.improved and res.regime is Regime.NONE


def test_bound_independent_of_n():
    a = exact_repair_bound(P(5, 4, 4), pt(F(18, 7), 1))
    b = exact_repair_bound(P(6, 4, 4), pt(F(18, 7), 1))
    assert a == b


def test_alpha_above_mbr_is_clamped():
    res = exact_repair_bound(P(4, 3, 3), pt(10, 3))
    assert res.clamped
    assert res.b_exact == exact_repair_bound(P(4, 3, 3), pt(9, 3)).b_exact


def test_k_below_three_never_improves():
    for d in range(2, 6):
        params = P(d + 1, 2, d)
        for num in range(1, 20):
            alpha = (d - 2) + F(num, 10)
            if alpha <= d - 2 or alpha > d:
                continue
            assert exact_repair_bound(params, pt(alpha, 1)).regime is Regime.NONE


def test_pmid_at_18_over_7():
    res = exact_repair_bound(P(5, 4, 4), pt(18, 7))
    assert res.p == 2 and res.theta == 3
    assert res.eps0 == res.eps1 == F(1)       # theta / 3 with theta = 3


@given(code_and_point())
def test_ordering_and_improved_flag(cp):
    params, point = cp
    res = exact_repair_bound(params, point)
    assert res.b_exact <= res.b_functional <= res.b_cutset
    assert res.improved == (res.b_exact < res.b_functional)
    assert res.improved == (res.regime is not Regime.NONE)


@given(code_and_point(), st.fractions(min_value=F(1, 20), max_value=20, max_denominator=30))
def test_homogeneity(cp, lam):
    params, point = cp
    a = exact_repair_bound(params, point)
    b = exact_repair_bound(params, point.scaled(lam))
    assert b.b_exact == lam * a.b_exact
    assert b.b_cutset == lam * a.b_cutset
    for x, y in ((a.eps0, b.eps0), (a.eps1, b.eps1)):
        assert (x is None) == (y is None)
        if x is not None:
            assert y == lam * x


@given(code_and_point())
def test_bound_result_dict_round_trip(cp):
    res = exact_repair_bound(*cp)
    assert BoundResult.from_dict(res.to_dict()) == res


# ---- regimes and the strict gap ----

def test_theta_boundary():
    assert theta_boundary(P(5, 4, 4), 2) == 1
    assert theta_boundary(P(8, 4, 7), 5) == 4


def test_classify_edges():
    params = P(5, 4, 4)
    assert classify(params, RegimeCoordinates(1, 0), 1) is Regime.NONE
    assert classify(params, RegimeCoordinates(1, F(1, 8)), 1) is Regime.P1
    assert classify(params, RegimeCoordinates(2, 0), 1) is Regime.PMID
    assert classify(params, RegimeCoordinates(3, F(1, 2) - F(1, 100)), 1) is Regime.PKM1
    assert classify(params, RegimeCoordinates(3, F(1, 2)), 1) is Regime.NONE
    assert classify(params, RegimeCoordinates(4, 0), 1) is Regime.NONE


def test_corollary_gap_example():
    g = corollary_gap(P(4, 3, 3), pt(8, 3))
    assert g.gap == F(3, 850)
    assert g.regime is Regime.P1
    assert corollary_gap(P(4, 3, 3), pt(9, 3)).gap == 0


def test_corollary_gap_shrinks_towards_boundary():
    params = P(5, 4, 4)
    gaps = [corollary_gap(params, from_regime(params, RegimeCoordinates(3, F(1, 2) - F(1, 10 ** j)), 1)).gap
            for j in range(1, 6)]
    assert all(g > 0 for g in gaps)
    assert gaps == sorted(gaps, reverse=True)
    assert gaps[-1] < F(1, 10 ** 4)


# ---- normalization and extremal points ----

def test_normalize_examples():
    params = P(4, 3, 3)
    msr, mbr = extremal_points(params, 1)
    assert normalize(params, mbr.point, mbr.B).alpha_bar == 2
    assert normalize(params, msr.point, msr.B) == normalize(params, pt(1, 1), 3)
    nb = normalize(params, msr.point, msr.B)
    assert (nb.alpha_bar, nb.gamma_bar) == (F(4, 3), 4)
    with pytest.raises(DomainError):
        normalize(params, mbr.point, 0)


@given(code_and_point(), st.fractions(min_value=F(1, 10), max_value=10, max_denominator=20))
def test_normalize_scale_invariant(cp, lam):
    params, point = cp
    B = cut_set_bound(params, point)
    assert normalize(params, point, B) == normalize(params, point.scaled(lam), lam * B)


def test_extremal_examples():
    msr, mbr = extremal_points(P(4, 3, 3), 1)
    assert (msr.point.alpha, msr.B, mbr.point.alpha, mbr.B) == (1, 3, 3, 6)
    msr, mbr = extremal_points(P(5, 1, 4), 1)
    assert msr == mbr
    assert extremal_points(P(5, 4, 4), 1)[1].B == 10
    assert mbr_file_size(P(5, 4, 4), 2) == 20


def test_space_sharing():
    params = P(4, 3, 3)
    msr, mbr = extremal_points(params, 1)
    assert space_sharing(params, 1, 0) == msr
    assert space_sharing(params, 1, 1) == mbr
    mid = space_sharing(params, 1, F(1, 2))
    assert (mid.point.alpha, mid.B) == (2, F(9, 2))
    with pytest.raises(DomainError):
        space_sharing(params, 1, F(3, 2))
