from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regenbound.simplex import EQ, GE, LE, Status, linprog


def check_duals(n, cost, cons, res, maximize):
    """y . b == value, sign pattern, and y^T A dominates c (max) or is dominated (min)."""
    s = 1 if maximize else -1
    assert sum(y * F(b) for y, (_, _, b) in zip(res.duals, cons)) == res.value
    for y, (_, rel, _) in zip(res.duals, cons):
        if rel == LE:
            assert s * y >= 0
        elif rel == GE:
            assert s * y <= 0
    for j in range(n):
        col = sum(y * F(coefs.get(j, 0)) for y, (coefs, _, _) in zip(res.duals, cons))
        assert s * (col - F(cost.get(j, 0))) >= 0


def check_primal(n, cost, cons, res):
    x = res.x
    assert all(v >= 0 for v in x.values())
    for coefs, rel, b in cons:
        lhs = sum(F(c) * x.get(j, 0) for j, c in coefs.items())
        assert {LE: lhs <= b, GE: lhs >= b, EQ: lhs == b}[rel]
    assert sum(F(c) * x.get(j, 0) for j, c in cost.items()) == res.value


def test_textbook_max():
    # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  -> 36 at (2, 6)
    cons = [({0: 1}, LE, 4), ({1: 2}, LE, 12), ({0: 3, 1: 2}, LE, 18)]
    res = linprog(2, {0: 3, 1: 5}, cons, maximize=True)
    assert res.status is Status.OPTIMAL
    assert res.value == 36 and res.x == {0: 2, 1: 6}
    check_duals(2, {0: 3, 1: 5}, cons, res, True)


def test_fractional_optimum():
    # min x + y with 3x + y >= 2, x + 3y >= 2 -> 1 at (1/2, 1/2)
    cons = [({0: 3, 1: 1}, GE, 2), ({0: 1, 1: 3}, GE, 2)]
    res = linprog(2, {0: 1, 1: 1}, cons)
    assert res.value == 1 and res.x == {0: F(1, 2), 1: F(1, 2)}
    check_duals(2, {0: 1, 1: 1}, cons, res, False)


def test_equality_and_negative_rhs():
    cons = [({0: 1, 1: 1}, EQ, 5), ({0: -1}, LE, -2)]      # x >= 2
    res = linprog(2, {0: 1, 1: 2}, cons, maximize=True)
    assert res.value == 8
    check_duals(2, {0: 1, 1: 2}, cons, res, True)


def test_unbounded_and_infeasible():
    assert linprog(1, {0: 1}, [({0: 1}, GE, 1)], maximize=True).status is Status.UNBOUNDED
    assert linprog(1, {0: 1}, [({0: 1}, GE, 2), ({0: 1}, LE, 1)]).status is Status.INFEASIBLE


def test_redundant_equalities():
    cons = [({0: 1, 1: 1}, EQ, 2), ({0: 2, 1: 2}, EQ, 4), ({0: 1}, LE, 1)]
    res = linprog(2, {0: 1, 1: 3}, cons, maximize=True)
    assert res.value == 6
    check_primal(2, {0: 1, 1: 3}, cons, res)


def test_degenerate_cycling_example():
    # Beale's example cycles under the textbook rule without anti-cycling
    cost = {0: F(3, 4), 1: -150, 2: F(1, 50), 3: -6}
    cons = [({0: F(1, 4), 1: -60, 2: F(-1, 25), 3: 9}, LE, 0),
            ({0: F(1, 2), 1: -90, 2: F(-1, 50), 3: 3}, LE, 0),
            ({2: 1}, LE, 1)]
    res = linprog(4, cost, cons, maximize=True)
    assert res.value == F(1, 20)
    check_duals(4, cost, cons, res, True)


def test_unknown_relation():
    with pytest.raises(ValueError):
        linprog(1, {0: 1}, [({0: 1}, "<", 1)])


small = st.integers(-4, 6)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_random_lps_against_float_solver(n, m, data):
    scipy_opt = pytest.importorskip("scipy.optimize")
    cost = {j: data.draw(small) for j in range(n)}
    cons = []
    for _ in range(m):
        coefs = {j: data.draw(small) for j in range(n)}
        cons.append((coefs, data.draw(st.sampled_from([LE, GE, EQ])), data.draw(st.integers(-3, 10))))
    # a box keeps most instances bounded
    cons += [({j: 1}, LE, 7) for j in range(n)]
    maximize = data.draw(st.booleans())
    res = linprog(n, cost, cons, maximize=maximize)

    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for coefs, rel, b in cons:
        row = [coefs.get(j, 0) for j in range(n)]
        if rel == LE:
            A_ub.append(row), b_ub.append(b)
        elif rel == GE:
            A_ub.append([-v for v in row]), b_ub.append(-b)
        else:
            A_eq.append(row), b_eq.append(b)
    sgn = -1 if maximize else 1
    ref = scipy_opt.linprog([sgn * cost[j] for j in range(n)], A_ub=A_ub or None, b_ub=b_ub or None,
                            A_eq=A_eq or None, b_eq=b_eq or None, bounds=[(0, None)] * n,
                            method="highs")
    if ref.status == 2:
        assert res.status is Status.INFEASIBLE
        return
    assert ref.status == 0
    assert res.status is Status.OPTIMAL
    assert abs(float(res.value) - sgn * ref.fun) < 1e-7
    check_primal(n, cost, cons, res)
    check_duals(n, cost, cons, res, maximize)


def test_large_coefficients_switch_to_big_ints():
    big = 10 ** 15
    cons = [({0: big, 1: 1}, LE, big), ({0: 1, 1: big}, LE, big), ({0: F(1, big), 1: 1}, GE, F(1, big))]
    res = linprog(2, {0: 1, 1: 1}, cons, maximize=True)
    assert res.value == F(2 * big, big + 1)
    check_duals(2, {0: 1, 1: 1}, cons, res, True)
