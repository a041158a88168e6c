from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lambertq.qcore import (
    dp_poch_shift,
    dq_apply,
    dual_binomium_coeffs,
    newton_binomium_coeffs,
    poch,
    poly_add,
    poly_eval,
    poly_scale,
    qbinom,
    qbinom_q,
    qtop_poch,
    qx_poch_poly,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=30)


def pp_poch(k, p):
    # (p;p)_k straight from the product
    out = 1
    for j in range(1, k + 1):
        out *= 1 - p**j
    return out


def test_poch_examples():
    assert poch(F(7, 3), F(5), 0) == 1
    assert poch(F(1, 2), F(1, 2), 2) == F(3, 8)
    assert poch(2, 2, 3) == -21


def test_poch_negative_length():
    with pytest.raises(ValueError):
        poch(1, 2, -1)


@given(rationals, rationals, st.integers(0, 10), st.integers(0, 10))
@settings(max_examples=60, deadline=None)
def test_poch_splitting(a, base, j, k):
    assert poch(a, base, j + k) == poch(a, base, j) * poch(a * base**j, base, k)


@given(rationals, rationals, st.integers(0, 12))
@settings(max_examples=40, deadline=None)
def test_poch_step(a, base, k):
    assert poch(a, base, k + 1) == poch(a, base, k) * (1 - a * base**k)


def test_qbinom_examples():
    assert qbinom(7, 0, 3) == 1
    assert qbinom(2, 1, 2) == 3
    assert qbinom(4, 2, 2) == 35


@pytest.mark.parametrize("p", [2, 3, 5])
def test_qbinom_matches_pochhammer_quotient(p):
    for n in range(16):
        for k in range(n + 1):
            num, den = pp_poch(n, p), pp_poch(k, p) * pp_poch(n - k, p)
            assert num % den == 0
            assert qbinom(n, k, p) == num // den


@pytest.mark.parametrize("p", [2, 3, 5])
def test_qbinom_symmetry_and_both_pascal_rules(p):
    for n in range(1, 31):
        for k in range(n + 1):
            v = qbinom(n, k, p)
            assert v > 0
            assert v == qbinom(n, n - k, p)
            if 0 < k < n:
                assert v == qbinom(n - 1, k - 1, p) + p**k * qbinom(n - 1, k, p)
                assert v == qbinom(n - 1, k, p) + p ** (n - k) * qbinom(n - 1, k - 1, p)


def test_qbinom_domain_error():
    with pytest.raises(ValueError):
        qbinom(3, 4, 2)
    with pytest.raises(ValueError):
        qbinom(3, 1, 1)


def test_qbinom_large_n_no_recursion_issue():
    assert qbinom(600, 1, 2) == 2**600 - 1


def test_qbinom_q_conversion():
    q = F(1, 3)
    for n in range(8):
        for k in range(n + 1):
            assert qbinom_q(n, k, 3) == poch(q, q, n) / (poch(q, q, k) * poch(q, q, n - k))


def test_qtop_examples():
    assert qtop_poch(0, 2) == 1
    assert qtop_poch(1, 2) == F(1, 2)
    assert qtop_poch(2, 2) == F(3, 8)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_qtop_consistency(p):
    for k in range(21):
        assert qtop_poch(k, p) == poch(F(1, p), F(1, p), k)


def test_newton_examples():
    assert newton_binomium_coeffs(0, 2) == [1]
    assert newton_binomium_coeffs(1, 7) == [1, -1]
    assert newton_binomium_coeffs(2, 2) == [1, F(-3, 2), F(1, 2)]


@pytest.mark.parametrize("p", [2, 3])
def test_newton_matches_product(p):
    q = F(1, p)
    for n in range(9):
        c = newton_binomium_coeffs(n, p)
        for x in (F(0), F(1, 3), F(5), F(-7, 2)):
            assert poly_eval(c, x) == poch(x, q, n)


def test_dual_examples():
    assert dual_binomium_coeffs(0, 2) == [1]
    assert dual_binomium_coeffs(1, 2) == [1, -1]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_dual_round_trip(p):
    for n in range(13):
        acc = []
        for k, f in enumerate(dual_binomium_coeffs(n, p)):
            acc = poly_add(acc, poly_scale(newton_binomium_coeffs(k, p), f))
        assert acc == [0] * n + [1]


def test_dq_apply_examples():
    assert dq_apply([F(5)], 3) == []
    assert dq_apply([0, 1], 3) == [1]
    assert dq_apply([0, 0, 1], 2) == [0, 3]
    assert dq_apply([], 2) == []


def test_dq_apply_bad_base():
    for b in (0, 1):
        with pytest.raises(ValueError):
            dq_apply([1, 2], b)


@given(st.lists(rationals, max_size=7), rationals, rationals)
@settings(max_examples=60, deadline=None)
def test_dq_apply_matches_pointwise_quotient(coeffs, base, z):
    if base in (0, 1) or z == 0:
        return
    lhs = poly_eval(dq_apply(coeffs, base), z)
    rhs = (poly_eval(coeffs, z) - poly_eval(coeffs, base * z)) / ((1 - base) * z)
    assert lhs == rhs


def test_dp_shift_examples():
    assert dp_poch_shift(0, 4, 2) == 1
    assert dp_poch_shift(1, 1, 2) == F(-1, 2)
    with pytest.raises(ValueError):
        dp_poch_shift(3, 2, 2)


@pytest.mark.parametrize("p", [2, 3])
def test_dp_shift_against_repeated_difference(p):
    for n in range(11):
        base = qx_poch_poly(n, p)
        for k in range(n + 1):
            lhs = base
            for _ in range(k):
                lhs = dq_apply(lhs, p)
            assert lhs == poly_scale(qx_poch_poly(n - k, p), dp_poch_shift(k, n, p))
