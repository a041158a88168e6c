import math
from fractions import Fraction as F

import mpmath
import pytest

from lambertq.approximants import (
    Kind,
    PoleError,
    ZeroFactorError,
    approximant,
    approximant_harmonic,
    approximant_lambert,
    approximant_log2,
    approximant_pair,
    auto_precision,
    b_exponent_limit,
    convergence_table,
    eval_constant,
    exponent_limit,
    measure_bound,
    remainder_sum,
    residual_via_remainder,
    sandwich_bounds,
    stieltjes_f,
)
from lambertq.cyclotomic import denominator_sequence
from lambertq.qcore import poch
from lambertq.qlegendre import eval_scaled


def mp_lambert(c, p, dps=80):
    # plain mpmath partial sum; terms drop below 10^-dps well before the cutoff
    with mpmath.workdps(dps + 10):
        cc = mpmath.mpf(c.numerator) / c.denominator
        terms = int((dps + 10) * math.log(10) / math.log(p)) + 10
        return +mpmath.fsum(1 / (cc * mpmath.mpf(p) ** k - 1) for k in range(1, terms))


def mp_of(x):
    lo, hi = x.interval()
    return mpmath.mpf(lo.numerator) / lo.denominator, mpmath.mpf(hi.numerator) / hi.denominator


def assert_encloses(x, truth):
    with mpmath.workdps(100):
        lo, hi = mp_of(x)
        assert lo <= truth <= hi


def test_constant_examples():
    h = eval_constant(Kind.HARMONIC, 2, precision_bits=128).value
    assert h.to_decimal(25).startswith("1.606695152415291763")
    ln = eval_constant("lnp2", 2, precision_bits=128).value
    assert ln.to_decimal(15).startswith("-0.764499780348444")
    assert h.abs_error_bound < F(1, 2**128)


@pytest.mark.parametrize("p", [2, 3, 10])
@pytest.mark.parametrize("kind,c", [("hp1", None), ("lnp2", None), ("lambert", F(3, 2)),
                                    ("lambert", F(-5, 7)), ("lambert", F(2))])
def test_constants_against_mpmath(p, kind, c):
    cc = {"hp1": F(1), "lnp2": F(-1)}.get(kind, c)
    v = eval_constant(kind, p, c, 200).value
    assert_encloses(v, mp_lambert(cc, p, 80))


def test_lambert_reindexing_identity():
    h = eval_constant("hp1", 2, precision_bits=150).value
    l2 = eval_constant("lambert", 2, F(2), 150).value
    gap = abs((h - 1 - l2).value)
    assert gap <= (h - 1 - l2).abs_error_bound


def test_lambert_pole():
    with pytest.raises(PoleError) as exc:
        eval_constant("lambert", 2, F(1, 2))
    assert exc.value.k == 1 and "k = 1" in str(exc.value)
    with pytest.raises(PoleError) as exc:
        eval_constant("lambert", 3, F(1, 9))
    assert exc.value.k == 2
    eval_constant("lambert", 3, F(1, 2))  # no pole: 3^k / 2 is never 1


def test_stieltjes_identities():
    p = 2
    h = eval_constant("hp1", p, precision_bits=140).value
    ln = eval_constant("lnp2", p, precision_bits=140).value
    for n in range(1, 6):
        f_plus = stieltjes_f(p**n, p, 140)
        partial = sum((F(1, p**k - 1) for k in range(1, n)), F(0))
        d = f_plus - (h - partial)
        assert abs(d.value) <= d.abs_error_bound
        f_minus = stieltjes_f(-(p**n), p, 140)
        partial = sum((F(1, p**k + 1) for k in range(1, n)), F(0))
        d = f_minus - (ln + partial)
        assert abs(d.value) <= d.abs_error_bound
    assert stieltjes_f(2, 2).value > 1


def test_stieltjes_poles():
    for z in (F(1), F(1, 4)):
        with pytest.raises(PoleError):
            stieltjes_f(z, 2)
    with pytest.raises(ValueError):
        stieltjes_f(0, 2)


def test_first_records():
    h = approximant_harmonic(1, 2)
    assert (h.a, h.b) == (-3, -2)
    assert h.ratio == F(3, 2)
    assert float(h.residual) == pytest.approx(-0.21339, abs=5e-6)
    lg = approximant_log2(1, 2)
    assert (lg.a, lg.b) == (-9, 12)
    assert float(lg.residual) == pytest.approx(-0.17400, abs=5e-6)


def test_n_zero_rejected():
    for kind in ("hp1", "lnp2"):
        with pytest.raises(ValueError):
            approximant(kind, 0, 2)
    with pytest.raises(ValueError):
        approximant_lambert(0, 2, F(3, 2))


def test_lambert_rejects_c_one_and_poles():
    with pytest.raises(ZeroFactorError):
        approximant_lambert(3, 2, F(1))
    with pytest.raises(PoleError):
        approximant_lambert(3, 2, F(1, 2))


@pytest.mark.parametrize("p", [2, 3, 10])
def test_integrality_and_signs(p):
    for rec in convergence_table("hp1", p, n_max=12):
        assert isinstance(rec.a, int) and isinstance(rec.b, int)
        assert (-1) ** rec.n * rec.b > 0
        assert (-1) ** rec.n * rec.residual.certified_sign() == 1
        assert rec.sign_ok
    for rec in convergence_table("lnp2", p, n_max=12):
        assert rec.b > 0 and rec.residual.certified_sign() == -1
        assert rec.sign_ok


@pytest.mark.parametrize("c", [F(2), F(3, 2), F(-1), F(-2, 5)])
def test_lambert_pairs_integral_and_factor(c):
    for n in range(1, 13):
        pair = approximant_pair("lambert", n, 2, c)
        assert pair.factor == c.denominator ** (2 * n) * denominator_sequence(2, n)[n] * poch(c, 2, n)
        assert pair.b == pair.factor * eval_scaled(n, 2, c)


def test_lambert_c2_converges_to_shifted_harmonic():
    h = eval_constant("hp1", 2, precision_bits=1000).value
    target = h - 1
    errs = []
    for rec in convergence_table("lambert", 2, F(2), n_max=12):
        errs.append(abs(float((target - rec.ratio).value)))
    assert errs[-1] < 1e-40
    assert all(b < a for a, b in zip(errs, errs[1:]))


@pytest.mark.parametrize("kind,c", [("hp1", None), ("lnp2", None), ("lambert", F(3, 2)),
                                    ("lambert", F(-1))])
def test_residual_strictly_decreasing(kind, c):
    recs = convergence_table(kind, 2, c, n_max=20)
    mags = [abs(r.residual.value) for r in recs]
    assert all(b < a for a, b in zip(mags[1:], mags[2:]))


def test_residual_error_below_half_magnitude():
    for rec in convergence_table("hp1", 3, n_max=15):
        assert 2 * rec.residual.abs_error_bound < abs(rec.residual.value)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("kind,c", [("hp1", None), ("lnp2", None), ("lambert", F(3, 2)),
                                    ("lambert", F(2)), ("lambert", F(-1))])
def test_two_path_agreement(p, kind, c):
    for rec in convergence_table(kind, p, c, n_max=10):
        other = residual_via_remainder(rec.n, p, kind, c)
        gap = abs(other.value - rec.residual.value)
        assert gap <= other.abs_error_bound + rec.residual.abs_error_bound


def test_remainder_first_record():
    r = residual_via_remainder(1, 2, "hp1")
    assert float(r) == pytest.approx(-0.21339, abs=5e-6)


@pytest.mark.parametrize("p", [2, 3])
def test_sandwich_bounds(p):
    for kind, sgn in (("hp1", 1), ("lnp2", -1)):
        for n in range(1, 11):
            s = remainder_sum(n, p, sgn * p**n, auto_precision(n, p))
            lo, hi = sandwich_bounds(kind, n, p)
            slo, shi = abs(s).interval()
            assert lo <= slo and shi <= hi


def test_sandwich_bounds_closed_form():
    p, n = 2, 3
    lo, hi = sandwich_bounds("hp1", n, p)
    assert lo == F(p, p ** (2 * n + 1) - 1)
    assert hi == F(p ** (n + 1), (p**n - 1) * (p ** (2 * n + 1) - 1))
    with pytest.raises(ValueError):
        sandwich_bounds("lambert", n, p)


def test_limit_constants():
    pi2 = math.pi**2
    assert exponent_limit("hp1") == pytest.approx(-3 * (pi2 - 2) / (2 * pi2))
    assert exponent_limit("hp1") == pytest.approx(-1.19605, abs=2e-5)
    assert exponent_limit("lnp2") == pytest.approx(-0.89207, abs=2e-5)
    assert exponent_limit("lambert") == pytest.approx(-0.69604, abs=2e-5)
    assert b_exponent_limit("hp1") == pytest.approx(1.80396, abs=1e-5)
    assert b_exponent_limit("lnp2") == pytest.approx(2.10793, abs=1e-5)
    assert b_exponent_limit("lambert") == pytest.approx(2.30396, abs=1e-5)
    assert measure_bound("hp1") == pytest.approx(2 * math.pi**2 / (math.pi**2 - 2))
    assert measure_bound("lnp2") == pytest.approx(3.36295, abs=1e-5)
    assert measure_bound("lambert") == pytest.approx(4.310119, abs=1e-6)


@pytest.mark.parametrize("kind,c", [("hp1", None), ("lnp2", None), ("lambert", F(3, 2))])
def test_exponent_rate(kind, c):
    recs = convergence_table(kind, 2, c, n_max=40, n_min=20)
    for n in (20, 40):
        rec = recs[n - 20]
        err = abs(float(rec.exponent) - exponent_limit(kind))
        print(f"{kind} n={n}: exponent error {err:.4f}")
        assert err <= 1.5 * math.log(n) / n


def test_explicit_precision_is_respected():
    rec = approximant_harmonic(5, 2, precision_bits=200)
    assert rec.residual.abs_error_bound <= F(1, 2**200)


def test_measure_none_when_residual_not_small():
    # |residual| < 1 already at n = 1 for p = 2, so the estimate is defined
    assert approximant_harmonic(1, 2).measure_estimate is not None
