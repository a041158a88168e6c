"""Integer approximant pairs (a_n, b_n) for Lambert-type series.

All three targets are values of ``L(c) = sum_{k>=1} 1/(c p^k - 1)``:
c = 1 gives the q-harmonic series h_p(1), c = -1 gives ln_p(2) (after the
Fubini rewrite), and any other rational c gives a general Lambert series.
The pairs come from evaluating the Pade relation of the little q-Legendre
polynomials at z = c p^n and clearing denominators with a cyclotomic factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .bigfloat import BigFloat
from .cyclotomic import Variant, denominator_sequence
from .qcore import _check_base, poch
from .qlegendre import assoc_scaled, eval_at, eval_scaled, legendre_rep, norm_value

__all__ = [
    "Kind",
    "PoleError",
    "ZeroFactorError",
    "IntegralityError",
    "TargetConstant",
    "ApproximantPair",
    "ApproximantRecord",
    "lambert_series",
    "eval_constant",
    "stieltjes_f",
    "approximant_pair",
    "approximant_harmonic",
    "approximant_log2",
    "approximant_lambert",
    "approximant",
    "auto_precision",
    "remainder_sum",
    "residual_via_remainder",
    "sandwich_bounds",
    "convergence_table",
    "exponent_limit",
    "b_exponent_limit",
    "measure_bound",
]

EXPONENT_BITS = 64


class Kind(str, Enum):
    HARMONIC = "hp1"
    LOG2 = "lnp2"
    LAMBERT = "lambert"


class PoleError(ValueError):
    """c p^k = 1 for some k, so a term of the series is undefined."""

    def __init__(self, k: int, c: Fraction, p: int):
        self.k = k
        super().__init__(f"pole in series: c*p^k = 1 at k = {k} (c = {c}, p = {p})")


class ZeroFactorError(ValueError):
    """(c;p)_n = 0, so the clearing factor vanishes."""


class IntegralityError(ArithmeticError):
    """An assembled approximant has a nontrivial denominator (a construction bug)."""


def _kind_c(kind: Kind, c) -> Fraction:
    kind = Kind(kind)
    if kind is Kind.HARMONIC:
        return Fraction(1)
    if kind is Kind.LOG2:
        return Fraction(-1)
    if c is None:
        raise ValueError("the lambert kind needs a rational c")
    return Fraction(c)


def _pole_index(c: Fraction, p: int, start: int) -> int | None:
    """Smallest k >= start with c p^k = 1, if any."""
    if c.numerator != 1:
        return None
    b, k = c.denominator, 0
    while b % p == 0:
        b //= p
        k += 1
    if b == 1 and k >= start:
        return k
    return None


@lru_cache(maxsize=64)
def lambert_series(c: Fraction, p: int, bits: int, start: int = 1) -> BigFloat:
    """Certified ``sum_{k>=start} 1/(c p^k - 1)`` with absolute error below 2^-bits."""
    _check_base(p)
    c = Fraction(c)
    if c == 0:
        raise ValueError("c must be nonzero")
    k_pole = _pole_index(c, p, start)
    if k_pole is not None:
        raise PoleError(k_pole, c, p)
    a, b = c.numerator, c.denominator
    # Tail past K: |1/(c p^k - 1)| <= 2/(|c| p^k) once |c| p^k >= 2.
    budget = Fraction(1, 2 ** (bits + 2))
    K = max(start, 1)
    while abs(c) * p**K < 2 or Fraction(2 * b, abs(a) * (p - 1) * p**K) > budget:
        K += 1
    work = bits + 3 + K.bit_length()
    man = 0
    err = 0
    for k in range(start, K + 1):
        t = BigFloat.from_fraction(Fraction(b, a * p**k - b), work)
        man += t.man
        err += t.err
    tail = Fraction(2 * b, abs(a) * (p - 1) * p**K)
    return BigFloat(man, -work, err).widen(tail)


@dataclass(frozen=True)
class TargetConstant:
    kind: Kind
    p: int
    c: Fraction | None
    value: BigFloat


def eval_constant(kind, p: int, c=None, precision_bits: int = 128) -> TargetConstant:
    """h_p(1), ln_p(2) = -sum 1/(p^k+1), or sum 1/(c p^k - 1), certified to 2^-precision_bits."""
    kind = Kind(kind)
    cc = _kind_c(kind, c)
    value = lambert_series(cc, p, precision_bits)
    return TargetConstant(kind, p, cc if kind is Kind.LAMBERT else None, value)


def stieltjes_f(z, p: int, precision_bits: int = 128) -> BigFloat:
    """f(z) = sum_{k>=0} q^k/(z - q^k) = sum_{k>=0} 1/(z p^k - 1)."""
    z = Fraction(z)
    if z == 0:
        raise ValueError("f(0) diverges")
    k_pole = _pole_index(z, p, 0)
    if k_pole is not None:
        raise PoleError(k_pole, z, p)
    return lambert_series(z, p, precision_bits, start=0)


# -- exact construction ------------------------------------------------


@dataclass(frozen=True)
class ApproximantPair:
    """Exact ingredients of one approximant: b = F P_n(z), a = F Q_n(z) + b T."""

    kind: Kind
    n: int
    p: int
    c: Fraction
    factor: int
    p_value: Fraction
    a: int
    b: int

    @property
    def z(self) -> Fraction:
        return self.c * self.p**self.n


def _as_integer(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise IntegralityError(f"{what} has denominator {x.denominator}")
    return x.numerator


def _clearing_factor(kind: Kind, n: int, p: int, c: Fraction) -> int:
    if kind is Kind.HARMONIC:
        return denominator_sequence(p, n)[n]
    if kind is Kind.LOG2:
        return denominator_sequence(p, n, Variant.SQUARED)[n]
    cp = poch(c, p, n)
    if cp == 0:
        raise ZeroFactorError(
            f"(c;p)_n = 0 for c = {c}, p = {p}, n = {n}; use the hp1 kind for c = 1"
        )
    f = c.denominator ** (2 * n) * denominator_sequence(p, n)[n] * cp
    return _as_integer(f, "clearing factor")


def approximant_pair(kind, n: int, p: int, c=None) -> ApproximantPair:
    kind = Kind(kind)
    _check_base(p)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    cc = _kind_c(kind, c)
    if kind is Kind.LAMBERT:
        k_pole = _pole_index(cc, p, 1)
        if k_pole is not None:
            raise PoleError(k_pole, cc, p)
    factor = _clearing_factor(kind, n, p, cc)
    pz = eval_scaled(n, p, cc)
    qz = assoc_scaled(n, p, cc)
    partial = sum((Fraction(1) / (cc * p**k - 1) for k in range(1, n)), Fraction(0))
    b = _as_integer(factor * pz, "b_n")
    a = _as_integer(factor * qz + b * partial, "a_n")
    return ApproximantPair(kind, n, p, cc, factor, pz, a, b)


# -- certified residuals ---------------------------------------------


def auto_precision(n: int, p: int) -> int:
    """Absolute accuracy (bits) used for residuals: ceil(1.3 n^2 log2 p) + 64."""
    return math.ceil(1.3 * n * n * math.log2(p)) + 64


@dataclass(frozen=True)
class ApproximantRecord:
    kind: Kind
    n: int
    p: int
    c: Fraction
    a: int
    b: int
    residual: BigFloat
    exponent: BigFloat
    b_exponent: BigFloat
    measure_estimate: BigFloat | None
    residual_sign: int
    sign_ok: bool | None

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.a, self.b)


def _expected_residual_sign(kind: Kind, n: int) -> int | None:
    if kind is Kind.HARMONIC:
        return -1 if n % 2 else 1
    if kind is Kind.LOG2:
        return -1
    return None


def _record(pair: ApproximantPair, target: BigFloat, bits: int) -> ApproximantRecord:
    residual = (target * pair.b - pair.a).rounded(bits + 8)
    n, p = pair.n, pair.p
    sign = residual.certified_sign()
    if sign == 0:
        raise ArithmeticError(f"residual sign not certified at n = {n}; raise precision")
    log_res = residual.log(bits=EXPONENT_BITS)
    log_b = BigFloat.from_int(pair.b).log(bits=EXPONENT_BITS)
    exponent = residual.log(p, bits=EXPONENT_BITS).div_int(n * n)
    b_exponent = BigFloat.from_int(pair.b).log(p, bits=EXPONENT_BITS).div_int(n * n)
    measure = None
    if log_res.certified_sign() < 0:
        measure = BigFloat.from_int(1, EXPONENT_BITS) + log_b.div(-log_res, EXPONENT_BITS)
    expected = _expected_residual_sign(pair.kind, n)
    return ApproximantRecord(
        kind=pair.kind, n=n, p=p, c=pair.c, a=pair.a, b=pair.b,
        residual=residual, exponent=exponent, b_exponent=b_exponent,
        measure_estimate=measure, residual_sign=sign,
        sign_ok=None if expected is None else sign == expected,
    )


def _target_bits(pair: ApproximantPair, bits: int) -> int:
    return bits + abs(pair.b).bit_length() + 4


def approximant(kind, n: int, p: int, c=None, precision_bits: int | None = None) -> ApproximantRecord:
    pair = approximant_pair(kind, n, p, c)
    bits = auto_precision(n, p) if precision_bits is None else precision_bits
    target = lambert_series(pair.c, p, _target_bits(pair, bits))
    return _record(pair, target, bits)


def approximant_harmonic(n: int, p: int, precision_bits: int | None = None) -> ApproximantRecord:
    return approximant(Kind.HARMONIC, n, p, None, precision_bits)


def approximant_log2(n: int, p: int, precision_bits: int | None = None) -> ApproximantRecord:
    return approximant(Kind.LOG2, n, p, None, precision_bits)


def approximant_lambert(n: int, p: int, c, precision_bits: int | None = None) -> ApproximantRecord:
    return approximant(Kind.LAMBERT, n, p, c, precision_bits)


def remainder_sum(n: int, p: int, z, bits: int) -> BigFloat:
    """sum_{k>=0} P_n(q^k|q)^2 q^k / (z - q^k), certified to 2^-bits.

    Lattice values are exact; the tail uses |P_n(x)| <= sum_i |c_i| x^i for
    x <= q^{K+1} and |z - q^k| >= |z|/2 once q^k <= |z|/2.
    """
    z = Fraction(z)
    if _pole_index(z, p, 0) is not None or z == 0:
        raise ValueError(f"z = {z} lies on the closure of the lattice")
    rep = legendre_rep(n, p)
    q = Fraction(1, p)
    absc = [abs(x) for x in rep.monomial_coeffs]
    budget = Fraction(1, 2 ** (bits + 2))

    def tail(K: int) -> Fraction:
        x = q ** (K + 1)
        if x > abs(z) / 2:
            return None
        amax = sum((ci * x**i for i, ci in enumerate(absc)), Fraction(0))
        return amax * amax * x / (1 - q) * 2 / abs(z)

    K = 0
    while True:
        t = tail(K)
        if t is not None and t <= budget:
            break
        K += 1 if K < 16 else K // 4
    work = bits + 3 + K.bit_length()
    man = err = 0
    for k in range(K + 1):
        xk = q**k
        pk = eval_at(rep, xk)
        t = BigFloat.from_fraction(pk * pk * xk / (z - xk), work)
        man += t.man
        err += t.err
    return BigFloat(man, -work, err).widen(tail(K))


def residual_via_remainder(n: int, p: int, kind, c=None, precision_bits: int | None = None) -> BigFloat:
    """b_n L - a_n = (F / P_n(z)) * sum_k P_n(q^k)^2 q^k / (z - q^k), computed on the lattice."""
    pair = approximant_pair(kind, n, p, c)
    bits = auto_precision(n, p) if precision_bits is None else precision_bits
    scale = Fraction(pair.factor) / eval_scaled(n, p, pair.c)
    extra = max(0, scale.numerator.bit_length() - scale.denominator.bit_length() + 1)
    s = remainder_sum(n, p, pair.z, bits + extra + 2)
    return (s.mul_int(scale.numerator).div_int(scale.denominator)).rounded(bits + 8)


def sandwich_bounds(kind, n: int, p: int) -> tuple[Fraction, Fraction]:
    """Bounds for |sum_k P_n(q^k)^2 q^k/(z - q^k)| from the norm and |z - q^k|."""
    kind = Kind(kind)
    norm = norm_value(n, p)
    pn = p**n
    if kind is Kind.HARMONIC:
        return norm / pn, norm / (pn - 1)
    if kind is Kind.LOG2:
        return norm / (pn + 1), norm / pn
    raise ValueError("sandwich bounds are stated for hp1 and lnp2 only")


def convergence_table(kind, p: int, c=None, n_max: int = 20, precision_bits: int | None = None,
                      n_min: int = 1) -> list[ApproximantRecord]:
    """Records for n = n_min..n_max; the target is summed once at the largest needed precision."""
    pairs = [approximant_pair(kind, n, p, c) for n in range(n_min, n_max + 1)]
    if not pairs:
        return []
    bits_for = {
        pr.n: auto_precision(pr.n, p) if precision_bits is None else precision_bits for pr in pairs
    }
    top = max(_target_bits(pr, bits_for[pr.n]) for pr in pairs)
    target = lambert_series(pairs[0].c, p, top)
    return [_record(pr, target, bits_for[pr.n]) for pr in pairs]


def exponent_limit(kind) -> float:
    """Limit of log_p|b_n L - a_n| / n^2."""
    pi2 = math.pi**2
    kind = Kind(kind)
    if kind is Kind.HARMONIC:
        return -3 * (pi2 - 2) / (2 * pi2)
    if kind is Kind.LOG2:
        return -3 * (pi2 - 4) / (2 * pi2)
    return -(pi2 - 3) / pi2


def b_exponent_limit(kind) -> float:
    """Limit of log_p|b_n| / n^2."""
    pi2 = math.pi**2
    kind = Kind(kind)
    if kind is Kind.HARMONIC:
        return 3 * (pi2 + 2) / (2 * pi2)
    if kind is Kind.LOG2:
        return 3 * (pi2 + 4) / (2 * pi2)
    return 3 / pi2 + 2


def measure_bound(kind) -> float:
    """Irrationality-measure bound 1 + b-exponent / |residual exponent|."""
    return 1 - b_exponent_limit(kind) / exponent_limit(kind)
