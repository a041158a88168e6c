"""Little q-Legendre polynomials P_n(x|q), q = 1/p, and their associated polynomials.

P_n is kept in two exact bases: monomials (rational coefficients) and the
Pochhammer family ``(qx;q)_k`` (integer coefficients).  The orthogonality
measure puts mass q^k at q^k, so its moments are ``m_j = p^{j+1}/(p^{j+1}-1)``
and every lattice sum of a polynomial reduces to a finite moment contraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .qcore import (
    _check_base,
    dq_apply,
    poch,
    poly_eval,
    poly_mul,
    qbinom,
    qtop_poch,
    qx_poch_poly,
)

__all__ = [
    "QLegendreRep",
    "MomentTable",
    "legendre_rep",
    "eval_at",
    "eval_poch",
    "eval_scaled",
    "leading_coefficient",
    "raw_moment",
    "moment_table",
    "modified_moment_partial_sum",
    "orthogonality_inner",
    "norm_check",
    "norm_value",
    "rodrigues_poly",
    "rodrigues_check",
    "assoc_eval",
    "assoc_eval_moments",
    "assoc_scaled",
    "divided_difference_identity_check",
]


@dataclass(frozen=True)
class QLegendreRep:
    n: int
    p: int
    monomial_coeffs: tuple[Fraction, ...]
    poch_coeffs: tuple[int, ...]


def _binom_pair(n: int, k: int, p: int) -> int:
    return qbinom(n, k, p) * qbinom(n + k, k, p)


@lru_cache(maxsize=256)
def legendre_rep(n: int, p: int) -> QLegendreRep:
    _check_base(p)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    mono = []
    poch_c = []
    for k in range(n + 1):
        bb = _binom_pair(n, k, p)
        e = -k * n + k * (k - 1) // 2
        c = Fraction(bb) * Fraction(p) ** e
        mono.append(-c if k % 2 else c)
        s = bb * p ** ((n - k) * (n - k + 1) // 2)
        poch_c.append(-s if (n + k) % 2 else s)
    return QLegendreRep(n, p, tuple(mono), tuple(poch_c))


def eval_at(rep: QLegendreRep, x) -> Fraction:
    """P_n(x|q) by Horner on the monomial coefficients."""
    return Fraction(poly_eval(rep.monomial_coeffs, Fraction(x)))


def eval_poch(rep: QLegendreRep, x) -> Fraction:
    """P_n(x|q) from the ``(qx;q)_k`` expansion."""
    x = Fraction(x)
    acc = Fraction(0)
    pk = Fraction(1)
    for k, c in enumerate(rep.poch_coeffs):
        if k:
            pk *= 1 - x / rep.p**k
        acc += c * pk
    return acc


def eval_scaled(n: int, p: int, c=1) -> Fraction:
    """P_n(c p^n | q) = sum_k [n k]_p [n+k k]_p p^{k(k-1)/2} (-c)^k."""
    _check_base(p)
    c = Fraction(c)
    acc = Fraction(0)
    mc = Fraction(1)
    for k in range(n + 1):
        acc += _binom_pair(n, k, p) * p ** (k * (k - 1) // 2) * mc
        mc *= -c
    return acc


def leading_coefficient(n: int, p: int) -> Fraction:
    """kappa_n = (-1)^n [2n n]_p p^{-n(n+1)/2}."""
    k = Fraction(qbinom(2 * n, n, p), p ** (n * (n + 1) // 2))
    return -k if n % 2 else k


def raw_moment(j: int, p: int) -> Fraction:
    """m_j = sum_k q^k q^{kj} = p^{j+1}/(p^{j+1}-1)."""
    t = p ** (j + 1)
    return Fraction(t, t - 1)


@dataclass(frozen=True)
class MomentTable:
    """raw[j] = m_j for j = 0..j_max; modified[l] = 1/(1-q^l) for l = 1..j_max+1."""

    p: int
    raw: tuple[Fraction, ...]
    modified: dict


def moment_table(p: int, j_max: int) -> MomentTable:
    _check_base(p)
    raw = tuple(raw_moment(j, p) for j in range(j_max + 1))
    modified = {ell: Fraction(p**ell, p**ell - 1) for ell in range(1, j_max + 2)}
    return MomentTable(p, raw, modified)


def modified_moment_partial_sum(ell: int, p: int, terms: int) -> Fraction:
    """sum_{j<terms} q^j (q^{j+1};q)_{l-1}; converges to 1/(1-q^l)."""
    q = Fraction(1, p)
    return sum((q**j * poch(q ** (j + 1), q, ell - 1) for j in range(terms)), Fraction(0))


def _contract(coeffs, shift: int, p: int) -> Fraction:
    return sum((c * raw_moment(i + shift, p) for i, c in enumerate(coeffs)), Fraction(0))


def orthogonality_inner(n: int, j: int, p: int) -> Fraction:
    """sum_k q^k P_n(q^k|q) q^{kj}, exactly, by contraction with the moments."""
    return _contract(legendre_rep(n, p).monomial_coeffs, j, p)


def norm_value(n: int, p: int) -> Fraction:
    """q^n/(1-q^{2n+1}) = p^{n+1}/(p^{2n+1}-1)."""
    return Fraction(p ** (n + 1), p ** (2 * n + 1) - 1)


def norm_check(n: int, p: int) -> Fraction:
    """sum_k q^k P_n(q^k|q)^2 from the squared monomial expansion."""
    c = legendre_rep(n, p).monomial_coeffs
    return _contract(poly_mul(c, c), 0, p)


def rodrigues_poly(n: int, p: int) -> list[Fraction]:
    """q^{n(n-1)/2} (1-q)^n / (q;q)_n * D_p^n[(qx;q)_n x^n], monomial coefficients."""
    poly = [Fraction(0)] * n + qx_poch_poly(n, p)
    for _ in range(n):
        poly = dq_apply(poly, p)
    q = Fraction(1, p)
    scale = q ** (n * (n - 1) // 2) * (1 - q) ** n / qtop_poch(n, p)
    return [scale * c for c in poly]


def rodrigues_check(n: int, p: int) -> bool:
    return tuple(rodrigues_poly(n, p)) == legendre_rep(n, p).monomial_coeffs


def _assoc_inner(n: int, p: int, k: int, poch_factors) -> Fraction:
    """sum_{l=1}^k poch_factors[k-l] / (p^l - 1)."""
    return sum((poch_factors[k - ell] / (p**ell - 1) for ell in range(1, k + 1)), Fraction(0))


def _assoc_sum(n: int, p: int, poch_for_k) -> Fraction:
    acc = Fraction(0)
    for k in range(1, n + 1):
        inner = _assoc_inner(n, p, k, poch_for_k(k))
        term = _binom_pair(n, k, p) * p ** ((n - k) * (n - k + 1) // 2) * inner
        acc += -term if k % 2 else term
    return acc if n % 2 else -acc


def assoc_eval(n: int, p: int, x) -> Fraction:
    """Associated polynomial Q_n(x|q) from its closed modified-moment form.

    Q_n(x) = (-1)^{n+1} sum_k [n k]_p [n+k k]_p (-1)^k p^{(n-k)(n-k+1)/2}
             sum_{l=1}^k (q^{l+1} x; q)_{k-l} / (p^l - 1)
    """
    _check_base(p)
    x = Fraction(x)
    q = Fraction(1, p)

    def factors(k):
        # entry j is (q^{k-j+1} x; q)_j, i.e. l = k - j
        out = []
        for j in range(k):
            out.append(poch(q ** (k - j + 1) * x, q, j))
        return out

    return _assoc_sum(n, p, factors)


def assoc_scaled(n: int, p: int, c=1) -> Fraction:
    """Q_n(c p^n | q) using ``(q^{l+1} c p^n; q)_{k-l} = (c p^{n-k}; p)_{k-l}``."""
    _check_base(p)
    c = Fraction(c)

    def factors(k):
        a = c * Fraction(p) ** (n - k)
        out = [Fraction(1)]
        term = a
        for _ in range(k - 1):
            out.append(out[-1] * (1 - term))
            term *= p
        return out

    return _assoc_sum(n, p, factors)


def assoc_eval_moments(n: int, p: int, z) -> Fraction:
    """Q_n(z) = int (P_n(z) - P_n(x))/(z - x) dmu(x), contracted against the raw moments.

    Uses (z^i - x^i)/(z - x) = sum_{t<i} z^t x^{i-1-t}; independent of the
    modified-moment closed form.
    """
    z = Fraction(z)
    acc = Fraction(0)
    for i, ci in enumerate(legendre_rep(n, p).monomial_coeffs):
        zt = Fraction(1)
        for t in range(i):
            acc += ci * zt * raw_moment(i - 1 - t, p)
            zt *= z
    return acc


def divided_difference_identity_check(k: int, p: int, x, y) -> bool:
    """((qx;q)_k - (qy;q)_k)/(x-y) == -sum_l q^l (qy;q)_{l-1} (q^{l+1}x;q)_{k-l}."""
    x, y = Fraction(x), Fraction(y)
    if x == y:
        raise ValueError("divided difference needs x != y")
    q = Fraction(1, p)
    lhs = (poch(q * x, q, k) - poch(q * y, q, k)) / (x - y)
    rhs = -sum(
        (q**ell * poch(q * y, q, ell - 1) * poch(q ** (ell + 1) * x, q, k - ell)
         for ell in range(1, k + 1)),
        Fraction(0),
    )
    return lhs == rhs
