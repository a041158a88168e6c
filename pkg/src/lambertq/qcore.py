"""Exact q-calculus primitives over the integer base p = 1/q.

Scalars are :class:`fractions.Fraction`.  Polynomials are dense coefficient
lists, lowest degree first, with trailing zeros trimmed; the zero polynomial
is the empty list.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

Rational = Fraction
Poly = list  # list[Fraction], lowest degree first

__all__ = [
    "poch",
    "qbinom",
    "qbinom_q",
    "qtop_poch",
    "newton_binomium_coeffs",
    "dual_binomium_coeffs",
    "dp_poch_shift",
    "dq_apply",
    "qx_poch_poly",
    "poly_trim",
    "poly_add",
    "poly_mul",
    "poly_scale",
    "poly_eval",
]


def _check_base(p: int) -> None:
    if not isinstance(p, int) or p < 2:
        raise ValueError(f"base p must be an integer >= 2, got {p!r}")


def poch(a, base, k: int) -> Fraction:
    """Return the q-Pochhammer symbol ``(a; base)_k = prod_{j<k} (1 - a*base**j)``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    a = Fraction(a)
    base = Fraction(base)
    out = Fraction(1)
    term = a
    for _ in range(k):
        out *= 1 - term
        term *= base
    return out


@lru_cache(maxsize=None)
def _pascal_row(n: int, p: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _pascal_row(n - 1, p)
    row = [1] * (n + 1)
    pk = 1
    for k in range(1, n):
        pk *= p
        # [n k] = [n-1 k-1] + p^k [n-1 k]
        row[k] = prev[k - 1] + pk * prev[k]
    return tuple(row)


def qbinom(n: int, k: int, p: int) -> int:
    """Gaussian binomial ``[n k]_p`` for an integer base, via the Pascal recurrence.

    >>> qbinom(4, 2, 2)
    35
    """
    _check_base(p)
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"qbinom requires 0 <= k <= n, got n={n}, k={k}")
    # Build rows bottom-up so deep n never hits the recursion limit.
    for m in range(0, n, 256):
        _pascal_row(m, p)
    return _pascal_row(n, p)[k]


def qbinom_q(n: int, k: int, p: int) -> Fraction:
    """``[n k]_q`` with q = 1/p, converted as ``p**(-k(n-k)) [n k]_p``."""
    return Fraction(qbinom(n, k, p), p ** (k * (n - k)))


def qtop_poch(k: int, p: int) -> Fraction:
    """``(q;q)_k`` for q = 1/p, through ``(-1)^k p^{-k(k+1)/2} (p;p)_k``."""
    _check_base(p)
    pp = 1
    for j in range(1, k + 1):
        pp *= 1 - p**j
    return Fraction((-1) ** k * pp, p ** (k * (k + 1) // 2))


def newton_binomium_coeffs(n: int, p: int) -> list[Fraction]:
    """Monomial coefficients of ``(x;q)_n``."""
    _check_base(p)
    out = []
    for k in range(n + 1):
        e = Fraction(qbinom(n, k, p), p ** (k * (n - k) + k * (k - 1) // 2))
        out.append(-e if k % 2 else e)
    return out


def dual_binomium_coeffs(n: int, p: int) -> list[Fraction]:
    """Coefficients f_k with ``x**n = sum_k f_k (x;q)_k``."""
    _check_base(p)
    out = []
    for k in range(n + 1):
        # [n k]_q q^{-nk + k(k+1)/2} collapses to [n k]_p p^{k(k-1)/2}
        f = Fraction(qbinom(n, k, p) * p ** (k * (k - 1) // 2))
        out.append(-f if k % 2 else f)
    return out


def dp_poch_shift(k: int, n: int, p: int) -> Fraction:
    """Scalar c with ``D_p^k (qx;q)_n = c * (qx;q)_{n-k}``."""
    _check_base(p)
    if k < 0 or n < 0:
        raise ValueError("k and n must be nonnegative")
    if k > n:
        raise ValueError(
            f"D_p^{k} of a degree-{n} polynomial is identically zero; no shift multiplier"
        )
    return qtop_poch(n, p) / (qtop_poch(n - k, p) * Fraction(1 - p) ** k)


def dq_apply(coeffs: Sequence, base) -> list[Fraction]:
    """Apply the q-difference operator ``(f(z) - f(base*z)) / ((1-base) z)``.

    Works on monomial coefficients, so z = 0 needs no special case.
    """
    base = Fraction(base)
    if base == 0 or base == 1:
        raise ValueError(f"difference operator base must not be 0 or 1, got {base}")
    out = []
    bm = Fraction(1)
    for m in range(1, len(coeffs)):
        bm *= base
        # [m]_base = (1 - base^m)/(1 - base)
        out.append(Fraction(coeffs[m]) * (1 - bm) / (1 - base))
    return poly_trim(out)


def qx_poch_poly(n: int, p: int) -> list[Fraction]:
    """Monomial coefficients of ``(qx;q)_n = prod_{j=1..n} (1 - x/p**j)``."""
    poly = [Fraction(1)]
    for j in range(1, n + 1):
        poly = poly_mul(poly, [Fraction(1), Fraction(-1, p**j)])
    return poly


def poly_trim(c: Sequence) -> list:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_add(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return poly_trim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return poly_trim(out)


def poly_scale(a: Sequence, s) -> list:
    return poly_trim(s * x for x in a)


def poly_eval(c: Sequence, x):
    """Horner evaluation; the empty polynomial evaluates to 0."""
    acc = 0
    for coef in reversed(c):
        acc = acc * x + coef
    return acc
