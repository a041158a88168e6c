"""Cyclotomic polynomials, Moebius/totient helpers and the denominators d_n(p)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .bigfloat import BigFloat

__all__ = [
    "IntPolynomial",
    "Variant",
    "DenominatorSequence",
    "factorize",
    "divisors",
    "euler_phi",
    "mobius",
    "totient_sum",
    "cyclotomic_poly",
    "cyclotomic_via_mobius",
    "denominator_sequence",
    "growth_report",
    "growth_target",
]


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial, lowest degree first; ``()`` is the zero polynomial."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def x_pow_minus_one(cls, n: int) -> "IntPolynomial":
        return cls((-1,) + (0,) * (n - 1) + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(tuple(out))

    def exact_div(self, divisor: "IntPolynomial") -> "IntPolynomial":
        """Divide by a monic polynomial; a nonzero remainder is a logic error."""
        if not divisor.is_monic():
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dd = divisor.degree
        if len(rem) - 1 < dd:
            if rem:
                raise ArithmeticError("inexact polynomial division")
            return IntPolynomial(())
        quot = [0] * (len(rem) - dd)
        for i in range(len(quot) - 1, -1, -1):
            c = rem[i + dd]
            quot[i] = c
            if c:
                for j, d in enumerate(divisor.coeffs):
                    rem[i + j] -= c * d
        if any(rem):
            raise ArithmeticError("inexact polynomial division")
        return IntPolynomial(tuple(quot))


class Variant(str, Enum):
    STANDARD = "standard"
    SQUARED = "squared"


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    ds = [1]
    for prime, e in factorize(n).items():
        ds = [d * prime**i for d in ds for i in range(e + 1)]
    return sorted(ds)


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError(f"euler_phi requires n >= 1, got {n}")
    out = n
    for prime in factorize(n):
        out = out // prime * (prime - 1)
    return out


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError(f"mobius requires n >= 1, got {n}")
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def totient_sum(n: int) -> int:
    return sum(euler_phi(k) for k in range(1, n + 1))


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> IntPolynomial:
    """Phi_n, obtained by dividing x^n - 1 by Phi_d for every proper divisor d."""
    if n < 1:
        raise ValueError(f"cyclotomic_poly requires n >= 1, got {n}")
    poly = IntPolynomial.x_pow_minus_one(n)
    for d in divisors(n)[:-1]:
        poly = poly.exact_div(cyclotomic_poly(d))
    return poly


def cyclotomic_via_mobius(n: int) -> IntPolynomial:
    """Phi_n as prod_{d|n} (x^d - 1)^{mu(n/d)}: multiply the +1 factors, divide out the -1 ones."""
    if n < 1:
        raise ValueError(f"cyclotomic_via_mobius requires n >= 1, got {n}")
    num = IntPolynomial((1,))
    dens = []
    for d in divisors(n):
        m = mobius(n // d)
        if m == 1:
            num = num * IntPolynomial.x_pow_minus_one(d)
        elif m == -1:
            dens.append(IntPolynomial.x_pow_minus_one(d))
    for den in dens:
        # x^d - 1 has leading coefficient 1
        num = num.exact_div(den)
    return num


@dataclass(frozen=True)
class DenominatorSequence:
    """values[n] = d_n(p) (standard) or d_n(p^2) (squared), with values[0] = 1."""

    p: int
    values: tuple[int, ...]
    variant: Variant = Variant.STANDARD

    @property
    def base(self) -> int:
        return self.p if self.variant is Variant.STANDARD else self.p * self.p

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


@lru_cache(maxsize=64)
def _cyclotomic_values(base: int, n_max: int) -> tuple[int, ...]:
    vals = [1]
    for k in range(1, n_max + 1):
        vals.append(vals[-1] * cyclotomic_poly(k)(base))
    return tuple(vals)


def denominator_sequence(p: int, n_max: int, variant=Variant.STANDARD) -> DenominatorSequence:
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    variant = Variant(variant)
    base = p if variant is Variant.STANDARD else p * p
    return DenominatorSequence(p, _cyclotomic_values(base, n_max), variant)


def growth_target(variant=Variant.STANDARD) -> float:
    """Limit of log_p d_n / n^2: 3/pi^2, or 6/pi^2 for the squared variant."""
    t = 3 / math.pi**2
    return 2 * t if Variant(variant) is Variant.SQUARED else t


def growth_report(p: int, n_max: int, variant=Variant.STANDARD, bits: int = 64) -> list[BigFloat]:
    """g_n = log_p(d_n) / n^2 for n = 1..n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    seq = denominator_sequence(p, n_max, variant)
    return [
        BigFloat.from_int(seq[n], bits).log(p).div_int(n * n)
        for n in range(1, n_max + 1)
    ]
