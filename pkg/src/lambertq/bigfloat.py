"""Binary fixed-exponent floats carrying a certified absolute error bound.

A :class:`BigFloat` stands for some real number ``x`` with
``|x - man * 2**exp| <= err * 2**exp``.  Every operation widens ``err`` so
the statement stays true; rounding always costs at most one ulp.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

__all__ = ["BigFloat"]

_LOG_GUARD = 32


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _round_div(a: int, b: int) -> int:
    """Round a/b to nearest (b > 0)."""
    return (2 * a + b) // (2 * b)


def _ceil_fraction(x: Fraction) -> int:
    return _ceil_div(x.numerator, x.denominator)


@dataclass(frozen=True)
class BigFloat:
    man: int
    exp: int
    err: int = 0

    def __post_init__(self):
        if self.err < 0:
            raise ValueError("error bound must be nonnegative")

    # -- construction -------------------------------------------------
    @classmethod
    def from_int(cls, n: int, bits: int = 0) -> "BigFloat":
        return cls(n << bits, -bits, 0)

    @classmethod
    def from_fraction(cls, x, bits: int) -> "BigFloat":
        """Round an exact rational to ``bits`` fractional bits."""
        x = Fraction(x)
        if bits >= 0:
            man = _round_div(x.numerator << bits, x.denominator)
        else:
            man = _round_div(x.numerator, x.denominator << -bits)
        exact = Fraction(man) * Fraction(2) ** -bits == x
        return cls(man, -bits, 0 if exact else 1)

    @classmethod
    def from_mpf(cls, x: mpmath.mpf, bits: int, extra_err=Fraction(0)) -> "BigFloat":
        sign, man, e, _ = x._mpf_
        if sign:
            man = -man
        val = Fraction(man) * Fraction(2) ** e
        out = cls.from_fraction(val, bits)
        if extra_err:
            out = out.widen(extra_err)
        return out

    # -- inspection ---------------------------------------------------
    @property
    def precision(self) -> int:
        """Number of fractional bits of the stored value."""
        return -self.exp

    @property
    def value(self) -> Fraction:
        return Fraction(self.man) * Fraction(2) ** self.exp

    @property
    def abs_error_bound(self) -> Fraction:
        return Fraction(self.err) * Fraction(2) ** self.exp

    def interval(self) -> tuple[Fraction, Fraction]:
        v, e = self.value, self.abs_error_bound
        return v - e, v + e

    def contains(self, x) -> bool:
        lo, hi = self.interval()
        return lo <= Fraction(x) <= hi

    def certified_sign(self) -> int:
        """Sign of the true value if ``err < |value|/2``, else 0."""
        if 2 * self.err < abs(self.man):
            return 1 if self.man > 0 else -1
        return 0

    def to_mpf(self) -> mpmath.mpf:
        return mpmath.mpf((self.man, self.exp)) if self.man else mpmath.mpf(0)

    def __float__(self) -> float:
        return float(self.value) if self.man else 0.0

    def to_decimal(self, digits: int = 30) -> str:
        with mpmath.workprec(max(self.man.bit_length(), 64) + 16):
            return mpmath.nstr(self.to_mpf(), digits, min_fixed=-4, max_fixed=digits)

    def to_scientific(self, digits: int = 20) -> str:
        with mpmath.workprec(max(self.man.bit_length(), 64) + 16):
            return mpmath.nstr(self.to_mpf(), digits, min_fixed=0, max_fixed=0)

    def error_string(self, digits: int = 3) -> str:
        with mpmath.workprec(max(self.err.bit_length(), 64) + 16):
            return mpmath.nstr(mpmath.mpf((self.err, self.exp)), digits,
                               min_fixed=0, max_fixed=0)

    def __repr__(self) -> str:
        return f"BigFloat({self.to_decimal(20)} +/- {self.error_string()})"

    # -- arithmetic ---------------------------------------------------
    def widen(self, extra) -> "BigFloat":
        """Add ``extra`` (an absolute amount) to the error bound."""
        extra = Fraction(extra)
        return BigFloat(self.man, self.exp, self.err + _ceil_fraction(extra / Fraction(2) ** self.exp))

    def rounded(self, bits: int) -> "BigFloat":
        """Re-express with ``bits`` fractional bits."""
        target = -bits
        if target <= self.exp:
            s = self.exp - target
            return BigFloat(self.man << s, target, self.err << s)
        s = target - self.exp
        man = _round_div(self.man, 1 << s)
        lost = 0 if man << s == self.man else 1
        return BigFloat(man, target, _ceil_div(self.err, 1 << s) + lost)

    def _align(self, other: "BigFloat") -> tuple["BigFloat", "BigFloat"]:
        e = min(self.exp, other.exp)
        return self.rounded(-e), other.rounded(-e)

    def __neg__(self) -> "BigFloat":
        return BigFloat(-self.man, self.exp, self.err)

    def __abs__(self) -> "BigFloat":
        return BigFloat(abs(self.man), self.exp, self.err)

    def __add__(self, other) -> "BigFloat":
        if isinstance(other, (int, Fraction)):
            other = BigFloat.from_fraction(other, self.precision)
        a, b = self._align(other)
        return BigFloat(a.man + b.man, a.exp, a.err + b.err)

    __radd__ = __add__

    def __sub__(self, other) -> "BigFloat":
        return self + (-other)

    def __rsub__(self, other) -> "BigFloat":
        return (-self) + other

    def __mul__(self, other) -> "BigFloat":
        if isinstance(other, int):
            return BigFloat(self.man * other, self.exp, self.err * abs(other))
        if isinstance(other, Fraction):
            return self.mul_int(other.numerator).div_int(other.denominator)
        m1, m2 = self.man, other.man
        return BigFloat(
            m1 * m2,
            self.exp + other.exp,
            abs(m1) * other.err + abs(m2) * self.err + self.err * other.err,
        )

    __rmul__ = __mul__

    def mul_int(self, k: int) -> "BigFloat":
        return self * k

    def div_int(self, d: int, bits: int | None = None) -> "BigFloat":
        """Divide by a nonzero integer, keeping ``bits`` fractional bits (default: current)."""
        if d == 0:
            raise ZeroDivisionError("BigFloat division by zero")
        bits = self.precision if bits is None else bits
        x = self.rounded(bits) if bits >= self.precision else self
        s = -bits - x.exp  # >= 0 extra right shift needed
        den = abs(d) << s
        man = _round_div(x.man, den)
        lost = 0 if man * den == x.man else 1
        if d < 0:
            man = -man
        return BigFloat(man, -bits, _ceil_div(x.err, den) + lost)

    def div(self, other: "BigFloat", bits: int) -> "BigFloat":
        """Quotient with a conservative bound; the divisor must be certified nonzero."""
        b_abs = abs(other.man)
        if b_abs <= other.err:
            raise ZeroDivisionError("divisor interval contains zero")
        a_hat, b_hat = self.value, other.value
        ea, eb = self.abs_error_bound, other.abs_error_bound
        prop = (abs(a_hat) * eb + abs(b_hat) * ea) / (abs(b_hat) * (abs(b_hat) - eb))
        q = BigFloat.from_fraction(a_hat / b_hat, bits)
        return q.widen(prop)

    def __truediv__(self, other) -> "BigFloat":
        if isinstance(other, int):
            return self.div_int(other)
        if isinstance(other, Fraction):
            return self.mul_int(other.denominator).div_int(other.numerator)
        return self.div(other, self.precision)

    # -- elementary functions -----------------------------------------
    def log(self, base=None, bits: int = 64) -> "BigFloat":
        """Natural (or base-``base``) log of ``|x|`` with a propagated error bound."""
        lo_abs = Fraction(abs(self.man) - self.err) * Fraction(2) ** self.exp
        if lo_abs <= 0:
            raise ValueError("log of an interval containing zero")
        x_hat = abs(self.value)
        wp = bits + _LOG_GUARD + max(self.man.bit_length(), 1).bit_length() + abs(self.exp).bit_length()
        with mpmath.workprec(wp):
            v = mpmath.log(abs(self.to_mpf()))
            scale = 1
            if base is not None:
                lb = mpmath.log(base)
                v = v / lb
                scale = 1 / float(mpmath.log(base)) * 1.000001
            # |log x - log x_hat| <= err / lower(|x|)
            prop = self.abs_error_bound / lo_abs * Fraction(scale)
            # mpmath log and the base division are good to a few ulps at wp
            fp = Fraction(2) ** (mpmath.mag(v) - wp + 4) if v else Fraction(0)
            return BigFloat.from_mpf(v, bits, prop + fp)
