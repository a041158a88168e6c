"""Invariant suite behind ``lambertq verify``.

Each check returns ``(passed, detail)``; :func:`run_verification` collects
them into :class:`CheckResult` rows.  ``fault`` is a test hook: when set,
the P_n representation used by the orthogonality-type checks has one
monomial coefficient perturbed, and those checks must fail.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable

from . import approximants as ap
from . import cyclotomic as cy
from . import qcore as qc
from . import qlegendre as ql


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _flip(rep: ql.QLegendreRep) -> ql.QLegendreRep:
    c = list(rep.monomial_coeffs)
    c[-1] += 1
    return replace(rep, monomial_coeffs=tuple(c))


class _Ctx:
    def __init__(self, fault: bool):
        self.fault = fault

    def rep(self, n: int, p: int) -> ql.QLegendreRep:
        r = ql.legendre_rep(n, p)
        return _flip(r) if self.fault and n >= 1 else r


def check_qbinom(ps, ctx) -> tuple[bool, str]:
    for p in ps:
        for n in range(31):
            for k in range(n + 1):
                v = qc.qbinom(n, k, p)
                if v <= 0 or v != qc.qbinom(n, n - k, p):
                    return False, f"symmetry n={n} k={k} p={p}"
                if 0 < k < n:
                    up = qc.qbinom(n - 1, k - 1, p) + p**k * qc.qbinom(n - 1, k, p)
                    down = qc.qbinom(n - 1, k, p) + p ** (n - k) * qc.qbinom(n - 1, k - 1, p)
                    if not v == up == down:
                        return False, f"pascal n={n} k={k} p={p}"
    return True, "n <= 30"


def check_qtop(ps, ctx):
    for p in ps:
        for k in range(21):
            if qc.qtop_poch(k, p) != qc.poch(Fraction(1, p), Fraction(1, p), k):
                return False, f"k={k} p={p}"
    return True, "k <= 20"


def check_binomium_round_trip(ps, ctx):
    for p in ps:
        for n in range(13):
            acc = []
            for k, f in enumerate(qc.dual_binomium_coeffs(n, p)):
                acc = qc.poly_add(acc, qc.poly_scale(qc.newton_binomium_coeffs(k, p), f))
            if acc != [0] * n + [1]:
                return False, f"n={n} p={p}"
    return True, "n <= 12"


def check_dp_shift(ps, ctx):
    for p in ps:
        for n in range(11):
            base = qc.qx_poch_poly(n, p)
            for k in range(n + 1):
                lhs = base
                for _ in range(k):
                    lhs = qc.dq_apply(lhs, p)
                rhs = qc.poly_scale(qc.qx_poch_poly(n - k, p), qc.dp_poch_shift(k, n, p))
                if lhs != rhs:
                    return False, f"k={k} n={n} p={p}"
    return True, "k <= n <= 10"


def check_poch_split(ps, ctx):
    for p in ps:
        for a in (Fraction(3, 7), Fraction(-2), Fraction(1, p)):
            for base in (Fraction(p), Fraction(1, p)):
                for j in range(11):
                    for k in range(11):
                        lhs = qc.poch(a, base, j + k)
                        rhs = qc.poch(a, base, j) * qc.poch(a * base**j, base, k)
                        if lhs != rhs:
                            return False, f"a={a} base={base} j={j} k={k}"
    return True, "j, k <= 10"


def check_cyclotomic(ps, ctx):
    for n in range(1, 201):
        prod = cy.IntPolynomial((1,))
        for d in cy.divisors(n):
            prod = prod * cy.cyclotomic_poly(d)
        if prod != cy.IntPolynomial.x_pow_minus_one(n):
            return False, f"product over divisors n={n}"
        phi = cy.cyclotomic_poly(n)
        if phi != cy.cyclotomic_via_mobius(n):
            return False, f"mobius cross-check n={n}"
        if phi.degree != cy.euler_phi(n) or not phi.is_monic():
            return False, f"degree n={n}"
    return True, "n <= 200"


def check_denominators(ps, ctx):
    for p in ps:
        std = cy.denominator_sequence(p, 60)
        sq = cy.denominator_sequence(p, 60, cy.Variant.SQUARED)
        for n in range(1, 61):
            for ell in range(1, n + 1):
                if std[n] % (p**ell - 1) or sq[n] % (p**ell - 1) or sq[n] % (p**ell + 1):
                    return False, f"n={n} l={ell} p={p}"
    return True, "n <= 60"


def check_basis_agreement(ps, ctx):
    rng = random.Random(1729)
    for p in ps:
        for n in range(16):
            rep = ctx.rep(n, p)
            for _ in range(20):
                x = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
                if ql.eval_at(rep, x) != ql.eval_poch(rep, x):
                    return False, f"n={n} p={p} x={x}"
    return True, "n <= 15"


def _orth(rep, j):
    return sum((c * ql.raw_moment(i + j, rep.p) for i, c in enumerate(rep.monomial_coeffs)), Fraction(0))


def check_orthogonality(ps, ctx, n_max=20):
    for p in ps:
        for n in range(n_max + 1):
            rep = ctx.rep(n, p)
            for j in range(n):
                if _orth(rep, j) != 0:
                    return False, f"n={n} j={j} p={p}"
            if _orth(rep, n) == 0:
                return False, f"vanishes at j=n={n} p={p}"
    return True, f"n <= {n_max}"


def check_norm(ps, ctx, n_max=20):
    for p in ps:
        for n in range(n_max + 1):
            c = ctx.rep(n, p).monomial_coeffs
            sq = qc.poly_mul(c, c)
            val = sum((x * ql.raw_moment(i, p) for i, x in enumerate(sq)), Fraction(0))
            if val != ql.norm_value(n, p):
                return False, f"n={n} p={p}"
    return True, f"n <= {n_max}"


def check_rodrigues(ps, ctx):
    for p in ps:
        for n in range(11):
            if tuple(ql.rodrigues_poly(n, p)) != ctx.rep(n, p).monomial_coeffs:
                return False, f"n={n} p={p}"
    return True, "n <= 10"


def check_divided_difference(ps, ctx):
    rng = random.Random(271828)
    for p in ps:
        for _ in range(50):
            x = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
            y = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
            if x == y:
                continue
            for k in range(1, 9):
                if not ql.divided_difference_identity_check(k, p, x, y):
                    return False, f"k={k} p={p} x={x} y={y}"
    return True, "k <= 8, 50 pairs"


def check_scaled_sign(ps, ctx, n_max=30):
    for p in ps:
        for n in range(n_max + 1):
            plus = ql.eval_scaled(n, p, 1)
            minus = ql.eval_scaled(n, p, -1)
            if plus.denominator != 1 or minus.denominator != 1:
                return False, f"non-integer n={n} p={p}"
            if (-1) ** n * plus <= 0 or minus <= 0:
                return False, f"sign n={n} p={p}"
    return True, f"n <= {n_max}"


LAMBERT_CS = (Fraction(2), Fraction(3, 2), Fraction(-1))


def _cases():
    yield ap.Kind.HARMONIC, None
    yield ap.Kind.LOG2, None
    for c in LAMBERT_CS:
        yield ap.Kind.LAMBERT, c


def check_integrality_sign(ps, ctx, n_max=25):
    for p in ps:
        for kind, c in _cases():
            for rec in ap.convergence_table(kind, p, c, n_max):
                if rec.sign_ok is False:
                    return False, f"{kind.value} n={rec.n} p={p}"
                if kind is ap.Kind.HARMONIC and (-1) ** rec.n * rec.b <= 0:
                    return False, f"b sign n={rec.n} p={p}"
                if kind is ap.Kind.LOG2 and rec.b <= 0:
                    return False, f"b sign n={rec.n} p={p}"
    return True, f"n <= {n_max}"


def check_two_path(ps, ctx, n_max=15):
    for p in ps:
        for kind, c in _cases():
            for rec in ap.convergence_table(kind, p, c, n_max):
                other = ap.residual_via_remainder(rec.n, p, kind, c)
                gap = abs(other.value - rec.residual.value)
                if gap > other.abs_error_bound + rec.residual.abs_error_bound:
                    return False, f"{kind.value} n={rec.n} p={p}"
    return True, f"n <= {n_max}"


def check_sandwich(ps, ctx, n_max=15):
    for p in ps:
        for kind in (ap.Kind.HARMONIC, ap.Kind.LOG2):
            for n in range(1, n_max + 1):
                z = (1 if kind is ap.Kind.HARMONIC else -1) * p**n
                s = abs(ap.remainder_sum(n, p, z, ap.auto_precision(n, p)))
                lo, hi = ap.sandwich_bounds(kind, n, p)
                slo, shi = s.interval()
                if slo < lo or shi > hi:
                    return False, f"{kind.value} n={n} p={p}"
    return True, f"n <= {n_max}"


CHECKS: dict[str, Callable] = {
    "qbinom_symmetry_pascal": check_qbinom,
    "qtop_consistency": check_qtop,
    "binomium_round_trip": check_binomium_round_trip,
    "dp_poch_shift": check_dp_shift,
    "poch_splitting": check_poch_split,
    "cyclotomic_identities": check_cyclotomic,
    "denominator_divisibility": check_denominators,
    "basis_agreement": check_basis_agreement,
    "orthogonality": check_orthogonality,
    "norm": check_norm,
    "rodrigues": check_rodrigues,
    "divided_difference": check_divided_difference,
    "scaled_integrality_sign": check_scaled_sign,
    "integrality_sign": check_integrality_sign,
    "two_path_residual": check_two_path,
    "sandwich_bounds": check_sandwich,
}

_SIZED = {"integrality_sign", "two_path_residual", "sandwich_bounds", "orthogonality", "norm"}
_CAPS = {"two_path_residual": 15, "sandwich_bounds": 15}


def run_verification(ps=(2, 3), n_max: int = 20, fault: bool = False,
                     only: list[str] | None = None) -> list[CheckResult]:
    ctx = _Ctx(fault)
    out = []
    for name, fn in CHECKS.items():
        if only and name not in only:
            continue
        kwargs = {}
        if name in _SIZED:
            kwargs["n_max"] = min(n_max, _CAPS.get(name, n_max))
        try:
            ok, detail = fn(tuple(ps), ctx, **kwargs)
        except Exception as exc:  # a crash is a failed invariant, reported by name
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, ok, detail))
    return out
