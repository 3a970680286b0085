"""Exact decision procedures for the error-term inequalities behind the
bounded searches.

Every comparison here is made with integers and Fractions; k-th roots (k a
power of two) enter only as exact floor/ceiling bounds from iterated
math.isqrt at increasing precision, so no floating-point value ever decides
an inequality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .arith import nu, psi, two_pow_omega

# The printed-precision constants used by the explicit bounds.
C_OMEGA = Fraction(4862, 1000)  # 2^omega(N) <= C_OMEGA * N^(1/4)
C_NU = Fraction(21234, 1000)  # nu(N) <= C_NU * N^(1/16)

_PRECS = (24, 48, 96, 192, 384, 768)


@dataclass(frozen=True)
class RealBound:
    """A float snapshot of an exact bound, tagged with its safe direction.

    Only for reporting; all decisions are made on the exact rationals.
    """

    value: float
    rounding: str  # "upper" or "lower"

    @classmethod
    def upper(cls, fr: Fraction) -> "RealBound":
        return cls(float(fr), "upper")


def _iroot_pow2(n: int, j: int) -> int:
    """floor(n^(1/2^j)) by iterated integer square roots."""
    for _ in range(j):
        n = isqrt(n)
    return n


def root_bounds(n: int, j: int, prec_bits: int) -> tuple[Fraction, Fraction]:
    """(lo, hi) with lo <= n^(1/2^j) <= hi and hi - lo = 2^-prec_bits."""
    d = 1 << prec_bits
    lo = _iroot_pow2(n * d ** (1 << j), j)
    return Fraction(lo, d), Fraction(lo + 1, d)


def root_upper(n: int, j: int, prec_bits: int = 64) -> Fraction:
    return root_bounds(n, j, prec_bits)[1]


def _decide_below(terms, rhs: Fraction) -> bool:
    """Whether sum(terms) < rhs, where each term is a callable prec -> (lo, hi)."""
    for prec in _PRECS:
        lo = hi = Fraction(0)
        for t in terms:
            tlo, thi = t(prec)
            lo += tlo
            hi += thi
        if hi < rhs:
            return True
        if lo >= rhs:
            return False
    raise ArithmeticError("inequality undecided at maximum precision")


def full_search_bound(n: int, b: int):
    """Interval evaluator for the closed-form full-space error bound at level n:
    ((5/6) C 2^(1/4)-term + (1/2) C 3/4-term + b) / n with C = C_OMEGA."""

    def term_quarter(prec):
        lo, hi = root_bounds(n, 2, prec)
        c = Fraction(5, 6) * C_OMEGA / n
        return c * lo, c * hi

    def term_three_quarter(prec):
        lo, hi = root_bounds(n**3, 2, prec)
        c = Fraction(1, 2) * C_OMEGA / n
        return c * lo, c * hi

    def term_const(prec):
        c = Fraction(b, n)
        return c, c

    return [term_quarter, term_three_quarter, term_const]


def new_search_bound(n: int, b: int):
    """Interval evaluator for the closed-form newspace error bound at level n:
    ((5/3) Cn Cw N^(5/16) + (sqrt6/3) Cn N^(9/16) + (b+1) Cn N^(1/16)) / N."""

    def term_main(prec):
        lo, hi = root_bounds(n**5, 4, prec)
        c = Fraction(5, 3) * C_NU * C_OMEGA / n
        return c * lo, c * hi

    def term_sqrt(prec):
        slo, shi = root_bounds(6, 1, prec)
        lo, hi = root_bounds(n**9, 4, prec)
        c = Fraction(1, 3) * C_NU / n
        return c * slo * lo, c * shi * hi

    def term_const(prec):
        lo, hi = root_bounds(n, 4, prec)
        c = Fraction(b + 1, 1) * C_NU / n
        return c * lo, c * hi

    return [term_main, term_sqrt, term_const]


def closed_form_below_twelfth(kind: str, b: int, n: int) -> bool:
    """Exact decision of (closed-form error bound at n) < 1/12."""
    terms = full_search_bound(n, b) if kind == "full" else new_search_bound(n, b)
    return _decide_below(terms, Fraction(1, 12))


def search_ceiling(kind: str, b: int) -> int:
    """Least N* with the closed-form error bound < 1/12 for all N >= N*.

    The bound is a sum of terms c * N^(-a) with c, a > 0, hence strictly
    decreasing, so N* is found by exponential search plus bisection and
    double-checked at the boundary.
    """
    if kind not in ("full", "new"):
        raise ValueError("kind must be 'full' or 'new'")
    if b < 0:
        raise ValueError("bound must be >= 0")
    hi = 2
    while not closed_form_below_twelfth(kind, b, hi):
        hi *= 2
    lo = hi // 2  # bound fails at lo (or lo = 1)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if closed_form_below_twelfth(kind, b, mid):
            hi = mid
        else:
            lo = mid
    if hi > 2 and closed_form_below_twelfth(kind, b, hi - 1):
        raise ArithmeticError("boundary check failed: bound already below 1/12")
    return hi


def error_term_upper(kind: str, b: int, n: int, prec_bits: int = 64) -> Fraction:
    """Rational upper bound on the exact per-level error term E(n).

    Full space: ((5/6) 2^w + (1/2) 2^w sqrt(n) + b) / psi(n).
    Newspace:   (5/3) nu 2^w / n + (sqrt6/3) nu / sqrt(n) + (b+1) nu / n,
    with the exact per-level values of 2^w(n), psi(n), nu(n).
    """
    w = two_pow_omega(n)
    if kind == "full":
        sq_hi = root_upper(n, 1, prec_bits)
        return (Fraction(5, 6) * w + Fraction(1, 2) * w * sq_hi + b) / psi(n)
    if kind == "new":
        v = nu(n)
        sq6n_hi = root_upper(6 * n, 1, prec_bits)  # sqrt(6) / sqrt(n) = sqrt(6n) / n
        return Fraction(5, 3) * v * w / n + Fraction(1, 3) * v * sq6n_hi / n + (b + 1) * v / n
    raise ValueError("kind must be 'full' or 'new'")
