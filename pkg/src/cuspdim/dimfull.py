"""Dimension of the full cusp-form space S_k(Gamma_0(N), chi).

Two routes to every character-dependent term: a multiplicative evaluation
through prime-power case tables (the production path) and literal
character-sum / divisor-sum oracles (the testing path).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import (
    X2_1,
    X2_X_1,
    congruence_roots,
    factorize,
    legendre,
    psi,
    sqrt_mod_prime_power,
    v_p,
)
from .characters import DirichletCharacter, LocalCharacter

_legendre_m3 = lru_cache(maxsize=None)(lambda p: legendre(-3, p))
_legendre_m1 = lru_cache(maxsize=None)(lambda p: legendre(-1, p))

# 12*c3(k) by k mod 3, and 12*c4(k) by k mod 4.
T3 = (-4, 0, 4)
T4 = (-3, 0, 3, 6)


def c0(k: int, chi: DirichletCharacter) -> int:
    """1 exactly for weight 2 with trivial character, else 0."""
    return 1 if k == 2 and chi.is_trivial else 0


def sigma_pp(p: int, r: int, alpha: int) -> int:
    """The gcd-phi divisor sum at p^r when v_p(conductor) = alpha."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if r < alpha:
        return 1
    if r < 2 * alpha:
        return 2 * p ** (r - alpha)
    if r % 2:
        return 2 * p ** ((r - 1) // 2)
    return (p + 1) * p ** (r // 2 - 1)


@lru_cache(maxsize=None)
def _cuberoot_point(p: int, alpha: int) -> int:
    """(-1 + u)/2 mod p^alpha with u^2 = -3; the root of x^2+x+1 fed to chi."""
    q = p**alpha
    u = sqrt_mod_prime_power(-3, p, alpha)
    return (u - 1) * pow(2, -1, q) % q


@lru_cache(maxsize=None)
def _fourth_root_point(p: int, alpha: int) -> int:
    return sqrt_mod_prime_power(-1, p, alpha)


def rho_pp(p: int, r: int, loc: LocalCharacter) -> int:
    """Local character sum over roots of x^2+x+1 = 0 mod p^r (loc at p^alpha)."""
    alpha = loc.alpha
    if r < 1:
        raise ValueError("r must be >= 1")
    if r < alpha:
        return 1
    if p == 2:
        return 0
    if p == 3:
        return 1 if r == 1 else 0
    if _legendre_m3(p) != 1:
        return 0
    if alpha == 0:
        return 2
    val = loc(_cuberoot_point(p, alpha))
    if val.is_one:
        return 2
    if val.is_primitive_cuberoot:
        return -1
    raise AssertionError(f"chi at a cube root of unity gave {val!r}")


def rho_prime_pp(p: int, r: int, loc: LocalCharacter) -> int:
    """Local character sum over roots of x^2+1 = 0 mod p^r (loc at p^alpha)."""
    alpha = loc.alpha
    if r < 1:
        raise ValueError("r must be >= 1")
    if r < alpha:
        return 1
    if p == 2:
        return 1 if r == 1 else 0
    if _legendre_m1(p) != 1:
        return 0
    if alpha == 0:
        return 2
    val = loc(_fourth_root_point(p, alpha))
    if val.is_one:
        return 2
    if val.is_minus_one:
        return -2
    if val.is_pm_i:
        return 0
    raise AssertionError(f"chi at a 4th root of unity gave {val!r}")


def _require_conductor_divides(n: int, chi: DirichletCharacter):
    if n % chi.conductor:
        raise ValueError(f"conductor {chi.conductor} does not divide level {n}")


def rho(n: int, chi: DirichletCharacter) -> int:
    """Multiplicative evaluation of the x^2+x+1 character sum at level n."""
    _require_conductor_divides(n, chi)
    out = 1
    for p, r in factorize(n):
        out *= rho_pp(p, r, chi.local_component(p))
        if out == 0:
            return 0
    return out


def rho_prime(n: int, chi: DirichletCharacter) -> int:
    """Multiplicative evaluation of the x^2+1 character sum at level n."""
    _require_conductor_divides(n, chi)
    out = 1
    for p, r in factorize(n):
        out *= rho_prime_pp(p, r, chi.local_component(p))
        if out == 0:
            return 0
    return out


def sigma_mult(n: int, f: int) -> int:
    """Multiplicative evaluation of the constrained gcd-phi sum (= gcd_phi_sum)."""
    if f < 1 or n % f:
        raise ValueError(f"{f} does not divide {n}")
    out = 1
    for p, r in factorize(n):
        out *= sigma_pp(p, r, v_p(f, p))
    return out


def _tally_sum(values, allowed_den: int) -> int:
    """Exact integer value of a sum of roots of unity of order dividing
    allowed_den (3 or 4), verified to have zero imaginary part."""
    counts: dict[tuple[int, int], int] = {}
    for v in values:
        if v is None:
            raise AssertionError("character vanished on a unit root")
        counts[(v.num, v.den)] = counts.get((v.num, v.den), 0) + 1
    if allowed_den == 3:
        c1 = counts.pop((0, 1), 0)
        cw = counts.pop((1, 3), 0)
        cwb = counts.pop((2, 3), 0)
        if counts or cw != cwb:
            raise AssertionError(f"non-real or non-cubic character sum: {counts}")
        return c1 - cw
    c1 = counts.pop((0, 1), 0)
    cm = counts.pop((1, 2), 0)
    ci = counts.pop((1, 4), 0)
    cmi = counts.pop((3, 4), 0)
    if counts or ci != cmi:
        raise AssertionError(f"non-real or non-quartic character sum: {counts}")
    return c1 - cm


@lru_cache(maxsize=8)
def _roots_cached(kind: str, n: int, brute_cap: int) -> tuple[int, ...]:
    return tuple(congruence_roots(kind, n, brute_cap))


def rho_bruteforce(n: int, chi: DirichletCharacter, brute_cap: int = 10**6) -> int:
    """Literal sum of chi(x) over the roots of x^2+x+1 = 0 mod n."""
    _require_conductor_divides(n, chi)
    return _tally_sum((chi(x) for x in _roots_cached(X2_X_1, n, brute_cap)), 3)


def rho_prime_bruteforce(n: int, chi: DirichletCharacter, brute_cap: int = 10**6) -> int:
    """Literal sum of chi(x) over the roots of x^2+1 = 0 mod n."""
    _require_conductor_divides(n, chi)
    return _tally_sum((chi(x) for x in _roots_cached(X2_1, n, brute_cap)), 4)


@dataclass(frozen=True)
class FullDimTerms:
    """Term-by-term breakdown of dim S_k(Gamma_0(N), chi)."""

    main: Fraction
    elliptic3: Fraction
    elliptic4: Fraction
    cusp_count: Fraction
    constant: Fraction
    total: int

    def to_dict(self) -> dict:
        return {
            "main": str(self.main),
            "elliptic3": str(self.elliptic3),
            "elliptic4": str(self.elliptic4),
            "cusp_count": str(self.cusp_count),
            "constant": str(self.constant),
            "total": self.total,
        }


# (psi, rho, rho', sigma) per (level, conductor, primitive label); cleared when big.
_AGG_CACHE: dict[tuple[int, int, int], tuple[int, int, int, int]] = {}


def _aggregates(n: int, chi: DirichletCharacter) -> tuple[int, int, int, int]:
    key = (n, chi.conductor, chi.primitive_label())
    hit = _AGG_CACHE.get(key)
    if hit is None:
        if len(_AGG_CACHE) > 2_000_000:
            _AGG_CACHE.clear()
        hit = (psi(n), rho(n, chi), rho_prime(n, chi), sigma_mult(n, chi.conductor))
        _AGG_CACHE[key] = hit
    return hit


def _validate(n: int, k: int, chi: DirichletCharacter):
    if n < 1:
        raise ValueError("level must be >= 1")
    if k < 2:
        raise ValueError("weight must be >= 2")
    _require_conductor_divides(n, chi)
    if chi.even != (k % 2 == 0):
        raise ValueError(
            f"parity mismatch: chi({chi.modulus},{chi.label}) is {chi.parity}, weight {k}"
        )


def dim_full_total(n: int, k: int, chi: DirichletCharacter) -> int:
    """dim S_k(Gamma_0(n), chi) as a plain integer (fast path)."""
    _validate(n, k, chi)
    psi_n, rho_n, rhop_n, sig_n = _aggregates(n, chi)
    t12 = (k - 1) * psi_n - T3[k % 3] * rho_n - T4[k % 4] * rhop_n - 6 * sig_n + 12 * c0(k, chi)
    if t12 % 12 or t12 < 0:
        raise ArithmeticError(f"non-integral or negative dimension 12*dim={t12} at {(n, k)}")
    return t12 // 12


def dim_full(n: int, k: int, chi: DirichletCharacter) -> FullDimTerms:
    """dim S_k(Gamma_0(n), chi) with the five-term breakdown, all exact."""
    _validate(n, k, chi)
    psi_n, rho_n, rhop_n, sig_n = _aggregates(n, chi)
    main = Fraction(k - 1, 12) * psi_n
    e3 = Fraction(T3[k % 3], 12) * rho_n
    e4 = Fraction(T4[k % 4], 12) * rhop_n
    cusps = Fraction(sig_n, 2)
    const = Fraction(c0(k, chi))
    total = main - e3 - e4 - cusps + const
    if total.denominator != 1 or total < 0:
        raise ArithmeticError(f"non-integral or negative dimension {total} at {(n, k)}")
    return FullDimTerms(main, e3, e4, cusps, const, int(total))


def clear_caches():
    _AGG_CACHE.clear()
