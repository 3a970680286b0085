"""Dimension of the newspace S_k^new(Gamma_0(N), chi).

The production path is the explicit five-term formula built from per-prime
closed forms indexed by (p, r, alpha) with alpha the conductor valuation at p.
The oracle path is the classical signed divisor sum over full-space dimensions
at the levels between the conductor and N. A generic partial-Dirichlet-
convolution calculus backs both with a third, definitional route.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import c3, c4, divisors, factorize, legendre, psi, two_pow_omega, v_p
from .characters import DirichletCharacter
from .dimfull import T3, T4, c0, dim_full_total, rho, rho_prime, rho_pp, rho_prime_pp, sigma_pp


def beta(n: int) -> int:
    """The multiplicative convolution kernel: -2, 1, 0 at p, p^2, p^(>=3)."""
    out = 1
    for _, r in factorize(n):
        if r == 1:
            out *= -2
        elif r == 2:
            pass
        else:
            return 0
    return out


def _exact_half(num: int) -> int:
    half, rem = divmod(num, 2)
    if rem:
        raise ArithmeticError(f"expected an even value, got {num}")
    return half


# ---------------------------------------------------------------------------
# Per-prime closed forms. r >= 1 throughout; alpha = v_p(conductor).


def psi_f_pp(p: int, r: int, alpha: int) -> int:
    return (p + 1) * p ** (r - 1) if alpha == 0 else p**r


def beta_psi_f_pp(p: int, r: int, alpha: int) -> int:
    if alpha == 0:
        if r == 1:
            return p - 1
        if r == 2:
            return p * p - p - 1
        return p ** (r - 3) * (p**3 - p**2 - p + 1)
    return p - 2 if r == 1 else p ** (r - 2) * (p - 1) ** 2


def sigma_f_pp(p: int, r: int, alpha: int) -> int:
    if alpha == 0:
        return 2 * p ** ((r - 1) // 2) if r % 2 else (p + 1) * p ** (r // 2 - 1)
    if r < alpha:
        return p**r
    if (r + alpha) % 2:
        return p ** ((r + alpha - 1) // 2)
    return _exact_half((p + 1) * p ** ((r + alpha) // 2 - 1))


def beta_sigma_f_pp(p: int, r: int, alpha: int) -> int:
    if alpha == 0:
        if r % 2:
            return 0
        if r == 2:
            return p - 2
        return (p - 1) ** 2 * p ** (r // 2 - 2)
    if r == 1:
        return _exact_half(p - 3) if alpha == 1 else p - 2
    if r < alpha:
        return (p - 1) ** 2 * p ** (r - 2)
    if r == alpha:
        return _exact_half((p - 1) * (p - 2) * p ** (r - 2))
    if (r + alpha) % 2:
        return 0
    return _exact_half((p - 1) ** 2 * p ** ((r + alpha) // 2 - 2))


def rho_f_pp(p: int, r: int, alpha: int) -> int:
    """Valid only when the x^2+x+1 sum at the conductor is nonzero."""
    if p == 3:
        return 1 if r == 1 and alpha == 0 else 0
    if alpha >= 1:
        return 1
    return 2 if p != 2 and legendre(-3, p) == 1 else 0


def beta_rho_f_pp(p: int, r: int, alpha: int) -> int:
    if r == 1:
        if p == 3:
            return -1 if alpha == 0 else -2
        if alpha >= 1:
            return -1
        return 0 if p != 2 and legendre(-3, p) == 1 else -2
    if r == 2:
        if p == 3:
            return -1 if alpha == 0 else 1
        if alpha >= 1:
            return 0
        return -1 if p != 2 and legendre(-3, p) == 1 else 1
    return 1 if p == 3 and r == 3 and alpha == 0 else 0


def rho_prime_f_pp(p: int, r: int, alpha: int) -> int:
    """Valid only when the x^2+1 sum at the conductor is nonzero."""
    if p == 2:
        return 1 if r == 1 and alpha == 0 else 0
    if alpha >= 1:
        return 1
    return 2 if legendre(-1, p) == 1 else 0


def beta_rho_prime_f_pp(p: int, r: int, alpha: int) -> int:
    if r == 1:
        if p == 2:
            return -1 if alpha == 0 else -2
        if alpha >= 1:
            return -1
        return 0 if legendre(-1, p) == 1 else -2
    if r == 2:
        if p == 2:
            return -1 if alpha == 0 else 1
        if alpha >= 1:
            return 0
        return -1 if legendre(-1, p) == 1 else 1
    return 1 if p == 2 and r == 3 and alpha == 0 else 0


_FAMILIES = {
    "psi_f": psi_f_pp,
    "beta_psi_f": beta_psi_f_pp,
    "sigma_f": sigma_f_pp,
    "beta_sigma_f": beta_sigma_f_pp,
    "rho_f": rho_f_pp,
    "beta_rho_f": beta_rho_f_pp,
    "rho_prime_f": rho_prime_f_pp,
    "beta_rho_prime_f": beta_rho_prime_f_pp,
}


def local_value(family: str, p: int, r: int, alpha: int) -> int:
    """One prime-power entry of the eight closed-form function families."""
    try:
        fn = _FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; one of {sorted(_FAMILIES)}") from None
    return fn(p, r, alpha)


# ---------------------------------------------------------------------------
# Generic multiplicative-function calculus (the oracle route).


class MultiplicativeFn:
    """A multiplicative function given by its prime-power values."""

    def __init__(self, pp, name: str = "theta"):
        self.pp = pp  # pp(p, r) -> exact value, r >= 1
        self.name = name

    def __call__(self, n: int):
        out = Fraction(1)
        for p, r in factorize(n):
            out *= self.pp(p, r)
            if out == 0:
                return out
        return out


def psi_fn() -> MultiplicativeFn:
    return MultiplicativeFn(lambda p, r: (p + 1) * p ** (r - 1), "psi")


def one_fn() -> MultiplicativeFn:
    return MultiplicativeFn(lambda p, r: 1, "one")


def sigma_fn(f: int) -> MultiplicativeFn:
    return MultiplicativeFn(lambda p, r: sigma_pp(p, r, v_p(f, p)), f"sigma[f={f}]")


def rho_fn(chi: DirichletCharacter) -> MultiplicativeFn:
    return MultiplicativeFn(lambda p, r: rho_pp(p, r, chi.local_component(p)), "rho")


def rho_prime_fn(chi: DirichletCharacter) -> MultiplicativeFn:
    return MultiplicativeFn(lambda p, r: rho_prime_pp(p, r, chi.local_component(p)), "rho'")


def theta_f(theta: MultiplicativeFn, f: int) -> MultiplicativeFn:
    """The shifted function n -> theta(f*n)/theta(f); requires theta(f) != 0."""
    if theta(f) == 0:
        raise ZeroDivisionError(f"{theta.name}({f}) = 0; shift to minimal support first")

    def pp(p, r):
        a = v_p(f, p)
        if a == 0:
            return theta.pp(p, r)
        return Fraction(theta.pp(p, r + a)) / theta.pp(p, a)

    return MultiplicativeFn(pp, f"{theta.name}_f[{f}]")


def beta_convolve(theta: MultiplicativeFn) -> MultiplicativeFn:
    """Dirichlet convolution of the beta kernel with theta, prime-power form."""

    def pp(p, r):
        if r == 1:
            return theta.pp(p, 1) - 2
        return theta.pp(p, r) - 2 * theta.pp(p, r - 1) + theta.pp(p, r - 2)

    return MultiplicativeFn(pp, f"beta*{theta.name}")


def partial_convolution(theta: MultiplicativeFn, f: int, n: int):
    """Closed form of the restricted divisor sum of beta against theta over
    the levels between f and n, using the minimal-support shift when
    theta(f) = 0."""
    if f < 1 or n % f:
        raise ValueError(f"{f} does not divide {n}")
    fprime = 1
    for p, r_n in factorize(n):
        a = v_p(f, p)
        delta = next((d for d in range(a, r_n + 1) if d == 0 or theta.pp(p, d) != 0), None)
        if delta is None:
            return Fraction(0)
        fprime *= p**delta
    return theta(fprime) * beta_convolve(theta_f(theta, fprime))(n // fprime)


def partial_convolution_divisor_sum(theta: MultiplicativeFn, f: int, n: int):
    """Literal restricted divisor sum (the oracle side of partial_convolution)."""
    if f < 1 or n % f:
        raise ValueError(f"{f} does not divide {n}")
    q = n // f
    return sum((Fraction(beta(q // ell)) * theta(f * ell) for ell in divisors(q)), Fraction(0))


# ---------------------------------------------------------------------------
# The explicit newspace formula.


@dataclass(frozen=True)
class NewDimTerms:
    """Term-by-term breakdown of dim S_k^new(Gamma_0(N), chi)."""

    main_psi: Fraction
    term_rho: Fraction
    term_rho_prime: Fraction
    term_sigma: Fraction
    term_mu: Fraction
    total: int

    def to_dict(self) -> dict:
        return {
            "main_psi": str(self.main_psi),
            "term_rho": str(self.term_rho),
            "term_rho_prime": str(self.term_rho_prime),
            "term_sigma": str(self.term_sigma),
            "term_mu": str(self.term_mu),
            "total": self.total,
        }


# chain products over N/f, keyed (N/f, conductor); rho pair keyed (f, label).
_CHAIN_CACHE: dict[tuple[int, int], tuple[int, int, int, int, int]] = {}
_RHOF_CACHE: dict[tuple[int, int], tuple[int, int]] = {}


def _chain_products(q: int, f: int) -> tuple[int, int, int, int, int]:
    """(beta*psi_f, beta*rho_f, beta*rho'_f, beta*sigma_f, mu) at q = N/f."""
    key = (q, f)
    hit = _CHAIN_CACHE.get(key)
    if hit is None:
        if len(_CHAIN_CACHE) > 1_000_000:
            _CHAIN_CACHE.clear()
        bpsi = brho = brhop = bsig = mu = 1
        for p, r in factorize(q):
            a = v_p(f, p)
            bpsi *= beta_psi_f_pp(p, r, a)
            brho *= beta_rho_f_pp(p, r, a)
            brhop *= beta_rho_prime_f_pp(p, r, a)
            bsig *= beta_sigma_f_pp(p, r, a)
            mu = -mu if r == 1 else 0
        hit = (bpsi, brho, brhop, bsig, mu)
        _CHAIN_CACHE[key] = hit
    return hit


def _rho_pair(chi: DirichletCharacter) -> tuple[int, int]:
    """(rho(f), rho'(f)) at the conductor f of chi."""
    key = (chi.conductor, chi.primitive_label())
    hit = _RHOF_CACHE.get(key)
    if hit is None:
        if len(_RHOF_CACHE) > 1_000_000:
            _RHOF_CACHE.clear()
        f = chi.conductor
        hit = (rho(f, chi), rho_prime(f, chi))
        _RHOF_CACHE[key] = hit
    return hit


def _validate(n: int, k: int, chi: DirichletCharacter):
    if n < 1:
        raise ValueError("level must be >= 1")
    if k < 2:
        raise ValueError("weight must be >= 2")
    if n % chi.conductor:
        raise ValueError(f"conductor {chi.conductor} does not divide level {n}")
    if chi.even != (k % 2 == 0):
        raise ValueError(
            f"parity mismatch: chi({chi.modulus},{chi.label}) is {chi.parity}, weight {k}"
        )


def dim_new_total(n: int, k: int, chi: DirichletCharacter) -> int:
    """dim S_k^new(Gamma_0(n), chi) as a plain integer (fast path)."""
    _validate(n, k, chi)
    f = chi.conductor
    bpsi, brho, brhop, bsig, mu = _chain_products(n // f, f)
    rho_f, rhop_f = _rho_pair(chi)
    t12 = (
        (k - 1) * psi(f) * bpsi
        - T3[k % 3] * rho_f * brho
        - T4[k % 4] * rhop_f * brhop
        - 6 * two_pow_omega(f) * bsig
        + 12 * c0(k, chi) * mu
    )
    if t12 % 12 or t12 < 0:
        raise ArithmeticError(f"non-integral or negative newspace 12*dim={t12} at {(n, k)}")
    return t12 // 12


def dim_new_explicit(n: int, k: int, chi: DirichletCharacter) -> NewDimTerms:
    """dim S_k^new(Gamma_0(n), chi) with the five-term breakdown, all exact.

    The rho terms are exact zeros whenever the corresponding character sum at
    the conductor vanishes, without evaluating the shifted factor.
    """
    _validate(n, k, chi)
    f = chi.conductor
    bpsi, brho, brhop, bsig, mu = _chain_products(n // f, f)
    rho_f, rhop_f = _rho_pair(chi)
    main = Fraction(k - 1, 12) * psi(f) * bpsi
    t_rho = c3(k) * rho_f * brho if rho_f else Fraction(0)
    t_rhop = c4(k) * rhop_f * brhop if rhop_f else Fraction(0)
    t_sig = Fraction(two_pow_omega(f), 2) * bsig
    t_mu = Fraction(c0(k, chi) * mu)
    total = main - t_rho - t_rhop - t_sig + t_mu
    if total.denominator != 1 or total < 0:
        raise ArithmeticError(f"non-integral or negative newspace dim {total} at {(n, k)}")
    return NewDimTerms(main, t_rho, t_rhop, t_sig, t_mu, int(total))


def dim_new_convolution(n: int, k: int, chi: DirichletCharacter) -> int:
    """Oracle route: signed sum of full-space dimensions over the level chain."""
    _validate(n, k, chi)
    f = chi.conductor
    q = n // f
    total = sum(beta(q // ell) * dim_full_total(f * ell, k, chi) for ell in divisors(q))
    if total < 0:
        raise ArithmeticError(f"negative newspace dim {total} at {(n, k)}")
    return total


def oldspace_reconstruct(n: int, k: int, chi: DirichletCharacter) -> int:
    """Divisor-count-weighted sum of newspace dims over the level chain;
    equals the full-space dimension (Moebius inversion of the beta sum)."""
    _validate(n, k, chi)
    f = chi.conductor
    q = n // f
    return sum(len(divisors(q // ell)) * dim_new_total(f * ell, k, chi) for ell in divisors(q))


def clear_caches():
    _CHAIN_CACHE.clear()
    _RHOF_CACHE.clear()
