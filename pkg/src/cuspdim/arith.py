"""Exact integer and rational kernels: factorization, multiplicative functions,
square roots modulo prime powers, and the divisor sums behind the dimension
formulas.

Everything here is deterministic and float-free; the only "heavy" object is an
optional numpy smallest-prime-factor table shared by all callers.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import numpy as np

Factorization = list[tuple[int, int]]

X2_X_1 = "x^2+x+1"
X2_1 = "x^2+1"

# Smallest-prime-factor table, built once by spf_sieve and then read-only.
_SPF: np.ndarray | None = None


def spf_sieve(limit: int) -> np.ndarray:
    """Build (and install for factorize) a table t with t[n] = smallest prime
    factor of n for 2 <= n <= limit. t[0] = 0 and t[1] = 1."""
    global _SPF
    if limit < 2:
        raise ValueError("spf_sieve needs limit >= 2")
    if _SPF is not None and len(_SPF) > limit:
        return _SPF
    try:
        spf = np.zeros(limit + 1, dtype=np.int32)
    except MemoryError as e:
        raise MemoryError(f"cannot allocate spf table up to {limit}") from e
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    untouched = np.nonzero(spf == 0)[0]
    spf[untouched] = untouched  # primes, plus spf[0]=0
    spf[1] = 1
    _SPF = spf
    return spf


def factorize(n: int) -> Factorization:
    """Canonical factorization [(p1, e1), ...] with p1 < p2 < ...; 1 -> []."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    if n == 1:
        return []
    spf = _SPF
    if spf is not None and n < len(spf):
        out = []
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out
    return _factorize_trial(n)


def _factorize_trial(n: int) -> Factorization:
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out.append((p, e))
        d += 6
    if n > 1:
        out.append((n, 1))
    return out


def divisors(n: int) -> list[int]:
    """All divisors of n, sorted ascending."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def v_p(n: int, p: int) -> int:
    """p-adic valuation of n (n >= 1)."""
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def euler_phi(n: int) -> int:
    out = 1
    for p, e in factorize(n):
        out *= p ** (e - 1) * (p - 1)
    return out


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e >= 2 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def omega(n: int) -> int:
    """Number of distinct prime divisors."""
    return len(factorize(n))


def two_pow_omega(n: int) -> int:
    return 1 << omega(n)


def psi(n: int) -> int:
    """Multiplicative, p^r -> (p+1)p^(r-1); the index of Gamma_0."""
    out = 1
    for p, e in factorize(n):
        out *= (p + 1) * p ** (e - 1)
    return out


def nu(n: int) -> Fraction:
    """Multiplicative over distinct primes: 4 at p=2, 1 + 2/(p-2) at odd p."""
    out = Fraction(1)
    for p, _ in factorize(n):
        out *= 4 if p == 2 else Fraction(p, p - 2)
    return out


def c3(k: int) -> Fraction:
    """Weight coefficient of the order-3 elliptic term; period 3 in k."""
    if k < 2:
        raise ValueError("weight k must be >= 2")
    return Fraction(k - 1, 3) - (k // 3)


def c4(k: int) -> Fraction:
    """Weight coefficient of the order-4 elliptic term; period 4 in k."""
    if k < 2:
        raise ValueError("weight k must be >= 2")
    return Fraction(k - 1, 4) - (k // 4)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p, in {-1, 0, 1}."""
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def _tonelli_shanks(a: int, p: int) -> int:
    """One square root of a mod odd prime p, assuming (a/p) = 1.

    Deterministic: the quadratic nonresidue is the smallest candidate, and the
    returned root is the smaller of the pair.
    """
    a %= p
    if p % 4 == 3:
        x = pow(a, (p + 1) // 4, p)
        return min(x, p - x)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    c = pow(z, q, p)
    x = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        i, sq = 0, t
        while sq != 1:
            sq = sq * sq % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return min(x, p - x)


def sqrt_mod_prime_power(a: int, p: int, r: int):
    """A root of x^2 = a (mod p^r), or None when no root exists.

    p odd requires p not dividing a (Hensel lifting from the mod-p root);
    p = 2 is handled by direct enumeration for small r.
    """
    if r < 1:
        raise ValueError("exponent r must be >= 1")
    q = p**r
    a %= q
    if p == 2:
        if r > 25:
            raise ValueError("p=2 square roots supported only for small r")
        for x in range(q):
            if (x * x - a) % q == 0:
                return x
        return None
    if a % p == 0:
        raise ValueError("sqrt_mod_prime_power needs gcd(a, p) = 1 for odd p")
    if legendre(a, p) != 1:
        return None
    x = _tonelli_shanks(a, p)
    m = p
    while m < q:
        m = min(m * m, q)
        # quadratic Hensel step: x <- x - (x^2 - a) / (2x)  (mod m)
        x = (x - (x * x - a) * pow(2 * x, -1, m)) % m
    return min(x, q - x)


def crt(residues: list[tuple[int, int]]) -> int:
    """Solve x = r_i (mod m_i) for pairwise coprime moduli; returns x mod prod."""
    x, m = 0, 1
    for r, mi in residues:
        t = (r - x) * pow(m, -1, mi) % mi
        x += m * t
        m *= mi
    return x % m


def _local_roots(kind: str, p: int, r: int) -> list[int]:
    q = p**r
    if kind == X2_X_1:
        if p == 2:
            return []
        if p == 3:
            return [1] if r == 1 else []
        if legendre(-3, p) != 1:
            return []
        u = sqrt_mod_prime_power(-3, p, r)
        inv2 = pow(2, -1, q)
        return sorted({(-1 + u) * inv2 % q, (-1 - u) * inv2 % q})
    if kind == X2_1:
        if p == 2:
            return [1] if r == 1 else []
        if legendre(-1, p) != 1:
            return []
        u = sqrt_mod_prime_power(-1, p, r)
        return sorted({u, q - u})
    raise ValueError(f"unknown congruence kind {kind!r}")


def congruence_roots(kind: str, n: int, brute_cap: int = 10**6) -> list[int]:
    """All x mod n with x^2+x+1 = 0 (kind X2_X_1) or x^2+1 = 0 (kind X2_1).

    Below brute_cap this is literal enumeration of every residue (the testing
    oracle); above it the roots are assembled by CRT from Hensel-lifted local
    roots.
    """
    if n < 1:
        raise ValueError("modulus must be >= 1")
    if n == 1:
        return [0]
    if n <= brute_cap:
        xs = np.arange(n, dtype=np.int64)
        if kind == X2_X_1:
            hits = (xs * xs + xs + 1) % n == 0
        elif kind == X2_1:
            hits = (xs * xs + 1) % n == 0
        else:
            raise ValueError(f"unknown congruence kind {kind!r}")
        return [int(x) for x in xs[hits]]
    return congruence_roots_crt(kind, n)


def congruence_roots_crt(kind: str, n: int) -> list[int]:
    """CRT/Hensel evaluation of congruence_roots (no brute-force fallback)."""
    if n == 1:
        return [0]
    locs = []
    for p, e in factorize(n):
        roots = _local_roots(kind, p, e)
        if not roots:
            return []
        locs.append([(x, p**e) for x in roots])
    out = [0]
    combined = [[]]
    for choices in locs:
        combined = [acc + [c] for acc in combined for c in choices]
    out = sorted(crt(combo) for combo in combined)
    return out


def gcd_phi_sum(n: int, f: int) -> int:
    """Sum of phi(gcd(d, n/d)) over divisors d of n with gcd(d, n/d) | n/f."""
    if f < 1 or n % f:
        raise ValueError(f"{f} does not divide {n}")
    cofactor = n // f
    total = 0
    for d in divisors(n):
        g = gcd(d, n // d)
        if cofactor % g == 0:
            total += euler_phi(g)
    return total
