"""Vectorized evaluation of weight-2 trivial-nebentypus newspace dimensions
over integer ranges.

The dimension in twelfths is a Z-linear combination of five multiplicative
functions; each is sieved over the range by exact prime-power multipliers
(numpy int64 arithmetic, no floats), and any prime factor above the working
bound contributes a residue-class multiplier at the end.
"""

from __future__ import annotations

from math import isqrt

import numpy as np

from .dimnew import beta_psi_f_pp, beta_rho_f_pp, beta_rho_prime_f_pp, beta_sigma_f_pp


def base_primes(limit: int) -> np.ndarray:
    """Primes <= limit as an int64 array."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def s2new_dims_range(lo: int, hi: int, primes: np.ndarray | None = None) -> np.ndarray:
    """dim S_2^new(Gamma_0(N)) for lo <= N < hi, trivial character.

    primes, when supplied, must contain every prime <= isqrt(hi-1); extras are
    harmless.
    """
    if lo < 1 or hi <= lo:
        raise ValueError("need 1 <= lo < hi")
    if primes is None:
        primes = base_primes(isqrt(hi - 1))
    size = hi - lo
    g_psi = np.ones(size, dtype=np.int64)
    g_rho = np.ones(size, dtype=np.int64)
    g_rhop = np.ones(size, dtype=np.int64)
    g_sig = np.ones(size, dtype=np.int64)
    g_mu = np.ones(size, dtype=np.int64)
    covered = np.ones(size, dtype=np.int64)

    for p in primes:
        p = int(p)
        pw, r = p, 1
        while pw < hi:
            start = ((lo + pw - 1) // pw) * pw
            if start >= hi:
                break
            pos = np.arange(start - lo, size, pw, dtype=np.int64)
            j = (pos + lo) // pw
            sel = pos[j % p != 0]  # exact p-adic valuation r
            if sel.size:
                g_psi[sel] *= beta_psi_f_pp(p, r, 0)
                g_rho[sel] *= beta_rho_f_pp(p, r, 0)
                g_rhop[sel] *= beta_rho_prime_f_pp(p, r, 0)
                g_sig[sel] *= beta_sigma_f_pp(p, r, 0)
                if r == 1:
                    g_mu[sel] *= -1
                else:
                    g_mu[sel] = 0
                covered[sel] *= pw
            pw *= p
            r += 1

    n = np.arange(lo, hi, dtype=np.int64)
    rest = n // covered  # 1, or a single prime above the working bound
    big = rest > 1
    if big.any():
        q = rest[big]
        g_psi[big] *= q - 1
        g_rho[big] *= np.where(q % 3 == 1, 0, -2)
        g_rhop[big] *= np.where(q % 4 == 1, 0, -2)
        g_sig[big] = 0
        g_mu[big] *= -1

    t12 = g_psi - 4 * g_rho - 3 * g_rhop - 6 * g_sig + 12 * g_mu
    if (t12 % 12).any() or (t12 < 0).any():
        raise ArithmeticError("sieved newspace dimension not a non-negative integer")
    return t12 // 12
