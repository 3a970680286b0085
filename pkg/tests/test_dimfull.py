import random
from fractions import Fraction
from math import isqrt

import pytest

from cuspdim.arith import gcd_phi_sum, divisors, spf_sieve, two_pow_omega
from cuspdim.characters import enumerate_characters, from_conrey, primitive_characters
from cuspdim.dimfull import (
    c0,
    dim_full,
    dim_full_total,
    rho,
    rho_bruteforce,
    rho_prime,
    rho_prime_bruteforce,
    sigma_mult,
)

TRIV = {n: from_conrey(n, 1) for n in range(1, 65)}


def test_c0():
    assert c0(2, TRIV[1]) == 1
    assert c0(2, from_conrey(5, 4)) == 0
    assert c0(4, TRIV[1]) == 0


def test_rho_examples():
    assert rho(3, TRIV[3]) == 1
    for r in range(1, 6):
        assert rho(2**r, TRIV[2**r if 2**r < 65 else 32]) == 0
    assert rho(7, TRIV[7]) == 2
    assert rho(1, TRIV[1]) == 1 and rho_prime(1, TRIV[1]) == 1
    assert rho_bruteforce(1, TRIV[1]) == 1
    # (-3/p) = -1 at p = 11: no roots at any level divisible by 11
    assert rho(11, TRIV[11]) == 0 and rho(44, from_conrey(44, 1)) == 0


def test_sigma_examples():
    assert sigma_mult(4, 1) == 3
    for p in (2, 3, 5, 7):
        assert sigma_mult(p, 1) == 2
    for f in range(1, 501):
        assert sigma_mult(f, f) == two_pow_omega(f)
    with pytest.raises(ValueError):
        sigma_mult(10, 4)


def test_term_oracles_all_characters_to_400():
    spf_sieve(401)
    for n in range(1, 401):
        for f in divisors(n):
            assert sigma_mult(n, f) == gcd_phi_sum(n, f), (n, f)
        for chi in enumerate_characters(n):
            assert rho(n, chi) == rho_bruteforce(n, chi), (n, chi.label)
            assert rho_prime(n, chi) == rho_prime_bruteforce(n, chi), (n, chi.label)


def test_dim_full_table_values():
    assert dim_full_total(11, 2, TRIV[11]) == 1
    assert dim_full_total(22, 2, TRIV[22]) == 2
    assert dim_full_total(1, 2, TRIV[1]) == 0
    assert dim_full_total(5, 2, from_conrey(5, 4)) == 0
    assert dim_full_total(49, 2, from_conrey(49, 18)) == 1
    assert dim_full_total(64, 2, from_conrey(64, 33)) == 2
    assert dim_full_total(1, 38, TRIV[1]) == 2


def test_dim_full_terms_breakdown():
    t = dim_full(11, 2, TRIV[11])
    assert t.total == 1
    assert t.main == Fraction(1, 12) * 12
    assert t.total == t.main - t.elliptic3 - t.elliptic4 - t.cusp_count + t.constant


def test_dim_full_errors():
    with pytest.raises(ValueError, match="parity"):
        dim_full(5, 3, from_conrey(5, 4))  # even character, odd weight
    with pytest.raises(ValueError, match="conductor"):
        dim_full(3, 2, from_conrey(5, 4))
    with pytest.raises(ValueError):
        dim_full(5, 1, from_conrey(5, 4))


def test_doubling_identity_even_conductor():
    # 2 | f and 2 || N/f force dim(N) = 2 * dim(N/2), all weights
    for f in range(4, 301, 4):
        for chi in primitive_characters(f):
            for odd in (1, 3, 5):
                n = 2 * f * odd
                if n > 600:
                    continue
                k0 = 2 if chi.even else 3
                for k in range(k0, 10, 2):
                    assert dim_full_total(n, k, chi) == 2 * dim_full_total(n // 2, k, chi)


def test_main_term_lower_bound_exact():
    # 12*dim >= (k-1) psi - (4 + 6) 2^w - 6*2^w*sqrt(N), decided exactly:
    # move the integer part left and flip-square the sqrt comparison
    from cuspdim.arith import psi

    spf_sieve(2001)
    rng = random.Random(3)
    for n in range(1, 2001):
        chars = enumerate_characters(n)
        chi = rng.choice(chars)
        for k in (2, 3, 4, 12, 13):
            if chi.even != (k % 2 == 0):
                continue
            w = two_pow_omega(n)
            slack = 12 * dim_full_total(n, k, chi) - (k - 1) * psi(n) + 10 * w
            if slack < 0:
                assert slack * slack <= 36 * w * w * n, (n, k)


def test_nonnegative_integral_grid():
    spf_sieve(501)
    rng = random.Random(9)
    for n in range(1, 501):
        chars = enumerate_characters(n)
        for chi in rng.sample(chars, min(3, len(chars))):
            for k in range(2, 14):
                if chi.even != (k % 2 == 0):
                    continue
                d = dim_full_total(n, k, chi)  # raises on any violation
                assert d >= 0
