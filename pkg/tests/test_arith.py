import random
from fractions import Fraction
from math import gcd, isqrt

import pytest

from cuspdim.arith import (
    X2_1,
    X2_X_1,
    c3,
    c4,
    congruence_roots,
    congruence_roots_crt,
    divisors,
    euler_phi,
    factorize,
    gcd_phi_sum,
    legendre,
    mobius,
    nu,
    omega,
    psi,
    spf_sieve,
    sqrt_mod_prime_power,
    two_pow_omega,
)


def trial_factorization(n):
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def test_factorize_basics():
    assert factorize(1) == []
    assert factorize(12) == [(2, 2), (3, 1)]
    assert factorize(30030) == [(2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1)]
    with pytest.raises(ValueError):
        factorize(0)


def test_spf_sieve_small():
    spf = spf_sieve(10)
    assert spf[9] == 3 and spf[2] == 2 and spf[7] == 7
    assert factorize(9) == [(3, 2)]


def test_spf_factorization_matches_trial_division():
    spf_sieve(10**5)
    rng = random.Random(7)
    for _ in range(10**4):
        n = rng.randrange(1, 10**5)
        assert factorize(n) == trial_factorization(n)


def test_named_functions_values():
    assert psi(1) == 1 and psi(12) == 24 and psi(11) == 12
    assert euler_phi(9) == 6
    assert mobius(12) == 0 and mobius(30) == -1
    assert two_pow_omega(30030) == 64
    assert nu(1) == 1 and nu(2) == 4 and nu(15) == 5
    assert nu(6) == Fraction(12)  # 4 * (1 + 2)


def test_multiplicativity_exhaustive_to_300():
    fns = [psi, euler_phi, mobius, two_pow_omega, nu]
    for m in range(1, 301):
        for n in range(1, 301 // m + 1):
            if gcd(m, n) == 1:
                for fn in fns:
                    assert fn(m * n) == fn(m) * fn(n), (fn, m, n)


def test_c3_c4():
    assert c3(2) == Fraction(1, 3) and c3(4) == 0
    assert c4(2) == Fraction(1, 4) and c4(3) == Fraction(1, 2)
    for k in range(2, 60):
        assert c3(k) == c3(k + 3) and c4(k) == c4(k + 4)
        assert c3(k) in (Fraction(-1, 3), Fraction(0), Fraction(1, 3))
        assert c4(k) in (Fraction(-1, 4), Fraction(0), Fraction(1, 4), Fraction(1, 2))


def test_sqrt_mod_prime_power_examples():
    x = sqrt_mod_prime_power(-3, 7, 1)
    assert x is not None and (x * x + 3) % 7 == 0
    assert sqrt_mod_prime_power(-1, 2, 2) is None
    assert sqrt_mod_prime_power(-1, 2, 1) == 1
    x = sqrt_mod_prime_power(-1, 5, 2)
    assert x is not None and (x * x + 1) % 25 == 0


def test_sqrt_mod_prime_power_complete_small():
    for p in (3, 5, 7, 11, 13, 17, 19, 23):
        for r in (1, 2, 3):
            q = p**r
            for a in range(1, p):
                x = sqrt_mod_prime_power(a, p, r)
                if legendre(a, p) == 1:
                    assert x is not None and (x * x - a) % q == 0, (a, p, r)
                else:
                    assert x is None


def test_congruence_roots_examples():
    assert congruence_roots(X2_X_1, 3) == [1]
    assert congruence_roots(X2_1, 2) == [1]
    for r in range(1, 7):
        assert congruence_roots(X2_X_1, 2**r) == []
    assert congruence_roots(X2_X_1, 1) == [0]
    assert sorted(congruence_roots(X2_X_1, 7)) == [2, 4]


def test_congruence_roots_crt_agrees_with_bruteforce_to_1e4():
    spf_sieve(10001)
    for n in range(1, 10001):
        for kind in (X2_X_1, X2_1):
            brute = congruence_roots(kind, n)
            assert congruence_roots_crt(kind, n) == brute, (kind, n)
            assert len(brute) <= two_pow_omega(n)


def test_gcd_phi_sum_examples():
    assert gcd_phi_sum(4, 1) == 3
    for p in (2, 3, 5, 7, 31):
        assert gcd_phi_sum(p, 1) == 2
    for n in range(1, 201):
        coprime_split = sum(1 for d in divisors(n) if gcd(d, n // d) == 1)
        assert gcd_phi_sum(n, n) == coprime_split
    with pytest.raises(ValueError):
        gcd_phi_sum(10, 3)


def test_phi_sum_bound_to_1e4():
    # unrestricted gcd-phi sum squared against 4^omega * N, exact integers
    spf_sieve(10001)
    for n in range(1, 10001):
        s = gcd_phi_sum(n, 1)
        assert s * s <= 4 ** omega(n) * n, n


def test_explicit_constant_bounds_to_1e4():
    # 2^w <= 4.862 N^(1/4) and nu <= 21.234 N^(1/16), cross-multiplied
    for n in range(1, 10001):
        w = two_pow_omega(n)
        assert w**4 * 1000**4 <= 4862**4 * n, n
        v = nu(n)
        assert v.numerator**16 * 1000**16 <= 21234**16 * n * v.denominator**16, n
