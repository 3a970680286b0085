import random
from math import gcd

import pytest

from cuspdim.arith import euler_phi
from cuspdim.characters import (
    RootOfUnity,
    enumerate_characters,
    evaluate,
    from_conrey,
    lift_hat,
    primitive_characters,
)


def test_root_of_unity_arithmetic():
    i = RootOfUnity(1, 4)
    assert (i * i).is_minus_one
    assert (i * i * i * i).is_one
    assert i.is_pm_i and i.conjugate() == RootOfUnity(3, 4)
    w = RootOfUnity(1, 3)
    assert w.is_primitive_cuberoot and (w * w * w).is_one
    assert RootOfUnity(6, 4) == RootOfUnity(1, 2)


def test_from_conrey_examples():
    chi = from_conrey(1, 1)
    assert chi.is_trivial and chi.conductor == 1 and chi.even

    chi = from_conrey(5, 4)
    assert chi.conductor == 5 and chi.even and chi.order == 2
    # the quadratic character mod 5: residues 1, 4 -> 1; nonresidues 2, 3 -> -1
    assert chi(1).is_one and chi(4).is_one
    assert chi(2).is_minus_one and chi(3).is_minus_one

    for n in range(1, 60):
        chi = from_conrey(n, 1)
        assert chi.is_trivial and chi.conductor == 1 and chi.even

    with pytest.raises(ValueError):
        from_conrey(10, 5)


def test_lmfdb_value_pins():
    # chi_5(2, 2) = e(1/4); 2 generates (Z/5)*
    assert from_conrey(5, 2)(2) == RootOfUnity(1, 4)
    # chi_7(3, 2) = e(1/3); dlog_3(2) = 2 mod 7, phi = 6
    assert from_conrey(7, 3)(2) == RootOfUnity(1, 3)
    # mod 8 in the <-1, 5> presentation
    chi = from_conrey(8, 5)
    assert [chi(x).num * 2 // chi(x).den if chi(x).den <= 2 else None for x in (1, 3, 5, 7)] == [0, 1, 1, 0]
    chi = from_conrey(8, 3)
    assert chi(3).is_one and chi(5).is_minus_one and chi(7).is_minus_one
    # conductors at 8: 1, 8, 8, 4
    assert [from_conrey(8, m).conductor for m in (1, 3, 5, 7)] == [1, 8, 8, 4]
    # chi_9(4, .): order 3, conductor 9, even
    chi = from_conrey(9, 4)
    assert chi.order == 3 and chi.conductor == 9 and chi.even


def test_evaluate_zero_off_units():
    chi = from_conrey(6, 1)
    assert evaluate(chi, 5).is_one
    for n in (6, 12, 45):
        for m in range(1, n):
            if gcd(m, n) != 1:
                continue
            chi = from_conrey(n, m)
            for x in range(n):
                if gcd(x, n) > 1:
                    assert chi(x) is None


def test_multiplicative_on_units_random():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randrange(1, 501)
        units = [x for x in range(1, n + 1) if gcd(x, n) == 1]
        chi = from_conrey(n, rng.choice(units))
        x, y = rng.choice(units), rng.choice(units)
        assert chi(x * y) == chi(x) * chi(y)


def test_orthogonality_structure_to_300():
    # the value multiset of a character of order d is each d-th root of unity,
    # phi(n)/d times; hence the unit sum is 0 unless d = 1
    for n in range(1, 301):
        phi_n = euler_phi(n)
        for chi in enumerate_characters(n):
            counts = {}
            for x in range(1, n + 1) if n > 1 else [1]:
                if gcd(x, n) == 1:
                    v = chi(x)
                    counts[(v.num, v.den)] = counts.get((v.num, v.den), 0) + 1
            d = chi.order
            expected = {
                (j // gcd(j, d), d // gcd(j, d)): phi_n // d for j in range(d)
            }
            expected = {((k[0] % k[1]) if k[1] > 1 else 0, k[1]): v for k, v in expected.items()}
            assert counts == expected, (n, chi.label)


def test_conductor_minimality_to_200():
    for n in range(1, 201):
        for chi in enumerate_characters(n):
            f = chi.conductor
            values = {x: chi(x) for x in range(1, n + 1) if gcd(x, n) == 1}
            # chi factors through its conductor
            for x, v in values.items():
                if x % f == 1 % f:
                    assert v.is_one, (n, chi.label, x)
            # ... and through no proper divisor of it
            for d in range(1, f):
                if f % d:
                    continue
                assert any(not v.is_one for x, v in values.items() if x % d == 1 % d), (
                    n,
                    chi.label,
                    d,
                )


def test_parity_counts_to_300():
    for n in range(1, 301):
        chars = enumerate_characters(n)
        assert len(chars) == euler_phi(n)
        even = [c for c in chars if c.even]
        odd = [c for c in chars if not c.even]
        assert len(even) + len(odd) == euler_phi(n)
        for c in chars:
            val = c(n - 1 if n > 1 else 1)  # chi(-1)
            assert val.is_one if c.even else val.is_minus_one
        assert chars[0].label == 1 and chars[0].is_trivial


def test_enumerate_filters():
    assert len(enumerate_characters(1)) == 1
    chars8 = enumerate_characters(8)
    assert len(chars8) == 4
    assert sum(1 for c in chars8 if c.conductor == 4) == 1
    assert [c.label for c in enumerate_characters(5, parity="even")] == [1, 4]
    assert [c.label for c in enumerate_characters(5, parity="odd")] == [2, 3]
    assert len(primitive_characters(2)) == 0
    assert [c.label for c in primitive_characters(5)] == [2, 3, 4]


def test_local_components():
    chi = from_conrey(40, 1)
    for p in (2, 3, 5):
        assert chi.local_component(p).alpha == 0
    chi = from_conrey(12, 11)
    comps = {loc.p: loc.alpha for loc in chi.locals}
    assert comps == {2: 2, 3: 1}
    # product of local values reconstructs the character on units
    rng = random.Random(23)
    for _ in range(100):
        n = rng.randrange(2, 401)
        units = [x for x in range(1, n) if gcd(x, n) == 1] or [1]
        chi = from_conrey(n, rng.choice(units))
        x = rng.choice(units)
        prod = RootOfUnity(0, 1)
        for p, _ in [(loc.p, loc) for loc in chi.locals]:
            prod = prod * chi.local_component(p)(x)
        assert prod == chi(x)


def test_lift_hat():
    chi = from_conrey(9, 2)
    assert lift_hat(5, 3, chi) == 5 % 9
    chi = from_conrey(12, 11)
    assert lift_hat(2, 3, chi) == 5
    # identity: local value at x = primitive character at the lift
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randrange(2, 301)
        units = [x for x in range(1, n) if gcd(x, n) == 1] or [1]
        chi = from_conrey(n, rng.choice(units))
        prim = from_conrey(chi.conductor, chi.primitive_label())
        for loc in chi.locals:
            x = rng.choice([u for u in units if u % loc.p])
            assert loc(x) == prim(lift_hat(x, loc.p, chi))
    with pytest.raises(ValueError):
        lift_hat(3, 3, from_conrey(12, 11))


def test_induced_label_roundtrip():
    for f in range(1, 80):
        for chi in primitive_characters(f):
            for mult in (1, 2, 3, 4, 6):
                n = f * mult
                lifted = from_conrey(n, chi.induced_label(n))
                assert lifted.conductor == f
                assert lifted.primitive_label() == chi.label
