"""Dirichlet characters mod N under the Conrey (LMFDB) labeling.

Values are exact roots of unity, never floats. For an odd prime p the label
pairing uses the least positive g that generates (Z/p^j)* for every j >= 1;
for p = 2 and modulus 2^e with e >= 3 it uses the presentation <-1, 5>.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm

import numpy as np

from .arith import crt, factorize, v_p


class RootOfUnity:
    """exp(2*pi*i * num / den), stored with 0 <= num < den and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int):
        if den <= 0:
            raise ValueError("order must be positive")
        num %= den
        g = gcd(num, den)
        self.num = num // g
        self.den = den // g

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        den = lcm(self.den, other.den)
        return RootOfUnity(self.num * (den // self.den) + other.num * (den // other.den), den)

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.num * k, self.den)

    def conjugate(self) -> "RootOfUnity":
        return RootOfUnity(-self.num, self.den)

    def __eq__(self, other) -> bool:
        return isinstance(other, RootOfUnity) and (self.num, self.den) == (other.num, other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    @property
    def is_one(self) -> bool:
        return self.num == 0

    @property
    def is_minus_one(self) -> bool:
        return (self.num, self.den) == (1, 2)

    @property
    def is_pm_i(self) -> bool:
        return self.den == 4  # num is 1 or 3 once reduced

    @property
    def is_primitive_cuberoot(self) -> bool:
        return self.den == 3

    def as_complex(self) -> complex:
        """Float approximation, for display only."""
        import cmath

        return cmath.exp(2j * cmath.pi * self.num / self.den)

    def __repr__(self):
        return f"RootOfUnity({self.num}/{self.den})"


ONE = RootOfUnity(0, 1)

# ---------------------------------------------------------------------------
# Conrey generators and discrete-log tables (built once per prime power).

_GEN_CACHE: dict[int, int] = {}
_DLOG_CACHE: dict[tuple[int, int], np.ndarray] = {}
_DLOG2_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def conrey_generator(p: int) -> int:
    """Least g generating (Z/p^j)* for every j >= 1 (p an odd prime)."""
    g = _GEN_CACHE.get(p)
    if g is not None:
        return g
    qs = [q for q, _ in factorize(p - 1)]
    g = 2
    while True:
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs) and pow(g, p - 1, p * p) != 1:
            _GEN_CACHE[p] = g
            return g
        g += 1


def _dlog_table(p: int, e: int) -> np.ndarray:
    """t[x] = k with g^k = x mod p^e for units x, -1 elsewhere (odd p)."""
    key = (p, e)
    tab = _DLOG_CACHE.get(key)
    if tab is not None:
        return tab
    q = p**e
    g = conrey_generator(p)
    tab = np.full(q, -1, dtype=np.int64)
    x = 1
    for k in range((p - 1) * p ** (e - 1)):
        tab[x] = k
        x = x * g % q
    _DLOG_CACHE[key] = tab
    return tab


def _dlog2_tables(e: int) -> tuple[np.ndarray, np.ndarray]:
    """(t0, t1) with x = (-1)^t0[x] * 5^t1[x] mod 2^e for odd x (e >= 3)."""
    tabs = _DLOG2_CACHE.get(e)
    if tabs is not None:
        return tabs
    q = 1 << e
    t0 = np.full(q, -1, dtype=np.int64)
    t1 = np.full(q, -1, dtype=np.int64)
    x = 1
    for k in range(1 << (e - 2)):
        t0[x], t1[x] = 0, k
        t0[q - x], t1[q - x] = 1, k
        x = x * 5 % q
    tabs = (t0, t1)
    _DLOG2_CACHE[e] = tabs
    return tabs


@dataclass(frozen=True)
class LocalCharacter:
    """Primitive character mod p^alpha (alpha = 0 means the trivial character).

    For odd p the character is x -> e(a * dlog(x) / phi(p^alpha)); for p = 2
    and alpha >= 3 it is x -> e(a0*b0/2 + a1*b1/2^(alpha-2)) in the <-1, 5>
    presentation. There is no primitive character mod 2, so alpha = 1 never
    occurs at p = 2.
    """

    p: int
    alpha: int
    a: int = 0  # exponent of the label (odd p), or a1 at p = 2
    a0: int = 0  # sign exponent at p = 2

    def __post_init__(self):
        if self.p == 2 and self.alpha == 1:
            raise ValueError("no primitive character mod 2")

    @property
    def modulus(self) -> int:
        return self.p**self.alpha

    @property
    def group_order(self) -> int:
        p, e = self.p, self.alpha
        if e == 0:
            return 1
        if p == 2:
            return 1 << max(e - 1, 1) if e >= 2 else 1
        return (p - 1) * p ** (e - 1)

    @property
    def order(self) -> int:
        p, e = self.p, self.alpha
        if e == 0:
            return 1
        if p == 2:
            if e == 2:
                return 2
            d1 = (1 << (e - 2)) // gcd(self.a, 1 << (e - 2)) if self.a else 1
            return lcm(2 if self.a0 else 1, d1)
        m = self.group_order
        return m // gcd(self.a, m)

    @property
    def even(self) -> bool:
        p, e = self.p, self.alpha
        if e == 0:
            return True
        if p == 2:
            return self.a0 == 0 if e >= 3 else False  # e = 2 is the odd char mod 4
        return self.a % 2 == 0

    def __call__(self, x: int):
        """Value at x: a RootOfUnity, or None when p | x (and alpha >= 1)."""
        p, e = self.p, self.alpha
        if e == 0:
            return ONE
        q = p**e
        x %= q
        if p == 2:
            if x % 2 == 0:
                return None
            if e == 2:
                return RootOfUnity(1, 2) if x == 3 else ONE
            t0, t1 = _dlog2_tables(e)
            b0, b1 = int(t0[x]), int(t1[x])
            half = 1 << (e - 2)  # order of 5; exponent is a0*b0/2 + a*b1/half
            return RootOfUnity(self.a0 * b0 * (half >> 1) + self.a * b1, half)
        if x % p == 0:
            return None
        b = int(_dlog_table(p, e)[x])
        m = self.group_order
        return RootOfUnity(self.a * b, m)

    @property
    def label(self) -> int:
        """Conrey label of this primitive character mod p^alpha."""
        p, e = self.p, self.alpha
        if e == 0:
            return 1
        if p == 2:
            if e == 2:
                return 3
            q = 1 << e
            m = pow(5, self.a, q)
            return q - m if self.a0 else m
        return pow(conrey_generator(p), self.a, p**e)


class DirichletCharacter:
    """Conrey character chi_N(m, .) with cached conductor, parity and order.

    Immutable after construction; evaluation at x is 0 (returned as None)
    whenever gcd(x, N) > 1, and otherwise goes through the local components of
    the primitive character mod the conductor.
    """

    __slots__ = ("modulus", "label", "conductor", "even", "order", "locals", "_nfac", "_plabel")

    def __init__(self, modulus: int, label: int):
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        m = label % modulus if modulus > 1 else 1
        if modulus == 1:
            m = 1
        if gcd(m, modulus) != 1 or m == 0:
            raise ValueError(f"label {label} is not a unit mod {modulus}")
        self.modulus = modulus
        self.label = m
        self._nfac = factorize(modulus)
        locs = []
        for p, e in self._nfac:
            loc = _local_from_label(p, e, m % p**e)
            if loc.alpha >= 1:
                locs.append(loc)
        self.locals = tuple(locs)
        self.conductor = 1
        self.even = True
        self.order = 1
        self._plabel = None
        for loc in locs:
            self.conductor *= loc.modulus
            self.even = self.even == loc.even
            self.order = lcm(self.order, loc.order)

    @property
    def is_trivial(self) -> bool:
        return self.conductor == 1

    @property
    def parity(self) -> str:
        return "even" if self.even else "odd"

    def __call__(self, x: int):
        if self.modulus > 1 and gcd(x, self.modulus) != 1:
            return None
        val = ONE
        for loc in self.locals:
            val = val * loc(x)
        return val

    def local_component(self, p: int) -> LocalCharacter:
        """Primitive local factor at p (the trivial alpha = 0 one if p | f fails)."""
        for loc in self.locals:
            if loc.p == p:
                return loc
        return LocalCharacter(p, 0)

    def primitive(self) -> "DirichletCharacter":
        """The primitive character mod the conductor inducing this one."""
        return DirichletCharacter(self.conductor, self.primitive_label())

    def primitive_label(self) -> int:
        if self._plabel is None:
            self._plabel = crt([(loc.label, loc.modulus) for loc in self.locals]) if self.locals else 1
        return self._plabel

    def induced_label(self, n: int) -> int:
        """Conrey label mod n of the character this one induces (conductor | n)."""
        if n % self.conductor:
            raise ValueError(f"conductor {self.conductor} does not divide {n}")
        parts = []
        for p, e in factorize(n):
            loc = self.local_component(p)
            c = loc.alpha
            q = p**e
            if c == 0:
                parts.append((1, q))
            elif p == 2:
                if c == 2:
                    parts.append((q - 1, q))  # the odd character mod 4, lifted
                else:
                    m = pow(5, loc.a << (e - c), q)
                    parts.append((q - m if loc.a0 else m, q))
            else:
                parts.append((pow(conrey_generator(p), loc.a * p ** (e - c), q), q))
        return crt(parts) if n > 1 else 1

    def induced(self, n: int) -> "DirichletCharacter":
        return DirichletCharacter(n, self.induced_label(n))

    def __eq__(self, other):
        return (
            isinstance(other, DirichletCharacter)
            and (self.modulus, self.label) == (other.modulus, other.label)
        )

    def __hash__(self):
        return hash((self.modulus, self.label))

    def __repr__(self):
        return f"DirichletCharacter({self.modulus}, {self.label})"

    def __str__(self):
        return f"χ_{self.modulus}({self.label}, ·)"


def _local_from_label(p: int, e: int, m: int) -> LocalCharacter:
    """Primitive local character induced by the Conrey label m mod p^e."""
    if p == 2:
        if e == 1 or m == 1:
            return LocalCharacter(p, 0)
        if e == 2:
            return LocalCharacter(2, 2, a0=1)
        t0, t1 = _dlog2_tables(e)
        a0, a1 = int(t0[m]), int(t1[m])
        if a1 == 0:
            return LocalCharacter(2, 2, a0=1) if a0 else LocalCharacter(p, 0)
        c = e - v_p(a1, 2)
        return LocalCharacter(2, c, a=a1 >> (e - c), a0=a0)
    a = int(_dlog_table(p, e)[m])
    if a == 0:
        return LocalCharacter(p, 0)
    order = ((p - 1) * p ** (e - 1)) // gcd(a, (p - 1) * p ** (e - 1))
    c = 1 + v_p(order, p)
    return LocalCharacter(p, c, a=a // p ** (e - c))


def from_conrey(n: int, m: int) -> DirichletCharacter:
    """The Conrey character chi_n(m, .)."""
    return DirichletCharacter(n, m)


def evaluate(chi: DirichletCharacter, x: int):
    """chi(x) as a RootOfUnity, or None for the value 0."""
    return chi(x)


def lift_hat(x: int, p: int, chi: DirichletCharacter) -> int:
    """The unit mod the conductor with x_hat = x mod p^alpha and = 1 at the
    other primes of the conductor; chi_{p^alpha}(x) = chi_primitive(x_hat)."""
    if x % p == 0:
        raise ValueError(f"{p} divides {x}")
    f = chi.conductor
    if f == 1:
        return 1
    parts = []
    for loc in chi.locals:
        parts.append((x % loc.modulus if loc.p == p else 1, loc.modulus))
    return crt(parts)


def enumerate_characters(
    n: int, parity: str | None = None, conductor: int | None = None
) -> list[DirichletCharacter]:
    """All characters mod n ordered by Conrey label, optionally filtered by
    parity ("even"/"odd") or by exact conductor."""
    if parity not in (None, "even", "odd"):
        raise ValueError("parity filter must be 'even' or 'odd'")
    out = []
    for m in range(1, n + 1) if n > 1 else [1]:
        if gcd(m, n) != 1:
            continue
        chi = DirichletCharacter(n, m)
        if parity is not None and chi.parity != parity:
            continue
        if conductor is not None and chi.conductor != conductor:
            continue
        out.append(chi)
    return out


@lru_cache(maxsize=1024)
def primitive_characters(f: int) -> tuple[DirichletCharacter, ...]:
    """All primitive characters mod f (empty when none exist, e.g. f = 2)."""
    return tuple(enumerate_characters(f, conductor=f))
