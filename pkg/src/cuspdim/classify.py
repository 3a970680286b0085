"""Exhaustive bounded searches over (level, weight, character) triples.

The search space is cut down by exact per-level (and per-conductor) lower
bounds on the dimension; every triple not excluded by those bounds is
evaluated exactly, so the reported lists are complete.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from .arith import divisors, factorize, psi, spf_sieve, two_pow_omega, v_p
from .bounds import error_term_upper, search_ceiling
from .characters import DirichletCharacter, primitive_characters
from .dimfull import T3, T4, rho, rho_prime, sigma_mult
from .dimnew import _chain_products, _rho_pair, dim_new_total
from .sieve import base_primes, s2new_dims_range

DEFAULT_GUARD = 20000


class ResourceGuardError(RuntimeError):
    """Raised when a search beyond the desk-scale ceiling lacks the full flag."""


@dataclass(frozen=True)
class BoundSpec:
    kind: str  # "full" or "new"
    bound: int

    def __post_init__(self):
        if self.kind not in ("full", "new"):
            raise ValueError("kind must be 'full' or 'new'")
        if self.bound < 0:
            raise ValueError("bound must be >= 0")


Entry = tuple[int, int, int, int]  # (N, k, conrey label mod N, dim)


@dataclass
class ClassificationReport:
    spec: BoundSpec
    entries: list[Entry]
    search_ceiling: int
    k_cutoffs: dict[int, int] = field(default_factory=dict)

    def triples(self, dim: int | None = None) -> set[tuple[int, int, int]]:
        return {(n, k, m) for (n, k, m, d) in self.entries if dim is None or d == dim}


def threshold(spec: BoundSpec) -> int:
    """Least N* such that the closed-form error bound guarantees dim > bound
    for every level >= N* (all weights, all characters)."""
    return search_ceiling(spec.kind, spec.bound)


def k_cutoff(n: int, spec: BoundSpec) -> int:
    """Largest weight that can still produce dim <= bound at level n, per the
    exact per-level error term; at least 2."""
    e_hi = error_term_upper(spec.kind, spec.bound, n)
    return max(2, int(12 * e_hi + 1))


def is_infinite_family(n: int, chi: DirichletCharacter) -> bool:
    """The identically-trivial newspace family: 2 | conductor, 2 || n/conductor."""
    f = chi.conductor
    if n % f:
        raise ValueError(f"conductor {f} does not divide {n}")
    if f % 2:
        return False
    if f % 4:
        raise AssertionError("even conductors are always divisible by 4")
    return v_p(n // f, 2) == 1


def _full_entries_at_level(n: int, b: int) -> tuple[list[Entry], int]:
    """All (n, k, label, dim <= b) for the full space, with the level's cutoff."""
    entries: list[Entry] = []
    psi_n = psi(n)
    w = two_pow_omega(n)
    slack_chi = 10 * w  # |4 rho| + |6 rho'| over all characters
    level_cut = 0
    for f in divisors(n):
        if f % 4 == 2:
            continue  # no primitive characters mod 2*odd
        sig = sigma_mult(n, f)
        if psi_n - slack_chi - 6 * sig > 12 * b:
            continue  # dim > b for every character of conductor f, every k
        cut = 1 + (12 * b + slack_chi + 6 * sig) // psi_n
        if cut < 2:
            cut = 2
        level_cut = max(level_cut, cut)
        for chi in primitive_characters(f):
            rho_n = rho(n, chi)
            rhop_n = rho_prime(n, chi)
            k = 2 if chi.even else 3
            label = None
            while k <= cut:
                is_c0 = 12 if (k == 2 and f == 1) else 0
                t12 = (k - 1) * psi_n - T3[k % 3] * rho_n - T4[k % 4] * rhop_n - 6 * sig + is_c0
                if t12 % 12 or t12 < 0:
                    raise ArithmeticError(f"bad dimension 12*dim={t12} at {(n, k, f)}")
                if t12 <= 12 * b:
                    if label is None:
                        label = chi.induced_label(n)
                    entries.append((n, k, label, t12 // 12))
                k += 2
    return entries, level_cut


def _new_entries_at_level(n: int, b: int) -> tuple[list[Entry], int]:
    """All (n, k, label, dim <= b) for the newspace, infinite family excluded."""
    entries: list[Entry] = []
    level_cut = 0
    for f in divisors(n):
        if f % 4 == 2:
            continue  # no primitive characters mod 2*odd
        q = n // f
        bpsi, brho, brhop, bsig, mu = _chain_products(q, f)
        a = psi(f) * bpsi
        if a == 0:
            continue  # 2 | f and 2 || n/f: the identically-zero family
        w = two_pow_omega(f)
        slack = 4 * w * abs(brho) + 6 * w * abs(brhop) + 6 * w * bsig + 12
        if a - slack > 12 * b:
            continue
        cut = 1 + (12 * b + slack) // a
        if cut < 2:
            cut = 2
        level_cut = max(level_cut, cut)
        sig_term = 6 * w * bsig
        for chi in primitive_characters(f):
            rho_f, rhop_f = _rho_pair(chi)
            k = 2 if chi.even else 3
            label = None
            while k <= cut:
                mu_term = 12 * mu if (k == 2 and f == 1) else 0
                t12 = (
                    (k - 1) * a
                    - T3[k % 3] * rho_f * brho
                    - T4[k % 4] * rhop_f * brhop
                    - sig_term
                    + mu_term
                )
                if t12 % 12 or t12 < 0:
                    raise ArithmeticError(f"bad newspace 12*dim={t12} at {(n, k, f)}")
                if t12 <= 12 * b:
                    if label is None:
                        label = chi.induced_label(n)
                    entries.append((n, k, label, t12 // 12))
                k += 2
    return entries, level_cut


def _classify_range(args) -> tuple[list[Entry], dict[int, int]]:
    lo, hi, spec = args
    worker = _full_entries_at_level if spec.kind == "full" else _new_entries_at_level
    entries: list[Entry] = []
    cutoffs: dict[int, int] = {}
    for n in range(lo, hi):
        found, cut = worker(n, spec.bound)
        entries.extend(found)
        if cut:
            cutoffs[n] = cut
    return entries, cutoffs


def classify(
    spec: BoundSpec,
    nmax: int | None = None,
    full: bool = False,
    processes: int = 1,
) -> ClassificationReport:
    """Every (N, k, chi) with dimension <= spec.bound and N <= the ceiling.

    The ceiling is threshold(spec) - 1, optionally lowered by nmax. Searches
    beyond the desk-scale guard require full=True. For the newspace the
    identically-zero infinite family is excluded by construction.
    """
    ceiling = threshold(spec) - 1
    if nmax is not None:
        ceiling = min(ceiling, nmax)
    if ceiling > DEFAULT_GUARD and not full:
        raise ResourceGuardError(
            f"search ceiling {ceiling} exceeds the desk-scale guard {DEFAULT_GUARD}; "
            "pass full=True (--full) to run it"
        )
    if ceiling >= 1000:
        spf_sieve(ceiling + 1)  # shared read-only factorization table
    chunks = _split_range(1, ceiling + 1, processes)
    jobs = [(lo, hi, spec) for lo, hi in chunks]
    if processes > 1 and len(jobs) > 1:
        import multiprocessing as mp

        with mp.Pool(processes) as pool:
            results = pool.map(_classify_range, jobs)
    else:
        results = [_classify_range(j) for j in jobs]
    entries: list[Entry] = []
    cutoffs: dict[int, int] = {}
    for ent, cuts in results:
        entries.extend(ent)
        cutoffs.update(cuts)
    entries.sort(key=lambda e: (e[3], e[0], e[1], e[2]))
    return ClassificationReport(spec, entries, ceiling, cutoffs)


def _split_range(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, hi - lo))
    step = (hi - lo + parts - 1) // parts
    return [(a, min(a + step, hi)) for a in range(lo, hi, step)]


# ---------------------------------------------------------------------------
# The weight-2 trivial-character sieve.


@dataclass
class SieveResult:
    target: int
    nmax: int
    attained: bool
    attained_below_target: np.ndarray  # bool bitmap over [0, target)
    first_missing: int | None

    def summary(self) -> str:
        hit = "attained" if self.attained else "NOT attained"
        miss = self.first_missing if self.first_missing is not None else "none below target"
        return (
            f"newspace weight-2 dims over N <= {self.nmax}: target {self.target} {hit}; "
            f"first missing value {miss}"
        )


def _checkpoint_path(checkpoint_dir: str) -> str:
    return os.path.join(checkpoint_dir, "martin_sieve_checkpoint.npz")


def martin_sieve(
    target: int,
    nmax: int,
    chunk: int = 2_000_000,
    checkpoint_dir: str | None = None,
    processes: int = 1,
    progress=None,
) -> SieveResult:
    """Scan dim S_2^new(Gamma_0(N)) for N <= nmax; record which values below
    target occur and whether target itself does.

    Deterministic for any chunking; an optional checkpoint directory makes the
    long scan resumable. progress, if given, is called with (done, total).
    """
    if target < 1 or nmax < 1:
        raise ValueError("target and nmax must be positive")
    if checkpoint_dir is None:
        checkpoint_dir = os.environ.get("CUSPDIM_CHECKPOINT_DIR") or None
    bitmap = np.zeros(target, dtype=bool)
    attained = False
    next_lo = 1
    ck_path = None
    if checkpoint_dir:
        os.makedirs(checkpoint_dir, exist_ok=True)
        ck_path = _checkpoint_path(checkpoint_dir)
        if os.path.exists(ck_path):
            ck = np.load(ck_path)
            if int(ck["target"]) == target and int(ck["nmax"]) == nmax:
                bitmap = ck["bitmap"].astype(bool)
                attained = bool(ck["attained"])
                next_lo = int(ck["next_lo"])

    primes = base_primes(isqrt(nmax))
    spans = [(lo, min(lo + chunk, nmax + 1)) for lo in range(next_lo, nmax + 1, chunk)]

    def scan(span):
        lo, hi = span
        dims = s2new_dims_range(lo, hi, primes)
        hit = np.zeros(target, dtype=bool)
        hit[dims[dims < target]] = True
        return hit, bool((dims == target).any())

    if processes > 1 and len(spans) > 1:
        import multiprocessing as mp

        with mp.Pool(processes) as pool:
            for i, (hit, got) in enumerate(pool.imap(scan, spans)):
                bitmap |= hit
                attained = attained or got
                if progress:
                    progress(min(spans[i][1] - 1, nmax), nmax)
    else:
        for i, span in enumerate(spans):
            hit, got = scan(span)
            bitmap |= hit
            attained = attained or got
            if progress:
                progress(min(span[1] - 1, nmax), nmax)
            if ck_path:
                np.savez(
                    ck_path,
                    target=target,
                    nmax=nmax,
                    bitmap=bitmap,
                    attained=attained,
                    next_lo=span[1],
                )

    if not bitmap.all():
        first_missing = int(np.argmin(bitmap))
    elif not attained:
        first_missing = target
    else:
        first_missing = None  # everything up to and including target occurs
    return SieveResult(target, nmax, attained, bitmap, first_missing)


# ---------------------------------------------------------------------------
# Character equidistribution at fixed level and weight.


@dataclass(frozen=True)
class ConductorClass:
    conductor: int
    labels: tuple[int, ...]
    dims: tuple[int, ...]

    @property
    def equal(self) -> bool:
        return len(set(self.dims)) <= 1

    @property
    def spread(self) -> int:
        return max(self.dims) - min(self.dims)


@dataclass(frozen=True)
class EquidistReport:
    level: int
    weight: int
    exact_expected: bool  # weight = 1 mod 12: equality is a theorem
    classes: tuple[ConductorClass, ...]


def equidistribution_check(n: int, k: int) -> EquidistReport:
    """Group newspace dimensions at level n, weight k by conductor.

    For k = 1 mod 12 the within-class dimensions are asserted equal; otherwise
    the per-class spread is only reported.
    """
    from .characters import enumerate_characters

    parity = "even" if k % 2 == 0 else "odd"
    by_f: dict[int, list[tuple[int, int]]] = {}
    for chi in enumerate_characters(n, parity=parity):
        by_f.setdefault(chi.conductor, []).append((chi.label, dim_new_total(n, k, chi)))
    exact = k % 12 == 1
    classes = []
    for f in sorted(by_f):
        labels, dims = zip(*by_f[f])
        cls = ConductorClass(f, labels, dims)
        if exact and not cls.equal:
            raise AssertionError(
                f"conductor class {f} at (N={n}, k={k}) not equidistributed: {dims}"
            )
        classes.append(cls)
    return EquidistReport(n, k, exact, tuple(classes))
