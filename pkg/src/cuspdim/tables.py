"""Bundled reference tables of all small spaces, and their verification.

Each CSV fixture is a complete classification list (level, weight, Conrey
label) for one dimension value; verify_tables recomputes every row and
re-runs the bounded search over the requested range to confirm the lists are
exactly complete.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass, field
from importlib import resources

from .characters import from_conrey
from .classify import BoundSpec, classify
from .dimfull import dim_full_total
from .dimnew import dim_new_total

# table id -> (csv stem, space kind, the dimension every row must have)
_TABLES = {
    "full0": ("fullspace_dim0", "full", 0),
    "full1": ("fullspace_dim1", "full", 1),
    "full2": ("fullspace_dim2", "full", 2),
    "new0": ("newspace_dim0", "new", 0),
    "new1": ("newspace_dim1", "new", 1),
}
_ALIASES = {"2.1": "full0", "2.2": "full1", "2.3": "full2", "6.1": "new0", "6.2": "new1"}

TABLE_IDS = tuple(_TABLES)


@dataclass(frozen=True)
class TableFixture:
    table_id: str
    kind: str  # "full" or "new"
    implied_dim: int
    rows: tuple[tuple[int, int, int], ...]  # (N, k, conrey), paper order

    @property
    def max_level(self) -> int:
        return max(r[0] for r in self.rows)


def canonical_table_id(table_id: str) -> str:
    tid = _ALIASES.get(table_id, table_id)
    if tid not in _TABLES:
        raise ValueError(f"unknown table {table_id!r}; use one of {sorted(_TABLES) + sorted(_ALIASES)}")
    return tid


def _data_text(name: str) -> str:
    return resources.files("cuspdim.data").joinpath(name).read_text()


def load_fixture(table_id: str) -> TableFixture:
    tid = canonical_table_id(table_id)
    stem, kind, dim = _TABLES[tid]
    rows = []
    for rec in csv.DictReader(_data_text(f"{stem}.csv").splitlines()):
        rows.append((int(rec["N"]), int(rec["k"]), int(rec["conrey"])))
    return TableFixture(tid, kind, dim, tuple(rows))


def fixture_checksums_ok() -> bool:
    """Whether the shipped CSVs still match their recorded transcription hashes."""
    for line in _data_text("SHA256SUMS").splitlines():
        want, name = line.split()
        got = hashlib.sha256(_data_text(name).encode()).hexdigest()
        if got != want:
            return False
    return True


@dataclass
class TableDiff:
    table_id: str
    rows_checked: int
    mismatched: list[tuple[tuple[int, int, int], int]] = field(default_factory=list)
    missing: list[tuple[int, int, int]] = field(default_factory=list)
    extra: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.mismatched or self.missing or self.extra)

    def lines(self) -> list[str]:
        status = "pass" if self.ok else "FAIL"
        out = [f"{self.table_id}: {status}, {self.rows_checked} rows checked"]
        for row, got in self.mismatched:
            out.append(f"  mismatch {row}: recomputed dim {got}")
        for row in self.missing:
            out.append(f"  missing {row}: in table, not found by search")
        for row in self.extra:
            out.append(f"  extra {row}: found by search, not in table")
        return out


def _row_dim(kind: str, n: int, k: int, m: int) -> int:
    chi = from_conrey(n, m)
    return dim_full_total(n, k, chi) if kind == "full" else dim_new_total(n, k, chi)


def verify_tables(
    table_id: str = "all",
    nmax: int = 20000,
    full: bool = False,
    processes: int = 1,
) -> list[TableDiff]:
    """Recompute every fixture row and re-derive the complete lists up to nmax.

    Returns one diff per table; all diffs empty means the bundled tables are
    exactly the classification output on the searched range.
    """
    ids = list(_TABLES) if table_id == "all" else [canonical_table_id(table_id)]
    fixtures = [load_fixture(t) for t in ids]
    reports: dict[str, object] = {}
    for kind in {f.kind for f in fixtures}:
        bmax = max(f.implied_dim for f in fixtures if f.kind == kind)
        reports[kind] = classify(BoundSpec(kind, bmax), nmax=nmax, full=full, processes=processes)
    diffs = []
    for fx in fixtures:
        diff = TableDiff(fx.table_id, rows_checked=len(fx.rows))
        for n, k, m in fx.rows:
            got = _row_dim(fx.kind, n, k, m)
            if got != fx.implied_dim:
                diff.mismatched.append(((n, k, m), got))
        found = reports[fx.kind].triples(fx.implied_dim)
        found = {t for t in found if t[0] <= nmax}
        stated = {r for r in fx.rows if r[0] <= nmax}
        diff.missing = sorted(stated - found)
        diff.extra = sorted(found - stated)
        diffs.append(diff)
    return diffs
