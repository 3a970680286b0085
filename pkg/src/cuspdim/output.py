"""Deterministic CSV/JSON emission of classification records."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO, Iterable

CSV_HEADER = "N,k,conrey,dim"


@dataclass(frozen=True)
class OutputRecord:
    level: int
    weight: int
    conrey: int
    dim: int
    terms: dict | None = None  # optional term breakdown, kept through JSON only

    def key(self):
        return (self.dim, self.level, self.weight, self.conrey)

    def as_dict(self) -> dict:
        d = {"N": self.level, "k": self.weight, "conrey": self.conrey, "dim": self.dim}
        if self.terms is not None:
            d["terms"] = self.terms
        return d


def emit(records: Iterable[OutputRecord], fmt: str, dest: IO[str]) -> None:
    """Write records sorted by (dim, N, k, conrey); output bytes depend only
    on the record list."""
    recs = sorted(records, key=OutputRecord.key)
    if fmt == "csv":
        dest.write(CSV_HEADER + "\n")
        for r in recs:
            dest.write(f"{r.level},{r.weight},{r.conrey},{r.dim}\n")
    elif fmt == "json":
        dest.write(json.dumps([r.as_dict() for r in recs], sort_keys=True, indent=1))
        dest.write("\n")
    else:
        raise ValueError("format must be 'csv' or 'json'")


def emit_path(records: Iterable[OutputRecord], fmt: str, path: str) -> None:
    try:
        with open(path, "w") as fh:
            emit(records, fmt, fh)
    except OSError as e:
        raise OSError(f"cannot write {fmt} output to {path}: {e}") from e
