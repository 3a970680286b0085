"""Command-line surface.

Exit codes: 0 success, 1 verification diff, 2 usage error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import json
import sys

from .characters import from_conrey
from .classify import (
    BoundSpec,
    ResourceGuardError,
    classify,
    equidistribution_check,
    martin_sieve,
)
from .dimfull import dim_full
from .dimnew import dim_new_convolution, dim_new_explicit
from .output import OutputRecord, emit, emit_path
from .tables import verify_tables

EXIT_OK = 0
EXIT_DIFF = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


def char_info(n: int, m: int) -> dict:
    """Summary of the Conrey character chi_n(m, .)."""
    chi = from_conrey(n, m)
    return {
        "modulus": chi.modulus,
        "conrey": chi.label,
        "name": str(chi),
        "conductor": chi.conductor,
        "parity": chi.parity,
        "order": chi.order,
        "is_trivial": chi.is_trivial,
        "local_components": [
            {"p": loc.p, "alpha": loc.alpha, "modulus": loc.modulus, "conrey": loc.label}
            for loc in chi.locals
        ],
    }


def _out_stream(args):
    return open(args.out, "w") if getattr(args, "out", None) else sys.stdout


def _cmd_dim(args) -> int:
    chi = from_conrey(args.level, args.conrey)
    terms = dim_full(args.level, args.weight, chi)
    if args.json:
        payload = terms.to_dict() if args.explain else {"total": terms.total}
        payload.update({"N": args.level, "k": args.weight, "conrey": chi.label})
        print(json.dumps(payload, sort_keys=True), file=_out_stream(args))
    else:
        out = _out_stream(args)
        if args.explain:
            print(f"dim S_{args.weight}({args.level}, {chi}) = {terms.total}", file=out)
            print(f"  main       {terms.main}", file=out)
            print(f"  elliptic3  -{terms.elliptic3}", file=out)
            print(f"  elliptic4  -{terms.elliptic4}", file=out)
            print(f"  cusps      -{terms.cusp_count}", file=out)
            print(f"  constant   +{terms.constant}", file=out)
        else:
            print(terms.total, file=out)
    return EXIT_OK


def _cmd_dim_new(args) -> int:
    chi = from_conrey(args.level, args.conrey)
    terms = dim_new_explicit(args.level, args.weight, chi)
    oracle = dim_new_convolution(args.level, args.weight, chi) if args.oracle else None
    if args.json:
        payload = terms.to_dict() if args.explain else {"total": terms.total}
        payload.update({"N": args.level, "k": args.weight, "conrey": chi.label})
        if oracle is not None:
            payload["oracle_total"] = oracle
        print(json.dumps(payload, sort_keys=True), file=_out_stream(args))
    else:
        out = _out_stream(args)
        print(terms.total, file=out)
        if args.explain:
            print(f"  main   {terms.main_psi}", file=out)
            print(f"  rho    -{terms.term_rho}", file=out)
            print(f"  rho'   -{terms.term_rho_prime}", file=out)
            print(f"  sigma  -{terms.term_sigma}", file=out)
            print(f"  mu     +{terms.term_mu}", file=out)
        if oracle is not None:
            print(f"  oracle (level-chain sum): {oracle}", file=out)
    if oracle is not None and oracle != terms.total:
        print(f"MISMATCH: explicit {terms.total} != oracle {oracle}", file=sys.stderr)
        return EXIT_DIFF
    return EXIT_OK


def _cmd_char_info(args) -> int:
    info = char_info(args.modulus, args.conrey)
    out = _out_stream(args)
    if args.json:
        print(json.dumps(info, sort_keys=True), file=out)
    else:
        print(info["name"], file=out)
        print(f"  conductor {info['conductor']}", file=out)
        print(f"  parity    {info['parity']}", file=out)
        print(f"  order     {info['order']}", file=out)
        for loc in info["local_components"]:
            print(f"  local     p={loc['p']} alpha={loc['alpha']} (conrey {loc['conrey']} mod {loc['modulus']})", file=out)
    return EXIT_OK


def _cmd_classify(args) -> int:
    spec = BoundSpec(args.space, args.bound)
    report = classify(spec, nmax=args.nmax, full=args.full, processes=args.threads)
    records = [OutputRecord(n, k, m, d) for (n, k, m, d) in report.entries]
    fmt = "json" if args.json else "csv"
    if args.out:
        emit_path(records, fmt, args.out)
        print(f"{len(records)} entries (search ceiling {report.search_ceiling}) -> {args.out}")
    else:
        emit(records, fmt, sys.stdout)
    return EXIT_OK


def _cmd_verify_tables(args) -> int:
    diffs = verify_tables(args.table, nmax=args.nmax, full=args.full, processes=args.threads)
    ok = True
    for d in diffs:
        for line in d.lines():
            print(line)
        ok = ok and d.ok
    return EXIT_OK if ok else EXIT_DIFF


def _cmd_martin_sieve(args) -> int:
    progress = None
    if args.progress:

        def progress(done, total):
            print(f"\r  scanned N <= {done} / {total}", end="", file=sys.stderr, flush=True)

    result = martin_sieve(
        args.target,
        args.nmax,
        chunk=args.chunk,
        checkpoint_dir=args.checkpoint,
        processes=args.threads,
        progress=progress,
    )
    if args.progress:
        print(file=sys.stderr)
    print(result.summary(), file=_out_stream(args))
    return EXIT_OK


def _cmd_equidist(args) -> int:
    report = equidistribution_check(args.level, args.weight)
    out = _out_stream(args)
    if args.json:
        payload = {
            "N": report.level,
            "k": report.weight,
            "exact_expected": report.exact_expected,
            "classes": [
                {
                    "conductor": c.conductor,
                    "count": len(c.labels),
                    "dims": sorted(set(c.dims)),
                    "equal": c.equal,
                    "spread": c.spread,
                }
                for c in report.classes
            ],
        }
        print(json.dumps(payload, sort_keys=True), file=out)
    else:
        tag = "exact (weight = 1 mod 12)" if report.exact_expected else "report only"
        print(f"level {report.level}, weight {report.weight}: {tag}", file=out)
        for c in report.classes:
            mark = "equal" if c.equal else f"spread {c.spread}"
            print(f"  conductor {c.conductor}: {len(c.labels)} characters, dims {sorted(set(c.dims))} ({mark})", file=out)
    return EXIT_OK


def _add_common(p, out=True, js=True, threads=False):
    if out:
        p.add_argument("--out", help="write output to this path")
    if js:
        p.add_argument("--json", action="store_true", help="JSON output")
    if threads:
        p.add_argument("--threads", type=int, default=1, help="worker processes")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cuspdim", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", help="full-space dimension")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--conrey", type=int, default=1)
    p.add_argument("--explain", action="store_true", help="print the term breakdown")
    _add_common(p)
    p.set_defaults(fn=_cmd_dim)

    p = sub.add_parser("dim-new", help="newspace dimension")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--conrey", type=int, default=1)
    p.add_argument("--explain", action="store_true")
    p.add_argument("--oracle", action="store_true", help="cross-check against the level-chain sum")
    _add_common(p)
    p.set_defaults(fn=_cmd_dim_new)

    p = sub.add_parser("char-info", help="Conrey character summary")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--conrey", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=_cmd_char_info)

    p = sub.add_parser("classify", help="all triples with dimension <= bound")
    p.add_argument("--space", choices=("full", "new"), required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--nmax", type=int, default=None, help="cap the searched level range")
    p.add_argument("--full", action="store_true", help="allow searches beyond the desk-scale guard")
    _add_common(p, threads=True)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("verify-tables", help="recompute the bundled reference tables")
    p.add_argument("--table", default="all", help="full0..full2, new0, new1, 2.1..6.2, or all")
    p.add_argument("--nmax", type=int, default=20000)
    p.add_argument("--full", action="store_true")
    _add_common(p, out=False, js=False, threads=True)
    p.set_defaults(fn=_cmd_verify_tables)

    p = sub.add_parser("martin-sieve", help="scan weight-2 trivial-character newspace dims")
    p.add_argument("--target", type=int, default=67846)
    p.add_argument("--nmax", type=int, default=58260766)
    p.add_argument("--chunk", type=int, default=2_000_000)
    p.add_argument("--checkpoint", default=None, help="checkpoint directory (resumable)")
    p.add_argument("--progress", action="store_true")
    _add_common(p, js=False, threads=True)
    p.set_defaults(fn=_cmd_martin_sieve)

    p = sub.add_parser("equidist", help="newspace dims grouped by conductor")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=_cmd_equidist)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ResourceGuardError as e:
        print(f"resource guard: {e}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
