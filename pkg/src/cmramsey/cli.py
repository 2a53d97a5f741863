"""Command line entry point: ``cm-ramsey <command> ...``.

Exit codes are the machine contract:

    formula    0 ok, 2 bad arguments
    construct  0 ok (1 if the built coloring fails verification), 2 bad arguments
    verify     0 no threshold met, 1 some threshold met, 2 parse/argument error
    search     0 EXHAUSTED_NONE, 1 WITNESS_FOUND, 3 BUDGET_EXCEEDED
    certify    0 CERTIFIED, 1 REFUTED, 3 INCOMPLETE
    sweep      0 every row consistent, 1 otherwise
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from itertools import permutations, product

from . import __version__
from ._jit import backend
from .constructions import ConstructionError, best_witness, build_block, build_strip
from .formula import (
    ThresholdError,
    lower_bound_generic,
    r2,
    r3_regime,
    thresholds,
)
from .graph import ColorMatrix, MatrixParseError
from .matching import meets_threshold
from .search import Outcome, certify_value, default_budget, search_avoiding

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

DEFAULT_VERIFY_CAP = 40
DEFAULT_SEED = 12345

SEARCH_EXIT = {
    Outcome.EXHAUSTED_NONE: EXIT_OK,
    Outcome.WITNESS_FOUND: EXIT_FAIL,
    Outcome.BUDGET_EXCEEDED: EXIT_BUDGET,
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    as_json: bool
    verify_cap: int
    threads: int
    budget: int
    seed: int


def _config(args) -> RunConfig:
    threads = getattr(args, "threads", 1)
    if threads < 1:
        raise UsageError("--threads must be >= 1")
    budget = getattr(args, "budget", None)
    if budget is None:
        budget = default_budget()
    if budget < 1:
        raise UsageError("--budget must be >= 1")
    cap = getattr(args, "verify_cap", DEFAULT_VERIFY_CAP)
    if cap < 0:
        raise UsageError("--verify-cap must be >= 0")
    return RunConfig(args.command, getattr(args, "json", False), cap, threads, budget, args.seed)


def _thresholds(values) -> tuple[int, ...]:
    try:
        return thresholds(values)
    except ThresholdError as exc:
        raise UsageError(str(exc)) from None


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


def cmd_formula(args, cfg: RunConfig) -> int:
    t = _thresholds(args.k)
    if len(t) == 2:
        value, label = r2(*t), None
    else:
        value, label = r3_regime(*t)[:2]
    if cfg.as_json:
        _emit({"schema": 1, "thresholds": list(t), "value": value, "regime": label})
    else:
        print(f"{value} ({label})" if label else f"{value}")
    return EXIT_OK


def _write_matrix(m: ColorMatrix, cfg: RunConfig, out) -> None:
    text = m.to_json() if cfg.as_json else m.to_text()
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args, cfg: RunConfig) -> int:
    kind = args.kind
    params = args.params
    flag = ""
    if kind == "block":
        if len(params) != 4:
            raise UsageError("construct block needs k l m i")
        try:
            m = build_block(*params)
        except ConstructionError as exc:
            raise UsageError(str(exc)) from None
        t = tuple(params[:3])
    elif kind == "strip":
        t = _thresholds(params)
        m = build_strip(t)
    else:
        t = _thresholds(params)
        w = best_witness(t)
        m = w.matrix
        if not w.optimal:
            flag = " OPTIMAL_UNKNOWN"
        print(f"# {w.construction}, side {w.n}, r={w.value}{flag}", file=sys.stderr)

    status = EXIT_OK
    if m.n <= cfg.verify_cap:
        report = meets_threshold(m, t)
        verdict = "verified avoiding" if not report.met else "FAILS: a threshold is met"
        print(f"# {verdict} {list(t)}: best sizes {list(report.best_sizes)}", file=sys.stderr)
        if report.met:
            status = EXIT_FAIL
    else:
        print(f"# side {m.n} above --verify-cap {cfg.verify_cap}; not verified", file=sys.stderr)
    _write_matrix(m, cfg, args.output)
    return status


def cmd_verify(args, cfg: RunConfig) -> int:
    try:
        m = ColorMatrix.read(args.file)
    except MatrixParseError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"{args.file}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    t = _thresholds(args.k)
    if len(t) != m.colors:
        raise UsageError(f"file has {m.colors} colors but {len(t)} thresholds were given")
    report = meets_threshold(m, t)
    if cfg.as_json:
        _emit(report.to_dict())
    else:
        print(report.summary())
    return EXIT_FAIL if report.met else EXIT_OK


def cmd_search(args, cfg: RunConfig) -> int:
    if args.n < 1:
        raise UsageError("N must be positive")
    t = _thresholds(args.k)
    out = search_avoiding(
        args.n, t, budget=cfg.budget, threads=cfg.threads,
        symmetry=not args.no_symmetry, seed=cfg.seed,
    )
    if out.witness is not None and args.witness_out:
        out.witness.write(args.witness_out, as_json=args.witness_out.endswith(".json"))
    if cfg.as_json:
        _emit(out.to_dict())
    else:
        print(f"{out.kind.value} n={out.n} t={list(t)} nodes={out.nodes_visited} "
              f"prunes={out.prunes} elapsed={out.elapsed:.3f}s")
        if out.witness is not None:
            sys.stdout.write(out.witness.to_text())
            if out.nondeterministic_witness:
                print("# witness selection is scheduling dependent with --threads > 1")
    return SEARCH_EXIT[out.kind]


def cmd_certify(args, cfg: RunConfig) -> int:
    t = _thresholds(args.k)
    rep = certify_value(t, budget=cfg.budget, threads=cfg.threads)
    if cfg.as_json:
        _emit(rep.to_dict())
    else:
        print(f"r{tuple(t)} = {rep.value}: {rep.verdict}")
        for name, leg in (("lower", rep.lower), ("upper", rep.upper)):
            print(f"  {name} n={leg.n}: {leg.kind.value} via {leg.method} "
                  f"(expected {leg.expected.value}, nodes={leg.nodes})")
        for note in rep.notes:
            print(f"  note: {note}")
    return {"CERTIFIED": EXIT_OK, "REFUTED": EXIT_FAIL}.get(rep.verdict, EXIT_BUDGET)


def _sweep_rows(colors: int, lo: int, hi: int, cap: int):
    for t in product(range(lo, hi + 1), repeat=colors):
        lb = lower_bound_generic(t)
        if colors == 2:
            value, label = r2(*t), "k+l-1"
            perm_ok = value == r2(t[1], t[0])
            boundary = ""
        else:
            value, label, srt = r3_regime(*t)
            perm_ok = all(r3_regime(*p).value == value for p in permutations(t))
            a, b, c = srt
            boundary = ""
            if a < b < c and a % 2 == 1 and 2 * c == 2 * b + a - 1:
                boundary = "first=middle" if a + 2 * c - 2 == 2 * a + 2 * b - 3 else "MISMATCH"
            elif a < b < c and c == a + b - 1:
                boundary = "middle=sum" if 2 * a + 2 * b - 3 == a + b + c - 2 else "MISMATCH"
        w = best_witness(t)
        if w.n > cap:
            verified = "skipped"
        else:
            verified = "yes" if not meets_threshold(w.matrix, t).met else "NO"
        ok = perm_ok and value >= lb and verified != "NO" and boundary != "MISMATCH"
        if colors == 2:
            ok = ok and value == lb
        yield {
            "thresholds": " ".join(map(str, t)),
            "value": value,
            "regime": label,
            "lower_bound": lb,
            "witness": w.construction,
            "witness_side": w.n,
            "witness_optimal": w.optimal,
            "witness_verified": verified,
            "permutation_invariant": perm_ok,
            "boundary": boundary,
            "ok": ok,
        }


def cmd_sweep(args, cfg: RunConfig) -> int:
    if not 2 <= args.min <= args.max:
        raise UsageError("need 2 <= --min <= --max")
    rows = list(_sweep_rows(args.colors, args.min, args.max, cfg.verify_cap))
    if cfg.as_json:
        _emit({"schema": 1, "colors": args.colors, "rows": rows})
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    bad = sum(not r["ok"] for r in rows)
    if bad:
        print(f"# {bad} of {len(rows)} rows inconsistent", file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cm-ramsey",
        description="Bipartite Ramsey numbers for connected matchings.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({backend()})")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help="seed for any randomized step (frontier shuffling)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("formula", help="closed-form r(k,l) or r(k,l,m)")
    f.add_argument("k", type=int, nargs="+", metavar="k")
    f.add_argument("--json", action="store_true")

    c = sub.add_parser("construct", help="build an extremal coloring")
    c.add_argument("kind", choices=["strip", "block", "witness"])
    c.add_argument("params", type=int, nargs="+")
    c.add_argument("--json", action="store_true", help="write the JSON matrix format")
    c.add_argument("-o", "--output", help="write to this file instead of stdout")
    c.add_argument("--verify-cap", type=int, default=DEFAULT_VERIFY_CAP,
                   help="verify the coloring when its side is at most this (default 40)")

    v = sub.add_parser("verify", help="check a coloring file against thresholds")
    v.add_argument("file")
    v.add_argument("k", type=int, nargs="+")
    v.add_argument("--json", action="store_true")

    s = sub.add_parser("search", help="search for an avoiding coloring of K_{N,N}")
    s.add_argument("n", type=int, metavar="N")
    s.add_argument("k", type=int, nargs="+")
    s.add_argument("--budget", type=int, default=None,
                   help="node limit (default $CM_RAMSEY_BUDGET or 1e9)")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--no-symmetry", action="store_true")
    s.add_argument("--witness-out", metavar="FILE")
    s.add_argument("--json", action="store_true")

    ce = sub.add_parser("certify", help="confirm r(t) by search on both sides")
    ce.add_argument("k", type=int, nargs="+")
    ce.add_argument("--budget", type=int, default=None)
    ce.add_argument("--threads", type=int, default=1)
    ce.add_argument("--json", action="store_true")

    sw = sub.add_parser("sweep", help="tabulate formula, bound and witness checks over a grid")
    sw.add_argument("--colors", type=int, choices=[2, 3], default=3)
    sw.add_argument("--min", type=int, default=2)
    sw.add_argument("--max", type=int, default=10)
    sw.add_argument("--verify-cap", type=int, default=DEFAULT_VERIFY_CAP)
    sw.add_argument("--json", action="store_true")
    return p


COMMANDS = {
    "formula": cmd_formula,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "search": cmd_search,
    "certify": cmd_certify,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"cm-ramsey {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
