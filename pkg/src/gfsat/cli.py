"""Command-line front end: solve, gen, bench.

Exit codes for ``solve``: 10 satisfiable, 20 unsatisfiable, 30 undecided
(resource limit), 1 any error.  ``gen`` and ``bench`` exit 0 on success,
1 on error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .bench import (BenchSpec, render_report, run_suite, write_instances,
                    write_jsonl)
from .engine import Config, SAT, UNSAT, check_model, solve
from .field import FieldError
from .formula import Formula
from .oracle import OracleCapExceeded, brute_solve
from .parser import ParseError, parse_file

_ORACLE_CAP = 100_000

EXIT_SAT = 10
EXIT_UNSAT = 20
EXIT_UNKNOWN = 30
EXIT_ERROR = 1

_STATS_KEYS = ("decisions", "propagations", "t_propagations", "conflicts",
               "learned", "explanations", "time_ms")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gfsat",
        description="decide polynomial constraint systems over finite fields")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="decide one constraint file")
    sp.add_argument("path", help="input .ff file")
    sp.add_argument("--var-order", metavar="I,J,...",
                    help="comma-separated permutation of variable positions")
    sp.add_argument("--max-steps", type=int, default=None, metavar="N")
    sp.add_argument("--timeout", type=float, default=None, metavar="SECONDS")
    sp.add_argument("--check-model", action="store_true",
                    help="re-verify and report the model explicitly")
    sp.add_argument("--oracle", action="store_true",
                    help="cross-check the verdict by brute force when the "
                         "assignment space is small enough")
    sp.add_argument("--trace-explain", action="store_true",
                    help="log projection guards to stderr")
    sp.add_argument("--stats", action="store_true",
                    help="print a final JSON stats object")

    gp = sub.add_parser("gen", help="generate benchmark instances")
    gp.add_argument("--family", choices=["rand", "craft"], required=True)
    gp.add_argument("--q", type=int, required=True)
    gp.add_argument("--n", type=int, required=True)
    gp.add_argument("--c", type=int, required=True)
    gp.add_argument("--count", type=int, default=25)
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--out", required=True, metavar="DIR")

    bp = sub.add_parser("bench", help="run a directory of instances")
    bp.add_argument("dir")
    bp.add_argument("--timeout", type=float, default=300.0, metavar="SECONDS")
    bp.add_argument("--max-steps", type=int, default=None, metavar="N")
    bp.add_argument("--report", metavar="DIR",
                    help="also write report.jsonl and figures to DIR")
    return ap


def _parse_var_order(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise ValueError(f"invalid --var-order {text!r}")


def _cmd_solve(args) -> int:
    formula = parse_file(args.path)
    cfg = Config()
    order = _parse_var_order(args.var_order)
    if order is not None:
        cfg.var_order = order
    if args.max_steps is not None:
        cfg.max_steps = args.max_steps
    if args.timeout is not None:
        cfg.timeout_s = args.timeout
    if args.trace_explain:
        def trace(label, poly, held):
            state = "guard held, negation recorded" if held else "recorded"
            print(f"# explain {label}: {poly} ({state})", file=sys.stderr)
        cfg.trace = trace

    verdict = solve(formula, cfg)
    print(verdict.status)
    code = EXIT_UNKNOWN
    if verdict.is_sat:
        code = EXIT_SAT
        for i, name in enumerate(formula.var_names, start=1):
            print(f"{name} = {verdict.model[i]}")
        if args.check_model:
            ok = check_model(formula, verdict.model)
            print(f"model: {'ok' if ok else 'INVALID'}")
            if not ok:
                code = EXIT_ERROR
    elif verdict.is_unsat:
        code = EXIT_UNSAT
    elif verdict.reason:
        print(f"reason: {verdict.reason}")

    if args.oracle:
        if formula.field.q ** formula.nvars <= _ORACLE_CAP:
            reference = brute_solve(formula, cap=_ORACLE_CAP)
            if verdict.status in (SAT, UNSAT):
                agree = reference.status == verdict.status
                print(f"oracle: {'agree' if agree else 'DISAGREE'}")
                if not agree:
                    code = EXIT_ERROR
            else:
                print(f"oracle: reference verdict {reference.status}")
        else:
            print("oracle: skipped (assignment space above cap)")

    if args.stats:
        st = verdict.stats.as_dict()
        print(json.dumps({k: st[k] for k in _STATS_KEYS}))
    return code


def _cmd_gen(args) -> int:
    spec = BenchSpec(family=args.family, q=args.q, n=args.n, c=args.c,
                     count=args.count, seed=args.seed)
    paths = write_instances(spec, args.out)
    print(f"wrote {len(paths)} instances to {args.out}")
    return 0


def _cmd_bench(args) -> int:
    cfg = Config()
    if args.max_steps is not None:
        cfg.max_steps = args.max_steps
    report = run_suite(args.dir, args.timeout, cfg)
    sys.stdout.write(render_report(report))
    if args.report:
        from .plots import write_figures
        from pathlib import Path
        out = Path(args.report)
        out.mkdir(parents=True, exist_ok=True)
        jsonl = out / "report.jsonl"
        write_jsonl(report, jsonl)
        figures = write_figures(report, out)
        for path in [jsonl] + figures:
            print(f"wrote {path}")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "gen":
            return _cmd_gen(args)
        return _cmd_bench(args)
    except (ParseError, FieldError, OracleCapExceeded, OSError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
