"""Command-line entry point: ``f2fpart <command> [flags]``.

Exit codes: 0 success or valid, 1 invalid or infeasible, 2 usage or parse
error, 3 research-grade event (an extension that had to fall back to the
exact solver, a failed internal assertion, a suite check that raised).
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import suite as suite_mod
from .constructor import Unpartitionable, construct
from .corpus import BadParameter, Family, default_corpus, gen
from .discharging import audit
from .formats import (
    ParseError, format_partition, format_pge, read_partition, read_pge, write_manifest, write_partition,
    write_pge,
)
from .partition import ClassSpec, verify
from .solver import solve
from .structure import stats_rows

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_EVENT = 0, 1, 2, 3

_SPEC_TOKEN = re.compile(r"^(F|D)(\d+)$|^I$|^F$")


class UsageError(Exception):
    pass


def parse_classes(text: str) -> tuple[ClassSpec, ...]:
    """``"F2,F"`` -> ``(F2, F)``; tokens are ``F<d>``, ``D<d>``, ``I`` or ``F``."""
    specs = []
    for tok in text.split(","):
        tok = tok.strip()
        m = _SPEC_TOKEN.match(tok)
        if not m:
            raise UsageError(f"bad class token {tok!r} (expected F<d>, D<d>, I or F)")
        if tok == "I":
            specs.append(ClassSpec.forest(0))
        elif tok == "F":
            specs.append(ClassSpec.forest())
        elif m.group(1) == "F":
            specs.append(ClassSpec.forest(int(m.group(2))))
        else:
            specs.append(ClassSpec.degree(int(m.group(2))))
    return tuple(specs)


def _emit(obj: dict) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _need(args, name: str):
    val = getattr(args, name)
    if val is None:
        raise UsageError(f"--{name} is required for {args.command}")
    return val


def _graph(args, strict: bool = True):
    return read_pge(_need(args, "graph"), strict)


# --- commands -------------------------------------------------------------------


def cmd_verify(args) -> int:
    g, _ = _graph(args, strict=False)
    specs = parse_classes(args.classes)
    p = read_partition(_need(args, "partition"), g.vertices, specs)
    verdict = verify(g, p)
    if args.json:
        w = verdict.witness
        _emit({"valid": verdict.valid, "witness": None if w is None else {"type": type(w).__name__, **w.__dict__}})
    else:
        print("valid" if verdict else f"invalid: {verdict.witness}")
    return EXIT_OK if verdict else EXIT_NO


def cmd_solve(args) -> int:
    g, _ = _graph(args, strict=False)
    specs = parse_classes(args.classes)
    res = solve(g, specs, args.budget, seed=args.seed, workers=args.workers)
    if res.feasible and args.out:
        write_partition(args.out, res.partition)
    if args.json:
        _emit(res.to_json())
    else:
        print(res.outcome.value)
        if res.feasible and not args.out:
            sys.stdout.write(format_partition(res.partition))
    return EXIT_OK if res.feasible else EXIT_NO


def cmd_construct(args) -> int:
    g, e = _graph(args)
    try:
        p, trace = construct(g, e, budget=args.budget or 5_000_000)
    except Unpartitionable as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_NO
    if args.out:
        write_partition(args.out, p)
    if args.trace:
        Path(args.trace).write_text(json.dumps(trace.to_json(), indent=2, sort_keys=True) + "\n")
    if args.json:
        _emit({"partition": {str(v): x for v, x in p.assignment.items()}, "trace": trace.to_json()})
    else:
        if not args.out:
            sys.stdout.write(format_partition(p))
        for ev in trace.events:
            print(f"# {ev}", file=sys.stderr)
    extension_fallbacks = sum(1 for s in trace.steps if s.fallback and s.kind != "base")
    return EXIT_EVENT if extension_fallbacks else EXIT_OK


def cmd_audit(args) -> int:
    g, e = _graph(args)
    rep = audit(g, e)
    if args.json:
        _emit({**rep.summary(), "rows": [
            {"element": f"{r.element[0]}{r.element[1]}", "degree": r.degree, "case": r.case,
             "mu": r.mu, "mu_star": r.mu_star, "nearest": r.nearest}
            for r in rep.rows
        ], "denominator": 12})
    else:
        sys.stdout.write(rep.tsv())
        total = rep.total_final / 12
        print(f"sum = {total:g}" if rep.total_initial == rep.total_final else
              f"sum mu = {rep.total_initial}/12, sum mu* = {rep.total_final}/12")
        print(f"negative = {len(rep.negatives)}")
    return EXIT_OK if rep.conserved else EXIT_EVENT


def cmd_stats(args) -> int:
    g, e = _graph(args)
    rows = stats_rows(g, e)
    if args.json:
        head = rows[0]
        _emit({"rows": [dict(zip(head, r)) for r in rows[1:]]})
    else:
        for r in rows:
            print("\t".join(r))
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.corpus:
        out = Path(args.corpus)
        out.mkdir(parents=True, exist_ok=True)
        entries = []
        for i, fam in enumerate(default_corpus(args.random_count)):
            g, e = gen(fam)
            name = f"{i:04d}-{fam.label}.pge"
            write_pge(out / name, e)
            entries.append({"id": i, "family": fam.name, "label": fam.label, "seed": fam.seed,
                            "n": g.n, "m": g.m, "file": name})
        write_manifest(out / "manifest.json", entries)
        print(f"wrote {len(entries)} graphs to {out}")
        return EXIT_OK
    fam = Family(_need(args, "family"), n=args.n, seed=args.seed, base=args.base)
    try:
        _, e = gen(fam)
    except BadParameter as exc:
        raise UsageError(str(exc)) from exc
    if args.out:
        write_pge(args.out, e)
    else:
        sys.stdout.write(f"# {fam.label}\n" + format_pge(e))
    return EXIT_OK


def cmd_suite(args) -> int:
    numbers = None
    if args.criteria:
        try:
            numbers = sorted({int(x) for x in args.criteria.split(",")})
        except ValueError as exc:
            raise UsageError(f"bad --criteria {args.criteria!r}") from exc
        unknown = [x for x in numbers if x not in suite_mod.CRITERIA]
        if unknown:
            raise UsageError(f"unknown criteria {unknown}")
    ctx = suite_mod.Context(seed=args.seed or 0, random_count=args.random_count)
    results = suite_mod.run(numbers, ctx)
    if args.json:
        _emit({"results": [r.to_json() for r in results]})
    else:
        sys.stdout.write(suite_mod.table(results))
    if any(r.error is not None for r in results):
        return EXIT_EVENT
    return EXIT_OK if all(r.passed for r in results) else EXIT_NO


COMMANDS = {
    "verify": cmd_verify,
    "solve": cmd_solve,
    "construct": cmd_construct,
    "audit": cmd_audit,
    "stats": cmd_stats,
    "gen": cmd_gen,
    "suite": cmd_suite,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="embedded graph in PGE format")
    common.add_argument("--partition", help="partition file, one 'vertex part' per line")
    common.add_argument("--classes", default="F2,F", help="comma list of F<d>, D<d>, I, F (default F2,F)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--budget", type=int, default=None, help="search-node budget")
    common.add_argument("--json", action="store_true", help="JSON report instead of text")
    common.add_argument("--out", help="write the main result (partition or PGE) here")

    parser = argparse.ArgumentParser(prog="f2fpart", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "solve":
            p.add_argument("--workers", type=int, default=1)
        if name == "construct":
            p.add_argument("--trace", help="write the JSON extension trace here")
        if name == "gen":
            p.add_argument("--family", help="cycle, tree, dodecahedron, double_subdivision, random_class")
            p.add_argument("--n", type=int)
            p.add_argument("--base", help="K4 or C<n> for double_subdivision")
            p.add_argument("--corpus", help="write the whole default corpus and a manifest to this directory")
        if name in ("gen", "suite"):
            p.add_argument("--random-count", type=int, default=470)
        if name == "suite":
            p.add_argument("--criteria", help="comma list of criterion numbers (default all)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.ERROR, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ParseError, ValueError, OSError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"{parser.prog} {args.command}: internal assertion failed: {exc}", file=sys.stderr)
        return EXIT_EVENT


if __name__ == "__main__":
    sys.exit(main())
