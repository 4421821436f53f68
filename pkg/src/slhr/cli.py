"""Command line interface: ``slhr <command> ...``.

Exit codes: 0 success, 1 domain error, 2 usage error (bad arguments or
unreadable files).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .derivation import MAX_VERTICES, expand
from .errors import SLHRError
from .families import FAMILIES, gen_family, random_grammar
from .grammar import validate
from .tableau import precompute_store
from .textio import parse_grammar, parse_script, serialize_grammar, serialize_graph
from .traverse_table import precompute_traverse
from .walks import ENGINES, NaiveEngine, OracleEngine, TableauEngine, live_starts, random_walk, run_script


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str, strict: bool = True):
    return validate(parse_grammar(_read(path)), strict=strict)


def _engine(name, vg, tt, max_vertices=MAX_VERTICES):
    if name == "tableau":
        return TableauEngine(precompute_store(vg, tt))
    if name == "naive":
        return NaiveEngine(vg, tt)
    return OracleEngine(expand(vg, max_vertices=max_vertices))


def cmd_validate(args, out) -> int:
    vg = _load(args.file, strict=not args.relaxed)
    tt = precompute_traverse(vg)
    for w in vg.warnings:
        print(f"warning: {w}", file=sys.stderr)
    s = vg.stats
    print(f"ok kappa={s.kappa} height={s.height} r={s.r} rules={s.n_rules} size={s.size} entries={len(tt)}", file=out)
    return 0


def cmd_expand(args, out) -> int:
    vg = _load(args.file)
    out.write(serialize_graph(expand(vg, max_vertices=args.max_vertices)))
    return 0


def cmd_traverse(args, out) -> int:
    vg = _load(args.file)
    start, steps = parse_script(_read(args.script), vg)
    tt = precompute_traverse(vg)
    engine = _engine(args.engine, vg, tt)
    print(engine.start(start), file=out)
    for move in steps:
        print(engine.step(*move), file=out)
    engine.close()
    return 0


def cmd_bench(args, out) -> int:
    vg = _load(args.file)
    tt = precompute_traverse(vg)
    starts = live_starts(vg, tt)
    script, _, restarts = random_walk(NaiveEngine(vg, tt), args.steps, args.seed, starts)
    n_steps = sum(1 for op in script if op[0] == "step")
    print(f"steps={n_steps} restarts={restarts} seed={args.seed}", file=out)
    for name in args.engines:
        engine = _engine(name, vg, tt)
        t0 = time.perf_counter_ns()
        run_script(engine, script)
        elapsed = time.perf_counter_ns() - t0
        engine.close()
        mean_ns = elapsed / max(len(script), 1)
        if name == "oracle":
            ops = "n/a"
            peak = "n/a"
        else:
            ops = f"{engine.ops / max(n_steps, 1):.3f}"
            peak = str(engine.max_ops)
        print(f"{name:8s} mean_ns_per_step={mean_ns:.0f} mean_ops_per_step={ops} max_ops_per_step={peak}", file=out)
    return 0


def cmd_stats(args, out) -> int:
    vg = _load(args.file)
    tt = precompute_traverse(vg)
    store = precompute_store(vg, tt)
    s = vg.stats
    for key, value in (
        ("kappa", s.kappa),
        ("height", s.height),
        ("r", s.r),
        ("rules", s.n_rules),
        ("size", s.size),
        ("traverse_entries", len(tt)),
        ("tableaux", len(store)),
        ("total_cells", store.total_cells()),
        ("build_ops", store.build_ops),
    ):
        print(f"{key} {value}", file=out)
    return 0


def cmd_gen(args, out) -> int:
    if args.family == "random":
        out.write(serialize_grammar(random_grammar(args.n)))
    else:
        if args.n < 1:
            raise UsageError("N must be at least 1")
        out.write(gen_family(args.family, args.n))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slhr", description="Straight-line HR grammar toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check a grammar and print its statistics")
    v.add_argument("file")
    mode = v.add_mutually_exclusive_group()
    mode.add_argument("--strict", action="store_true", help="unreachable nonterminals are errors (default)")
    mode.add_argument("--relaxed", action="store_true", help="unreachable nonterminals are warnings")
    v.set_defaults(func=cmd_validate)

    e = sub.add_parser("expand", help="print the represented graph")
    e.add_argument("file")
    e.add_argument("--max-vertices", type=int, default=MAX_VERTICES)
    e.set_defaults(func=cmd_expand)

    t = sub.add_parser("traverse", help="run a traversal script")
    t.add_argument("file")
    t.add_argument("--script", required=True)
    t.add_argument("--engine", choices=ENGINES, default="tableau")
    t.set_defaults(func=cmd_traverse)

    b = sub.add_parser("bench", help="time a seeded random walk on each engine")
    b.add_argument("file")
    b.add_argument("--steps", type=int, default=10_000)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--engines", nargs="+", choices=ENGINES, default=list(ENGINES))
    b.set_defaults(func=cmd_bench)

    s = sub.add_parser("stats", help="grammar and precomputation statistics")
    s.add_argument("file")
    s.set_defaults(func=cmd_stats)

    g = sub.add_parser("gen", help="print a generated grammar")
    g.add_argument("family", choices=FAMILIES + ("random",))
    g.add_argument("n", type=int, help="family parameter (seed for 'random')")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"slhr: {exc}", file=sys.stderr)
        return 2
    except SLHRError as exc:
        print(f"slhr: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


run_cli = main
