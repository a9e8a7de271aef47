"""Command-line front end.

Exit status: 0 on success (conjecture mismatches included), 1 when a
theorem check fails, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from pathlib import Path

from . import orbits
from .config import CapExceeded
from .fs import fs_components, render_components
from .graph import Graph, GraphError, complement, from_edge_list, from_prufer, make_generator, parse_edge_file
from .labeling import LabelingError, parse_labeling, parse_operator
from .orientation import AcyclicOrientation, double_flip_classes, flip_classes, nu

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class SpecError(ValueError):
    pass


_FAMILY = re.compile(r"^(path|cycle|star|complete|empty):(\d+)$")


def parse_graph_spec(text: str) -> Graph:
    """``path:N | cycle:N | star:N | complete:N | prufer:a,b,... | edges:N;u-v,... | file:PATH``"""
    raw = text.strip()
    m = _FAMILY.match(raw)
    if m:
        g = make_generator(m.group(1), int(m.group(2)))
        return g
    head, sep, body = raw.partition(":")
    if not sep:
        raise SpecError(f"graph spec {raw!r}: expected 'kind:args' (error at position {len(raw)})")
    offset = len(head) + 1
    if head == "prufer":
        seq = []
        if body.strip():
            pos = offset
            for item in body.split(","):
                if not item.strip().isdigit():
                    raise SpecError(f"graph spec {raw!r}: bad Prüfer entry {item!r} at position {pos}")
                seq.append(int(item))
                pos += len(item) + 1
        g = from_prufer(seq)
        return Graph(g.n, g.edges, raw)
    if head == "edges":
        nstr, semi, rest = body.partition(";")
        if not nstr.strip().isdigit():
            raise SpecError(f"graph spec {raw!r}: expected vertex count at position {offset}")
        n = int(nstr)
        pairs = []
        pos = offset + len(nstr) + 1
        if rest.strip():
            for item in rest.split(","):
                mm = re.fullmatch(r"\s*(\d+)\s*-\s*(\d+)\s*", item)
                if not mm:
                    raise SpecError(f"graph spec {raw!r}: bad edge {item!r} at position {pos}")
                pairs.append((int(mm.group(1)), int(mm.group(2))))
                pos += len(item) + 1
        return from_edge_list(n, pairs, raw)
    if head == "file":
        path = Path(body)
        try:
            text = path.read_text()
        except OSError as exc:
            raise SpecError(f"cannot read {path}: {exc}") from None
        g = parse_edge_file(text)
        return Graph(g.n, g.edges, raw)
    m = re.match(r"^(path|cycle|star|complete|empty):", raw)
    if m:
        raise SpecError(f"graph spec {raw!r}: expected a vertex count at position {m.end()}")
    raise SpecError(f"graph spec {raw!r}: unknown kind {head!r} at position 0")


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _threads(args) -> int:
    return args.threads if args.threads else (os.cpu_count() or 1)


def _graph_and_op(args):
    g = parse_graph_spec(args.graph)
    if args.max_n is not None and g.n > args.max_n:
        raise CapExceeded(f"graph has {g.n} vertices, above --max-n {args.max_n}")
    op = parse_operator(args.op, g.n) if getattr(args, "op", None) else None
    return g, op


def cmd_step(args) -> int:
    g, op = _graph_and_op(args)
    if not args.labeling:
        raise SpecError("step needs --labeling")
    sigma = parse_labeling(args.labeling, g.n)
    seq = [sigma]
    for _ in range(args.steps):
        seq.append(op.apply(g, seq[-1]))
    if args.format == "json":
        _emit(args, _dump({"graph": str(g), "operator": str(op), "labeling": sigma.word(),
                           "steps": args.steps, "result": seq[-1].word(),
                           "trace": [s.word() for s in seq]}))
    else:
        _emit(args, seq[-1].word() + "\n")
    return EXIT_OK


def cmd_orbit(args) -> int:
    g, op = _graph_and_op(args)
    if not args.labeling:
        raise SpecError("orbit needs --labeling")
    sigma = parse_labeling(args.labeling, g.n)
    orb = orbits.orbit(g, op, sigma)
    words = [s.word() for s in orb]
    if args.format == "json":
        _emit(args, _dump({"graph": str(g), "operator": str(op), "labeling": sigma.word(),
                           "size": len(orb), "orbit": words}))
    else:
        _emit(args, "\n".join(words) + f"\nsize {len(orb)}\n")
    return EXIT_OK


def _census_text(rep) -> str:
    lines = [f"graph     {rep.graph}", f"operator  {rep.operator}", f"labelings {rep.labelings}",
             f"order     {rep.order}", "size  count"]
    lines += [f"{k:>4}  {v}" for k, v in sorted(rep.orbit_sizes.items())]
    lines += [f"[{'PASS' if v.passed else 'FAIL'}] {v.name}" for v in rep.verdicts]
    return "\n".join(lines) + "\n"


def cmd_census(args) -> int:
    g, op = _graph_and_op(args)
    rep = orbits.census(g, op, _threads(args), seed=args.seed)
    if args.format == "json":
        _emit(args, _dump(rep.as_dict()))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["size", "count"])
        for k, v in sorted(rep.orbit_sizes.items()):
            w.writerow([k, v])
        _emit(args, buf.getvalue())
    else:
        _emit(args, _census_text(rep))
    return EXIT_OK if all(v.passed for v in rep.verdicts) else EXIT_FAIL


def cmd_order(args) -> int:
    g, op = _graph_and_op(args)
    rep = orbits.census(g, op, _threads(args), seed=args.seed)
    if args.format == "json":
        _emit(args, _dump(rep.as_dict()))
    else:
        _emit(args, f"{rep.order}\n")
    return EXIT_OK if all(v.passed for v in rep.verdicts) else EXIT_FAIL


def _classes(args, kind: str) -> int:
    g = parse_graph_spec(args.graph)
    part = flip_classes(g) if kind == "flip" else double_flip_classes(g)
    blocks = [[AcyclicOrientation(g, b).render() for b in block] for block in part.classes]
    if args.format == "json":
        _emit(args, _dump({"graph": str(g), "kind": part.kind, "nu": nu(g),
                           "classes": blocks, "count": len(blocks)}))
    else:
        out = [f"{len(blocks)} {part.kind} classes (nu = {nu(g)})"]
        for k, block in enumerate(blocks):
            out.append(f"class {k} ({len(block)}):")
            out += [f"  {b}" for b in block]
        _emit(args, "\n".join(out) + "\n")
    return EXIT_OK


def cmd_fs(args) -> int:
    g = parse_graph_spec(args.graph)
    blocks = render_components(fs_components(complement(g), make_generator("cycle", g.n)))
    if args.format == "json":
        _emit(args, _dump({"graph": str(g), "x": "complement", "y": f"cycle:{g.n}",
                           "count": len(blocks), "components": blocks}))
    else:
        out = [f"{len(blocks)} components of FS(complement({g}), cycle:{g.n})"]
        out += [" ".join(b) for b in blocks]
        _emit(args, "\n".join(out) + "\n")
    return EXIT_OK


def _verify_text(rep) -> str:
    lines = [f"suite {rep.suite}"]
    for c in rep.checks:
        line = f"[{'PASS' if c.passed else 'FAIL'}] {c.name} ({c.checked} checked)"
        if c.counterexample:
            line += f" counterexample: {c.counterexample}"
        lines.append(line)
    for r in rep.rows:
        lines.append(f"  n={r['n']} h={r['h']} order={r['order']} expected={r['expected']} "
                     f"{'match' if r['match'] else 'MISMATCH'}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    threads = _threads(args)
    suite = args.suite
    if suite == "trees":
        n_max = args.max_n if args.max_n is not None else 7
        scope = orbits.VerificationScope("trees", args.min_n or 2, n_max, exhaustive_max_n=args.exhaustive_max_n,
                                         sampled_graphs=args.samples, seed=args.seed,
                                         labelings_per_graph=args.labelings)
        a = orbits.verify_forest_theorem(scope, threads)
        b = orbits.verify_cpro_order(scope, threads)
        rep = orbits.VerificationReport("trees", a.scope, a.checks + b.checks)
    elif suite == "forests":
        scope = orbits.VerificationScope("forests", args.min_n or 2, args.max_n or 5,
                                         exhaustive_max_n=args.exhaustive_max_n, sampled_graphs=args.samples,
                                         seed=args.seed, labelings_per_graph=args.labelings)
        rep = orbits.verify_forest_theorem(scope, threads)
    elif suite == "lemmas":
        rep = orbits.verify_lemmas(n_exhaustive=args.max_n or 5, seed=args.seed)
    elif suite == "fs":
        rep = orbits.verify_fs(n_max=args.max_n or 5, n_min=args.min_n or 2)
    elif suite == "zeta":
        rep = orbits.zeta_table(args.min_n or 4, args.max_n or 8, threads)
    else:  # argparse restricts the choices
        raise SpecError(f"unknown suite {suite!r}")
    d = rep.as_dict()
    d["seed"] = args.seed
    if args.format == "json":
        _emit(args, _dump(d))
    else:
        _emit(args, _verify_text(rep))
    if rep.findings_only:
        return EXIT_OK
    return EXIT_OK if rep.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toricpro", description="Toric promotion and friends on graph labelings.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--threads", type=int, default=0, help="worker threads (default: all cores)")
    common.add_argument("--seed", type=int, default=orbits.DEFAULT_SEED)
    common.add_argument("--max-n", type=int, default=None)
    common.add_argument("--out", default=None, help="write the report to FILE")
    sub = p.add_subparsers(dest="verb", required=True)

    def graph_cmd(name, func, need_op=False, help=None):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.add_argument("--graph", required=True)
        if need_op:
            sp.add_argument("--op", required=True)
        sp.set_defaults(func=func)
        return sp

    sp = graph_cmd("step", cmd_step, True, "apply an operator to a labeling")
    sp.add_argument("--labeling")
    sp.add_argument("--steps", type=int, default=1)
    sp = graph_cmd("orbit", cmd_orbit, True, "list the orbit of a labeling")
    sp.add_argument("--labeling")
    graph_cmd("census", cmd_census, True, "orbit sizes over all labelings")
    graph_cmd("order", cmd_order, True, "order of an operator")
    graph_cmd("flip-classes", lambda a: _classes(a, "flip"), help="flip equivalence classes")
    graph_cmd("double-flip-classes", lambda a: _classes(a, "double-flip"), help="double-flip equivalence classes")
    graph_cmd("fs-components", cmd_fs, help="components of FS(complement(G), Cycle_n)")
    sp = sub.add_parser("verify", parents=[common], help="run a verification suite")
    sp.add_argument("suite", choices=["trees", "forests", "lemmas", "fs", "zeta"])
    sp.add_argument("--min-n", type=int, default=None)
    sp.add_argument("--exhaustive-max-n", type=int, default=6)
    sp.add_argument("--samples", type=int, default=200, help="random graphs per n above the exhaustive range")
    sp.add_argument("--labelings", type=int, default=None, help="sample this many labelings per graph")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except (SpecError, GraphError, LabelingError, CapExceeded) as exc:
        print(f"toricpro: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
