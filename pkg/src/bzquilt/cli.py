"""Command-line interface.  Every subcommand prints one JSON document."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bzdiagram import boundary_weights, build_diagram, BZWeighting, triangle_cone
from .gtpattern import hilbert_function_compare, ideal_equality_check
from .lattice import ResourceLimitError, hilbert_basis
from .liealg import invariant_dim, parse_weights
from .presentation import generators, p_face_generators, verify_presentation
from .quilt import boundary_map, build_quilt, fiber_count
from .tree import TreeError, caterpillar, parse_tree

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _weighting_json(w) -> dict:
    return {
        "boundary": [list(b) for b in boundary_map(w)],
        "values": w.to_json()["values"],
    }


def _tree(args):
    if args.tree is None:
        raise UsageError("--tree is required")
    return parse_tree(args.tree)


def _tree_or_caterpillar(args):
    if args.tree is not None:
        return parse_tree(args.tree)
    if args.n is not None:
        return caterpillar(args.n)
    raise UsageError("give --tree or --n")


def cmd_generators(args):
    t = _tree(args)
    gens = generators(t)
    out = {
        "tree": build_quilt(t, 3).tree.render(),
        "count": len(gens),
        "generators": [
            {"leaves": list(g.leaf_set), "variant": g.variant, **_weighting_json(g.weighting)}
            for g in gens
        ],
    }
    return out, EXIT_OK


def cmd_hilbert(args):
    t = _tree(args)
    q = build_quilt(t, args.m)
    bound = args.degree_bound if args.degree_bound is not None else t.n
    hb = hilbert_basis(q.cone, bound)
    elements = [_weighting_json(q.weighting(x)) for x in hb.elements]
    out = {
        "tree": q.tree.render(),
        "m": args.m,
        "degree_bound": bound,
        "complete": hb.complete,
        "certified_to": hb.certified_to,
        "count": len(elements),
        "elements": elements,
    }
    return out, EXIT_OK


def cmd_multiplicity(args):
    t = _tree(args)
    if args.weights is None:
        raise UsageError("--weights is required")
    ws = parse_weights(args.weights)
    if len(ws) != t.n:
        raise UsageError(f"tree has {t.n} leaves but {len(ws)} weights were given")
    count = fiber_count(t, ws)
    try:
        oracle = invariant_dim(ws)
    except ValueError:
        oracle = None
    agree = oracle is None or oracle == count
    out = {
        "tree": build_quilt(t, len(ws[0]) + 1).tree.render(),
        "weights": [list(w) for w in ws],
        "count": count,
        "oracle": oracle,
        "agree": agree,
    }
    return out, EXIT_OK if agree else EXIT_FAIL


def cmd_verify(args):
    t = _tree(args)
    bound = args.degree_bound if args.degree_bound is not None else 3
    if bound < 3:
        raise UsageError("--degree-bound must be at least 3")
    report = verify_presentation(
        t, bound, swaps="swaps" not in args.without, cubics="cubics" not in args.without,
        threads=args.threads,
    )
    return report, EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_pface(args):
    t = _tree_or_caterpillar(args)
    face = p_face_generators(t)
    out = {
        "tree": build_quilt(t, 3).tree.render(),
        "count": len(face),
        "generators": [{"leaves": list(g.leaf_set), **_weighting_json(g.weighting)} for g in face],
    }
    return out, EXIT_OK


def cmd_gt_compare(args):
    if args.n is None:
        raise UsageError("--n is required")
    if args.n < 4:
        raise UsageError("--n must be at least 4")
    bound = args.degree_bound if args.degree_bound is not None else 2
    if bound < 2:
        raise UsageError("--degree-bound must be at least 2")
    hf = hilbert_function_compare(args.n, bound)
    ideal = ideal_equality_check(args.n, bound)
    ok = hf["passed"] and ideal["passed"]
    return {"n": args.n, "degree_bound": bound, "hilbert_function": hf, "ideal": ideal, "passed": ok}, (
        EXIT_OK if ok else EXIT_FAIL
    )


def cmd_counterexample(args):
    m = args.m
    if m < 3:
        raise UsageError("--m must be at least 3")
    cap = args.degree_bound if args.degree_bound is not None else 6
    d = build_diagram(m)
    rank = m - 1
    fundamental = {tuple(int(k == i) for k in range(rank)) for i in range(rank)} | {(0,) * rank}
    found = None
    bound = 0
    for bound in range(1, cap + 1):
        hb = hilbert_basis(triangle_cone(m), bound, certify=False)
        for x in hb.elements:
            bw = boundary_weights(BZWeighting(d, x))
            if any(b not in fundamental for b in bw):
                found = {
                    "boundary": [list(b) for b in bw],
                    "values": {vid: v for vid, v in zip(d.vertex_ids, x) if v},
                }
                break
        if found:
            break
    out = {"m": m, "degree_searched": bound, "found": found is not None, "generator": found}
    return out, EXIT_OK if found else EXIT_FAIL


COMMANDS = {
    "generators": cmd_generators,
    "hilbert": cmd_hilbert,
    "multiplicity": cmd_multiplicity,
    "verify-presentation": cmd_verify,
    "pface": cmd_pface,
    "gt-compare": cmd_gt_compare,
    "counterexample": cmd_counterexample,
}


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tree", help='tree expression, e.g. "((1,2),(3,4))"')
    common.add_argument("--m", type=int, default=3, help="rank plus one of sl_m (default 3)")
    common.add_argument("--weights", help='leaf weights, e.g. "1,0;1,0;1,0"')
    common.add_argument("--degree-bound", type=int)
    common.add_argument("--n", type=int, help="leaf count (caterpillar / GT size)")
    common.add_argument("--threads", type=_positive, default=os.cpu_count() or 1)
    common.add_argument("--json-indent", type=int, default=None)
    common.add_argument("--output", help="also write the JSON to this file")
    common.add_argument("--without", action="append", default=[], choices=["swaps", "cubics"],
                        help="withhold a relation family (verify-presentation)")
    p = argparse.ArgumentParser(prog="bzquilt", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        out, code = COMMANDS[args.command](args)
    except (UsageError, TreeError, ValueError) as exc:
        print(f"bzquilt {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"bzquilt {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = json.dumps(out, indent=args.json_indent, sort_keys=True)
    print(text, file=stdout)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
