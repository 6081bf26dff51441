"""Command-line surface.

Exit codes: 0 success / verification pass, 1 verification failure,
2 input or usage error. All output is deterministic for a fixed
(input, seed, precision); the PROXIDRAW_PRECISION environment variable
supplies a default precision override.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional

from . import construct, formats, generate, render, verify
from .treemodel import root_at

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _precision(args) -> Optional[int]:
    if getattr(args, "precision", None) is not None:
        return args.precision
    env = os.environ.get("PROXIDRAW_PRECISION")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"PROXIDRAW_PRECISION must be an integer, got {env!r}")
    return None


def _load_instance(path: str) -> formats.Instance:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}")
    return formats.parse_instance(data)


def _require_dec(inst: formats.Instance, kind: str, mode: str, bound: int):
    if inst.dec is None:
        raise InputError(f"instance has no decomposition; need a {mode} {kind}")
    if inst.dec.kind != kind or inst.mode != mode:
        raise InputError(
            f"decomposition is a {inst.mode} {inst.dec.kind}; "
            f"this algorithm needs a {mode} {kind}")
    if inst.bound is not None and inst.bound > bound:
        raise InputError(f"decomposition bound {inst.bound} exceeds {bound}")
    return inst.dec


def cmd_draw(args) -> int:
    inst = _load_instance(args.infile)
    precision = _precision(args)
    algo = args.algo
    if algo == "deg5":
        d = construct.draw_degree5(inst.tree, root=inst.root, precision=precision)
    elif algo == "part5":
        dec = _require_dec(inst, "partition", "degree", 5)
        d = construct.draw_deg5_partition(inst.tree, dec, start=inst.root,
                                          precision=precision)
    elif algo in ("part4", "part3"):
        bound = 4 if algo == "part4" else 3
        dec = _require_dec(inst, "partition", "outdegree", bound)
        if inst.root is None:
            raise InputError("outdegree partitions need a root")
        rooted = root_at(inst.tree, inst.root)
        fn = (construct.draw_outdeg4_partition if algo == "part4"
              else construct.draw_outdeg3_partition)
        d = fn(rooted, dec, precision=precision)
    elif algo == "cover2":
        dec = _require_dec(inst, "covering", "degree", 5)
        if len(dec.parts) != 2:
            raise InputError(f"cover2 needs exactly 2 parts, got {len(dec.parts)}")
        d = construct.draw_two_covering(inst.tree, dec.parts[0], dec.parts[1],
                                        precision=precision)
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown algorithm {algo!r}")
    data = formats.emit_drawing(d, inst, seed=args.seed)
    Path(args.outfile).write_bytes(data)
    return EXIT_OK


def _verification_report(d: construct.Drawing, inst: formats.Instance) -> dict:
    report: dict = {"construction": d.construction, "parts": [], "passed": True}
    if inst.dec is not None:
        parts = [verify.subtree_of_part(inst.tree, p) for p in inst.dec.parts]
    else:
        parts = [verify.whole_tree(inst.tree)]
    for i, part in enumerate(parts):
        rng_rep = verify.check_rng_drawing(d, part)
        mst_rep = verify.check_mst_drawing(d, part)
        entry = {
            "part": i,
            "rng": {"passed": rng_rep.passed,
                    "missing": [list(e) for e in rng_rep.missing],
                    "extra": [list(e) for e in rng_rep.extra],
                    "blockers": {f"{u},{v}": c
                                 for (u, v), c in sorted(rng_rep.blockers.items())},
                    "warnings": list(rng_rep.warnings)},
            "mst": {"passed": mst_rep.passed,
                    "drawn_length": mst_rep.drawn_length,
                    "mst_length": mst_rep.mst_length,
                    "edge_mismatch": [list(e) for e in mst_rep.edge_mismatch],
                    "tie_warnings": list(mst_rep.tie_warnings)},
        }
        report["parts"].append(entry)
        report["passed"] &= rng_rep.passed and mst_rep.passed
    if d.construction in ("deg5", "part4", "part3", "cover2"):
        cr = verify.check_noncrossing(d)
        report["noncrossing"] = {
            "passed": cr.passed,
            "crossings": [[list(a), list(b)] for a, b in cr.crossings]}
        report["passed"] &= cr.passed
    report["passed"] = bool(report["passed"])
    return report


def cmd_verify(args) -> int:
    try:
        data = Path(args.drawing).read_bytes()
    except OSError as e:
        raise InputError(f"cannot read {args.drawing}: {e.strerror}")
    base = Path(args.drawing).parent

    def load_ref(ref: str) -> bytes:
        return (base / ref).read_bytes()

    d, inst = formats.parse_drawing(data, load_ref)
    if args.against_instance:
        inst = _load_instance(args.against_instance)
        if set(inst.tree.vertices) != set(d.tree.vertices):
            raise InputError("instance vertices do not match the drawing")
    report = _verification_report(d, inst)
    out = (json.dumps(report, indent=2) + "\n").encode()
    if args.report:
        Path(args.report).write_bytes(out)
    else:
        sys.stdout.write(out.decode())
    return EXIT_OK if report["passed"] else EXIT_VERIFY


def cmd_render(args) -> int:
    try:
        data = Path(args.drawing).read_bytes()
    except OSError as e:
        raise InputError(f"cannot read {args.drawing}: {e.strerror}")
    base = Path(args.drawing).parent
    d, inst = formats.parse_drawing(data, lambda ref: (base / ref).read_bytes())
    overlay = None
    if args.overlay_lens:
        bits_ = args.overlay_lens.split(",")
        if len(bits_) != 2:
            raise InputError("--overlay-lens expects 'u,v'")
        overlay = (bits_[0], bits_[1])
    try:
        svg = render.render_svg(d, inst, overlay_lens=overlay)
    except KeyError as e:
        raise InputError(str(e))
    Path(args.svg).write_bytes(svg)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "partition":
        if args.mode == "outdegree" and args.bound not in (3, 4):
            raise InputError("outdegree partitions support bound 3 or 4")
        inst = generate.gen_partition_instance(
            args.seed, args.n, args.bound, args.mode, k=args.k,
            max_out=args.max_out)
    elif args.kind == "covering":
        inst = generate.gen_covering_instance(args.seed, args.n, args.bound)
    elif args.kind == "tree":
        inst = generate.gen_degree5_tree(args.seed, args.n)
    elif args.kind == "sixstar":
        inst = generate.six_star_instance()
    else:  # pragma: no cover
        raise InputError(f"unknown kind {args.kind!r}")
    Path(args.outfile).write_bytes(formats.emit_instance(inst))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="proxidraw",
        description="Draw trees so that decomposition parts are RNGs/MSTs "
                    "of their own vertex sets; verify and render drawings.")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("draw", help="run a construction on an instance file")
    d.add_argument("--algo", required=True,
                   choices=["deg5", "part5", "part4", "part3", "cover2"])
    d.add_argument("--in", dest="infile", required=True)
    d.add_argument("--out", dest="outfile", required=True)
    d.add_argument("--precision", type=int)
    d.add_argument("--seed", type=int)
    d.set_defaults(fn=cmd_draw)

    v = sub.add_parser("verify", help="verify a drawing file")
    v.add_argument("--drawing", required=True)
    v.add_argument("--against-instance")
    v.add_argument("--report")
    v.set_defaults(fn=cmd_verify)

    r = sub.add_parser("render", help="render a drawing to SVG")
    r.add_argument("--drawing", required=True)
    r.add_argument("--svg", required=True)
    r.add_argument("--overlay-lens", metavar="u,v")
    r.set_defaults(fn=cmd_render)

    g = sub.add_parser("gen", help="generate a random instance")
    g.add_argument("kind", choices=["partition", "covering", "tree", "sixstar"])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--n", type=int, default=20)
    g.add_argument("--bound", type=int, default=4)
    g.add_argument("--mode", choices=["degree", "outdegree"], default="outdegree")
    g.add_argument("--k", type=int)
    g.add_argument("--max-out", dest="max_out", type=int)
    g.add_argument("--out", dest="outfile", required=True)
    g.set_defaults(fn=cmd_gen)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except (InputError, formats.SchemaError, construct.ConstructionError,
            ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
