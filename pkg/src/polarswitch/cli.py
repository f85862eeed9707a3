"""Command line front end.

Subcommands:

* build     construct a collinearity graph and write it out
* switch    apply a switch-assignment file to its base graph
* check     verify strong regularity of a graph6 file
* spectrum  triangle common-neighbour histogram of a graph6 file
* compare   certify two graph6 files non-isomorphic via that histogram
* gamma1    end-to-end: base graph, a switch, and the certificate

Exit codes: 0 success, 2 a verification failed, 3 the comparison was
inconclusive, 4 bad input (files, arguments, guards).

All outputs are deterministic: JSON is written with sorted keys and no
timestamps, so rerunning a command reproduces its files byte for byte.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__, kernels, noniso
from .errors import MalformedInput, NotSrg, PolarSwitchError, SpectraEqual
from .graph import Graph, dimacs_write, graph6_read, graph6_write
from .linalg import Subspace
from .polar import PolarKind, polar_create
from .switching import (
    SwitchFrame,
    build_switched_graph,
    read_spec_file,
    sigma_random,
    spec_to_text,
    write_spec_file,
)

_KINDS = [k.value for k in PolarKind]


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; this tool reserves 2 for failed
    verification, so usage errors leave with 4 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(4, f"{self.prog}: error: {message}\n")


def _say(msg):
    print(msg)


def _warn(msg):
    print(msg, file=sys.stderr)


def _write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _write_json(path, obj):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _read_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return graph6_read(fh.read())


def _graph_text(g: Graph, fmt: str) -> str:
    if fmt == "dimacs":
        return dimacs_write(g)
    return graph6_write(g) + "\n"


def _spectrum_pairs(spectrum):
    return [[int(v), int(c)] for v, c in spectrum.counts]


def _tool_stamp():
    return {"name": "polarswitch", "version": __version__}


# ── build ──────────────────────────────────────────────────────────────


def _cmd_build(args) -> int:
    space = polar_create(args.kind, args.d, args.q)
    g = space.collinearity_graph()
    params = space.srg_params() if space.d >= 2 else None
    _write_text(args.out, _graph_text(g, args.format))
    _write_json(args.out + ".json", {
        "command": "build",
        "kind": space.kind.value,
        "q": space.q,
        "d": space.d,
        "name": space.name,
        "format": args.format,
        "vertices": g.n,
        "edges": g.num_edges(),
        "expected_params": list(params) if params else None,
        "points": [list(p.rep) for p in space.isotropic_points()],
        "tool": _tool_stamp(),
    })
    _say(f"{space.name}: {g.n} vertices, {g.num_edges()} edges -> {args.out}")
    return 0


# ── switch ─────────────────────────────────────────────────────────────


def _cmd_switch(args) -> int:
    spec = read_spec_file(args.spec)
    space = polar_create(spec.kind, spec.d, spec.q)
    base = Subspace.from_vectors(space.field, space.n, spec.l_basis)
    frame = SwitchFrame(space, base)
    g1 = build_switched_graph(frame, spec)
    checked = None
    if args.check:
        checked = g1.srg_check(threads=args.threads)
        want = space.srg_params()
        if tuple(checked) != tuple(want):
            _warn(f"verification failed: switched graph is "
                  f"{tuple(checked)}, expected {tuple(want)}")
            return 2
    _write_text(args.out, _graph_text(g1, args.format))
    _write_json(args.out + ".json", {
        "command": "switch",
        "kind": space.kind.value,
        "q": space.q,
        "d": space.d,
        "name": space.name,
        "base_rows": [list(r) for r in frame.l_subspace.basis],
        "identity": spec.is_identity(),
        "format": args.format,
        "vertices": g1.n,
        "edges": g1.num_edges(),
        "expected_params": list(space.srg_params()),
        "checked_params": list(checked) if checked else None,
        "tool": _tool_stamp(),
    })
    verdict = " (verified)" if checked else ""
    _say(f"switched {space.name}: {g1.n} vertices -> {args.out}{verdict}")
    return 0


# ── check ──────────────────────────────────────────────────────────────


def _parse_expect(text):
    parts = text.split(",")
    if len(parts) != 4:
        raise MalformedInput(f"--expect wants v,k,lambda,mu, got {text!r}")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise MalformedInput(f"--expect wants integers, got {text!r}") from None


def _cmd_check(args) -> int:
    g = _read_graph(args.graph)
    params = g.srg_check(threads=args.threads)   # NotSrg exits with 2
    _say(f"strongly regular: {params}")
    ok = True
    if args.expect is not None:
        want = _parse_expect(args.expect)
        ok = tuple(params) == want
        if not ok:
            _warn(f"verification failed: expected {want}")
    if args.json:
        _write_json(args.json, {
            "command": "check",
            "graph": args.graph,
            "vertices": g.n,
            "params": list(params),
            "expected": list(_parse_expect(args.expect))
            if args.expect is not None else None,
            "ok": ok,
            "tool": _tool_stamp(),
        })
    return 0 if ok else 2


# ── spectrum ───────────────────────────────────────────────────────────


def _cmd_spectrum(args) -> int:
    g = _read_graph(args.graph)
    spectrum = g.triangle_spectrum(threads=args.threads)
    for value, count in spectrum.counts:
        _say(f"{value} {count}")
    if args.json:
        _write_json(args.json, {
            "command": "spectrum",
            "graph": args.graph,
            "vertices": g.n,
            "triangles": spectrum.total(),
            "spectrum": _spectrum_pairs(spectrum),
            "tool": _tool_stamp(),
        })
    return 0


# ── compare ────────────────────────────────────────────────────────────


def _cert_json(cert):
    return {
        "reason": cert.reason,
        "vertices": [cert.n_a, cert.n_b],
        "params": [list(cert.params_a) if cert.params_a else None,
                   list(cert.params_b) if cert.params_b else None],
        "spectra": [_spectrum_pairs(cert.spectrum_a)
                    if cert.spectrum_a else None,
                    _spectrum_pairs(cert.spectrum_b)
                    if cert.spectrum_b else None],
        "value": cert.value,
        "counts": [cert.count_a, cert.count_b],
        "triple": list(cert.triple) if cert.triple else None,
        "triple_side": cert.triple_side,
    }


def _cmd_compare(args) -> int:
    ga = _read_graph(args.graph_a)
    gb = _read_graph(args.graph_b)
    cert = noniso.certify_noniso(ga, gb, threads=args.threads)
    sys.stdout.write(noniso.render_certificate(cert, args.graph_a,
                                               args.graph_b))
    if args.json:
        _write_json(args.json, {
            "command": "compare",
            "graphs": [args.graph_a, args.graph_b],
            "certificate": _cert_json(cert),
            "non_isomorphic": True,
            "tool": _tool_stamp(),
        })
    return 0


# ── gamma1 ─────────────────────────────────────────────────────────────


def _cmd_gamma1(args) -> int:
    space = polar_create(args.kind, args.d, args.q)
    frame = SwitchFrame(space)
    recipe = None
    if args.seed is not None:
        spec = sigma_random(frame, args.seed)
    else:
        recipe = noniso.find_swap_recipe(frame)
        spec = noniso.recipe_to_spec(frame, recipe)
        spec.provenance = (
            f"single swap: block {recipe.block} class {recipe.class_index} "
            f"slots {recipe.slot_a}<->{recipe.slot_b}")
    g0 = frame.graph0
    g1 = build_switched_graph(frame, spec)

    os.makedirs(args.out_dir, exist_ok=True)
    path = lambda name: os.path.join(args.out_dir, name)
    _write_text(path("base.g6"), graph6_write(g0) + "\n")
    _write_text(path("switched.g6"), graph6_write(g1) + "\n")
    write_spec_file(path("spec.txt"), spec)

    want = space.srg_params()
    p0 = g0.srg_check(threads=args.threads)
    p1 = g1.srg_check(threads=args.threads)
    _say(f"{space.name}: base and switched graphs on {g0.n} vertices")
    _say(f"base graph strongly regular: {p0}")
    _say(f"switched graph strongly regular: {p1}")
    if tuple(p0) != tuple(want) or tuple(p1) != tuple(want):
        _warn(f"verification failed: expected {tuple(want)}")
        return 2

    summary = {
        "command": "gamma1",
        "kind": space.kind.value,
        "q": space.q,
        "d": space.d,
        "name": space.name,
        "base_rows": [list(r) for r in frame.l_subspace.basis],
        "params": list(want),
        "seed": args.seed,
        "single_swap": None if recipe is None else {
            "block": recipe.block,
            "class": recipe.class_index,
            "slots": [recipe.slot_a, recipe.slot_b],
            "triple": list(recipe.triple),
            "witness_value": recipe.witness_value,
        },
        "files": ["base.g6", "switched.g6", "spec.txt", "certificate.txt"],
        "tool": _tool_stamp(),
    }
    try:
        cert = noniso.certify_noniso(
            g0, g1, threads=args.threads,
            expected_witness=None if recipe is None else recipe.witness_value,
            hint_triple=None if recipe is None else recipe.triple)
    except SpectraEqual as exc:
        note = f"inconclusive: {exc}\n"
        _write_text(path("certificate.txt"), note)
        summary["certified"] = False
        summary["certificate"] = None
        _write_json(path("summary.json"), summary)
        _warn(note.rstrip())
        return 3
    report = noniso.render_certificate(cert, "base", "switched")
    _write_text(path("certificate.txt"), report)
    summary["certified"] = True
    summary["certificate"] = _cert_json(cert)
    _write_json(path("summary.json"), summary)
    sys.stdout.write(report)
    _say(f"wrote base.g6, switched.g6, spec.txt, certificate.txt, "
         f"summary.json under {args.out_dir}")
    return 0


# ── wiring ─────────────────────────────────────────────────────────────


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polarswitch",
                     description="polar space graphs, hyperplane switching, "
                                 "and non-isomorphism certificates")
    parser.add_argument("--version", action="version",
                        version=f"polarswitch {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads for the heavy scans "
                             "(default: POLARSWITCH_THREADS or 1)")
    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--kind", required=True, choices=_KINDS,
                        help="polar space family")
    family.add_argument("-d", type=int, required=True, help="rank")
    family.add_argument("-q", type=int, required=True, help="field order")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common, family],
                       help="construct a collinearity graph")
    p.add_argument("-o", "--out", required=True, help="output graph file")
    p.add_argument("--format", choices=["graph6", "dimacs"],
                   default="graph6")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("switch", parents=[common],
                       help="apply a switch-assignment file")
    p.add_argument("spec", help="switch assignment (text format)")
    p.add_argument("-o", "--out", required=True, help="output graph file")
    p.add_argument("--format", choices=["graph6", "dimacs"],
                   default="graph6")
    p.add_argument("--check", action="store_true",
                   help="verify strong regularity of the result")
    p.set_defaults(func=_cmd_switch)

    p = sub.add_parser("check", parents=[common],
                       help="verify strong regularity")
    p.add_argument("graph", help="graph6 file")
    p.add_argument("--expect", default=None,
                   help="required parameters as v,k,lambda,mu")
    p.add_argument("--json", default=None, help="write a JSON report here")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("spectrum", parents=[common],
                       help="triangle common-neighbour histogram")
    p.add_argument("graph", help="graph6 file")
    p.add_argument("--json", default=None, help="write a JSON report here")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("compare", parents=[common],
                       help="certify two graphs non-isomorphic")
    p.add_argument("graph_a", help="first graph6 file")
    p.add_argument("graph_b", help="second graph6 file")
    p.add_argument("--json", default=None, help="write a JSON report here")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("gamma1", parents=[common, family],
                       help="build a base graph, switch it, certify the pair")
    p.add_argument("--out-dir", required=True,
                   help="directory for the artifact files")
    p.add_argument("--seed", type=int, default=None,
                   help="use a random assignment with this seed instead "
                        "of the single-swap recipe")
    p.set_defaults(func=_cmd_gamma1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotSrg as exc:
        _warn(f"verification failed: {exc}")
        return 2
    except SpectraEqual as exc:
        _warn(f"inconclusive: {exc}")
        return 3
    except PolarSwitchError as exc:
        _warn(f"error: {exc}")
        return 4
    except OSError as exc:
        _warn(f"error: {exc}")
        return 4


if __name__ == "__main__":
    sys.exit(main())
