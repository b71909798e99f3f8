"""Command-line interface.

Exit codes: 0 success (and all requested checks passed), 1 a requested
check failed, 2 precondition violation, 3 non-integer midpoint,
4 malformed input file, 5 usage error (unknown flag etc.).  Directions
on the command line are 1-based.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import verify
from .dualcompat import is_sdc, is_wdc
from .mesh import (IndexDomain, MeshError, NonIntegerMidpoint,
                   create_tensor_mesh, find_cell_containing, is_admissible,
                   subdiv)
from .meshio import (MeshFormatError, load_mesh, mesh_to_dict, region_to_json,
                     save_mesh)
from .suitability import is_aas, is_sgas, is_wgas
from .svgexport import render_slice_svg
from .topology import PreconditionViolated

EXIT_CHECK_FAILED = 1
EXIT_PRECONDITION = 2
EXIT_MIDPOINT = 3
EXIT_BAD_FILE = 4
EXIT_USAGE = 5

CHECKS = {
    "admissible": lambda m: is_admissible(m),
    "aas": lambda m: is_aas(m),
    "sgas": lambda m: is_sgas(m),
    "wgas": lambda m: is_wgas(m),
    "sdc": lambda m: is_sdc(m),
    "wdc": lambda m: is_wdc(m),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _csv_ints(text: str) -> list:
    return [int(x) for x in text.split(",") if x != ""]


def _build_parser() -> _Parser:
    parser = _Parser(prog="tmeshkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_new = sub.add_parser("new", help="write a tensor-product mesh file")
    p_new.add_argument("--dim", type=int, required=True)
    p_new.add_argument("--extents", required=True, help="N1,..,Nd")
    p_new.add_argument("--degrees", required=True, help="p1,..,pd")
    p_new.add_argument("--breakpoints",
                       help="per-direction breakpoints, ';'-separated CSV lists")
    p_new.add_argument("--out", required=True)

    p_ref = sub.add_parser("refine", help="bisect the cell containing a point")
    p_ref.add_argument("--mesh", required=True)
    p_ref.add_argument("--at", required=True, help="x1,..,xd (rationals allowed)")
    p_ref.add_argument("--dir", type=int, required=True, help="direction, 1-based")
    p_ref.add_argument("--out", help="output file (default: rewrite input)")

    p_chk = sub.add_parser("check", help="run classifiers and print verdicts")
    p_chk.add_argument("--mesh", required=True)
    p_chk.add_argument("--which", default="all",
                       help="comma list of admissible,aas,sgas,wgas,sdc,wdc or 'all'")
    p_chk.add_argument("--json", dest="json_out", help="write a report JSON")

    p_lin = sub.add_parser("lin-indep", help="collocation-rank independence check")
    p_lin.add_argument("--mesh", required=True)

    p_ver = sub.add_parser("verify", help="run a seeded verification suite")
    p_ver.add_argument("--suite", required=True,
                       choices=["thm61", "thm62", "conj63", "props"])
    p_ver.add_argument("--seeds", type=int, default=50)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--json", dest="json_out")

    p_exp = sub.add_parser("export", help="render a 2D slice as SVG")
    p_exp.add_argument("--mesh", required=True)
    p_exp.add_argument("--slice", dest="slice_spec",
                       help="k=n (1-based direction); omit for 2D meshes")
    p_exp.add_argument("--layers", default="skeleton,atj,gtj,anchors")
    p_exp.add_argument("--out", required=True)
    return parser


def _load(path: str):
    try:
        return load_mesh(path)
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_FILE) from None
    except MeshFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_FILE) from None


def _cmd_new(args) -> int:
    extents = _csv_ints(args.extents)
    degrees = _csv_ints(args.degrees)
    if len(extents) != args.dim or len(degrees) != args.dim:
        print("error: extents/degrees must match --dim", file=sys.stderr)
        return EXIT_PRECONDITION
    breakpoints = None
    if args.breakpoints:
        breakpoints = [_csv_ints(chunk) for chunk in args.breakpoints.split(";")]
    try:
        domain = IndexDomain(extents=tuple(extents), degrees=tuple(degrees))
        mesh = create_tensor_mesh(domain, breakpoints)
    except (ValueError, MeshError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    save_mesh(mesh, args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_refine(args) -> int:
    mesh = _load(args.mesh)
    try:
        point = tuple(Fraction(x) for x in args.at.split(","))
    except (ValueError, ZeroDivisionError):
        print(f"error: bad point {args.at!r}", file=sys.stderr)
        return EXIT_PRECONDITION
    if len(point) != mesh.dim or not 1 <= args.dir <= mesh.dim:
        print("error: point/direction of wrong dimension", file=sys.stderr)
        return EXIT_PRECONDITION
    try:
        cell = find_cell_containing(mesh, point)
        mesh = subdiv(mesh, cell, args.dir - 1)
    except NonIntegerMidpoint as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MIDPOINT
    except (MeshError, PreconditionViolated) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    save_mesh(mesh, args.out or args.mesh)
    print(f"wrote {args.out or args.mesh}")
    return 0


def _witness_json(name: str, witnesses) -> list:
    from .meshio import entity_to_json

    out = []
    for w in witnesses[:20]:
        if name == "admissible":
            kind, k, payload = w
            out.append({"kind": kind, "direction": k + 1,
                        "where": payload if isinstance(payload, int)
                        else entity_to_json(payload)})
        elif name in ("sgas", "wgas"):
            t1, t2, inter = w
            out.append({"tjunctions": [entity_to_json(t1.entity),
                                       entity_to_json(t2.entity)],
                        "intersection": [[a, b] for a, b in inter]})
        elif name == "aas":
            i, nn, j, mm, region = w
            out.append({"slices": [[i + 1, nn], [j + 1, mm]],
                        "intersection": region_to_json(region)})
        else:
            a1, a2, diag = w
            out.append({"anchors": [entity_to_json(a1), entity_to_json(a2)],
                        "directions": [
                            {"vectors": [list(v1), list(v2)], "overlap": f}
                            for v1, v2, f in diag]})
    return out


def _cmd_check(args) -> int:
    mesh = _load(args.mesh)
    names = list(CHECKS) if args.which == "all" else args.which.split(",")
    report = {"format_version": 1, "mesh": args.mesh, "checks": {}}
    all_ok = True
    for name in names:
        if name not in CHECKS:
            print(f"error: unknown check {name!r}", file=sys.stderr)
            return EXIT_USAGE
        ok, witnesses = CHECKS[name](mesh)
        all_ok &= ok
        mark = "pass" if ok else "FAIL"
        print(f"{name:<10} {mark}" + ("" if ok else f"  ({len(witnesses)} witnesses)"))
        report["checks"][name] = {"ok": ok,
                                  "witnesses": _witness_json(name, witnesses)}
    if args.json_out:
        Path(args.json_out).write_text(json.dumps(report, indent=2) + "\n",
                                       encoding="utf-8")
    return 0 if all_ok else EXIT_CHECK_FAILED


def _cmd_lin_indep(args) -> int:
    mesh = _load(args.mesh)
    report = verify.linear_independence_rank(mesh)
    verdict = "independent" if report.independent else "DEPENDENT"
    print(f"anchors={report.num_anchors} rank={report.rank} {verdict}")
    return 0 if report.independent else EXIT_CHECK_FAILED


def _cmd_verify(args) -> int:
    stream = list(verify.mesh_stream(args.seed, args.seeds))
    if args.suite == "thm61":
        rep = verify.crosscheck_aas_sdc(stream)
        ok = rep["ok"]
        print(f"thm61: {rep['checked']} meshes, agreement "
              f"{'100%' if ok else 'BROKEN'}")
    elif args.suite == "thm62":
        rep = verify.crosscheck_sgas_aas(stream)
        ok = rep["ok"]
        print(f"thm62: {rep['checked']} sgas meshes checked "
              f"({rep['skipped']} skipped), {'ok' if ok else 'FAILED'}")
    elif args.suite == "conj63":
        wgas_stream = list(verify.mesh_stream(
            args.seed, args.seeds, keep=lambda m: is_wgas(m)[0]))
        rep = verify.wgas_wdc_counterexample_search(wgas_stream)
        ok = True  # candidates are logged, never asserted
        print(f"conj63: {rep['wgas']} wgas meshes, "
              f"{len(rep['candidates'])} candidate counterexamples")
        rep = {k: v for k, v in rep.items() if k != "candidates"} | {
            "candidates": [{"seed": c["seed"],
                            "log_length": c["log_length"],
                            "shrunk_log_length": c["shrunk_log_length"],
                            "mesh": mesh_to_dict(c["mesh"])}
                           for c in rep["candidates"]]}
    else:
        rep, ok = _props_suite(stream)
        print(f"props: {rep['pairs']} overlap pairs, "
              f"{rep['probes']} separation probes, {'ok' if ok else 'FAILED'}")
    if args.json_out:
        payload = {k: v for k, v in rep.items()}
        Path(args.json_out).write_text(json.dumps(payload, indent=2, default=str)
                                       + "\n", encoding="utf-8")
    return 0 if ok else EXIT_CHECK_FAILED


def _props_suite(stream) -> tuple[dict, bool]:
    import random

    from .dualcompat import knots_overlap

    rng = random.Random(1234)
    pairs = 0
    for _ in range(10_000):
        v1 = tuple(sorted(rng.sample(range(21), rng.randint(2, 8))))
        v2 = tuple(sorted(rng.sample(range(21), rng.randint(2, 8))))
        if knots_overlap(v1, v2) != verify.knots_overlap_oracle(v1, v2):
            return {"pairs": pairs, "failed_pair": [v1, v2]}, False
        pairs += 1
    probes = sum(_probe_separation(mesh, seed)
                 for seed, mesh in stream[:5])
    return {"pairs": pairs, "probes": probes}, True


def _probe_separation(mesh, seed) -> int:
    import random

    from .topology import find_separating_tjunction

    rng = random.Random(seed)
    done = 0
    for _ in range(200):
        probe = _random_skeleton_probe(mesh, rng)
        if probe is None:
            continue
        x, y, i = probe
        find_separating_tjunction(mesh, x, y, i)
        done += 1
    return done


def _random_skeleton_probe(mesh, rng):
    from .mesh import point_in_skeleton, singleton_dirs as sdirs

    i = rng.randrange(mesh.dim)
    faces = [f for f in mesh.entities[mesh.dim - 1] if sdirs(f) == (i,)]
    if not faces:
        return None
    face = rng.choice(sorted(faces))
    x = tuple(Fraction(a + b, 2) for a, b in face)
    y = list(x)
    for k in range(mesh.dim):
        if k != i:
            y[k] = Fraction(rng.randrange(0, 4 * mesh.domain.extents[k] + 1), 4)
    y = tuple(y)
    if y == x or point_in_skeleton(mesh, i, y):
        return None
    return x, y, i


def _cmd_export(args) -> int:
    mesh = _load(args.mesh)
    k = n = None
    if args.slice_spec:
        try:
            k_text, n_text = args.slice_spec.split("=")
            k, n = int(k_text) - 1, int(n_text)
        except ValueError:
            print(f"error: bad --slice {args.slice_spec!r}", file=sys.stderr)
            return EXIT_USAGE
    layers = tuple(args.layers.split(","))
    try:
        svg = render_slice_svg(mesh, k, n, layers)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    Path(args.out).write_text(svg, encoding="utf-8")
    print(f"wrote {args.out}")
    return 0


_COMMANDS = {
    "new": _cmd_new,
    "refine": _cmd_refine,
    "check": _cmd_check,
    "lin-indep": _cmd_lin_indep,
    "verify": _cmd_verify,
    "export": _cmd_export,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
