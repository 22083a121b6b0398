"""Command-line surface.

Exit codes: 0 success, 1 usage, 2 parse error, 3 validation failure,
4 verification failure.  All randomness flows from --seed; identical
inputs and flags produce byte-identical output.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import fixtures, io as mio
from .complexes import face_key
from .forest import build_facet_graph, verify_msf_theorem, watershed_forest
from .manifolds import validate
from .morse import classify, is_morse, random_morse_stack
from .stacks import StackError, minima, validate_stack
from .watershed import (
    WATERSHED_LABEL,
    WatershedResult,
    morse_watershed,
    verify_cut,
    verify_drop_of_water,
    watershed_collapse,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_VERIFICATION = 4


def _fmt_face(x) -> str:
    return " ".join(map(str, x))


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_stack(args) -> "Stack":
    return mio.parse_stack(_read(args.input), complete=args.complete)


def export_labels(result: WatershedResult, format: str, coords=None) -> str:
    """Serialize a watershed result as labels, a dual graph in dot syntax,
    or an OFF mesh (d = 2 only, vertex coordinates required)."""
    if format == "labels":
        return mio.serialize_labels(result)
    if format == "dot":
        d = max((len(x) - 1 for x in result.labels), default=0)
        tops = sorted((x for x in result.labels if len(x) - 1 == d), key=face_key)
        idx = {x: i for i, x in enumerate(tops)}
        lines = ["graph basins {"]
        for x in tops:
            lines.append(f'  n{idx[x]} [label="{_fmt_face(x)}" basin={result.labels[x]}];')
        seen = set()
        for x in tops:
            for y in tops:
                if x < y and len(set(x) & set(y)) == d:
                    shared = tuple(sorted(set(x) & set(y)))
                    if shared in result.labels and (x, y) not in seen:
                        seen.add((x, y))
                        style = (
                            ' [style=bold color=red]'
                            if result.labels[shared] == WATERSHED_LABEL
                            else ""
                        )
                        lines.append(f"  n{idx[x]} -- n{idx[y]}{style};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    if format == "off":
        if coords is None:
            raise ValueError("off export needs a vertex-coordinate sidecar file")
        tris = sorted((x for x in result.labels if len(x) == 3), key=face_key)
        verts = sorted({v for t in tris for v in t})
        vid = {v: i for i, v in enumerate(verts)}
        cut_edges = sorted(
            x for x, lab in result.labels.items()
            if len(x) == 2 and lab == WATERSHED_LABEL
        )
        palette = ["0.8 0.2 0.2", "0.2 0.6 0.9", "0.3 0.8 0.3", "0.9 0.8 0.2",
                   "0.7 0.3 0.9", "0.9 0.5 0.2"]
        lines = ["OFF", f"{len(verts)} {len(tris)} 0"]
        lines.append("# cut edges:")
        for e in cut_edges:
            lines.append(f"#   {_fmt_face(e)}")
        for v in verts:
            x, y, z = coords[v]
            lines.append(f"{x} {y} {z}")
        for t in tris:
            lab = result.labels[t]
            color = palette[(lab - 1) % len(palette)] if lab > 0 else "0 0 0"
            lines.append(f"3 {vid[t[0]]} {vid[t[1]]} {vid[t[2]]} {color}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown export format {format!r}")


def _parse_coords(text: str) -> dict[int, tuple[float, float, float]]:
    out = {}
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise mio.ParseError(i, "expected `vertex x y z`")
        out[int(parts[0])] = (float(parts[1]), float(parts[2]), float(parts[3]))
    return out


def _cmd_validate(args) -> int:
    X = mio.parse_complex(_read(args.input))
    rep = validate(X)
    for line in rep.as_lines():
        print(line)
    return EXIT_OK


def _cmd_check_stack(args) -> int:
    try:
        F = _load_stack(args)
    except StackError as exc:
        print(f"ok=False")
        print(f"error={exc}")
        return EXIT_VALIDATION
    ok, witness = validate_stack(F)
    print(f"ok={ok}")
    morse_ok, morse_witness = is_morse(F)
    print(f"morse={morse_ok}")
    if morse_witness is not None:
        print(f"witness_morse={_fmt_face(morse_witness)}")
    return EXIT_OK if ok else EXIT_VALIDATION


def _cmd_minima(args) -> int:
    F = _load_stack(args)
    dec = minima(F)
    for i, (zone, lam) in enumerate(dec.minima, start=1):
        faces = ", ".join(_fmt_face(x) for x in sorted(zone, key=face_key))
        print(f"minimum {i} @ {lam}: {faces}")
    print(f"divide_faces={len(dec.divide)}")
    return EXIT_OK


def _cmd_critical(args) -> int:
    F = _load_stack(args)
    ok, witness = is_morse(F)
    if not ok:
        print(f"error=not a Morse stack (witness {_fmt_face(witness)})")
        return EXIT_VALIDATION
    rep = classify(F)
    for p in range(F.host.dim + 1):
        for x in rep.critical_of_dim(p):
            print(f"critical {p}: {_fmt_face(x)}")
    print(f"regular_faces={len(rep.regular)}")
    return EXIT_OK


def _run_watershed(F, algo: str, seed: int) -> WatershedResult:
    if algo == "morse":
        return morse_watershed(F)
    return watershed_collapse(F, seed=seed)


def _cmd_watershed(args) -> int:
    F = _load_stack(args)
    result = _run_watershed(F, args.algo, args.seed)
    sys.stdout.write(mio.serialize_labels(result))
    print(f"# seed={args.seed} algo={args.algo}")
    if not verify_cut(F, result.watershed):
        print("# verify_cut=False")
        return EXIT_VERIFICATION
    if not verify_drop_of_water(F, result.watershed):
        print("# verify_drop_of_water=False")
        return EXIT_VERIFICATION
    return EXIT_OK


def _cmd_msf(args) -> int:
    F = _load_stack(args)
    G = build_facet_graph(F)
    Y = watershed_forest(F)
    for a, b in sorted(Y.edges):
        print(f"{_fmt_face(a)} | {_fmt_face(b)} : {G.edges[(a, b)]}")
    print(f"total_weight={Y.weight(G)}")
    if args.dot:
        lines = ["graph facets {"]
        idx = {v: i for i, v in enumerate(sorted(Y.vertices, key=face_key))}
        for v, i in idx.items():
            lines.append(f'  n{i} [label="{_fmt_face(v)}"];')
        for (a, b), w in sorted(G.edges.items()):
            style = " style=bold color=blue" if (a, b) in Y.edges else ""
            lines.append(f'  n{idx[a]} -- n{idx[b]} [label="{w}"{style}];')
        lines.append("}")
        print("\n".join(lines))
    if args.verify:
        checks = verify_msf_theorem(F)
        for k, v in sorted(checks.items()):
            print(f"check_{k}={v}")
        if not all(checks.values()):
            return EXIT_VERIFICATION
    return EXIT_OK


def _cmd_gen(args) -> int:
    if args.what == "torus":
        X = fixtures.torus(args.n, args.m)
        sys.stdout.write(mio.serialize_complex(X))
    elif args.what == "cyc6":
        sys.stdout.write(mio.serialize_stack(fixtures.cyc6_stack()))
    elif args.what == "wedge":
        sys.stdout.write(mio.serialize_complex(fixtures.wedge()))
    elif args.what == "branch":
        sys.stdout.write(mio.serialize_complex(fixtures.branching_triangles()))
    elif args.what == "random-morse":
        if not args.input:
            print("gen random-morse needs a complex file", file=sys.stderr)
            return EXIT_USAGE
        X = mio.parse_complex(_read(args.input))
        sys.stdout.write(
            mio.serialize_stack(
                random_morse_stack(X, seed=args.seed, n_minima=args.minima)
            )
        )
    return EXIT_OK


def _cmd_export(args) -> int:
    F = _load_stack(args)
    result = _run_watershed(F, args.algo, args.seed)
    coords = None
    if args.format == "off":
        if not args.coords:
            print("off export needs --coords", file=sys.stderr)
            return EXIT_USAGE
        coords = _parse_coords(_read(args.coords))
    sys.stdout.write(export_labels(result, args.format, coords))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morseshed",
        description="Watersheds of simplicial stacks on normal pseudomanifolds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_stack_flags(p):
        p.add_argument("input")
        p.add_argument("--complete", choices=("none", "max"), default="none")

    p = sub.add_parser("validate", help="pseudomanifold validation report")
    p.add_argument("input")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("check-stack", help="stack and Morse-stack checks")
    add_stack_flags(p)
    p.set_defaults(func=_cmd_check_stack)

    p = sub.add_parser("minima", help="regional minima and divide")
    add_stack_flags(p)
    p.set_defaults(func=_cmd_minima)

    p = sub.add_parser("critical", help="critical faces of a Morse stack")
    add_stack_flags(p)
    p.set_defaults(func=_cmd_critical)

    p = sub.add_parser("watershed", help="compute and verify a watershed")
    add_stack_flags(p)
    p.add_argument("--algo", choices=("collapse", "morse"), default="collapse")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_watershed)

    p = sub.add_parser("msf", help="watershed forest of a Morse stack")
    add_stack_flags(p)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=_cmd_msf)

    p = sub.add_parser("gen", help="generate fixtures")
    p.add_argument("what", choices=("torus", "cyc6", "wedge", "branch", "random-morse"))
    p.add_argument("input", nargs="?")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--minima", type=int, default=1,
                   help="number of regional minima for random-morse")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("export", help="export watershed labels")
    add_stack_flags(p)
    p.add_argument("--format", choices=("labels", "dot", "off"), default="labels")
    p.add_argument("--coords")
    p.add_argument("--algo", choices=("collapse", "morse"), default="morse")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except mio.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (StackError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
