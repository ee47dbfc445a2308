"""Command-line interface: gen, crossings, verify, render, phase-map.

Exit codes: 0 success, 1 verification failure, 2 invalid arguments,
3 oracle disagreement.  Angles are radians everywhere; --degrees converts
text-format display only.  Log level comes from the KNOT_LOG env var.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
import time

from .crossings import analytic_crossing_set, find_crossings_numeric, pair_distance
from .diagram import identify
from .errors import IdentificationFailure, KnotError, SingularPoint
from .phases import (
    certify_intercept_reading,
    phase_map_render,
    same_knot_by_phases,
    sign_vector,
    simplified_phase_point,
    singular_lines,
    theorem_phase_point,
)
from .render import knot_diagram_svg
from .series import (
    StandardTorusGeometry,
    TorusParams,
    fmt_float,
    gen_standard_knot,
    gen_theorem_knot,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_ARGS = 2
EXIT_ORACLE_DISAGREE = 3


def _write(path: str | None, payload: str | bytes) -> None:
    if isinstance(payload, bytes):
        if path is None or path == "-":
            sys.stdout.buffer.write(payload)
        else:
            with open(path, "wb") as fh:
                fh.write(payload)
        return
    if path is None or path == "-":
        sys.stdout.write(payload)
        if not payload.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload)


def _angle_str(value: float, degrees: bool) -> str:
    return fmt_float(math.degrees(value)) if degrees else fmt_float(value)


def cmd_gen(args) -> int:
    params = TorusParams(args.p, args.q)
    if args.standard:
        knot = gen_standard_knot(params, StandardTorusGeometry(args.major, args.minor))
    else:
        knot = gen_theorem_knot(params, simplified=args.simplified)
    if args.format == "text":
        lines = []
        for axis in ("x", "y", "z"):
            series = getattr(knot, axis)
            terms = " + ".join(
                f"{fmt_float(t.amplitude)}*cos({t.frequency}*t + {_angle_str(t.phase, args.degrees)})"
                for t in series.terms
            )
            lines.append(f"{axis}(t) = {terms}")
        _write(args.output, "\n".join(lines) + "\n")
    else:
        _write(args.output, knot.to_json())
    return EXIT_OK


def _build_sets(args, params):
    knot = gen_theorem_knot(params, simplified=args.simplified)
    analytic = analytic_crossing_set(knot, params)
    numeric = None
    if args.numeric or args.check:
        numeric = find_crossings_numeric(knot, args.grid)
    return knot, analytic, numeric


def cmd_crossings(args) -> int:
    params = TorusParams(args.p, args.q)
    _, analytic, numeric = _build_sets(args, params)
    chosen = numeric if args.numeric else analytic
    if args.check:
        assert numeric is not None
        mismatch = len(numeric) != len(analytic)
        if not mismatch:
            ana_pairs = [(c.t1, c.t2) for c in analytic.crossings]
            for c in numeric.crossings:
                if min(pair_distance((c.t1, c.t2), ap) for ap in ana_pairs) > 1e-6:
                    mismatch = True
                    break
        if mismatch:
            print(
                f"oracle disagreement: analytic {len(analytic)} vs numeric {len(numeric)} crossings",
                file=sys.stderr,
            )
            return EXIT_ORACLE_DISAGREE
    if args.format == "csv":
        _write(args.output, chosen.to_csv())
    elif args.format == "text":
        rows = [f"{len(chosen)} crossings ({chosen.method})"]
        for c in chosen.crossings:
            ix = c.indices.key() if c.indices else "-"
            rows.append(
                f"  {ix:10s} t1={_angle_str(c.t1, args.degrees)} t2={_angle_str(c.t2, args.degrees)} "
                f"sign={c.sign:+d} over={c.over}"
            )
        _write(args.output, "\n".join(rows) + "\n")
    else:
        _write(args.output, chosen.to_json())
    return EXIT_OK


def _verify_pair(params: TorusParams) -> tuple[dict[str, str], bool]:
    """Run every identification condition for one (p, q); returns (row, ok)."""
    knot = gen_theorem_knot(params)
    crossings = analytic_crossing_set(knot, params)
    row: dict[str, str] = {}
    ok = True
    try:
        identify(knot, crossings, params)
        row["counts"] = row["type1-hand"] = row["type2-dir"] = row["alexander"] = "pass"
    except IdentificationFailure as exc:
        ok = False
        order = ["type1-count", "type2-count", "type1-handedness", "type2-over-direction", "alexander-mismatch"]
        labels = {"type1-count": "counts", "type2-count": "counts",
                  "type1-handedness": "type1-hand", "type2-over-direction": "type2-dir",
                  "alexander-mismatch": "alexander"}
        reached = order.index(exc.condition)
        for cond in order:
            label = labels[cond]
            if order.index(cond) < reached:
                row.setdefault(label, "pass")
            elif cond == exc.condition:
                row[label] = "FAIL"
            else:
                row.setdefault(label, "-")
    # phase condition: even p must keep the same region; odd p must be singular
    try:
        singular_lines(params)
        if params.p % 2 == 0:
            same = same_knot_by_phases(params, theorem_phase_point(params), simplified_phase_point(params))
            simplified = gen_theorem_knot(params, simplified=True)
            identify(simplified, analytic_crossing_set(simplified, params), params)
            row["phase"] = "pass" if same else "FAIL"
            ok = ok and same
        else:
            try:
                sign_vector(params, simplified_phase_point(params))
                row["phase"] = "FAIL"
                ok = False
            except SingularPoint as sp:
                degenerate_type2 = [ix for ix in sp.indices if ix.kind == "II"]
                good = len(degenerate_type2) >= 2
                row["phase"] = "pass" if good else "FAIL"
                ok = ok and good
    except KnotError as exc:
        row["phase"] = f"FAIL ({exc})"
        ok = False
    return row, ok


def cmd_verify(args) -> int:
    pairs = [
        (p, q)
        for p in range(2, args.pmax + 1)
        for q in range(p + 1, args.qmax + 1)
        if math.gcd(p, q) == 1
    ]
    if not pairs:
        print("no coprime pairs in range", file=sys.stderr)
        return EXIT_BAD_ARGS
    columns = ["counts", "type1-hand", "type2-dir", "alexander", "phase"]
    header = f"{'p':>3} {'q':>3}  " + "  ".join(f"{c:<10}" for c in columns) + "  wall"
    print(header)
    print("-" * len(header))
    failures = []
    for p, q in pairs:
        t0 = time.perf_counter()
        row, ok = _verify_pair(TorusParams(p, q))
        wall = time.perf_counter() - t0
        print(f"{p:>3} {q:>3}  " + "  ".join(f"{row[c]:<10}" for c in columns) + f"  {wall:.2f}s")
        if not ok:
            failures.append((p, q, row))
    reading, res_ok, res_bad = certify_intercept_reading(TorusParams(*pairs[0]))
    print(
        f"type-I singular-line intercept certified as {reading} "
        f"(residual {res_ok:.2e}; alternative reading rejected at {res_bad:.2e})"
    )
    if failures:
        print(f"{len(failures)} pair(s) failed: {[(p, q) for p, q, _ in failures]}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    print(f"all {len(pairs)} pairs pass")
    return EXIT_OK


def cmd_render(args) -> int:
    params = TorusParams(args.p, args.q)
    knot = gen_theorem_knot(params, simplified=args.simplified)
    crossings = analytic_crossing_set(knot, params)
    _write(args.output, knot_diagram_svg(knot, crossings, size=args.size))
    return EXIT_OK


def cmd_phase_map(args) -> int:
    params = TorusParams(args.p, args.q)
    pmap = phase_map_render(params, args.grid, mark_theorem_points=args.mark_theorem_points)
    if (args.output or "").endswith(".png") or args.format == "png":
        _write(args.output, pmap.to_png_bytes())
    else:
        _write(args.output, pmap.to_svg(size=args.size))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fourierknot",
        description="Torus knots as cosine-series curves: generation, crossings, invariants, phase maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_pq(sp):
        sp.add_argument("-p", type=int, required=True, help="longitudinal winding (2 <= p < q)")
        sp.add_argument("-q", type=int, required=True, help="meridional winding, coprime to p")

    def add_common(sp):
        sp.add_argument("-o", "--output", default=None, help="output path (default: stdout)")
        sp.add_argument("--degrees", action="store_true", help="display angles in degrees (text output only)")

    g = sub.add_parser("gen", help="emit a knot parameterization as JSON")
    add_pq(g)
    add_common(g)
    g.add_argument("--simplified", action="store_true", help="use the short z phase pi/(2p) (even p only)")
    g.add_argument("--standard", action="store_true", help="emit the three-term winding form instead")
    g.add_argument("--major", type=float, default=2.0, help="winding form: major radius R (default 2)")
    g.add_argument("--minor", type=float, default=1.0, help="winding form: tube radius r (default 1)")
    g.add_argument("--format", choices=["json", "text"], default="json")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("crossings", help="enumerate and classify projection crossings")
    add_pq(c)
    add_common(c)
    c.add_argument("--simplified", action="store_true")
    c.add_argument("--numeric", action="store_true", help="use the numeric double-point finder")
    c.add_argument("--grid", type=int, default=2048, help="sampling grid for the numeric finder")
    c.add_argument("--check", action="store_true", help="cross-check numeric against analytic (exit 3 on mismatch)")
    c.add_argument("--format", choices=["json", "csv", "text"], default="json")
    c.set_defaults(func=cmd_crossings)

    v = sub.add_parser("verify", help="run the identification conditions over a (p, q) range")
    v.add_argument("--pmax", type=int, required=True)
    v.add_argument("--qmax", type=int, required=True)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="SVG of the xy-projection with under-strand gaps")
    add_pq(r)
    add_common(r)
    r.add_argument("--simplified", action="store_true")
    r.add_argument("--size", type=int, default=640, help="image side in pixels")
    r.set_defaults(func=cmd_render)

    m = sub.add_parser("phase-map", help="phase-square map of sign-vector classes")
    add_pq(m)
    add_common(m)
    m.add_argument("--grid", type=int, default=256, help="cells per side (>= 64)")
    m.add_argument("--size", type=int, default=640)
    m.add_argument("--format", choices=["svg", "png"], default="svg")
    m.add_argument(
        "--mark-theorem-points",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="mark the theorem and simplified phase points (on by default)",
    )
    m.set_defaults(func=cmd_phase_map)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(
        level=getattr(logging, os.environ.get("KNOT_LOG", "WARNING").upper(), logging.WARNING)
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (KnotError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS


if __name__ == "__main__":
    sys.exit(main())
