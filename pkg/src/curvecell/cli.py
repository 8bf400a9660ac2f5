"""curvecell command line: curve traces, cell ids and diagnostics."""
from __future__ import annotations

import argparse
import math
import random
import sys
from fractions import Fraction

from . import geocell
from .curve_core import UnitPoint
from .geocell import CellId, LatLng, EARTH_RADIUS_CM
from .hilbert import phi_inverse, trace as hilbert_trace
from .lebesgue import cantor_grid_parameter, lebesgue_extended, morton_decode

TRACE_CAPS = {"hilbert": 16, "lebesgue": 10, "morton": 16}
SVG_SIZE = 1024
MAX_BENCH_LEVEL = 10
MAX_AREA_LEVEL = 8
DIRECTIONS = ((1, 0), (-1, 0), (0, 1), (0, -1))


class UsageError(Exception):
    pass


def trace_points(curve: str, generation: int) -> list[UnitPoint]:
    cap = TRACE_CAPS[curve]
    if not 0 <= generation <= cap:
        raise UsageError(f"{curve} generation must be in [0, {cap}], got {generation}")
    if curve == "hilbert":
        return hilbert_trace(generation)
    if curve == "lebesgue":
        return [
            lebesgue_extended(cantor_grid_parameter(i, generation))
            for i in range(4**generation)
        ]
    n = float(1 << generation)
    pts = []
    for code in range(4**generation):
        cx, cy = morton_decode(code, 2, generation)
        pts.append(UnitPoint((cx + 0.5) / n, (cy + 0.5) / n))
    return pts


def _num(v: float | Fraction) -> str:
    return repr(float(v))


def render_csv(points: list[UnitPoint]) -> str:
    return "".join(f"{_num(p.x)},{_num(p.y)}\n" for p in points)


def render_svg(points: list[UnitPoint]) -> str:
    coords = " L ".join(
        f"{float(p.x) * SVG_SIZE:.3f},{(1.0 - float(p.y)) * SVG_SIZE:.3f}" for p in points
    )
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
        f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">\n'
        f'  <path d="M {coords}" fill="none" stroke="black" stroke-width="1"/>\n'
        "</svg>\n"
    )


def cmd_trace(args) -> str:
    pts = trace_points(args.curve, args.generation)
    return render_csv(pts) if args.format == "csv" else render_svg(pts)


def _parse_latlng(lat: float, lng: float) -> LatLng:
    try:
        return LatLng(lat, lng)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_encode(args) -> str:
    p = _parse_latlng(args.lat, args.lng)
    if not 0 <= args.level <= geocell.MAX_LEVEL:
        raise UsageError(f"level must be in [0, {geocell.MAX_LEVEL}], got {args.level}")
    c = geocell.encode_cell(p, args.level)
    return f"{c.to_hex()}\nface={c.face} level={c.level} pos={c.pos}\n"


def cmd_decode(args) -> str:
    try:
        c = CellId.from_hex(args.cell)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    center = geocell.vector_to_latlng(geocell.cell_center(c))
    area = geocell.cell_area_steradians(c) * EARTH_RADIUS_CM**2
    return (
        f"cell={c.to_hex()}\n"
        f"face={c.face}\n"
        f"level={c.level}\n"
        f"pos={c.pos}\n"
        f"center_lat={center.lat:.9f}\n"
        f"center_lng={center.lng:.9f}\n"
        f"area_cm2={area:.6f}\n"
    )


def _percentile(sorted_vals: list[int], q: float) -> int:
    # nearest-rank
    rank = max(1, math.ceil(q * len(sorted_vals)))
    return sorted_vals[rank - 1]


def locality_samples(level: int, samples: int, seed: int) -> tuple[list[int], list[int]]:
    """|position difference| of random surface-adjacent cell pairs, Hilbert and row-major."""
    n = 1 << level
    per_face = 4**level
    rng = random.Random(seed)
    hil, row = [], []
    for _ in range(samples):
        face, i, j = rng.randrange(6), rng.randrange(n), rng.randrange(n)
        di, dj = rng.choice(DIRECTIONS)
        g, i2, j2 = geocell.cell_neighbor(face, i, j, level, di, dj)
        ha = face * per_face + phi_inverse(geocell.face_ij_to_square(face, i, j, level)).index
        hb = g * per_face + phi_inverse(geocell.face_ij_to_square(g, i2, j2, level)).index
        hil.append(abs(ha - hb))
        row.append(abs((face * per_face + j * n + i) - (g * per_face + j2 * n + i2)))
    return hil, row


def cmd_bench_locality(args) -> str:
    if not 0 <= args.level <= MAX_BENCH_LEVEL:
        raise UsageError(f"level must be in [0, {MAX_BENCH_LEVEL}], got {args.level}")
    if args.samples < 1:
        raise UsageError("samples must be positive")
    hil, row = locality_samples(args.level, args.samples, args.seed)
    lines = [
        f"bench-locality level={args.level} samples={args.samples} seed={args.seed}",
        "ordering min median p99 max",
    ]
    stats = {}
    for name, vals in (("hilbert", hil), ("row-major", row)):
        vals.sort()
        stats[name] = (vals[0], _percentile(vals, 0.5), _percentile(vals, 0.99), vals[-1])
        lines.append(name + " " + " ".join(str(v) for v in stats[name]))
    lines.append(f"hilbert_median_below_row_major={str(stats['hilbert'][1] < stats['row-major'][1]).lower()}")
    lines.append(f"hilbert_p99_below_row_major={str(stats['hilbert'][2] < stats['row-major'][2]).lower()}")
    return "\n".join(lines) + "\n"


def cmd_area_stats(args) -> str:
    level = args.level
    if not 0 <= level <= MAX_AREA_LEVEL:
        raise UsageError(f"level must be in [0, {MAX_AREA_LEVEL}], got {level}")
    areas = geocell.level_areas(level)
    lo, mean, hi = float(areas.min()), float(areas.mean()), float(areas.max())
    scale = EARTH_RADIUS_CM**2 / 4.0 ** (geocell.MAX_LEVEL - level)
    return (
        f"level={level} cells={areas.size}\n"
        f"min_sr={lo:.6e}\n"
        f"mean_sr={mean:.6e}\n"
        f"max_sr={hi:.6e}\n"
        f"max_min_ratio={hi / lo:.6f}\n"
        f"level30_min_cm2={lo * scale:.6f} extrapolated\n"
        f"level30_mean_cm2={mean * scale:.6f} extrapolated\n"
        f"level30_max_cm2={hi * scale:.6f} extrapolated\n"
        "note: min and max depend on the quadratic uv-to-st area-equalising transform\n"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curvecell", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace", help="print the vertices of a curve approximant")
    p.add_argument("--curve", choices=sorted(TRACE_CAPS), default="hilbert")
    p.add_argument("--generation", type=int, required=True)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("encode", help="cell id of a latitude/longitude")
    p.add_argument("lat", type=float)
    p.add_argument("lng", type=float)
    p.add_argument("level", type=int)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="describe a 16-hex-digit cell id")
    p.add_argument("cell")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("bench-locality", help="position gaps of adjacent cells")
    p.add_argument("--level", type=int, default=8)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench_locality)

    p = sub.add_parser("area-stats", help="min/mean/max cell areas at a level")
    p.add_argument("--level", type=int, default=8)
    p.set_defaults(func=cmd_area_stats)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except UsageError as exc:
        print(f"curvecell: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
