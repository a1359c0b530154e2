"""Command line interface.

Subcommands: space, measure, decompose, triangle, area, tiling, dual,
serve. Machine output is JSON under --json; exit codes are 0 on
success, 1 on usage errors and 2 on domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import service
from .catalog import dual_transform, registry
from .config import set_tol
from .errors import GeometryError
from .motions import Motion, axis_relation
from .signature import Signature
from .triangles import separability_class


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser():
    parser = _Parser(prog="homspace", description=__doc__)
    parser.add_argument("--json", action="store_true", help="machine readable output")
    parser.add_argument("--tol", type=float, help="override the structural tolerance")
    sub = parser.add_subparsers(dest="command", required=True)

    p_space = sub.add_parser("space", help="signature facts")
    p_space.add_argument("action", choices=["info", "list"])
    p_space.add_argument("sig", nargs="?", help='signature such as "{0,-1}"')

    p_measure = sub.add_parser("measure", help="measure between two lineals (JSON on stdin)")
    p_measure.add_argument("--file", help="read the request from a file instead of stdin")

    p_dec = sub.add_parser("decompose", help="rotation decomposition of a motion (JSON on stdin)")
    p_dec.add_argument("--file")

    p_tri = sub.add_parser("triangle", help="solve a triangle")
    p_tri.add_argument("--sig", required=True)
    p_tri.add_argument("--b", type=float)
    p_tri.add_argument("--c", type=float)
    p_tri.add_argument("--alpha", type=float)
    p_tri.add_argument("--right", help="JSON object of known right-triangle parts")

    p_area = sub.add_parser("area", help="right triangle area from the catheti")
    p_area.add_argument("--sig", required=True)
    p_area.add_argument("--a", type=float, required=True)
    p_area.add_argument("--b", type=float, required=True)
    p_area.add_argument("--steps", type=int, help="also run the quadrature oracle")

    p_tile = sub.add_parser("tiling", help="crystallographic orbit of a {p,q} tiling")
    p_tile.add_argument("--pq", nargs=2, type=int, required=True, metavar=("P", "Q"))
    p_tile.add_argument("--depth", type=int, default=2)
    p_tile.add_argument("--d", type=float, default=1.0, help="step on the Euclidean plane")
    p_tile.add_argument("--dual", action="store_true")
    p_tile.add_argument("--svg", action="store_true", help="emit SVG instead of JSON")

    p_dual = sub.add_parser("dual", help="anti-transpose duality of a motion (JSON on stdin)")
    p_dual.add_argument("--file")

    p_serve = sub.add_parser("serve", help="start the JSON service")
    p_serve.add_argument("--port", type=int, default=service.DEFAULT_PORT)
    p_serve.add_argument("--host", default="127.0.0.1")
    return parser


def _read_payload(args):
    if getattr(args, "file", None):
        with open(args.file, "r", encoding="utf-8") as fh:
            return json.load(fh)
    return json.load(sys.stdin)


def _emit(args, result, human):
    if args.json:
        print(service.dumps(result))
    else:
        print(human if isinstance(human, str) else "\n".join(human))


def space_info(sig):
    n = sig.n
    info = {
        "sig": str(sig),
        "dimension": n,
        "cumulative_types": [sig.cumulative(m) for m in range(n + 1)],
        "metaspace": str(sig.metaspace()),
        "separability": separability_class(sig),
        "degrees_of_freedom": n * (n + 1) // 2,
        "axis_relations": [
            {"i": i, "j": j, "relation": axis_relation(i, j, sig)}
            for i in range(n + 1)
            for j in range(i + 1, n + 1)
        ],
    }
    return info


def _space_lines(info):
    lines = [
        f"signature       {info['sig']}",
        f"dimension       {info['dimension']}",
        f"cumulative K    {info['cumulative_types']}",
        f"metaspace       {info['metaspace']}",
        f"separability    {info['separability']}",
        f"freedom degrees {info['degrees_of_freedom']}",
        "axis relations:",
    ]
    for rel in info["axis_relations"]:
        lines.append(f"  e{rel['i']} / e{rel['j']}: {rel['relation']}")
    return lines


def orbit_svg(data, size=640):
    """Central-projection SVG: x1/x0, x2/x0 with off-chart markers."""
    nodes = data["nodes"]
    coords = []
    for node in nodes:
        x0 = node[0]
        if abs(x0) <= 1e-9:
            coords.append(None)
            continue
        coords.append((node[1] / x0, node[2] / x0))
    finite = [c for c in coords if c is not None]
    if not finite:
        finite = [(0.0, 0.0)]
    span = max(max(abs(x), abs(y)) for x, y in finite) or 1.0
    scale = (size / 2 - 20) / span

    def to_px(c):
        return size / 2 + c[0] * scale, size / 2 - c[1] * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for i, j in data["edges"]:
        a, b = coords[i], coords[j]
        if a is None or b is None:
            continue
        (x1, y1), (x2, y2) = to_px(a), to_px(b)
        parts.append(
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="#888" stroke-width="1"/>'
        )
    for c in coords:
        if c is None:
            continue
        x, y = to_px(c)
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="#1f6feb"/>')
    parts.append("</svg>")
    return "\n".join(parts)


def run(argv=None):
    args = build_parser().parse_args(argv)
    if args.tol:
        set_tol(args.tol)

    if args.command == "space":
        if args.action == "list":
            result = {"spaces": registry()}
            _emit(args, result, [f"{s['name']:22s} {s['sig']}" for s in result["spaces"]])
            return 0
        if not args.sig:
            print("error: space info needs a signature", file=sys.stderr)
            return 1
        info = space_info(Signature.parse(args.sig))
        _emit(args, info, _space_lines(info))
        return 0

    if args.command == "measure":
        result = service.handle_measure(_read_payload(args))
        human = (
            f"value {result['value']} type {result['type']} case ({result['case']})"
            + (" [ambiguous type]" if result["ambiguous"] else "")
        )
        _emit(args, result, human)
        return 0

    if args.command == "decompose":
        result = service.handle_decompose(_read_payload(args))
        lines = [
            f"R({r['i']},{r['j']}) angle {r['phi']:+.12g} type {r['type']}"
            for r in result["rotations"]
        ]
        lines.append(f"reflection {result['reflection']}")
        _emit(args, result, lines)
        return 0

    if args.command == "triangle":
        payload = {"sig": args.sig}
        if args.right:
            payload["right"] = json.loads(args.right)
        else:
            if args.b is None or args.c is None or args.alpha is None:
                print("error: triangle needs --b --c --alpha or --right", file=sys.stderr)
                return 1
            payload["sas"] = {"b": args.b, "c": args.c, "alpha": args.alpha}
        result = service.handle_triangle(payload)
        human = [f"{k:11s} {v}" for k, v in result.items() if k != "notes"]
        _emit(args, result, human)
        return 0

    if args.command == "area":
        payload = {"sig": args.sig, "a": args.a, "b": args.b}
        if args.steps:
            payload["oracle_steps"] = args.steps
        result = service.handle_area(payload)
        human = f"area {result['value']} type {result['type']}"
        if "oracle" in result:
            human += f" (oracle {result['oracle']})"
        _emit(args, result, human)
        return 0

    if args.command == "tiling":
        payload = {
            "p": args.pq[0],
            "q": args.pq[1],
            "depth": args.depth,
            "d": args.d,
            "kind": "dual" if args.dual else "tiling",
        }
        result = service.handle_tiling(payload)
        if args.svg:
            print(orbit_svg(result))
            return 0
        human = (
            f"{len(result['nodes'])} nodes, {len(result['edges'])} edges, "
            f"min distance {result['min_distance']}, plane {result['sig']}"
        )
        _emit(args, result, human)
        return 0

    if args.command == "dual":
        payload = _read_payload(args)
        motion = Motion.from_json(payload, validate=True, tol=1e-7)
        result = dual_transform(motion).to_json()
        _emit(args, result, json.dumps(result))
        return 0

    if args.command == "serve":
        print(f"homspace service on {args.host}:{args.port}", file=sys.stderr)
        service.serve(args.port, args.host)
        return 0

    return 1


def main(argv=None):
    try:
        return run(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except GeometryError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON input: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
