"""JSON-over-HTTP facade over the geometry kernel.

Every handler is a pure function from a payload dict to a result dict,
shared between the HTTP server and the test suite. Responses are
serialized with a fixed float format so identical requests produce
byte-identical bodies.
"""

from __future__ import annotations

import json
import math
import os
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import numpy as np

from .catalog import dual_tiling_group, orbit, registry, tiling_group
from .config import set_tol
from .errors import GeometryError, WrongSignature
from .lineals import Lineal, carrier_motion, connectable, measure_between
from .motions import Motion, decompose, main_rotation, parameterize, rotation
from .signature import Signature
from .triangles import area_integral_oracle, right_triangle_area, solve_right_triangle, solve_triangle_sas
from .vectors import point

DEFAULT_PORT = 7321


def _fmt_float(x):
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if math.isnan(x):
        return '"nan"'
    if x == 0.0:
        return "0"
    return format(x, ".17g")


def dumps(obj):
    """Deterministic JSON with 17 significant digits for floats."""
    out = []

    def walk(o):
        if o is None:
            out.append("null")
        elif o is True:
            out.append("true")
        elif o is False:
            out.append("false")
        elif isinstance(o, str):
            out.append(json.dumps(o))
        elif isinstance(o, int):
            out.append(str(o))
        elif isinstance(o, float):
            out.append(_fmt_float(o))
        elif isinstance(o, dict):
            out.append("{")
            for i, (k, v) in enumerate(o.items()):
                if i:
                    out.append(",")
                out.append(json.dumps(str(k)))
                out.append(":")
                walk(v)
            out.append("}")
        elif isinstance(o, (list, tuple)):
            out.append("[")
            for i, v in enumerate(o):
                if i:
                    out.append(",")
                walk(v)
            out.append("]")
        else:
            raise TypeError(f"cannot serialize {type(o)!r}")

    walk(obj)
    return "".join(out)


class BadRequest(Exception):
    pass


def _sig(payload):
    try:
        return Signature.parse(payload["sig"])
    except KeyError:
        raise BadRequest("missing 'sig'")
    except WrongSignature as exc:
        raise BadRequest(str(exc))


def _vectors(payload, key):
    try:
        rows = payload[key]
        return [np.array(row, dtype=float) for row in rows]
    except (KeyError, TypeError, ValueError):
        raise BadRequest(f"missing or malformed {key!r}")


def handle_measure(payload):
    sig = _sig(payload)
    a = Lineal.from_vectors(_vectors(payload, "a"), sig)
    b = Lineal.from_vectors(_vectors(payload, "b"), sig)
    tol = float(payload.get("tol", 1e-7))
    return measure_between(a, b, tol).to_json()


def handle_decompose(payload):
    sig = _sig(payload)
    motion = Motion(np.array(payload["rows"], dtype=float), sig, validate=True, tol=1e-7)
    return decompose(motion).to_json()


def handle_triangle(payload):
    sig = _sig(payload)
    if "sas" in payload:
        sas = payload["sas"]
        try:
            tri = solve_triangle_sas(float(sas["b"]), float(sas["c"]), float(sas["alpha"]), sig)
        except (KeyError, TypeError):
            raise BadRequest("sas needs numeric 'b', 'c', 'alpha'")
        return tri.to_json()
    if "right" in payload:
        known = {k: float(v) for k, v in payload["right"].items() if v is not None}
        return solve_right_triangle(known, sig).to_json()
    raise BadRequest("triangle needs 'sas' or 'right'")


def handle_area(payload):
    sig = _sig(payload)
    try:
        a = float(payload["a"])
        b = float(payload["b"])
    except (KeyError, TypeError, ValueError):
        raise BadRequest("area needs numeric 'a' and 'b'")
    result = right_triangle_area(a, b, sig).to_json()
    steps = payload.get("oracle_steps")
    if steps:
        result["oracle"] = area_integral_oracle(a, b, sig, steps=int(steps))
    return result


def handle_connectable(payload):
    sig = _sig(payload)
    try:
        x = np.array(payload["x"], dtype=float)
        y = np.array(payload["y"], dtype=float)
    except (KeyError, TypeError, ValueError):
        raise BadRequest("connectable needs vectors 'x' and 'y'")
    return connectable(x, y, sig).to_json()


def _motion_from(payload, sig):
    desc = payload.get("motion")
    if not isinstance(desc, dict):
        raise BadRequest("missing 'motion'")
    if "rows" in desc:
        return Motion(np.array(desc["rows"], dtype=float), sig, validate=True, tol=1e-7)
    if "axis" in desc:
        return main_rotation(int(desc["axis"]), float(desc["angle"]), sig)
    if "i" in desc and "j" in desc:
        return rotation(int(desc["i"]), int(desc["j"]), float(desc["phi"]), sig)
    if "from" in desc and "to" in desc:
        origin = np.array(desc["from"], dtype=float)
        dst = np.array(desc["to"], dtype=float)
        motion, _d, _k = carrier_motion(origin, dst, sig)
        return motion
    raise BadRequest("motion needs 'rows', 'axis'/'angle', 'i'/'j'/'phi' or 'from'/'to'")


def handle_apply(payload):
    """Apply a motion to points; 'fraction(s)' interpolate along its path.

    With "normalize" true the inputs are first brought onto the unit
    sphere (the way the explorer turns raw chart clicks into points).
    """
    sig = _sig(payload)
    motion = _motion_from(payload, sig)
    points = _vectors(payload, "points")
    if payload.get("normalize"):
        points = [point(p, sig) for p in points]
    fractions = payload.get("fractions")
    if fractions is not None:
        frames = []
        for p in fractions:
            step = parameterize(motion, float(p))
            frames.append([step.apply_point(pt).tolist() for pt in points])
        return {"frames": frames}
    fraction = payload.get("fraction")
    if fraction is not None:
        motion = parameterize(motion, float(fraction))
    moved = [motion.apply_point(p).tolist() for p in points]
    return {"points": moved}


def handle_tiling(payload):
    try:
        p = int(payload["p"])
        q = int(payload["q"])
        depth = int(payload.get("depth", 2))
    except (KeyError, TypeError, ValueError):
        raise BadRequest("tiling needs integer 'p' and 'q'")
    kind = payload.get("kind", "tiling")
    if kind == "dual":
        group = dual_tiling_group(p, q, phi=float(payload.get("phi", 1.0)))
    else:
        group = tiling_group(p, q, d=float(payload.get("d", 1.0)))
    out = orbit(group, depth, tol=float(payload.get("tol", 1e-6)))
    data = out.to_json()
    data["sig"] = str(group.plane_sig)
    return data


def handle_spaces(_payload=None):
    return {"spaces": registry()}


def handle_health(_payload=None):
    return {"status": "ok"}


POST_ROUTES = {
    "/measure": handle_measure,
    "/decompose": handle_decompose,
    "/triangle": handle_triangle,
    "/area": handle_area,
    "/connectable": handle_connectable,
    "/apply": handle_apply,
    "/tiling": handle_tiling,
}

GET_ROUTES = {
    "/spaces": handle_spaces,
    "/health": handle_health,
}


def dispatch(method, path, payload):
    """Route a request; returns (status, body dict)."""
    routes = POST_ROUTES if method == "POST" else GET_ROUTES
    handler = routes.get(path)
    if handler is None:
        return 404, {"ok": False, "error": {"code": "not-found", "message": path}}
    try:
        result = handler(payload)
    except BadRequest as exc:
        return 400, {"ok": False, "error": {"code": "bad-request", "message": str(exc)}}
    except GeometryError as exc:
        return 422, {"ok": False, "error": {"code": exc.code, "message": str(exc)}}
    except (KeyError, TypeError, ValueError) as exc:
        return 400, {"ok": False, "error": {"code": "bad-request", "message": repr(exc)}}
    return 200, {"ok": True, "result": result}


class _Handler(BaseHTTPRequestHandler):
    server_version = "homspace"

    def _reply(self, status, body):
        raw = dumps(body).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(raw)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(raw)

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.end_headers()

    def do_GET(self):
        status, body = dispatch("GET", self.path.split("?")[0], None)
        self._reply(status, body)

    def do_POST(self):
        length = int(self.headers.get("Content-Length", 0))
        raw = self.rfile.read(length) if length else b"{}"
        try:
            payload = json.loads(raw.decode("utf-8"))
            if not isinstance(payload, dict):
                raise ValueError("payload must be an object")
        except (ValueError, UnicodeDecodeError) as exc:
            self._reply(400, {"ok": False, "error": {"code": "bad-request", "message": str(exc)}})
            return
        status, body = dispatch("POST", self.path.split("?")[0], payload)
        self._reply(status, body)

    def log_message(self, *args):
        pass


def make_server(port=DEFAULT_PORT, host="127.0.0.1"):
    tol = os.environ.get("HOMSPACE_TOL")
    if tol:
        set_tol(float(tol))
    return ThreadingHTTPServer((host, port), _Handler)


def serve(port=DEFAULT_PORT, host="127.0.0.1"):
    server = make_server(port, host)
    try:
        server.serve_forever()
    finally:
        server.server_close()
