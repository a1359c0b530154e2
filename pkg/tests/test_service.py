import json
import math
import threading
import urllib.request

import numpy as np
import pytest

from homspace.motions import main_rotation, rotation
from homspace.service import (
    dispatch,
    dumps,
    handle_apply,
    handle_area,
    handle_connectable,
    handle_decompose,
    handle_measure,
    handle_spaces,
    handle_tiling,
    handle_triangle,
    make_server,
)
from homspace.signature import Signature
from homspace.vectors import meta_product


class TestDumps:
    def test_floats_are_deterministic(self):
        body = {"x": 1 / 3, "y": [2.0, math.pi], "s": "ok", "n": None, "b": True}
        assert dumps(body) == dumps(body)
        parsed = json.loads(dumps(body))
        assert abs(parsed["x"] - 1 / 3) < 1e-16

    def test_infinite_literal(self):
        assert dumps({"v": math.inf}) == '{"v":"inf"}'


class TestHandlers:
    def test_measure_identical_lines(self):
        payload = {
            "sig": "{-1,1}",
            "a": [[1, 0, 0], [0, 1, 0]],
            "b": [[1, 0, 0], [0, 1, 0]],
        }
        out = handle_measure(payload)
        assert out["case"] == "a"
        assert out["ambiguous"] is True

    def test_measure_distance(self):
        sig = Signature((-1, 1))
        moved = rotation(0, 1, 0.8, sig).apply([1.0, 0.0, 0.0])
        out = handle_measure({"sig": "{-1,1}", "a": [[1, 0, 0]], "b": [moved.tolist()]})
        assert abs(out["value"] - 0.8) < 1e-9
        assert out["type"] == -1

    def test_decompose_round_trip(self):
        sig = Signature((1, 1))
        m = main_rotation(2, 0.7, sig)
        out = handle_decompose({"sig": "{1,1}", "rows": m.m.tolist()})
        assert len(out["rotations"]) >= 1
        assert out["reflection"] == [1, 1, 1]

    def test_triangle_sas(self):
        out = handle_triangle(
            {"sig": "{0,1}", "sas": {"b": 3.0, "c": 4.0, "alpha": math.pi / 2}}
        )
        assert abs(out["a"] - 5.0) < 1e-12

    def test_triangle_right_undetermined_literal(self):
        out = handle_triangle({"sig": "{0,0}", "right": {"b": 1.0, "c": 1.0}})
        assert out["alpha"] == "undetermined"

    def test_area_with_oracle(self):
        out = handle_area({"sig": "{0,1}", "a": 3.0, "b": 4.0, "oracle_steps": 500})
        assert out["value"] == 6.0
        assert abs(out["oracle"] - 6.0) < 1e-4

    def test_connectable_spec_example(self):
        y = [1.0, 0.0, 1.0]
        y = (np.array(y) / 1.0).tolist()
        out = handle_connectable({"sig": "{0,-1}", "x": [1, 0, 0], "y": y})
        assert out["kind"] == "unconnectable"

    def test_apply_rotates_origin(self):
        out = handle_apply(
            {
                "sig": "{1,1}",
                "motion": {"axis": 1, "angle": 0.5},
                "points": [[1, 0, 0]],
            }
        )
        x = out["points"][0]
        assert abs(x[0] - math.cos(0.5)) < 1e-15
        assert abs(x[1] - math.sin(0.5)) < 1e-15
        assert x[2] == 0.0

    def test_apply_fraction_interpolates(self):
        out = handle_apply(
            {
                "sig": "{1,1}",
                "motion": {"axis": 1, "angle": 0.8},
                "points": [[1, 0, 0]],
                "fraction": 0.5,
            }
        )
        assert abs(out["points"][0][1] - math.sin(0.4)) < 1e-12

    def test_apply_preserves_meta_products(self, rng):
        sig = Signature((0, -1, 1))
        pts = [np.array([1.0, *rng.normal(size=3) * 0.2]) for _ in range(4)]
        out = handle_apply(
            {
                "sig": str(sig),
                "motion": {"i": 0, "j": 2, "phi": 0.6},
                "points": [p.tolist() for p in pts],
            }
        )
        moved = [np.array(p) for p in out["points"]]
        for i in range(4):
            for j in range(i + 1, 4):
                before = meta_product(pts[i], pts[j], sig)
                after = meta_product(moved[i], moved[j], sig)
                assert abs(abs(after) - abs(before)) < 1e-9

    def test_tiling_counts(self):
        out = handle_tiling({"p": 3, "q": 7, "depth": 2})
        assert out["min_distance"] > 0
        assert len(out["nodes"]) > 4
        assert out["sig"] == "{-1,1}"

    def test_spaces_registry(self):
        spaces = handle_spaces()["spaces"]
        assert {"name": "minkowski", "sig": "{0,-1,1,1}", "dimension": 4} in spaces


class TestDispatch:
    def test_unknown_route(self):
        status, body = dispatch("POST", "/nope", {})
        assert status == 404

    def test_domain_error_is_422(self):
        status, body = dispatch(
            "POST", "/area", {"sig": "{1,-1}", "a": 3.0, "b": 3.0}
        )
        assert status == 422
        assert body["error"]["code"] == "out-of-domain"

    def test_malformed_is_400(self):
        status, body = dispatch("POST", "/measure", {"sig": "{1,1}"})
        assert status == 400

    def test_determinism(self):
        payload = {"sig": "{-1,1}", "a": [[1, 0, 0]], "b": [[1.0, 0.2, 0.1]]}
        a = dumps(dispatch("POST", "/measure", payload)[1])
        b = dumps(dispatch("POST", "/measure", payload)[1])
        assert a == b


@pytest.fixture(scope="module")
def live_server():
    server = make_server(port=0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}"
    server.shutdown()
    server.server_close()


def _post(base, path, payload):
    req = urllib.request.Request(
        base + path,
        data=json.dumps(payload).encode(),
        headers={"Content-Type": "application/json"},
        method="POST",
    )
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, json.loads(resp.read())
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read())


class TestHTTP:
    def test_health(self, live_server):
        with urllib.request.urlopen(live_server + "/health") as resp:
            assert resp.status == 200
            assert json.loads(resp.read())["result"]["status"] == "ok"

    def test_spaces_contains_minkowski(self, live_server):
        with urllib.request.urlopen(live_server + "/spaces") as resp:
            body = json.loads(resp.read())
        names = {s["name"]: s["sig"] for s in body["result"]["spaces"]}
        assert names["minkowski"] == "{0,-1,1,1}"

    def test_connectable_endpoint(self, live_server):
        status, body = _post(
            live_server,
            "/connectable",
            {"sig": "{0,-1}", "x": [1, 0, 0], "y": [1, 0, 1]},
        )
        assert status == 200
        assert body["result"]["kind"] == "unconnectable"

    def test_apply_endpoint(self, live_server):
        status, body = _post(
            live_server,
            "/apply",
            {"sig": "{1,1}", "motion": {"axis": 1, "angle": 0.5}, "points": [[1, 0, 0]]},
        )
        assert status == 200
        pt = body["result"]["points"][0]
        assert abs(pt[0] - math.cos(0.5)) < 1e-12

    def test_malformed_json_400(self, live_server):
        req = urllib.request.Request(
            live_server + "/measure", data=b"{not json", method="POST"
        )
        with pytest.raises(urllib.error.HTTPError) as err:
            urllib.request.urlopen(req)
        assert err.value.code == 400

    def test_byte_identical_responses(self, live_server):
        payload = {"sig": "{-1,1}", "a": [[1, 0, 0]], "b": [[1.0, 0.3, 0.0]]}
        req = lambda: urllib.request.urlopen(
            urllib.request.Request(
                live_server + "/measure",
                data=json.dumps(payload).encode(),
                method="POST",
            )
        ).read()
        assert req() == req()

    def test_concurrent_requests(self, live_server):
        results = []

        def hit():
            status, body = _post(
                live_server,
                "/measure",
                {"sig": "{1,1}", "a": [[1, 0, 0]], "b": [[1.0, 0.4, 0.0]]},
            )
            results.append((status, body["result"]["value"]))

        threads = [threading.Thread(target=hit) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert len(results) == 8
        assert all(status == 200 for status, _ in results)
        values = {round(v, 12) for _, v in results}
        assert len(values) == 1


class TestCarrierMotion:
    def test_from_to_reaches_target(self):
        for text in ("{1,1}", "{-1,1}", "{0,1}", "{0,-1}", "{0,0}"):
            sig = Signature.parse(text)
            target = rotation(0, 1, 0.7, sig).apply([1.0, 0.0, 0.0])
            out = handle_apply(
                {
                    "sig": text,
                    "motion": {"from": [1, 0, 0], "to": target.tolist()},
                    "points": [[1, 0, 0]],
                }
            )
            assert np.max(np.abs(np.array(out["points"][0]) - target)) < 1e-9, text

    def test_fractions_return_frames(self):
        out = handle_apply(
            {
                "sig": "{1,1}",
                "motion": {"axis": 1, "angle": 0.8},
                "points": [[1, 0, 0]],
                "fractions": [0.0, 0.5, 1.0],
            }
        )
        assert len(out["frames"]) == 3
        assert abs(out["frames"][1][0][1] - math.sin(0.4)) < 1e-12
        assert abs(out["frames"][2][0][1] - math.sin(0.8)) < 1e-12

    def test_segment_sampling_monotone(self):
        # geodesic samples interpolate between the endpoints
        sig = "{-1,1}"
        target = rotation(0, 1, 1.0, Signature.parse(sig)).apply([1.0, 0.0, 0.0])
        out = handle_apply(
            {
                "sig": sig,
                "motion": {"from": [1, 0, 0], "to": target.tolist()},
                "points": [[1, 0, 0]],
                "fractions": [i / 10 for i in range(11)],
            }
        )
        xs = [frame[0][1] for frame in out["frames"]]
        assert all(b > a - 1e-12 for a, b in zip(xs, xs[1:]))
        assert abs(xs[0]) < 1e-12
        assert abs(xs[-1] - target[1]) < 1e-9


class TestHigherDimensions:
    def test_minkowski_spacetime_measures(self, rng):
        # the full 4-dimensional space through the service surface
        sig = "{0,-1,1,1}"
        out = handle_measure(
            {"sig": sig, "a": [[1, 0, 0, 0, 0]], "b": [[1, 0.6, 0.2, 0.1, 0]]}
        )
        assert out["case"] == "d"
        assert out["type"] == 0
        out2 = handle_apply(
            {
                "sig": sig,
                "motion": {"i": 1, "j": 4, "phi": 0.4},
                "points": [[1, 0.6, 0.2, 0.1, 0]],
            }
        )
        assert len(out2["points"][0]) == 5

    def test_decompose_five_dimensional(self, rng):
        from homspace.motions import decompose, random_motion
        from homspace.signature import Signature

        for elems in ((1, -1, 0, 1, 1), (-1, 1, 1, 1, 1), (0, 0, 1, -1, 1)):
            sig = Signature(elems)
            m = random_motion(sig, rng, max_angle=0.8)
            dec = decompose(m)
            assert len(dec.rotations) <= 15
            assert dec.recompose().close_to(m, 1e-8)

    def test_desitter_registry_distance(self):
        # de Sitter spatial translations are elliptic
        sig = "{-1,-1,1,1}"
        moved = rotation(0, 2, 0.5, Signature.parse(sig)).apply([1, 0, 0, 0, 0])
        out = handle_measure({"sig": sig, "a": [[1, 0, 0, 0, 0]], "b": [moved.tolist()]})
        assert out["case"] == "c"
        assert out["type"] == 1
        assert abs(out["value"] - 0.5) < 1e-9
