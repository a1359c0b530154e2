"""Named spaces, signature derivation, duality and crystallographic groups.

The registry maps the classical space names to signatures; the group
constructors realize the worked tiling and lattice groups on all nine
planes, with orbit enumeration for rendering and discreteness checks.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParams, MalformedForm, OrbitExplosion, Unsupported, WrongSignature
from .motions import Motion, compose, inverse, main_rotation, rotation
from .signature import Signature, gtrig_inverse
from .vectors import canonical_point

# -- named spaces ------------------------------------------------------------

_FAMILIES = {
    # name -> (k1, filler, default n); the filler extends {k1, k2, ...}
    "elliptic": ((1,), 1, 2),
    "euclidean": ((0,), 1, 2),
    "hyperbolic": ((-1,), 1, 2),
    "galilean": ((0, 0), 1, 2),
    "galilean-positive": ((1, 0), 1, 2),
    "galilean-negative": ((-1, 0), 1, 2),
    "minkowski": ((0, -1), 1, 4),
    "antidesitter": ((1, -1), 1, 4),
    "desitter": ((-1, -1), 1, 4),
    "galilean-spacetime": ((0, 0), 1, 4),
}

_NAME_RE = re.compile(r"^([a-z-]+?)(\d+)?$")


def named_space(name):
    """Signature of a named space; a trailing digit overrides the dimension."""
    m = _NAME_RE.match(name.strip().lower())
    if not m or m.group(1) not in _FAMILIES:
        raise WrongSignature(f"unknown space name {name!r}")
    head, filler, default_n = _FAMILIES[m.group(1)]
    n = int(m.group(2)) if m.group(2) else default_n
    if n < len(head):
        raise WrongSignature(f"{name!r} needs dimension >= {len(head)}")
    return Signature(head + (filler,) * (n - len(head)))


def registry():
    """All named spaces at their default dimensions."""
    out = []
    for name in _FAMILIES:
        sig = named_space(name)
        out.append({"name": name, "sig": str(sig), "dimension": sig.n})
    return out


# -- signatures from quadratic forms ----------------------------------------


@dataclass
class FormSignature:
    sig: Signature
    ambiguous: tuple  # positions whose element defaulted to 1
    reordered: bool


def signature_from_form(coeffs, curvature):
    """Signature of the space carrying the bilinear form sum p_i x_i y_i.

    The first coefficient must be +1 and zeros must trail (they are
    moved there with a warning flag otherwise); trailing 0/0 quotients
    are genuinely free and default to 1, reported as ambiguous.
    """
    coeffs = [int(c) for c in coeffs]
    if any(c not in (-1, 0, 1) for c in coeffs):
        raise MalformedForm("coefficients must be -1, 0 or +1")
    if not coeffs or coeffs[0] != 1:
        raise MalformedForm("the first coefficient must be +1")
    reordered = False
    nonzero = [c for c in coeffs if c != 0]
    zeros = len(coeffs) - len(nonzero)
    if 0 in coeffs[: len(nonzero)]:
        reordered = True
        coeffs = nonzero + [0] * zeros
    if curvature not in (-1, 0, 1):
        raise MalformedForm("curvature must be -1, 0 or +1")
    elements = [curvature]
    ambiguous = []
    for i in range(1, len(coeffs)):
        prev, cur = coeffs[i - 1], coeffs[i]
        if prev != 0:
            elements.append(cur * prev)  # p_{i}/p_{i-1} with p in {-1, 1}
        else:
            ambiguous.append(i)
            elements.append(1)
    return FormSignature(Signature(elements), tuple(ambiguous), reordered)


def metaspace_signature(sig):
    return sig.metaspace()


# -- duality ----------------------------------------------------------------


def anti_transpose(matrix):
    """Reflection across the secondary diagonal."""
    return np.flip(np.asarray(matrix, dtype=float)).T.copy()


def dual_transform(motion):
    """The isomorphism xi(M) = eta(M^-1) onto the reversed signature.

    eta is the anti-transposition; xi is a homomorphism and carries
    main rotations R_i to the dual main rotations R'_{n-i}.
    """
    dual_sig = Signature(tuple(reversed(motion.sig.elements)))
    return Motion(anti_transpose(inverse(motion).m), dual_sig)


# -- crystallographic groups -------------------------------------------------


@dataclass
class CrystalGroup:
    plane_sig: Signature
    generators: list  # [translation-like, rotation-like]
    params: dict = field(default_factory=dict)
    seed: np.ndarray = None

    def __post_init__(self):
        if self.seed is None:
            self.seed = np.zeros(self.plane_sig.n + 1)
            self.seed[0] = 1.0


def tiling_class(p, q):
    """Length type of the (p, q) tiling plane from (p-2)(q-2) vs 4."""
    if p < 3 or q < 3:
        raise InvalidParams("tiling needs p, q >= 3")
    product = (p - 2) * (q - 2)
    if product < 4:
        return 1
    if product == 4:
        return 0
    return -1


def _fundamental_lengths(p, q, k):
    """Catheti and hypotenuse of the fundamental right triangle."""
    a = gtrig_inverse(math.cos(math.pi / q) / math.sin(math.pi / p), "C", k)
    b = gtrig_inverse(math.cos(math.pi / p) / math.sin(math.pi / q), "C", k)
    c = gtrig_inverse(1.0 / (math.tan(math.pi / p) * math.tan(math.pi / q)), "C", k)
    return a, b, c


def _parity_step(p, q, a, b, c):
    if q % 2 == 0:
        return b
    if p % 2 == 0:
        return b + c
    return a + b + c


def tiling_group(p, q, d=1.0):
    """Symmetry group of the regular {p, q} tiling on the plane {k1, 1}.

    The translation moves by twice the parity-selected step; the point
    rotation turns by 2 pi / q. On the Euclidean plane the step length
    is free and the caller's d is used.
    """
    k1 = tiling_class(p, q)
    sig = Signature((k1, 1))
    params = {"p": p, "q": q, "k1": k1}
    if k1 == 0:
        step = float(d)
    else:
        a, b, c = _fundamental_lengths(p, q, k1)
        step = _parity_step(p, q, a, b, c)
        params.update({"a": a, "b": b, "c": c})
    params["d"] = step
    t = main_rotation(1, 2.0 * step, sig)
    r = main_rotation(2, 2.0 * math.pi / q, sig)
    return CrystalGroup(plane_sig=sig, generators=[t, r], params=params)


def dual_tiling_group(p, q, phi=1.0):
    """Dual of the {p, q} tiling group on the plane {1, k2'}.

    Roles of step and turn swap: the translation becomes the elliptic
    rotation by 2 pi / q and the point rotation takes the tiling step,
    now at the dual angular type. Duals of Euclidean tilings land on
    {1, 0} with a free turn, duals of hyperbolic ones on {1, -1}.
    """
    k2 = tiling_class(p, q)
    sig = Signature((1, k2))
    params = {"p": p, "q": q, "k2": k2, "d": math.pi / q}
    if k2 == 0:
        turn = float(phi)
    else:
        a, b, c = _fundamental_lengths(p, q, k2)
        turn = _parity_step(p, q, a, b, c)
        params.update({"a": a, "b": b, "c": c})
    params["phi"] = turn
    t = main_rotation(1, 2.0 * math.pi / q, sig)
    r = main_rotation(2, 2.0 * turn, sig)
    return CrystalGroup(plane_sig=sig, generators=[t, r], params=params)


def linear_plane_group(kind, a=1.0, b=1.0, u=2, plus=True):
    """Lattice symmetry groups of the linear Galilean and Minkowski planes.

    Galilean: a free shear lattice with d = a and turn b / a. Minkowski:
    the boost angle is acosh(u) for integer u >= 2 and b / a is chosen
    so the boost maps lattice points to lattice points; the integer
    image coefficients (u, v, r, t) are reported in params.
    """
    kind = kind.lower()
    if kind == "galilean":
        if a <= 0:
            raise InvalidParams("galilean lattice needs a > 0")
        sig = Signature((0, 0))
        t = main_rotation(1, float(a), sig)
        r = main_rotation(2, float(b) / float(a), sig)
        return CrystalGroup(sig, [t, r], {"kind": kind, "d": a, "phi": b / a})
    if kind == "minkowski":
        u = int(u)
        if u < 2:
            raise InvalidParams("minkowski lattice needs integer u >= 2")
        sig = Signature((0, -1))
        phi = math.acosh(u)
        ratio = math.sqrt((u + 1) / (u - 1)) if plus else math.sqrt((u - 1) / (u + 1))
        v = u - 1 if plus else u + 1
        r_coef = u + 1 if plus else u - 1
        t = main_rotation(1, float(a), sig)
        r = main_rotation(2, phi, sig)
        params = {
            "kind": kind,
            "d": a,
            "phi": phi,
            "b_over_a": ratio,
            "lattice": {"u": u, "v": v, "r": r_coef, "t": u},
        }
        return CrystalGroup(sig, [t, r], params)
    raise InvalidParams(f"unknown linear plane kind {kind!r}")


def dual_group(group):
    """xi-image of a crystallographic group on the reversed signature."""
    dual_sig = Signature(tuple(reversed(group.plane_sig.elements)))
    gens = [dual_transform(g) for g in group.generators]
    return CrystalGroup(dual_sig, gens, {"dual_of": dict(group.params)})


def negative_minkowski_group(p, q):
    """Group on the {-1, -1} plane routed through the hyperbolic tiling.

    Both generators are main rotations; the turn angle depends on q mod
    4 and only even q is supported, following the printed construction.
    """
    if tiling_class(p, q) != -1:
        raise InvalidParams("needs a hyperbolic pair: (p-2)(q-2) > 4")
    if q % 2 != 0:
        raise Unsupported("only even q is constructed on the {-1,-1} plane")
    a, b, c = _fundamental_lengths(p, q, -1)
    phi = b if q % 4 == 0 else a + c
    sig = Signature((-1, -1))
    t = main_rotation(1, 2.0 * b, sig)
    r = main_rotation(2, 2.0 * phi, sig)
    return CrystalGroup(sig, [t, r], {"p": p, "q": q, "d": b, "phi": phi})


# -- orbits ------------------------------------------------------------------


@dataclass
class Orbit:
    nodes: list
    edges: list
    min_distance: float | None

    def to_json(self):
        return {
            "nodes": [n.tolist() for n in self.nodes],
            "edges": [list(e) for e in self.edges],
            "min_distance": self.min_distance,
        }


def _node_key(v, tol):
    return tuple(np.round(v / max(tol, 1e-12)).astype(np.int64).tolist())


def _lookup_near(index, nodes, v, tol):
    """Find an existing node within tol, probing the neighboring cells."""
    base = np.asarray(_node_key(v, tol))
    deltas = (-1, 0, 1)
    for dx in deltas:
        for dy in deltas:
            for dz in deltas if base.size > 2 else (0,):
                key = tuple((base + np.array((dx, dy, dz))[: base.size]).tolist())
                i = index.get(key)
                if i is not None and np.max(np.abs(nodes[i] - v)) <= 2 * tol:
                    return i
    return None


def orbit(group, depth, tol=1e-6, node_cap=50000):
    """Breadth-first lattice enumeration up to ``depth`` moving steps.

    Generators fixing the seed are stabilizer moves and do not consume
    depth; each level is closed under them before the moving generators
    advance it. Edges join a node to its images under any generator.
    """
    sig = group.plane_sig
    seed = canonical_point(group.seed)
    gens = []
    for g in group.generators:
        gens.append(g)
        gens.append(inverse(g))
    stabilizer = [g for g in gens if np.max(np.abs(g.apply_point(seed) - seed)) <= tol]
    movers = [g for g in gens if g not in stabilizer]

    nodes = [seed]
    index = {_node_key(seed, tol): 0}
    edges = set()

    def visit(v):
        hit = _lookup_near(index, nodes, v, tol)
        if hit is not None:
            return hit, False
        if len(nodes) >= node_cap:
            raise OrbitExplosion(f"orbit exceeded {node_cap} nodes")
        index[_node_key(v, tol)] = len(nodes)
        nodes.append(v)
        return len(nodes) - 1, True

    def close_under_stabilizer(frontier):
        queue = list(frontier)
        out = list(frontier)
        while queue:
            i = queue.pop()
            for g in stabilizer:
                j, fresh = visit(g.apply_point(nodes[i]))
                edges.add((min(i, j), max(i, j)) if i != j else None)
                if fresh:
                    queue.append(j)
                    out.append(j)
        return out

    frontier = close_under_stabilizer([0])
    for _ in range(int(depth)):
        advanced = []
        for i in frontier:
            for g in movers:
                j, fresh = visit(g.apply_point(nodes[i]))
                if i != j:
                    edges.add((min(i, j), max(i, j)))
                if fresh:
                    advanced.append(j)
        frontier = close_under_stabilizer(advanced)
        if not frontier:
            break
    edges.discard(None)
    return Orbit(nodes=nodes, edges=sorted(edges), min_distance=_min_distance(nodes, sig))


def _min_distance(nodes, sig):
    """Smallest pairwise distance over connectable node pairs."""
    if len(nodes) < 2:
        return None
    pts = np.array(nodes)
    k1 = sig.elements[0]
    best = None
    if k1 != 0:
        gram = (pts * sig.K) @ pts.T
        for i in range(len(nodes)):
            for j in range(i + 1, len(nodes)):
                c = gram[i, j]
                if k1 == 1:
                    d = math.acos(min(max(c, -1.0), 1.0))
                else:
                    if c < 1.0:
                        continue  # not connectable along a k1-type line
                    d = math.acosh(c)
                if d > 1e-12 and (best is None or d < best):
                    best = d
    else:
        # parabolic planes: distance of the difference at level 1
        weights = sig._pair_finite[1]
        for i in range(len(nodes)):
            for j in range(i + 1, len(nodes)):
                diff = pts[i] - pts[j]
                sq = float(np.dot(weights * diff, diff))
                if sq <= 1e-24:
                    continue
                d = math.sqrt(sq)
                if best is None or d < best:
                    best = d
    return best


def apply_words(group, words):
    """Motions for generator words like "TtRr" (letter case = inverse)."""
    t, r = group.generators
    table = {"T": t, "t": inverse(t), "R": r, "r": inverse(r)}
    out = []
    for word in words:
        m = Motion(np.eye(group.plane_sig.n + 1), group.plane_sig)
        for ch in word:
            m = compose(m, table[ch])
        out.append(m)
    return out
