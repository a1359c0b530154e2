"""Lineal algebra: subspaces of the metaspace cut by the unit sphere.

A lineal is stored as an ordered orthonormal basis (indexed vectors
normalized, limit vectors kept unnormalized) together with the ambient
signature. Planes are the special case where the basis extends a
coordinate flag; general lineals may have any signature the index
arithmetic allows, including limit lineals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import get_tol
from .errors import (
    AllVectorsDegenerate,
    AlreadyOrthogonal,
    AntipodalAmbiguity,
    Degenerate,
    DegenerateTriangle,
    IndexConflict,
    InputNotOrthonormal,
    LimitSum,
    UnclassifiableMeasure,
    UnconnectableError,
    Unsupported,
    WrongSignature,
)
from .signature import INFINITE, Signature
from .vectors import (
    as_vector,
    canonical_point,
    decomposition_vectors,
    limit_orthogonalize,
    normalize,
    point,
    product_i,
    vector_index,
)


def _norm_inf(v):
    return float(np.max(np.abs(v))) if v.size else 0.0


class Lineal:
    """Orthonormal-basis representation of a lineal."""

    __slots__ = ("sig", "basis", "least", "doubles", "assigned", "proper")

    def __init__(self, basis, sig, tol=None):
        self.sig = sig
        self.basis = [as_vector(v, sig) for v in basis]
        least = []
        doubles = []
        for v in self.basis:
            idx = vector_index(v, sig, tol)
            least.append(idx)
            if idx is None:
                _a, _b, i, j = decomposition_vectors(v, sig, tol)
                doubles.append((i, j))
            else:
                doubles.append(None)
        self.least = least
        self.doubles = doubles
        self.assigned = _assign_indices(least, doubles, sig)
        self.proper = any(idx == 0 for idx in least)

    @classmethod
    def from_vectors(cls, vectors, sig, tol=None):
        """Orthonormalize an arbitrary family and wrap it."""
        return cls(orthonormalize(vectors, sig, tol), sig, tol)

    @classmethod
    def from_points(cls, points_, sig, tol=None):
        return cls.from_vectors([as_vector(p, sig) for p in points_], sig, tol)

    @classmethod
    def coordinate_plane(cls, positions, sig):
        """Lineal spanned by the listed coordinate vectors."""
        basis = []
        for p in positions:
            v = np.zeros(sig.n + 1)
            v[p] = 1.0
            basis.append(v)
        return cls(basis, sig)

    @property
    def nbasis(self):
        return len(self.basis)

    @property
    def dim(self):
        return len(self.basis) - 1

    @property
    def has_limit(self):
        return any(idx is None for idx in self.least)

    def transform(self, motion):
        if motion.sig != self.sig:
            raise WrongSignature("motion signature differs from lineal ambient")
        return Lineal([canonical_point(motion.apply(v)) for v in self.basis], self.sig)

    def to_json(self):
        return {"sig": str(self.sig), "basis": [v.tolist() for v in self.basis]}

    @classmethod
    def from_json(cls, data, tol=None):
        sig = Signature.parse(data["sig"])
        return cls.from_vectors([np.array(row, dtype=float) for row in data["basis"]], sig, tol)

    def __repr__(self):
        return f"Lineal(dim={self.dim}, sig={self.sig})"


def _assign_indices(least, doubles, sig):
    """Give every basis vector a distinct index inside its equivalence class.

    Indexed vectors may take any position of their class; limit vectors
    consume one position in each class of their double index.
    """
    used = set()

    def take(position_class_anchor):
        for m in sig.class_members(position_class_anchor):
            if m not in used:
                used.add(m)
                return m
        raise IndexConflict(
            f"no free index left in the class of position {position_class_anchor}"
        )

    assigned = []
    for idx, dbl in zip(least, doubles):
        if idx is None:
            assigned.append((take(dbl[0]), take(dbl[1])))
        else:
            assigned.append(take(idx))
    return assigned


# -- projection --------------------------------------------------------------


def project(v, lineal, tol=None):
    """Split v into (onto, ortho): the component in the lineal and the rest.

    Coefficients are obtained by solving the per-level orthogonality
    conditions, which reduces to the classical sum of products for
    well-behaved bases and picks one valid perpendicular when degenerate
    levels make it ambiguous. Limit basis vectors contribute through
    their decomposition parts.
    """
    sig = lineal.sig
    v = as_vector(v, sig)
    m = lineal.nbasis
    if m == 0:
        return np.zeros_like(v), v.copy()
    rows = []
    rhs = []
    for r, b in enumerate(lineal.basis):
        if lineal.least[r] is None:
            a_part, _b_part, ia, _jb = decomposition_vectors(b, sig, tol)
            level = ia
            ref = a_part
        else:
            level = lineal.least[r]
            ref = b
        rows.append(
            [product_i(c, ref, level, sig, strict=False) for c in lineal.basis]
        )
        rhs.append(product_i(v, ref, level, sig, strict=False))
    g = np.array(rows, dtype=float)
    rhs = np.array(rhs, dtype=float)
    coeffs, *_ = np.linalg.lstsq(g, rhs, rcond=None)
    onto = np.zeros_like(v)
    for c, b in zip(coeffs, lineal.basis):
        onto += c * b
    return onto, v - onto


# -- orthonormalization ------------------------------------------------------


def _append_residual(basis, v, sig, tol=None):
    """Gram-Schmidt step: project v off the family and absorb the residual.

    Returns True when a vector was added. Limit residuals stay
    unnormalized; existing indexed vectors in decomposition conflict
    with a new limit residual are shifted by it, which preserves their
    norms and mutual orthogonality.
    """
    tol_ = get_tol(tol)
    scale = _norm_inf(v)
    if scale <= tol_:
        return False
    partial = Lineal(basis, sig, tol) if basis else None
    residual = project(v, partial, tol)[1] if partial else v.copy()
    if _norm_inf(residual) <= max(tol_, 1e-12) * scale:
        return False
    idx = vector_index(residual, sig, tol)
    if idx is not None:
        basis.append(canonical_point(normalize(residual, sig, tol)))
        return True
    residual = canonical_point(residual)
    for k, existing in enumerate(basis):
        try:
            basis[k] = limit_orthogonalize(residual, existing, sig, tol)
        except AlreadyOrthogonal:
            continue
    basis.append(residual)
    return True


def orthonormalize(vectors, sig, tol=None):
    """Gram-Schmidt with natural products, lowest index first.

    Dependent vectors drop out; limit residuals are kept unnormalized
    and made decomposition-orthogonal to the rest of the family. A
    nonempty family of only zero vectors is rejected.
    """
    tol_ = get_tol(tol)
    vectors = [as_vector(v, sig) for v in vectors]
    if not vectors:
        return []
    if all(_norm_inf(v) <= tol_ for v in vectors):
        raise AllVectorsDegenerate("every input vector is numerically zero")

    def rank(v):
        scale = _norm_inf(v)
        if scale <= tol_:
            return (3, 0)
        idx = vector_index(v, sig, tol)
        return (1, sig.n + 1) if idx is None else (0, idx)

    order = sorted(range(len(vectors)), key=lambda i: (rank(vectors[i]), i))
    basis = []
    for pos in order:
        _append_residual(basis, vectors[pos], sig, tol)
    return basis


def complete(basis, sig, tol=None):
    """Extend an orthonormal family to a full one of n + 1 vectors.

    Coordinate vectors are projected off the family in order and the
    surviving residuals appended, so the input vectors are preserved.
    """
    tol_ = get_tol(tol)
    family = [as_vector(v, sig) for v in basis]
    probe = Lineal(family, sig, tol) if family else None
    if probe is not None:
        for r, b in enumerate(family):
            if probe.least[r] is None:
                continue
            sq = product_i(b, b, probe.least[r], sig, strict=False)
            if abs(sq - 1.0) > math.sqrt(tol_):
                raise InputNotOrthonormal(f"vector {r} is not normalized")
            for s in range(r):
                if probe.least[s] is None:
                    continue
                level = min(probe.least[r], probe.least[s])
                if abs(product_i(b, family[s], level, sig, strict=False)) > math.sqrt(tol_):
                    raise InputNotOrthonormal(f"vectors {s} and {r} are not orthogonal")
    out = list(family)
    for p in range(sig.n + 1):
        if len(out) == sig.n + 1:
            break
        e = np.zeros(sig.n + 1)
        e[p] = 1.0
        _append_residual(out, e, sig, tol)
    if len(out) != sig.n + 1:
        raise Degenerate("could not complete the family")
    return out


def canonical_basis(lineal, tol=None):
    """Rebuild the basis from ordered coordinate projections.

    Membership uses the plain linear span (which is basis independent
    even over degenerate metrics); the projected coordinate vectors are
    then orthonormalized in order. Equal spans give equal output.
    """
    sig = lineal.sig
    if lineal.nbasis == 0:
        return Lineal([], sig, tol)
    q, _ = np.linalg.qr(np.column_stack(lineal.basis))
    span_proj = q @ q.T
    candidates = [span_proj @ np.eye(sig.n + 1)[:, p] for p in range(sig.n + 1)]
    basis = orthonormalize(candidates, sig, tol)
    if len(basis) != lineal.nbasis:
        raise Degenerate("canonical basis lost rank")
    return Lineal(basis, sig, tol)


def lineal_signature(lineal, tol=None):
    """Own signature of the lineal from its basis index structure.

    Basis vectors are grouped by non-interchangeability; inside a group
    the consecutive indexed vectors contribute their pair types, a limit
    vector contributes a 0 after the indexed ones and 1 against further
    limit vectors, and a 0 separates consecutive groups.
    """
    sig = lineal.sig
    items = []
    for least, assigned in zip(lineal.least, lineal.assigned):
        if least is None:
            i, j = assigned
            items.append(("limit", int(sig.group_of[i]), (i, j)))
        else:
            items.append(("indexed", int(sig.group_of[assigned]), assigned))
    groups = {}
    for kind, group, data in items:
        groups.setdefault(group, {"indexed": [], "limit": []})[kind].append(data)
    elements = []
    for gi, group in enumerate(sorted(groups)):
        if gi > 0:
            elements.append(0)
        indexed = sorted(groups[group]["indexed"])
        nlimit = len(groups[group]["limit"])
        for prev, cur in zip(indexed, indexed[1:]):
            elements.append(int(sig.pair(prev, cur)))
        if nlimit:
            if indexed:
                elements.append(0)
            elements.extend([1] * (nlimit - 1))
    return Signature(elements)


# -- set operations ----------------------------------------------------------


def sum_and_intersection(a, b, tol=None):
    """Sum and intersection of two lineals.

    Span bookkeeping runs in the plain linear sense (metric free); a
    mirror family expresses every accumulated vector over the first
    basis, so each dependency harvested while absorbing the second basis
    is a concrete intersection vector. The counts satisfy
    nbasis(sum) + nbasis(inter) = nbasis(a) + nbasis(b) exactly.
    """
    if a.sig != b.sig:
        raise WrongSignature("lineals live in different ambients")
    sig = a.sig
    tol_ = get_tol(tol)
    dim = sig.n + 1
    w = []  # euclidean-orthonormal accumulator for span(a + b)
    mirror = []  # component of each w vector expressible inside span(a)
    for v in a.basis:
        r = v.copy()
        h = v.copy()
        for u, hu in zip(w, mirror):
            c = float(np.dot(u, r))
            r -= c * u
            h -= c * hu
        nr = np.linalg.norm(r)
        if nr > tol_:
            w.append(r / nr)
            mirror.append(h / nr)
    harvested = []
    for v in b.basis:
        r = v.copy()
        h = np.zeros(dim)
        for u, hu in zip(w, mirror):
            c = float(np.dot(u, r))
            r -= c * u
            h -= c * hu
        nr = np.linalg.norm(r)
        if nr > max(tol_, 1e-12) * max(_norm_inf(v), 1.0):
            w.append(r / nr)
            mirror.append(h / nr)
        else:
            if _norm_inf(h) <= tol_:
                raise Degenerate("dependency produced a trivial intersection vector")
            harvested.append(h)
    total = Lineal.from_vectors(list(a.basis) + list(b.basis), sig, tol)
    inter = Lineal.from_vectors(harvested, sig, tol)
    if total.nbasis + inter.nbasis != a.nbasis + b.nbasis:
        raise Degenerate("rank bookkeeping failed in sum/intersection")
    return total, inter


def difference(a, b, tol=None):
    """Lineal of the projections of a's basis onto b's orthogonal complement.

    Total: vanished projections simply drop, so the result may be empty.
    """
    if a.sig != b.sig:
        raise WrongSignature("lineals live in different ambients")
    tol_ = get_tol(tol)
    residuals = [project(v, b, tol)[1] for v in a.basis]
    residuals = [r for r in residuals if _norm_inf(r) > tol_]
    if not residuals:
        return Lineal([], a.sig, tol)
    return Lineal.from_vectors(residuals, a.sig, tol)


# -- state matrix and measures ----------------------------------------------


def state_matrix(vectors, sig, indices=None, tol=None):
    """Matrix of products v_i (.)_{level_i} v_j.

    Levels default to family positions (the convention for an ordered
    indexed family); measure computations pass each vector's own index.
    """
    vectors = [as_vector(v, sig) for v in vectors]
    m = len(vectors)
    if indices is None:
        indices = list(range(m))
    out = np.zeros((m, m))
    for i in range(m):
        for j in range(m):
            out[i, j] = product_i(vectors[i], vectors[j], indices[i], sig, strict=False)
    return out


def _own_levels(vectors, sig, tol=None):
    levels = []
    for v in vectors:
        if _norm_inf(v) <= get_tol(tol):
            levels.append(0)
            continue
        idx = vector_index(v, sig, tol)
        if idx is None:
            _a, _b, i, _j = decomposition_vectors(v, sig, tol)
            levels.append(i)
        else:
            levels.append(idx)
    return levels


@dataclass
class MeasureResult:
    """Measure between lineals: a value with a type plus diagnostics."""

    value: float | None
    mtype: int | None
    complementary: float | None
    case: str
    ambiguous: bool
    w_direct: float
    w_complement: float

    def to_json(self):
        def num(x):
            if x is None:
                return None
            if math.isinf(x):
                return "inf"
            return x

        return {
            "value": num(self.value),
            "type": self.mtype,
            "complementary": num(self.complementary),
            "case": self.case,
            "ambiguous": self.ambiguous,
        }


def measure_between(a, b, tol=1e-7):
    """Universal measure between two lineals of a common ambient.

    The common part is stripped first; the smaller reduced basis is
    projected onto the other reduced lineal and onto its orthogonal
    complement, and the two state determinants w', w'' classify the
    measure. Cases are tested in a fixed order and the first match
    within ``tol`` wins.
    """
    if a.sig != b.sig:
        raise WrongSignature("lineals live in different ambients")
    sig = a.sig
    _total, inter = sum_and_intersection(a, b)
    a_red = difference(a, inter) if inter.nbasis else a
    b_red = difference(b, inter) if inter.nbasis else b
    if a_red.nbasis == 0 or b_red.nbasis == 0:
        return MeasureResult(0.0, None, None, "a", True, 1.0, 0.0)
    if a_red.nbasis > b_red.nbasis:
        a_red, b_red = b_red, a_red
    if b_red.has_limit and not a_red.has_limit:
        a_red, b_red = b_red, a_red
    if b_red.has_limit:
        raise Unsupported("projection onto a limit lineal is not defined")
    onto = []
    ortho = []
    for v in a_red.basis:
        p, q = project(v, b_red)
        onto.append(p)
        ortho.append(q)
    w1 = float(np.linalg.det(state_matrix(onto, sig, _own_levels(onto, sig))))
    w2 = float(np.linalg.det(state_matrix(ortho, sig, _own_levels(ortho, sig))))
    limit_involved = a_red.has_limit or b_red.has_limit

    def clamp(w):
        if w < -tol:
            raise UnclassifiableMeasure(f"negative state determinant {w}")
        return max(w, 0.0)

    w1 = clamp(w1)
    w2 = clamp(w2)
    if abs(w1 - 1.0) <= tol and abs(w2) <= tol:
        return MeasureResult(0.0, None, None, "a", True, w1, w2)
    if abs(w1) <= tol and abs(w2 - 1.0) <= tol:
        return MeasureResult(None, None, 0.0, "b", True, w1, w2)
    if abs(w1 + w2 - 1.0) <= tol:
        phi = math.atan(math.sqrt(w2 / w1)) if w1 > 0 else math.pi / 2
        psi = math.atan(math.sqrt(w1 / w2)) if w2 > 0 else math.pi / 2
        return MeasureResult(phi, 1, psi, "c", False, w1, w2)
    if abs(w1 - 1.0) <= tol:
        return MeasureResult(math.sqrt(w2), 0, None, "d", False, w1, w2)
    if abs(w2 - 1.0) <= tol:
        return MeasureResult(None, 0, math.sqrt(w1), "e", False, w1, w2)
    if abs(w1 - w2 - 1.0) <= tol:
        return MeasureResult(math.atanh(math.sqrt(w2 / w1)), -1, None, "f", False, w1, w2)
    if abs(w2 - w1 - 1.0) <= tol:
        return MeasureResult(None, -1, math.atanh(math.sqrt(w1 / w2)), "g", False, w1, w2)
    if limit_involved and abs(w1 - w2) <= tol * max(1.0, w1):
        return MeasureResult(INFINITE, -1, INFINITE, "h", False, w1, w2)
    raise UnclassifiableMeasure(f"no case matched: w'={w1}, w''={w2}")


# -- point relations ---------------------------------------------------------


@dataclass
class Connectability:
    kind: str  # "connectable" | "unconnectable" | "limit"
    distance: MeasureResult | None = None

    def to_json(self):
        return {
            "kind": self.kind,
            "distance": self.distance.to_json() if self.distance else None,
        }


def connectable(x, y, sig, tol=None):
    """Classify a point pair by the index of their relative direction.

    The span of two points is a line exactly when the second direction
    belongs to the index class of position 1. Inputs are brought onto
    the unit sphere first.
    """
    x = point(as_vector(x, sig), sig, tol)
    y = point(as_vector(y, sig), sig, tol)
    tol_ = get_tol(tol)
    line = Lineal.from_vectors([x, y], sig, tol)
    if line.nbasis == 1:
        zero = MeasureResult(0.0, None, None, "a", True, 1.0, 0.0)
        return Connectability("connectable", zero)
    direction = line.basis[1]
    idx = vector_index(direction, sig, tol)
    if idx is None:
        return Connectability("limit", None)
    if sig.n >= 1 and sig.class_of[idx] == sig.class_of[1]:
        dist = measure_between(
            Lineal([x], sig, tol), Lineal([y], sig, tol), max(1e-7, tol_)
        )
        return Connectability("connectable", dist)
    return Connectability("unconnectable", None)


def carrier_motion(x, y, sig, tol=None):
    """Motion translating x to y along their common line.

    The pair's orthonormal frame is completed to a full family and the
    translation happens in the frame's (point, direction) plane; the
    motion parameter is the distance, read from the expansion of y.
    """
    from .motions import Motion, inverse, rotation
    from .signature import measure_from_cs

    x = point(as_vector(x, sig), sig, tol)
    y = point(as_vector(y, sig), sig, tol)
    status = connectable(x, y, sig, tol)
    if status.kind != "connectable":
        raise UnconnectableError("carrier motion needs connectable points")
    line = Lineal.from_vectors([x, y], sig, tol)
    if line.nbasis == 1:
        return Motion(np.eye(sig.n + 1), sig), 0.0, None
    frame = Lineal(complete(line.basis, sig, tol), sig, tol)
    w = np.zeros((sig.n + 1, sig.n + 1))
    for vec, idx in zip(frame.basis, frame.assigned):
        w[:, idx] = vec
    pos = frame.assigned[1]
    ktype = sig.pair(0, pos)
    coords, *_ = np.linalg.lstsq(np.column_stack(line.basis), y, rcond=None)
    if coords[0] < 0:
        coords = -coords  # -y is the same point; keep the short branch
    d = measure_from_cs(float(coords[0]), float(coords[1]), ktype, tol)
    motion = Motion(w, sig, validate=False)
    carried = compose_chain(motion, rotation(0, pos, d, sig), inverse(motion))
    return carried, d, ktype


def compose_chain(*motions):
    from .motions import compose

    out = motions[0]
    for m in motions[1:]:
        out = compose(out, m)
    return out


def midpoint(x, y, sig, tol=None):
    """Normalized sum of a connectable point pair.

    Equidistant from both inputs. On planes with elliptic distances a
    projective point pair bounds two segments; the sum of the canonical
    representatives is the midpoint of the one they subtend, which is
    the complementary segment when their meta product is negative.
    """
    x = point(as_vector(x, sig), sig, tol)
    y = point(as_vector(y, sig), sig, tol)
    status = connectable(x, y, sig, tol)
    if status.kind != "connectable":
        raise UnconnectableError("midpoint needs connectable points")
    s = x + y
    if _norm_inf(s) <= get_tol(tol) * max(_norm_inf(x), 1.0):
        raise AntipodalAmbiguity("antipodal pair has no unique midpoint")
    if vector_index(s, sig, tol) is None:
        raise AntipodalAmbiguity("sum of the pair is a limit vector")
    return point(s, sig, tol)


def centroid(x, y, z, sig, tol=None):
    """Normalized vertex sum; lies on all three medians."""
    pts = [point(as_vector(v, sig), sig, tol) for v in (x, y, z)]
    for i in range(3):
        for j in range(i + 1, 3):
            if connectable(pts[i], pts[j], sig, tol).kind != "connectable":
                raise UnconnectableError("centroid needs pairwise connectable vertices")
    if np.linalg.matrix_rank(np.column_stack(pts), tol=1e-9) < 3:
        raise DegenerateTriangle("vertices are collinear")
    s = pts[0] + pts[1] + pts[2]
    if vector_index(s, sig, tol) is None:
        raise LimitSum("vertex sum is a limit vector")
    return point(s, sig, tol)
