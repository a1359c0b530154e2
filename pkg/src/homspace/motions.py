"""The motion group: generalized orthogonal matrices over a signature.

A matrix M of size (n+1) is GM-orthogonal when column j has index j,
unit natural square, and distinct columns are orthogonal. These
matrices form the isometry group of the space; they are stored
sign-canonically (first nonnegligible entry of column 0 positive) since
M and -M represent the same motion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import get_tol
from .errors import (
    DimensionMismatch,
    ImproperMotion,
    NotGMOrthogonal,
    WrongSignature,
)
from .signature import Signature
from .vectors import canonical_point

EQUIVALENT = "equivalent"
INTERCHANGEABLE = "interchangeable"
NON_INTERCHANGEABLE = "non-interchangeable"


class Motion:
    """A GM-orthogonal matrix acting on metaspace vectors."""

    __slots__ = ("m", "sig")

    def __init__(self, matrix, sig, validate=False, tol=None):
        matrix = np.asarray(matrix, dtype=float)
        if matrix.shape != (sig.n + 1, sig.n + 1):
            raise DimensionMismatch(
                f"motion matrix must be {sig.n + 1}x{sig.n + 1}, got {matrix.shape}"
            )
        if validate:
            ok, diag = is_gm_orthogonal(matrix, sig, tol)
            if not ok:
                raise NotGMOrthogonal(f"validation failed: {diag['worst']}")
        self.m = _canonical_sign(matrix)
        self.m.setflags(write=False)
        self.sig = sig

    def __matmul__(self, other):
        if isinstance(other, Motion):
            return compose(self, other)
        return self.apply(other)

    def apply(self, x):
        """Apply to a metaspace vector (no point canonicalization)."""
        return self.m @ np.asarray(x, dtype=float)

    def apply_point(self, x, tol=None):
        return canonical_point(self.apply(x), tol)

    def inverse(self):
        return inverse(self)

    def det(self):
        return float(np.linalg.det(self.m))

    def close_to(self, other, tol=1e-9):
        return (
            self.sig == other.sig
            and float(np.max(np.abs(self.m - other.m))) <= tol
        )

    def __repr__(self):
        return f"Motion(sig={self.sig}, m=\n{self.m})"

    def to_json(self):
        return {"sig": str(self.sig), "rows": self.m.tolist()}

    @classmethod
    def from_json(cls, data, validate=True, tol=None):
        sig = Signature.parse(data["sig"])
        return cls(np.array(data["rows"], dtype=float), sig, validate=validate, tol=tol)


def _canonical_sign(matrix):
    col0 = matrix[:, 0]
    scale = np.max(np.abs(col0))
    if scale == 0.0:
        return matrix.copy()
    for c in col0:
        if abs(c) > 1e-12 * scale:
            return matrix.copy() if c > 0 else -matrix
    return matrix.copy()


def identity(sig):
    return Motion(np.eye(sig.n + 1), sig)


def main_rotation(m, phi, sig):
    """Main rotation in the coordinate plane (m-1, m), 1 <= m <= n."""
    if not 1 <= m <= sig.n:
        raise WrongSignature(f"main rotation index {m} out of range 1..{sig.n}")
    return rotation(m - 1, m, phi, sig)


def rotation(i, j, phi, sig):
    """Block rotation in the plane (i, j) with type K_ij; i = 0 gives translations."""
    if not 0 <= i < j <= sig.n:
        raise WrongSignature(f"rotation plane ({i},{j}) out of range")
    k = sig.pair(i, j)
    if j == i + 1:
        c, s, _ = sig.trig(j, phi)
    else:
        from .signature import gtrig

        c, s, _ = gtrig(phi, k)
    m = np.eye(sig.n + 1)
    m[i, i] = c
    m[i, j] = -k * s
    m[j, i] = s
    m[j, j] = c
    return Motion(m, sig)


def translation(j, phi, sig):
    """Translation along coordinate j: the rotation in plane (0, j)."""
    return rotation(0, j, phi, sig)


def compose(a, b):
    if a.sig != b.sig:
        raise WrongSignature("cannot compose motions over different signatures")
    return Motion(a.m @ b.m, a.sig)


def inverse(motion):
    """Inverse via the transpose rule, or block recursion for zero signatures.

    Without zero elements the inverse has entries w_ij = m_ji / K_ji;
    with zeros the matrix is block lower-triangular and the inverse is
    assembled recursively as (A^-1, O; -C^-1 B A^-1, C^-1).
    """
    return Motion(_inverse_matrix(motion.m, motion.sig), motion.sig)


def _inverse_matrix(m, sig):
    if 0 not in sig.elements:
        return m.T / sig._pair.T
    cut = sig.elements.index(0) + 1
    sig_a = Signature(sig.elements[: cut - 1])
    sig_c = Signature(sig.elements[cut:])
    a = _inverse_matrix(m[:cut, :cut], sig_a)
    c = _inverse_matrix(m[cut:, cut:], sig_c)
    out = np.zeros_like(m)
    out[:cut, :cut] = a
    out[cut:, cut:] = c
    out[cut:, :cut] = -c @ m[cut:, :cut] @ a
    return out


def is_gm_orthogonal(matrix, sig, tol=None):
    """Validate generalized orthogonality; returns (ok, diagnostics).

    Checks column normalization at the column's own index, pairwise
    orthogonality, the zero block forced by each zero signature element,
    and the row relations. Diagnostics report the worst violation.
    """
    tol = get_tol(tol) if tol is None else tol
    matrix = np.asarray(matrix, dtype=float)
    n = sig.n
    if matrix.shape != (n + 1, n + 1):
        return False, {"worst": f"shape {matrix.shape}", "violation": math.inf}
    failures = []
    worst = ("", 0.0)

    def record(label, err):
        nonlocal worst
        if err > tol:
            failures.append((label, err))
        if err > worst[1]:
            worst = (label, err)

    coeff = sig._pair_finite
    for m in range(1, n + 1):
        if sig.elements[m - 1] == 0:
            block = matrix[:m, m:]
            record(f"zero-block k_{m}", float(np.max(np.abs(block))) if block.size else 0.0)
    for j in range(n + 1):
        col = matrix[:, j]
        record(f"norm col {j}", abs(float(np.dot(coeff[j] * col, col)) - 1.0))
        for i in range(j):
            record(
                f"orthogonality cols ({i},{j})",
                abs(float(np.dot(coeff[i] * matrix[:, i], col))),
            )
    # row relations, meaningful where K_max(i,j) is nonzero
    K = sig.K
    nonzero = K != 0
    for i in range(n + 1):
        for j in range(i, n + 1):
            kmax = K[max(i, j)]
            if kmax == 0:
                continue
            s = float(np.sum(matrix[i, nonzero] * matrix[j, nonzero] / K[nonzero]))
            target = 1.0 if i == j else 0.0
            record(f"row relation ({i},{j})", abs(kmax * s - target))
    ok = not failures
    return ok, {"worst": worst[0], "violation": worst[1], "failures": failures}


@dataclass
class Decomposition:
    """Product-of-rotations form of a motion.

    ``rotations`` lists (i, j, angle, type) in the order they were
    multiplied onto the source; the source equals
    reflection @ inverse of each rotation in reverse order.
    """

    rotations: list = field(default_factory=list)
    reflection: np.ndarray = None
    sig: Signature = None

    def recompose(self, angle_scale=1.0):
        out = np.diag(self.reflection).astype(float)
        for i, j, phi, _k in reversed(self.rotations):
            out = out @ rotation(i, j, -angle_scale * phi, self.sig).m
        return Motion(out, self.sig)

    def to_json(self):
        return {
            "rotations": [
                {"i": i, "j": j, "phi": phi, "type": k} for i, j, phi, k in self.rotations
            ],
            "reflection": [int(e) for e in self.reflection],
        }


def decompose(motion, tol=None, validate_tol=1e-7):
    """Row-elimination decomposition into at most n(n+1)/2 rotations.

    Working bottom row up: same-type off-diagonal entries are merged by
    elliptic rotations (type-1 entries into the diagonal, type -1
    entries together), the surviving type -1 entry is cleared by one
    hyperbolic rotation, and type-0 entries by parabolic rotations.
    What remains is a diagonal reflection of +-1 entries.
    """
    sig = motion.sig
    ok, diag = is_gm_orthogonal(motion.m, sig, validate_tol)
    if not ok:
        raise NotGMOrthogonal(f"not GM-orthogonal: {diag['worst']} ({diag['violation']:.2e})")
    n = sig.n
    x = motion.m.copy()
    rotations = []

    def apply(i, j, phi):
        k = sig.pair(i, j)
        from .signature import gtrig

        c, s, _ = gtrig(phi, k)
        ci = x[:, i].copy()
        cj = x[:, j].copy()
        x[:, i] = ci * c + cj * s
        x[:, j] = -k * ci * s + cj * c
        rotations.append((i, j, phi, k))

    skip = 1e-15
    for r in range(n, 0, -1):
        row_scale = max(1.0, float(np.max(np.abs(x[r, : r + 1]))))
        cat1 = [i for i in range(r) if sig.pair(i, r) == 1]
        catm = [i for i in range(r) if sig.pair(i, r) == -1]
        cat0 = [i for i in range(r) if sig.pair(i, r) == 0]
        for i in cat1:
            if abs(x[r, i]) > skip * row_scale:
                apply(i, r, math.atan2(-x[r, i], x[r, r]))
        live = [i for i in catm if abs(x[r, i]) > skip * row_scale]
        for q in live[1:]:
            apply(live[0], q, math.atan2(x[r, q], x[r, live[0]]))
        if live:
            p = live[0]
            if abs(x[r, p]) >= abs(x[r, r]):
                raise NotGMOrthogonal(
                    f"row {r} is numerically light-like; cannot clear column {p}"
                )
            apply(p, r, math.atanh(-x[r, p] / x[r, r]))
        for q in cat0:
            if abs(x[r, q]) > skip * row_scale:
                apply(q, r, -x[r, q] / x[r, r])

    reflection = np.sign(np.diag(x)).astype(int)
    reflection[reflection == 0] = 1
    if np.all(reflection == -1):
        reflection = -reflection  # -I is the identity motion
    residual = float(np.max(np.abs(x - np.diag(np.sign(np.diag(x))))))
    if residual > validate_tol * 10:
        raise NotGMOrthogonal(f"decomposition residual {residual:.2e}")
    return Decomposition(rotations=rotations, reflection=reflection, sig=sig)


def _reduce_reflection(reflection, sig):
    """Express a diagonal reflection as half-turn rotations, if possible.

    Two -1 entries at equivalent positions (K_ij = 1) form the elliptic
    rotation R_ij(pi); a global sign flip is free since -M and M are the
    same motion. Returns (pairs, flipped) or None when irreducible.
    """
    for flipped, signs in ((False, reflection), (True, -np.asarray(reflection))):
        by_class = {}
        for pos in np.flatnonzero(signs == -1):
            by_class.setdefault(int(sig.class_of[pos]), []).append(int(pos))
        if all(len(v) % 2 == 0 for v in by_class.values()):
            pairs = []
            for positions in by_class.values():
                pairs.extend(zip(positions[0::2], positions[1::2]))
            return pairs, flipped
    return None


def is_proper(motion, tol=None):
    """True when the reflection part reduces to rotations (up to sign)."""
    dec = decompose(motion, tol)
    return _reduce_reflection(dec.reflection, motion.sig) is not None


def parameterize(motion, p, tol=None):
    """Continuous path X(p) from the identity to a proper motion."""
    dec = decompose(motion, tol)
    reduction = _reduce_reflection(dec.reflection, motion.sig)
    if reduction is None:
        raise ImproperMotion("motion contains a reflection")
    pairs, _flipped = reduction
    full = Decomposition(
        rotations=dec.rotations + [(i, j, math.pi, 1) for i, j in pairs],
        reflection=np.ones(motion.sig.n + 1, dtype=int),
        sig=motion.sig,
    )
    return full.recompose(angle_scale=float(p))


def axis_relation(i, j, sig):
    """Equivalence class of coordinate axes i < j, decided by K_ij."""
    if not 0 <= i < j <= sig.n:
        raise WrongSignature(f"axis pair ({i},{j}) out of range")
    k = sig.pair(i, j)
    if k == 1:
        return EQUIVALENT
    if k == -1:
        return INTERCHANGEABLE
    return NON_INTERCHANGEABLE


def random_motion(sig, rng, count=None, max_angle=1.0):
    """Random product of main rotations; test and sampling helper."""
    n = sig.n
    count = count if count is not None else n * (n + 1) // 2 + n
    out = identity(sig)
    for _ in range(count):
        m = int(rng.integers(1, n + 1))
        out = compose(out, main_rotation(m, float(rng.uniform(-max_angle, max_angle)), sig))
    return out
