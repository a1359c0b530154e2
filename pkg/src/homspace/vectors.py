"""Metaspace vectors: products, index, canonicalization, limit apparatus.

Vectors live in R^{n+1} (coordinates 0..n) and carry no signature of
their own; every product takes the space signature explicitly. Points
of the space are vectors with unit meta square, stored canonically so
that the first nonnegligible coordinate is positive.
"""

from __future__ import annotations

import math

import numpy as np

from .config import get_tol
from .errors import (
    AlreadyOrthogonal,
    Degenerate,
    DimensionMismatch,
    InfiniteContribution,
    LimitVectorError,
    NotLimit,
    Unsupported,
    WrongSignature,
    ZeroVector,
)


def as_vector(x, sig=None):
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise DimensionMismatch(f"expected a flat vector, got shape {v.shape}")
    if sig is not None and v.shape[0] != sig.n + 1:
        raise DimensionMismatch(f"vector has {v.shape[0]} coordinates, signature needs {sig.n + 1}")
    return v


def _scale(x):
    return float(np.max(np.abs(x))) if x.size else 0.0


def meta_product(x, y, sig):
    """Signature-weighted bilinear form sum K_i x_i y_i (the zero product)."""
    x = as_vector(x, sig)
    y = as_vector(y, sig)
    return float(np.dot(sig.K * x, y))


def product_i(x, y, i, sig, strict=True, tol=None):
    """i-th product sum_j K_ij x_j y_j.

    Coordinates multiplied by an infinite K_ij must vanish; with
    ``strict`` a violation raises InfiniteContribution, otherwise those
    terms contribute zero (the convention used inside projections).
    """
    x = as_vector(x, sig)
    y = as_vector(y, sig)
    if not 0 <= i <= sig.n:
        raise WrongSignature(f"product index {i} out of range 0..{sig.n}")
    tol = get_tol(tol)
    if strict:
        mask = sig._inf_mask[i]
        if mask.any():
            bad = np.abs(x[mask] * y[mask])
            limit = tol * max(_scale(x) * _scale(y), 1e-300)
            if bad.size and bad.max() > limit:
                raise InfiniteContribution(
                    f"nonzero coordinate against infinite K_{i}j"
                )
    return float(np.dot(sig._pair_finite[i] * x, y))


def _self_squares(x, sig):
    """All finite-sense self products x (.)_i x, with None where invalid."""
    squares = []
    for i in range(sig.n + 1):
        mask = sig._inf_mask[i]
        if mask.any() and np.max(np.abs(x[mask])) > math.sqrt(get_tol()) * max(_scale(x), 1e-300):
            squares.append(None)
            continue
        squares.append(float(np.dot(sig._pair_finite[i] * x, x)))
    return squares


def vector_index(x, sig, tol=None):
    """Least i with positive i-th self square; None for limit vectors.

    A vector counts as limit when every valid self square is at most
    tol * ||x||_inf^2, which keeps the classification scale invariant.
    """
    x = as_vector(x, sig)
    scale = _scale(x)
    if scale == 0.0:
        raise ZeroVector("zero vector has no index")
    threshold = get_tol(tol) * scale * scale
    for i, sq in enumerate(_self_squares(x, sig)):
        if sq is not None and sq > threshold:
            return i
    return None


def is_limit(x, sig, tol=None):
    return vector_index(x, sig, tol) is None


def natural_product(x, y, sig, tol=None):
    """Product at the smaller of the two vector indices."""
    i = vector_index(x, sig, tol)
    j = vector_index(y, sig, tol)
    if i is None or j is None:
        raise LimitVectorError("natural product needs indexed vectors")
    return product_i(x, y, min(i, j), sig, strict=False)


def natural_square(x, sig, tol=None):
    i = vector_index(x, sig, tol)
    if i is None:
        raise LimitVectorError("limit vector has no natural square")
    return product_i(x, x, i, sig, strict=False)


def normalize(x, sig, tol=None):
    """Scale an indexed vector to unit natural square."""
    x = as_vector(x, sig)
    sq = natural_square(x, sig, tol)
    if sq <= 0:
        raise ZeroVector("cannot normalize a vector with nonpositive square")
    return x / math.sqrt(sq)


def canonical_point(x, tol=None):
    """Choose the representative whose first nonnegligible coordinate is positive."""
    x = as_vector(x)
    scale = _scale(x)
    if scale == 0.0:
        raise ZeroVector("zero vector is not a point")
    threshold = get_tol(tol) * scale
    for c in x:
        if abs(c) > threshold:
            return x.copy() if c > 0 else -x
    raise ZeroVector("zero vector is not a point")


def point(coords, sig, tol=None):
    """Normalize and canonicalize a metaspace vector into a space point."""
    return canonical_point(normalize(coords, sig, tol), tol)


def coordinate_index(p, sig):
    """Index of the coordinate vector e^p (least m with K_mp > 0)."""
    col = sig._pair[:, p]
    for m in range(sig.n + 1):
        v = col[m]
        if np.isfinite(v) and v > 0:
            return m
    raise WrongSignature(f"coordinate {p} has no index")


def decomposition_vectors(x, sig, tol=None):
    """Split a limit vector into its positive and negative parts.

    Returns (a, b, i, j): x = a + b, a carries the coordinates entering
    the level-i form with sign + or coefficient 0, b those with sign -,
    and (i, j) is the invariant double index with K_ij = -1.
    """
    x = as_vector(x, sig)
    if vector_index(x, sig, tol) is not None:
        raise NotLimit("vector has an index; nothing to decompose")
    tol_ = get_tol(tol)
    scale = _scale(x)
    support = [p for p in range(sig.n + 1) if abs(x[p]) > tol_ * scale]
    level = min(coordinate_index(p, sig) for p in support)
    coeff = sig._pair[level]
    a = np.zeros_like(x)
    b = np.zeros_like(x)
    for p in range(sig.n + 1):
        c = coeff[p]
        if np.isfinite(c) and c < 0:
            b[p] = x[p]
        else:
            a[p] = x[p]
    i = vector_index(a, sig, tol)
    j = vector_index(b, sig, tol)
    if i is None or j is None:
        raise Unsupported("decomposition parts are not both indexed")
    if sig.pair(i, j) != -1:
        raise Unsupported("decomposition pair is not interchangeable")
    return a, b, i, j


def limit_measure(x, sig, tol=None):
    """Common natural norm of the decomposition pair.

    The value has type 0 and is not a motion invariant; only ratios of
    collinear limit measures are preserved.
    """
    a, b, i, j = decomposition_vectors(x, sig, tol)
    va = math.sqrt(product_i(a, a, i, sig, strict=False))
    vb = math.sqrt(product_i(b, b, j, sig, strict=False))
    return 0.5 * (va + vb), 0


def limit_orthogonalize(x, y, sig, tol=None):
    """Shift y by a multiple of the limit vector x so that both
    decomposition parts of x become orthogonal to the result.

    Requires the formal orthogonality x (.) y = 0 at the level of the
    decomposition; preserves y's index class and natural square.
    """
    x = as_vector(x, sig)
    y = as_vector(y, sig)
    tol_ = get_tol(tol)
    a, b, i, j = decomposition_vectors(x, sig, tol)
    ay = product_i(a, y, i, sig, strict=False)
    by = product_i(b, y, j, sig, strict=False)
    scale = max(_scale(x) * _scale(y), 1e-300)
    if abs(ay) <= tol_ * scale and abs(by) <= tol_ * scale:
        raise AlreadyOrthogonal("decomposition parts already orthogonal to y")
    if abs(ay - by) > math.sqrt(tol_) * scale:
        raise Unsupported("y is not formally orthogonal to the limit vector")
    aa = product_i(a, a, i, sig, strict=False)
    z = y - (ay / aa) * x
    if _scale(z) <= tol_ * _scale(y):
        raise Degenerate("orthogonalization collapsed to the zero vector")
    az = product_i(a, z, i, sig, strict=False)
    bz = product_i(b, z, j, sig, strict=False)
    if abs(az) > math.sqrt(tol_) * scale or abs(bz) > math.sqrt(tol_) * scale:
        raise Unsupported("supports overlap beyond the two shared positions")
    return z


def limit_translation(lam, sig):
    """Parabolic motion along a limit direction of a plane with k2 = -1.

    Satisfies P(lam) P(mu) = P(lam + mu) and P(0) = identity.
    """
    if sig.n != 2 or sig.elements[1] != -1:
        raise WrongSignature("limit translation needs a plane signature {k1,-1}")
    k1 = sig.elements[0]
    half = k1 * lam * lam / 2.0
    rows = [
        [1.0, -k1 * lam, k1 * lam],
        [lam, 1.0 - half, half],
        [lam, -half, 1.0 + half],
    ]
    from .motions import Motion

    return Motion(np.array(rows), sig)
