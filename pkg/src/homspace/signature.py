"""Signature arithmetic and the generalized trigonometric functions.

A homogeneous space of dimension n is identified by its signature
{k1, ..., kn} with each element in {-1, 0, 1}. Every measure of the
space (distance, angle, inclination, area) carries one of these three
types, and the trigonometric functions C, S, T take the type as a
parameter:

    C(phi, k) = cos phi / 1 / cosh phi     for k = 1 / 0 / -1
    S(phi, k) = sin phi / phi / sinh phi
    T(phi, k) = S / C

Derived quantities:

    K_m  = k1 * ... * km          (cumulative type, K_0 = 1)
    K_ij = 1 (i = j), prod k_{i+1..j} (i < j), 1 / K_ji (i > j)

K_ij may be infinite when i > j across a zero element; the constant
INFINITE (math.inf) represents that value.
"""

from __future__ import annotations

import math
import re

import numpy as np

from .config import get_tol
from .errors import DomainError, InconsistentSignature, Undetermined, WrongSignature

INFINITE = math.inf

_SIG_RE = re.compile(r"^\s*\{\s*(-?1|0)(\s*,\s*(-?1|0))*\s*\}\s*$")


def _check_type(k):
    if k not in (-1, 0, 1):
        raise WrongSignature(f"type value must be -1, 0 or 1, got {k!r}")
    return int(k)


def type_product(a, b):
    """Product of two extended type values.

    0 * Infinite is rejected rather than silently collapsed; the lenient
    convention lives only inside coordinate products.
    """
    if a is INFINITE or b is INFINITE:
        other = b if a is INFINITE else a
        if other == 0:
            raise InconsistentSignature("0 * Infinite in type arithmetic")
        if other is INFINITE:
            return INFINITE
        return INFINITE if other > 0 else -INFINITE
    return a * b


class Signature:
    """Ordered list {k1, ..., kn} identifying a homogeneous space.

    Instances are immutable and cache the cumulative types, the full
    pair-type matrix and the index-equivalence bookkeeping that the
    lineal machinery relies on.

    Optional per-axis scale parameters divide the argument of the
    matching trigonometric functions; they default to 1 and exist for
    unit conversions only.
    """

    __slots__ = (
        "elements",
        "n",
        "scales",
        "K",
        "_pair",
        "_pair_finite",
        "_inf_mask",
        "group_of",
        "class_of",
        "_classes",
    )

    def __init__(self, elements, scales=None):
        elements = tuple(_check_type(k) for k in elements)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "n", len(elements))
        if scales is None:
            scales = (1.0,) * self.n
        else:
            scales = tuple(float(s) for s in scales)
            if len(scales) != self.n or any(s <= 0 for s in scales):
                raise WrongSignature("scales must be positive, one per element")
        object.__setattr__(self, "scales", scales)

        n = self.n
        K = np.ones(n + 1, dtype=float)
        for m in range(1, n + 1):
            K[m] = K[m - 1] * elements[m - 1]
        object.__setattr__(self, "K", K)

        # pair[i, j] = K_ij with math.inf where the reciprocal blows up
        pair = np.ones((n + 1, n + 1), dtype=float)
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                prod = 1.0
                for p in range(i + 1, j + 1):
                    prod *= elements[p - 1]
                pair[i, j] = prod
                pair[j, i] = INFINITE if prod == 0 else 1.0 / prod
        object.__setattr__(self, "_pair", pair)
        inf_mask = np.isinf(pair)
        object.__setattr__(self, "_inf_mask", inf_mask)
        finite = pair.copy()
        finite[inf_mask] = 0.0
        object.__setattr__(self, "_pair_finite", finite)

        # groups split at zero elements; classes split groups by K_ij sign
        group = np.zeros(n + 1, dtype=int)
        cls = np.zeros(n + 1, dtype=int)
        g = 0
        c = 0
        sign_class = {1: c}
        sign = 1
        for i in range(1, n + 1):
            k = elements[i - 1]
            if k == 0:
                g += 1
                c += 1
                sign = 1
                sign_class = {1: c}
            else:
                sign *= k
                if sign not in sign_class:
                    c += 1
                    sign_class[sign] = c
            group[i] = g
            cls[i] = sign_class[sign]
        object.__setattr__(self, "group_of", group)
        object.__setattr__(self, "class_of", cls)
        classes: dict[int, list[int]] = {}
        for i in range(n + 1):
            classes.setdefault(int(cls[i]), []).append(i)
        object.__setattr__(self, "_classes", classes)

    def __setattr__(self, name, value):
        raise AttributeError("Signature is immutable")

    # -- identity ------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Signature) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"Signature({self})"

    def __str__(self):
        return "{" + ",".join(str(k) for k in self.elements) + "}"

    @classmethod
    def parse(cls, text):
        """Parse the brace form, e.g. "{0,-1}"; whitespace is allowed."""
        if not _SIG_RE.match(text):
            raise WrongSignature(f"cannot parse signature {text!r}")
        body = text.strip()[1:-1]
        return cls(int(tok) for tok in body.split(","))

    # -- derived types -------------------------------------------------

    def cumulative(self, m):
        """K_m = k1 * ... * km, with K_0 = 1."""
        if not 0 <= m <= self.n:
            raise WrongSignature(f"cumulative index {m} out of range 0..{self.n}")
        return int(self.K[m])

    def pair(self, i, j):
        """K_ij; returns math.inf when i > j across a zero element."""
        if not (0 <= i <= self.n and 0 <= j <= self.n):
            raise WrongSignature(f"pair index ({i},{j}) out of range 0..{self.n}")
        v = self._pair[i, j]
        return v if math.isinf(v) else int(v)

    def class_members(self, i):
        """All positions j with K_ij = 1 (the index class of position i)."""
        return list(self._classes[int(self.class_of[i])])

    def same_group(self, i, j):
        """True when no zero element separates positions i and j."""
        return self.group_of[i] == self.group_of[j]

    def trig(self, m, phi):
        """C, S, T of the m-th main rotation (1-based), honoring scales."""
        if not 1 <= m <= self.n:
            raise WrongSignature(f"rotation index {m} out of range 1..{self.n}")
        return gtrig(phi, self.elements[m - 1], scale=self.scales[m - 1])

    def metaspace(self):
        """Signature {0, k1, ..., kn} of the embedding metaspace."""
        return Signature((0,) + self.elements)


def cumulative_type(sig, m):
    return sig.cumulative(m)


def pair_type(sig, i, j):
    return sig.pair(i, j)


# -- generalized trigonometry ----------------------------------------------


def gtrig(phi, k, scale=1.0):
    """Return (C, S, T) of the angle for the given type.

    T is a signed infinity where C vanishes. Native cos/cosh are used;
    the power series serves only as a test oracle.
    """
    phi = float(phi) / scale
    if k == 1:
        c, s = math.cos(phi), math.sin(phi)
    elif k == 0:
        c, s = 1.0, phi
    elif k == -1:
        c, s = math.cosh(phi), math.sinh(phi)
    else:
        raise WrongSignature(f"type value must be -1, 0 or 1, got {k!r}")
    if c == 0.0:
        t = math.copysign(INFINITE, s) if s != 0.0 else 0.0
    else:
        t = s / c
    return c, s, t


def gtrig_series(phi, k, terms=40):
    """Power-series evaluation of (C, S); reference oracle only."""
    phi = float(phi)
    c = 0.0
    s = 0.0
    term_c = 1.0
    term_s = phi
    for m in range(terms):
        c += term_c
        s += term_s
        factor = (-k) * phi * phi
        term_c *= factor / ((2 * m + 1) * (2 * m + 2))
        term_s *= factor / ((2 * m + 2) * (2 * m + 3))
    return c, s


def gtrig_inverse(x, which, k, scale=1.0):
    """Principal inverse of C, S or T for the given type.

    Principal ranges: for k = 1 the C branch is [0, pi] and the S branch
    is [-pi/2, pi/2]; for k = 0 the S and T branches are the identity and
    C has no inverse; for k = -1 the C branch is [0, +inf).
    """
    x = float(x)
    if which == "C":
        if k == 1:
            if not -1.0 <= x <= 1.0:
                raise DomainError(f"C inverse needs |x| <= 1 for type 1, got {x}")
            y = math.acos(x)
        elif k == 0:
            if abs(x - 1.0) > get_tol():
                raise DomainError(f"C is identically 1 for type 0, got {x}")
            raise Undetermined("C inverse is undetermined for type 0")
        else:
            if x < 1.0:
                if 1.0 - x < get_tol():
                    x = 1.0
                else:
                    raise DomainError(f"C inverse needs x >= 1 for type -1, got {x}")
            y = math.acosh(x)
    elif which == "S":
        if k == 1:
            if not -1.0 <= x <= 1.0:
                raise DomainError(f"S inverse needs |x| <= 1 for type 1, got {x}")
            y = math.asin(x)
        elif k == 0:
            y = x
        else:
            y = math.asinh(x)
    elif which == "T":
        if k == 1:
            y = math.atan(x)
        elif k == 0:
            y = x
        else:
            if not -1.0 < x < 1.0:
                raise DomainError(f"T inverse needs |x| < 1 for type -1, got {x}")
            y = math.atanh(x)
    else:
        raise ValueError(f"which must be 'C', 'S' or 'T', got {which!r}")
    return y * scale


def measure_from_cs(c, s, k, tol=None):
    """Recover a measure from simultaneous C and S values.

    Unlike the single-function inverses this resolves the quadrant, so
    it can return values outside the principal branch (e.g. obtuse
    elliptic angles).
    """
    tol = get_tol(tol)
    if k == 1:
        return math.atan2(s, c)
    if k == 0:
        if abs(c - 1.0) > 1e-6:
            raise DomainError(f"type-0 measure needs C = 1, got {c}")
        return s
    value = math.asinh(s)
    if abs(math.cosh(value) - c) > 1e-6 * max(1.0, abs(c)):
        raise DomainError(f"inconsistent hyperbolic pair C={c}, S={s}")
    return value
