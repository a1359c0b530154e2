"""Metric relations on the nine homogeneous planes.

Triangle sides carry the length type k1, angles the angular type k2;
the external angle beta' replaces the internal beta throughout, since
beta itself may be unmeasurable when k2 <= 0. Right triangles have one
cathetus of composite type k1*k2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateTriangle,
    DomainError,
    InconsistentTriangle,
    NonConvergent,
    UnderdeterminedTriangle,
    UnmeasurableAngle,
    WrongSignature,
)
from .signature import gtrig, gtrig_inverse, measure_from_cs


class _Undetermined:
    """Sentinel for parts a dilation freedom leaves unpinned."""

    def __repr__(self):
        return "UNDETERMINED"


UNDETERMINED = _Undetermined()


def _plane(sig):
    if sig.n != 2:
        raise WrongSignature("triangle relations need a plane signature {k1,k2}")
    return sig.elements


def _angle_from_cs(c, s, k):
    """Angle recovery; inconsistent pairs mean the angle is unmeasurable."""
    try:
        return measure_from_cs(c, s, k)
    except DomainError as exc:
        raise UnmeasurableAngle(str(exc))


def _reduce_elliptic(value, k, notes, name):
    """Map an elliptic measure into [0, pi]; the reduction is recorded."""
    if k != 1 or value is None:
        return value
    reduced = math.fmod(value, 2 * math.pi)
    if reduced < 0:
        reduced += 2 * math.pi
    if reduced > math.pi:
        reduced = 2 * math.pi - reduced
    if abs(reduced - value) > 1e-15:
        notes.append(f"{name} reduced to {reduced!r}")
    return reduced


@dataclass
class Triangle:
    """Generic triangle: sides a, b, c and angles alpha, gamma, beta_prime."""

    a: object = None
    b: object = None
    c: object = None
    alpha: object = None
    gamma: object = None
    beta_prime: object = None
    notes: list = field(default_factory=list)

    def beta(self, sig):
        """Internal angle at B, defined only for elliptic angular type."""
        k2 = _plane(sig)[1]
        if k2 != 1:
            raise DomainError("internal beta exists only when k2 = 1")
        return math.pi - self.beta_prime

    def to_json(self):
        def enc(v):
            if v is None:
                return None
            if v is UNDETERMINED:
                return "undetermined"
            return v

        return {
            "a": enc(self.a),
            "b": enc(self.b),
            "c": enc(self.c),
            "alpha": enc(self.alpha),
            "gamma": enc(self.gamma),
            "beta_prime": enc(self.beta_prime),
            "notes": list(self.notes),
        }


def construct_triangle(b, c, alpha, sig):
    """Build the triangle by motions and read off the remaining parts.

    A sits at the origin, C = R1(b) A, B = R2(alpha) R1(c) A; rotating
    the figure back onto the coordinate axes exposes a, gamma and
    beta' as coordinates. Returns (triangle, vertices).
    """
    from .motions import main_rotation

    k1, k2 = _plane(sig)
    notes = []
    b = _reduce_elliptic(b, k1, notes, "b")
    c = _reduce_elliptic(c, k1, notes, "c")
    alpha = _reduce_elliptic(alpha, k2, notes, "alpha")
    origin = np.array([1.0, 0.0, 0.0])
    vert_c = main_rotation(1, b, sig).apply(origin)
    vert_b = (main_rotation(2, alpha, sig) @ main_rotation(1, c, sig)).apply(origin)
    b_prime = main_rotation(1, -b, sig).apply(vert_b)
    c_second = (main_rotation(1, -c, sig) @ main_rotation(2, -alpha, sig)).apply(vert_c)
    c1a = b_prime[0]
    if k1 != 0:
        s1a_sq = (1.0 - c1a * c1a) / k1
    else:
        s1a_sq = b_prime[1] ** 2 + k2 * b_prime[2] ** 2
    if s1a_sq < -1e-12:
        raise DegenerateTriangle("side a is not measurable with this data")
    s1a = math.sqrt(max(s1a_sq, 0.0))
    if s1a < 1e-12:
        raise DegenerateTriangle("vertices B and C coincide")
    if k1 != 0:
        if k1 == 1 and 1.0 < abs(c1a) <= 1.0 + 1e-12:
            c1a = math.copysign(1.0, c1a)
        a = gtrig_inverse(c1a, "C", k1)
    else:
        a = s1a
    gamma = _angle_from_cs(-b_prime[1] / s1a, b_prime[2] / s1a, k2)
    beta_prime = _angle_from_cs(c_second[1] / s1a, -c_second[2] / s1a, k2)
    tri = Triangle(a=a, b=b, c=c, alpha=alpha, gamma=gamma, beta_prime=beta_prime, notes=notes)
    return tri, {"A": origin, "B": vert_b, "C": vert_c}


def solve_triangle_sas(b, c, alpha, sig):
    """Solve the side-angle-side case from the closed equations.

    The side a comes from the first cosine law when k1 is nonzero and
    from the tangent form otherwise; gamma and beta' are read from
    their sine and cosine components.
    """
    k1, k2 = _plane(sig)
    notes = []
    b = _reduce_elliptic(b, k1, notes, "b")
    c = _reduce_elliptic(c, k1, notes, "c")
    alpha = _reduce_elliptic(alpha, k2, notes, "alpha")
    c1b, s1b, _ = gtrig(b, k1)
    c1c, s1c, _ = gtrig(c, k1)
    c2a, s2a, _ = gtrig(alpha, k2)
    if k1 != 0:
        c1a = c1b * c1c + k1 * s1b * s1c * c2a
        if k1 == 1 and abs(c1a) > 1.0:
            if abs(c1a) > 1.0 + 1e-12:
                raise DomainError(f"no side a with C(a) = {c1a}")
            c1a = math.copysign(1.0, c1a)
        a = gtrig_inverse(c1a, "C", k1)
        s1a = gtrig(a, k1)[1]
    else:
        a_sq = b * b + c * c - 2 * b * c * c2a
        if a_sq < -1e-12:
            raise DomainError("vertices B and C are unconnectable")
        a = math.sqrt(max(a_sq, 0.0))
        s1a = a
        c1a = 1.0
    if s1a < 1e-12:
        raise DegenerateTriangle("side a degenerates to a point")
    gamma = _angle_from_cs(
        (s1b * c1c - c1b * s1c * c2a) / s1a, s1c * s2a / s1a, k2
    )
    beta_prime = _angle_from_cs(
        (s1b * c1c * c2a - c1b * s1c) / s1a, s1b * s2a / s1a, k2
    )
    return Triangle(a=a, b=b, c=c, alpha=alpha, gamma=gamma, beta_prime=beta_prime, notes=notes)


def triangle_residuals(tri, sig):
    """Residuals of every generic triangle equation, labeled."""
    k1, k2 = _plane(sig)
    c1a, s1a, t1a = gtrig(tri.a, k1)
    c1b, s1b, t1b = gtrig(tri.b, k1)
    c1c, s1c, t1c = gtrig(tri.c, k1)
    c2al, s2al, t2al = gtrig(tri.alpha, k2)
    c2bp, s2bp, t2bp = gtrig(tri.beta_prime, k2)
    c2g, s2g, t2g = gtrig(tri.gamma, k2)
    res = {
        "sine(a,b)": s1a * s2bp - s1b * s2al,
        "sine(a,c)": s1a * s2g - s1c * s2al,
        "cos1(a)": c1a - (c1b * c1c + k1 * s1b * s1c * c2al),
        "cos1(b)": c1b - (c1a * c1c - k1 * s1a * s1c * c2bp),
        "cos1(c)": c1c - (c1a * c1b + k1 * s1a * s1b * c2g),
        "cos2(alpha)": c2al - (c2bp * c2g + k2 * s2bp * s2g * c1a),
        "cos2(beta')": c2bp - (c2al * c2g - k2 * s2al * s2g * c1b),
        "cos2(gamma)": c2g - (c2al * c2bp + k2 * s2al * s2bp * c1c),
    }

    def tan_form(t_lhs, t1, t2, cmid, smid, sign, kk):
        # numerator carries 2*sign*cos, the denominator the opposite sign
        denom = 1.0 - sign * kk * t1 * t2 * cmid
        return t_lhs**2 * denom**2 - (
            t1 * t1 + t2 * t2 + 2 * sign * t1 * t2 * cmid + k1 * k2 * t1 * t1 * t2 * t2 * smid * smid
        )

    finite = all(abs(t) < 1e8 for t in (t1a, t1b, t1c, t2al, t2bp, t2g))
    if finite:
        res["tan1(a)"] = tan_form(t1a, t1b, t1c, c2al, s2al, -1, k1)
        res["tan1(b)"] = tan_form(t1b, t1a, t1c, c2bp, s2bp, +1, k1)
        res["tan1(c)"] = tan_form(t1c, t1a, t1b, c2g, s2g, -1, k1)
        res["tan2(alpha)"] = tan_form(t2al, t2bp, t2g, c1a, s1a, -1, k2)
        res["tan2(beta')"] = tan_form(t2bp, t2al, t2g, c1b, s1b, +1, k2)
        res["tan2(gamma)"] = tan_form(t2g, t2al, t2bp, c1c, s1c, -1, k2)
    return res


def triangle_inequality_profile(sig):
    """Directions of the four triangle inequalities, decided by k2 and k1."""
    k1, k2 = _plane(sig)
    edge = {1: (">", "<"), 0: ("=", "="), -1: ("<", ">")}
    angle = {1: (">", "<"), 0: ("=", "="), -1: ("<", ">")}
    shortest, longest = edge[k2]
    internal, external = angle[k1]
    return {
        "shortest_edge_vs_b_minus_c": shortest,
        "longest_edge_vs_a_plus_c": longest,
        "internal_angle_vs_bp_minus_gamma": internal,
        "external_angle_vs_alpha_plus_gamma": external,
    }


# -- right triangles ---------------------------------------------------------


@dataclass
class RightTriangle:
    """Right triangle: catheti a (type k1*k2) and b, hypotenuse c, angles."""

    a: object = None
    b: object = None
    c: object = None
    alpha: object = None
    beta_prime: object = None
    notes: list = field(default_factory=list)

    def parts(self):
        return {
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "alpha": self.alpha,
            "beta_prime": self.beta_prime,
        }

    def to_json(self):
        def enc(v):
            if v is None:
                return None
            if v is UNDETERMINED:
                return "undetermined"
            return v

        return {k: enc(v) for k, v in self.parts().items()} | {"notes": list(self.notes)}


def _safe(fn):
    try:
        return fn()
    except (DomainError, ZeroDivisionError, ValueError):
        return None


def _inv(value, which, k, clamp=1e-9):
    if value is None:
        return None
    if which in ("C", "S") and k == 1 and 1.0 < abs(value) <= 1.0 + clamp:
        value = math.copysign(1.0, value)
    if which == "C" and k == -1 and 1.0 - clamp <= value < 1.0:
        value = 1.0
    if which == "C" and k == 0:
        return None
    return _safe(lambda: gtrig_inverse(value, which, k))


def right_triangle_equations(sig):
    """The ten relations as (name, residual, {part: solver}) triples.

    Solvers read a dict of known part values and return a candidate for
    their part, or None when that direction is not invertible.
    """
    k1, k2 = _plane(sig)
    ka = k1 * k2

    def C(x, k):
        return gtrig(x, k)[0]

    def S(x, k):
        return gtrig(x, k)[1]

    def T(x, k):
        return gtrig(x, k)[2]

    def div(p, q):
        if q is None or p is None or abs(q) < 1e-14:
            return None
        return p / q

    eqs = []

    def eq(name, residual, solvers):
        eqs.append((name, residual, solvers))

    eq(
        "T1(b) = T1(c) C2(alpha)",
        lambda v: T(v["b"], k1) - T(v["c"], k1) * C(v["alpha"], k2),
        {
            "b": lambda v: _inv(T(v["c"], k1) * C(v["alpha"], k2), "T", k1),
            "c": lambda v: _inv(div(T(v["b"], k1), C(v["alpha"], k2)), "T", k1),
            "alpha": lambda v: _inv(div(T(v["b"], k1), T(v["c"], k1)), "C", k2),
        },
    )
    eq(
        "S12(a) = S1(c) S2(alpha)",
        lambda v: S(v["a"], ka) - S(v["c"], k1) * S(v["alpha"], k2),
        {
            "a": lambda v: _inv(S(v["c"], k1) * S(v["alpha"], k2), "S", ka),
            "c": lambda v: _inv(div(S(v["a"], ka), S(v["alpha"], k2)), "S", k1),
            "alpha": lambda v: _inv(div(S(v["a"], ka), S(v["c"], k1)), "S", k2),
        },
    )
    eq(
        "T12(a) = S1(b) T2(alpha)",
        lambda v: T(v["a"], ka) - S(v["b"], k1) * T(v["alpha"], k2),
        {
            "a": lambda v: _inv(S(v["b"], k1) * T(v["alpha"], k2), "T", ka),
            "b": lambda v: _inv(div(T(v["a"], ka), T(v["alpha"], k2)), "S", k1),
            "alpha": lambda v: _inv(div(T(v["a"], ka), S(v["b"], k1)), "T", k2),
        },
    )
    eq(
        "C2(alpha) = C12(a) C2(beta')",
        lambda v: C(v["alpha"], k2) - C(v["a"], ka) * C(v["beta_prime"], k2),
        {
            "alpha": lambda v: _inv(C(v["a"], ka) * C(v["beta_prime"], k2), "C", k2),
            "a": lambda v: _inv(div(C(v["alpha"], k2), C(v["beta_prime"], k2)), "C", ka),
            "beta_prime": lambda v: _inv(div(C(v["alpha"], k2), C(v["a"], ka)), "C", k2),
        },
    )
    eq(
        "C1(c) = C12(a) C1(b)",
        lambda v: C(v["c"], k1) - C(v["a"], ka) * C(v["b"], k1),
        {
            "c": lambda v: _inv(C(v["a"], ka) * C(v["b"], k1), "C", k1),
            "a": lambda v: _inv(div(C(v["c"], k1), C(v["b"], k1)), "C", ka),
            "b": lambda v: _inv(div(C(v["c"], k1), C(v["a"], ka)), "C", k1),
        },
    )
    eq(
        "T12(a) = T1(c) S2(beta')",
        lambda v: T(v["a"], ka) - T(v["c"], k1) * S(v["beta_prime"], k2),
        {
            "a": lambda v: _inv(T(v["c"], k1) * S(v["beta_prime"], k2), "T", ka),
            "c": lambda v: _inv(div(T(v["a"], ka), S(v["beta_prime"], k2)), "T", k1),
            "beta_prime": lambda v: _inv(div(T(v["a"], ka), T(v["c"], k1)), "S", k2),
        },
    )
    eq(
        "S1(b) = S1(c) C2(beta')",
        lambda v: S(v["b"], k1) - S(v["c"], k1) * C(v["beta_prime"], k2),
        {
            "b": lambda v: _inv(S(v["c"], k1) * C(v["beta_prime"], k2), "S", k1),
            "c": lambda v: _inv(div(S(v["b"], k1), C(v["beta_prime"], k2)), "S", k1),
            "beta_prime": lambda v: _inv(div(S(v["b"], k1), S(v["c"], k1)), "C", k2),
        },
    )
    eq(
        "S12(a) = T1(b) T2(beta')",
        lambda v: S(v["a"], ka) - T(v["b"], k1) * T(v["beta_prime"], k2),
        {
            "a": lambda v: _inv(T(v["b"], k1) * T(v["beta_prime"], k2), "S", ka),
            "b": lambda v: _inv(div(S(v["a"], ka), T(v["beta_prime"], k2)), "T", k1),
            "beta_prime": lambda v: _inv(div(S(v["a"], ka), T(v["b"], k1)), "T", k2),
        },
    )
    eq(
        "S2(beta') = C1(b) S2(alpha)",
        lambda v: S(v["beta_prime"], k2) - C(v["b"], k1) * S(v["alpha"], k2),
        {
            "beta_prime": lambda v: _inv(C(v["b"], k1) * S(v["alpha"], k2), "S", k2),
            "b": lambda v: _inv(div(S(v["beta_prime"], k2), S(v["alpha"], k2)), "C", k1),
            "alpha": lambda v: _inv(div(S(v["beta_prime"], k2), C(v["b"], k1)), "S", k2),
        },
    )
    eq(
        "T2(beta') = C1(c) T2(alpha)",
        lambda v: T(v["beta_prime"], k2) - C(v["c"], k1) * T(v["alpha"], k2),
        {
            "beta_prime": lambda v: _inv(C(v["c"], k1) * T(v["alpha"], k2), "T", k2),
            "c": lambda v: _inv(div(T(v["beta_prime"], k2), T(v["alpha"], k2)), "C", k1),
            "alpha": lambda v: _inv(div(T(v["beta_prime"], k2), C(v["c"], k1)), "T", k2),
        },
    )
    return eqs


def solve_right_triangle(known, sig, tol=1e-9, sweeps=10):
    """Fixpoint propagation over the right-triangle equation set.

    Each equation is applied in every invertible direction until no
    field changes; leftover unknowns are Undetermined exactly when the
    signature grants a dilation freedom (some relevant type is 0).
    """
    k1, k2 = _plane(sig)
    names = ("a", "b", "c", "alpha", "beta_prime")
    values = {}
    notes = []
    types = {"a": k1 * k2, "b": k1, "c": k1, "alpha": k2, "beta_prime": k2}
    for name in names:
        v = known.get(name) if isinstance(known, dict) else getattr(known, name)
        if v is None or v is UNDETERMINED:
            continue
        values[name] = _reduce_elliptic(float(v), types[name], notes, name)
    if len(values) < 2:
        raise UnderdeterminedTriangle("need at least two known parts")
    equations = right_triangle_equations(sig)
    for _ in range(sweeps):
        changed = False
        for _name, _res, solvers in equations:
            unknown = [p for p in solvers if p not in values]
            if len(unknown) != 1:
                continue
            part = unknown[0]
            needed = [p for p in solvers if p != part]
            if any(p not in values for p in needed):
                continue
            candidate = solvers[part](values)
            if candidate is not None:
                values[part] = candidate
                changed = True
        if not changed:
            break
    worst = 0.0
    for name, residual, solvers in equations:
        if all(p in values for p in solvers):
            worst = max(worst, abs(residual(values)))
    if worst > max(tol, 1e-9) * 100:
        raise InconsistentTriangle(f"equation residual {worst:.2e} after convergence")
    missing = [p for p in names if p not in values]
    if missing and k1 != 0 and k2 != 0:
        raise UnderdeterminedTriangle(f"cannot determine {missing} on {sig}")
    out = RightTriangle(notes=notes)
    for name in names:
        setattr(out, name, values.get(name, UNDETERMINED))
    return out


def right_triangle_residuals(parts, sig):
    """Residuals of the ten equations for fully known parts."""
    out = {}
    for name, residual, solvers in right_triangle_equations(sig):
        out[name] = residual(parts)
    return out


# -- areas -------------------------------------------------------------------


@dataclass
class Measure:
    value: float
    mtype: int

    def to_json(self):
        return {"value": self.value, "type": self.mtype}


def right_triangle_area(a, b, sig):
    """Closed-form area from the half-argument product rule.

    T(s/2) = T(a/2) T(b/2) with a at the composite type k1*k2, b at k1
    and the area at type K1*K2; for linear planes this is the familiar
    semiproduct of the catheti.
    """
    k1, k2 = _plane(sig)
    ka = k1 * k2
    kb = k1
    ks = k1 * k1 * k2  # K1 * K2
    ta = gtrig(a / 2.0, ka)[2]
    tb = gtrig(b / 2.0, kb)[2]
    product = ta * tb
    if ks == -1 and abs(product) >= 1.0:
        raise DomainError("area is outside the invertible hyperbolic range")
    s = 2.0 * gtrig_inverse(product, "T", ks)
    return Measure(s, ks)


def _np_sin(x, k):
    if k == 1:
        return np.sin(x)
    if k == 0:
        return np.asarray(x, dtype=float)
    return np.sinh(x)


def _np_cos(x, k):
    if k == 1:
        return np.cos(x)
    if k == 0:
        return np.ones_like(np.asarray(x, dtype=float))
    return np.cosh(x)


def _np_atan(x, k):
    if k == 1:
        return np.arctan(x)
    if k == 0:
        return np.asarray(x, dtype=float)
    return np.arctanh(x)


def area_integral_oracle(a, b, sig, steps=2000):
    """Quadrature of the polar area integral; test oracle only.

    Nonlinear planes integrate S1(rho) over the polar region bounded by
    the hypotenuse T1(b) = T1(rho) C2(phi); linear planes integrate the
    metaspace pyramid directly. Trapezoid rule, O(steps^-2).
    """
    k1, k2 = _plane(sig)
    if k1 == 0:
        x = np.linspace(0.0, b, steps + 1)
        y = x * (a / b)
        z = (b - x) / b
        return 3.0 * float(np.trapezoid(y * z, dx=b / steps))
    t12a = gtrig(a, k1 * k2)[2]
    s1b = gtrig(b, k1)[1]
    t2alpha = t12a / s1b
    alpha = gtrig_inverse(t2alpha, "T", k2)
    t1b = gtrig(b, k1)[2]
    phis = np.linspace(0.0, alpha, steps + 1)
    ratios = t1b / _np_cos(phis, k2)
    if k1 == -1 and np.max(np.abs(ratios)) >= 1.0:
        raise NonConvergent("hypotenuse boundary leaves the measurable range")
    rmax = _np_atan(ratios, k1)
    nodes = np.linspace(0.0, 1.0, steps + 1)[:, None] * rmax[None, :]
    vals = _np_sin(nodes, k1)
    inner = (0.5 * (vals[0] + vals[-1]) + np.sum(vals[1:-1], axis=0)) * (rmax / steps)
    return float(np.trapezoid(inner, dx=alpha / steps))


def area_angle_difference(a, b, sig):
    """(alpha - beta') / k1 on curved planes; equals the area."""
    k1, k2 = _plane(sig)
    if k1 == 0:
        raise WrongSignature("the angle-difference form needs k1 = +-1")
    tri = solve_right_triangle({"a": a, "b": b}, sig)
    return (tri.alpha - tri.beta_prime) / k1


def volume_type(sig):
    """(parabolic flag, conjectured type product of cumulative types)."""
    parabolic = any(k == 0 for k in sig.elements)
    conjectured = 1
    for m in range(1, sig.n + 1):
        conjectured *= sig.cumulative(m)
    return parabolic, int(conjectured)


NON_SEPARABLE = "non-separable"
WEAK_SEPARABLE = "weak-separable"
STRONG_SEPARABLE = "strong-separable"


def separability_class(sig):
    """Topological separability of points on a line, decided by k1."""
    if sig.n < 1:
        raise WrongSignature("separability needs dimension >= 1")
    return {1: NON_SEPARABLE, 0: WEAK_SEPARABLE, -1: STRONG_SEPARABLE}[sig.elements[0]]
