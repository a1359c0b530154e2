"""Exception hierarchy for the geometry kernel.

Every error carries a stable ``code`` string so the CLI and the HTTP
service can surface kernel failures without string matching.
"""


class GeometryError(Exception):
    """Base class for all kernel errors."""

    code = "geometry-error"

    def __init__(self, message=""):
        super().__init__(message or self.__doc__)


class DomainError(GeometryError):
    """Argument outside the invertible range of a trigonometric function."""

    code = "out-of-domain"


class Undetermined(GeometryError):
    """The requested value is not pinned down (e.g. C inverse at type 0)."""

    code = "undetermined"


class InconsistentSignature(GeometryError):
    """Type arithmetic produced 0 times Infinite."""

    code = "inconsistent-signature"


class InfiniteContribution(GeometryError):
    """A nonzero coordinate was multiplied by an infinite pair type."""

    code = "infinite-contribution"


class ZeroVector(GeometryError):
    """Operation requires a nonzero vector."""

    code = "zero-vector"


class LimitVectorError(GeometryError):
    """Operation is not defined for limit vectors."""

    code = "limit-vector"


class NotLimit(GeometryError):
    """Operation requires a limit vector."""

    code = "not-limit"


class AlreadyOrthogonal(GeometryError):
    """Vectors are already orthogonal; nothing to do."""

    code = "already-orthogonal"


class Degenerate(GeometryError):
    """Operation collapsed to the zero vector."""

    code = "degenerate"


class Unsupported(GeometryError):
    """Configuration outside the supported constructions."""

    code = "unsupported"


class WrongSignature(GeometryError):
    """Signature does not satisfy the operation's precondition."""

    code = "wrong-signature"


class DimensionMismatch(GeometryError):
    """Vector or matrix size does not match the signature dimension."""

    code = "dimension-mismatch"


class NotGMOrthogonal(GeometryError):
    """Matrix failed generalized-orthogonality validation."""

    code = "not-gm-orthogonal"


class ImproperMotion(GeometryError):
    """Motion contains a reflection and cannot be parameterized."""

    code = "improper-motion"


class AllVectorsDegenerate(GeometryError):
    """Orthonormalization consumed every vector."""

    code = "all-vectors-degenerate"


class InputNotOrthonormal(GeometryError):
    """Completion requires an orthonormal input family."""

    code = "input-not-orthonormal"


class IndexConflict(GeometryError):
    """Basis vectors need more distinct indices than the signature offers."""

    code = "index-conflict"


class UnclassifiableMeasure(GeometryError):
    """No measure case matched within tolerance."""

    code = "unclassifiable-measure"


class UnconnectableError(GeometryError):
    """Points are unconnectable; the requested measure does not exist."""

    code = "unconnectable"


class AntipodalAmbiguity(GeometryError):
    """Midpoint of an antipodal pair is not unique."""

    code = "antipodal-ambiguity"


class DegenerateTriangle(GeometryError):
    """Triangle vertices are collinear."""

    code = "degenerate-triangle"


class LimitSum(GeometryError):
    """Vertex sum is a limit vector and cannot be normalized."""

    code = "limit-sum"


class UnmeasurableAngle(GeometryError):
    """Angle between a line and a non-line sequence of points."""

    code = "unmeasurable-angle"


class UnderdeterminedTriangle(GeometryError):
    """Too few independent parts to solve the triangle."""

    code = "underdetermined"


class InconsistentTriangle(GeometryError):
    """Given parts violate the triangle equations."""

    code = "inconsistent"


class NonConvergent(GeometryError):
    """Quadrature boundary reached an unmeasurable angle."""

    code = "non-convergent"


class MalformedForm(GeometryError):
    """Quadratic form coefficients violate the ordering convention."""

    code = "malformed-form"


class InvalidParams(GeometryError):
    """Crystallographic group parameters outside the valid range."""

    code = "invalid-params"


class OrbitExplosion(GeometryError):
    """Orbit enumeration exceeded the node cap."""

    code = "orbit-explosion"
