"""Exception types shared across the package.

Every domain failure raises a subclass of :class:`JordanGeoError`; the CLI
maps these to exit code 1.  File-format problems raise
:class:`MatrixFormatError` and map to exit code 2.
"""


class JordanGeoError(Exception):
    """Base class for domain errors (bad element, failed precondition)."""


class ShapeMismatch(JordanGeoError):
    """Operands live in incompatible matrix spaces."""


class NotSquare(JordanGeoError):
    """A square matrix was required."""


class NotNormal(JordanGeoError):
    """The matrix does not commute with its adjoint within tolerance."""


class NotTripotent(JordanGeoError):
    """The element is not a tripotent (partial isometry) within tolerance."""


class NotOrthogonalFamily(JordanGeoError):
    """The given tripotents are not nonzero and pairwise orthogonal."""


class NotInPeirceOne(JordanGeoError):
    """The element does not lie in the Peirce 1-space of the tripotent."""


class ZeroElement(JordanGeoError):
    """The zero element has no nonzero spectral data."""


class SingularVandermonde(JordanGeoError):
    """Repeated or zero spectral values make the power system singular."""


class SpectrumMismatch(JordanGeoError):
    """The supplied spectral values do not match the element's spectrum."""


class DifferentComponents(JordanGeoError):
    """The two elements have different component signatures."""


class NotTangent(JordanGeoError):
    """The vector is not tangent at the base point within tolerance."""


class NotInA(JordanGeoError):
    """The vector is not a sum of selfadjoint Peirce-1 parts."""


class ConjugateLinearInput(JordanGeoError):
    """A complex-linear operator was required."""


class Singular(JordanGeoError):
    """The operator is not invertible within tolerance."""


class MatrixFormatError(Exception):
    """A matrix file could not be parsed or violates the schema."""
