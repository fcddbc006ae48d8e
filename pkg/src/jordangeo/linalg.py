"""Dense complex matrix arithmetic and linear maps on matrix spaces.

Matrices are numpy arrays of complex dtype.  A linear map on a matrix
space is a :class:`SuperOperator`: a kernel acting on row-major
vectorized matrices (index ``(i, j) -> i*cols + j``).  A conjugate-linear
operator with kernel ``K`` sends ``z`` to ``unvec(K @ vec(conj(z)))``,
so one kernel type covers both real-linear flavors in use here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import ConjugateLinearInput, NotNormal, NotSquare, ShapeMismatch

Matrix = np.ndarray


@dataclass(frozen=True)
class Tolerance:
    """Numerical tolerances: absolute, relative, and finite-difference step."""

    abs: float = 1e-9
    rel: float = 1e-9
    fd_step: float = 1e-5

    def __post_init__(self):
        if self.abs < 0 or self.rel < 0 or self.fd_step < 0:
            raise ValueError("tolerances must be nonnegative")

    @property
    def cluster(self) -> float:
        """Radius used to merge nearby spectral values (10x absolute)."""
        return 10.0 * self.abs


DEFAULT_TOL = Tolerance()


def as_matrix(a) -> Matrix:
    """Coerce to a 2-d complex array with finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ShapeMismatch(f"expected a 2-d matrix, got ndim={m.ndim}")
    if m.size == 0:
        raise ShapeMismatch("matrix must be nonempty")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def require_square(a: Matrix) -> Matrix:
    if a.shape[0] != a.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {a.shape}")
    return a


def require_same_shape(*mats: Matrix) -> None:
    shapes = {m.shape for m in mats}
    if len(shapes) > 1:
        raise ShapeMismatch(f"matrices live in different spaces: {sorted(shapes)}")


def dagger(a: Matrix) -> Matrix:
    return a.conj().T


def fro(a: Matrix) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(a))


def opnorm(a: Matrix) -> float:
    """Operator (spectral) norm."""
    return float(np.linalg.norm(a, 2))


def vec(z: Matrix) -> np.ndarray:
    return np.asarray(z).ravel()


def unvec(x: np.ndarray, shape: tuple[int, int]) -> Matrix:
    return np.asarray(x).reshape(shape)


def normality_defect(a: Matrix) -> float:
    """Frobenius norm of ``a a* - a* a``."""
    ah = dagger(a)
    return fro(a @ ah - ah @ a)


def is_normal_matrix(a: Matrix, tol: Tolerance = DEFAULT_TOL) -> bool:
    return normality_defect(a) <= tol.abs * max(1.0, fro(a) ** 2)


@dataclass(frozen=True, eq=False)
class SuperOperator:
    """A linear map on a matrix space, stored as a vectorized kernel.

    ``conjugate_linear`` operators apply their kernel to the entrywise
    conjugate of the argument; composing two conjugate-linear operators
    therefore yields a complex-linear one.
    """

    kernel: Matrix
    shape_in: tuple[int, int]
    shape_out: tuple[int, int]
    conjugate_linear: bool = False

    def __post_init__(self):
        n_in = self.shape_in[0] * self.shape_in[1]
        n_out = self.shape_out[0] * self.shape_out[1]
        if self.kernel.shape != (n_out, n_in):
            raise ShapeMismatch(
                f"kernel shape {self.kernel.shape} does not match "
                f"spaces {self.shape_out} x {self.shape_in}"
            )

    def apply(self, z) -> Matrix:
        m = as_matrix(z)
        if m.shape != self.shape_in:
            raise ShapeMismatch(f"operand shape {m.shape} != {self.shape_in}")
        w = np.conj(m) if self.conjugate_linear else m
        return unvec(self.kernel @ vec(w), self.shape_out)

    def compose(self, other: "SuperOperator") -> "SuperOperator":
        """Return self after other (apply ``other`` first)."""
        if other.shape_out != self.shape_in:
            raise ShapeMismatch("operators do not chain")
        k2 = np.conj(other.kernel) if self.conjugate_linear else other.kernel
        return SuperOperator(
            self.kernel @ k2,
            other.shape_in,
            self.shape_out,
            self.conjugate_linear != other.conjugate_linear,
        )

    def norm(self) -> float:
        return fro(self.kernel)

    def _check_compatible(self, other: "SuperOperator") -> None:
        if (
            self.shape_in != other.shape_in
            or self.shape_out != other.shape_out
            or self.conjugate_linear != other.conjugate_linear
        ):
            raise ShapeMismatch("operators of different type cannot be combined")

    def __add__(self, other: "SuperOperator") -> "SuperOperator":
        self._check_compatible(other)
        return SuperOperator(
            self.kernel + other.kernel, self.shape_in, self.shape_out, self.conjugate_linear
        )

    def __sub__(self, other: "SuperOperator") -> "SuperOperator":
        self._check_compatible(other)
        return SuperOperator(
            self.kernel - other.kernel, self.shape_in, self.shape_out, self.conjugate_linear
        )

    def __mul__(self, scalar) -> "SuperOperator":
        return SuperOperator(
            self.kernel * scalar, self.shape_in, self.shape_out, self.conjugate_linear
        )

    __rmul__ = __mul__

    def __neg__(self) -> "SuperOperator":
        return self * (-1.0)


def identity_super(shape: tuple[int, int]) -> SuperOperator:
    n = shape[0] * shape[1]
    return SuperOperator(np.eye(n, dtype=complex), shape, shape, False)


def zero_super(shape: tuple[int, int], conjugate_linear: bool = False) -> SuperOperator:
    n = shape[0] * shape[1]
    return SuperOperator(np.zeros((n, n), dtype=complex), shape, shape, conjugate_linear)


def conjugation_super(shape: tuple[int, int]) -> SuperOperator:
    """The entrywise-conjugation map as a conjugate-linear operator."""
    n = shape[0] * shape[1]
    return SuperOperator(np.eye(n, dtype=complex), shape, shape, True)


def super_from_map(fn, shape_in, shape_out=None, conjugate_linear=False) -> SuperOperator:
    """Build a kernel column by column from a callable on matrices.

    The columns are images of the real basis matrices, which is correct
    for both linearity flavors since those basis elements are self-conjugate.
    """
    shape_out = shape_in if shape_out is None else shape_out
    n_in = shape_in[0] * shape_in[1]
    n_out = shape_out[0] * shape_out[1]
    kernel = np.zeros((n_out, n_in), dtype=complex)
    for idx in range(n_in):
        basis = np.zeros(shape_in, dtype=complex)
        basis[divmod(idx, shape_in[1])] = 1.0
        kernel[:, idx] = vec(as_matrix(fn(basis)))
    return SuperOperator(kernel, shape_in, shape_out, conjugate_linear)


def super_apply(s: SuperOperator, z) -> Matrix:
    return s.apply(z)


def super_exp(s: SuperOperator) -> SuperOperator:
    """Exponential of a complex-linear operator on a matrix space."""
    if s.conjugate_linear:
        raise ConjugateLinearInput("exponential is defined for complex-linear operators")
    if s.shape_in != s.shape_out:
        raise ShapeMismatch("exponential requires an endomorphism")
    return SuperOperator(mat_exp(s.kernel), s.shape_in, s.shape_out, False)


def mat_exp(x) -> Matrix:
    """Matrix exponential (scaling-and-squaring Pade); exp(0) is exactly Id."""
    m = as_matrix(x)
    require_square(m)
    if not m.any():
        return np.eye(m.shape[0], dtype=complex)
    return sla.expm(m)


def cluster_indices(values, radius: float) -> list[list[int]]:
    """Group indices of values into transitively-closed clusters of the radius.

    Two values end up in one cluster whenever a chain of pairwise-close
    values connects them.  Clusters are returned sorted by smallest index.
    """
    vals = np.asarray(values)
    n = len(vals)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(vals[i] - vals[j]) <= radius:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)

    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [groups[k] for k in sorted(groups)]


def eig_normal(a, tol: Tolerance = DEFAULT_TOL) -> list[tuple[complex, Matrix]]:
    """Eigendecomposition of a normal matrix as (value, projector) pairs.

    Eigenvalues within the cluster radius are merged (mean value, summed
    projector), so the returned values are pairwise distinct.  Projectors
    are built from Schur vectors, hence orthogonal selfadjoint idempotents
    summing to the identity.  Pairs are sorted by (Re, Im) of the value.
    """
    m = as_matrix(a)
    require_square(m)
    if not is_normal_matrix(m, tol):
        raise NotNormal(
            f"normality defect {normality_defect(m):.3e} exceeds tolerance"
        )
    t, v = sla.schur(m, output="complex")
    eigs = np.diag(t)
    pairs = []
    for group in cluster_indices(eigs, tol.cluster):
        value = complex(eigs[group].mean())
        cols = v[:, group]
        pairs.append((value, cols @ dagger(cols)))
    pairs.sort(key=lambda p: (p[0].real, p[0].imag))
    return pairs
