"""Spectral resolutions, supports and component signatures of normal
algebraic matrices.

A normal matrix with clustered spectrum splits as a sum of nonzero
spectral values times orthogonal selfadjoint projections; the zero
summand is dropped and its rank kept as ``kernel_rank``.  Elements
sharing the multiset of (value, rank) pairs form one component, an
orbit of the unitary conjugation action; ``unitary_connect``
constructs a connecting unitary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import (
    DifferentComponents,
    NotNormal,
    ShapeMismatch,
    SingularVandermonde,
    SpectrumMismatch,
    ZeroElement,
)
from .linalg import (
    DEFAULT_TOL,
    Matrix,
    Tolerance,
    as_matrix,
    dagger,
    eig_normal,
    fro,
    is_normal_matrix,
    require_square,
    vec,
    unvec,
)


def is_normal(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    m = as_matrix(a)
    require_square(m)
    return is_normal_matrix(m, tol)


def minimal_polynomial(a, tol: Tolerance = DEFAULT_TOL) -> list[complex]:
    """Roots (each simple) of the minimal polynomial of a normal matrix."""
    roots = []
    for lam, _ in eig_normal(a, tol):
        roots.append(0.0 + 0.0j if abs(lam) <= tol.cluster else lam)
    roots.sort(key=lambda z: (z.real, z.imag))
    return roots


@dataclass(frozen=True, eq=False)
class SpectralResolution:
    """Nonzero spectral values with projections and ranks; kernel kept by rank."""

    values: tuple[complex, ...]
    projections: tuple[Matrix, ...]
    ranks: tuple[int, ...]
    kernel_rank: int

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def dimension(self) -> int:
        return self.kernel_rank + sum(self.ranks)

    def support_projection(self) -> Matrix:
        dim = self.dimension
        out = np.zeros((dim, dim), dtype=complex)
        for p in self.projections:
            out = out + p
        return out

    def reconstruct(self) -> Matrix:
        dim = self.dimension
        out = np.zeros((dim, dim), dtype=complex)
        for lam, p in zip(self.values, self.projections):
            out = out + lam * p
        return out


def spectral_resolution(a, tol: Tolerance = DEFAULT_TOL) -> SpectralResolution:
    values, projections, ranks = [], [], []
    kernel_rank = 0
    for lam, proj in eig_normal(a, tol):
        rank = int(round(float(np.trace(proj).real)))
        if abs(lam) <= tol.cluster:
            kernel_rank += rank
        else:
            values.append(lam)
            projections.append(proj)
            ranks.append(rank)
    return SpectralResolution(tuple(values), tuple(projections), tuple(ranks), kernel_rank)


@dataclass(frozen=True, eq=False)
class Support:
    """The projection onto the range of the nonzero spectral part."""

    projection: Matrix
    rank: int


def support(a, tol: Tolerance = DEFAULT_TOL) -> Support:
    res = spectral_resolution(a, tol)
    return Support(res.support_projection(), sum(res.ranks))


@dataclass(frozen=True)
class ComponentSignature:
    """The invariant (n, values, ranks) identifying a component.

    Values are kept in the canonical (Re, Im)-lexicographic order;
    ``matches`` compares (value, rank) multisets within tolerance, so it
    is robust against reordering of near-tied real parts.
    """

    values: tuple[complex, ...]
    ranks: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.values)

    def matches(self, other: "ComponentSignature", tol: Tolerance = DEFAULT_TOL) -> bool:
        if self.n != other.n:
            return False
        unused = list(range(other.n))
        for lam, rank in zip(self.values, self.ranks):
            hit = None
            for idx in unused:
                if other.ranks[idx] == rank and abs(other.values[idx] - lam) <= tol.cluster:
                    hit = idx
                    break
            if hit is None:
                return False
            unused.remove(hit)
        return True


def _canonical_signature(values, ranks) -> ComponentSignature:
    order = sorted(range(len(values)), key=lambda i: (values[i].real, values[i].imag))
    return ComponentSignature(
        tuple(complex(values[i]) for i in order), tuple(int(ranks[i]) for i in order)
    )


def signature(a, tol: Tolerance = DEFAULT_TOL) -> ComponentSignature:
    res = spectral_resolution(a, tol)
    if res.n == 0:
        raise ZeroElement("the zero element has no component signature")
    return _canonical_signature(res.values, res.ranks)


def same_component(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    am, bm = as_matrix(a), as_matrix(b)
    if am.shape != bm.shape:
        raise ShapeMismatch("elements live in different spaces")
    if not is_normal(am, tol) or not is_normal(bm, tol):
        raise NotNormal("component comparison requires normal elements")
    return signature(am, tol).matches(signature(bm, tol), tol)


def vandermonde_projections(a, values, tol: Tolerance = DEFAULT_TOL) -> list[Matrix]:
    """Recover spectral projections by solving a^l = sum_k values_k^l e_k.

    The system over l = 1..n is solved directly from matrix powers, so
    the result is independent of any eigendecomposition of ``a``.
    """
    m = as_matrix(a)
    require_square(m)
    vals = [complex(v) for v in values]
    n = len(vals)
    if n == 0:
        raise SpectrumMismatch("at least one spectral value is required")
    for i in range(n):
        if abs(vals[i]) <= tol.cluster:
            raise SingularVandermonde("spectral values must be nonzero")
        for j in range(i + 1, n):
            if abs(vals[i] - vals[j]) <= tol.cluster:
                raise SingularVandermonde("spectral values must be pairwise distinct")

    res = spectral_resolution(m, tol)
    if res.n != n:
        raise SpectrumMismatch(f"element has {res.n} nonzero spectral values, {n} given")
    unused = list(res.values)
    for v in vals:
        hit = next((w for w in unused if abs(w - v) <= tol.cluster), None)
        if hit is None:
            raise SpectrumMismatch(f"value {v} is not in the spectrum")
        unused.remove(hit)

    vmat = np.array([[v ** l for v in vals] for l in range(1, n + 1)], dtype=complex)
    power = m
    rows = []
    for _ in range(n):
        rows.append(vec(power))
        power = power @ m
    solution = np.linalg.solve(vmat, np.array(rows))
    return [unvec(solution[k].copy(), m.shape) for k in range(n)]


def _range_basis(projection: Matrix, rank: int) -> Matrix:
    q, _, _ = sla.qr(projection, mode="economic", pivoting=True)
    return q[:, :rank]


def unitary_connect(a, b, tol: Tolerance = DEFAULT_TOL) -> Matrix:
    """A unitary U with U a U* = b, built by matching spectral subspaces."""
    am, bm = as_matrix(a), as_matrix(b)
    if not same_component(am, bm, tol):
        raise DifferentComponents("elements have different signatures")
    ra = spectral_resolution(am, tol)
    rb = spectral_resolution(bm, tol)

    # Pair up spectral data by value (ranks agree within a component).
    unused = list(range(rb.n))
    pairs = []
    for i in range(ra.n):
        j = min(
            (k for k in unused if rb.ranks[k] == ra.ranks[i]),
            key=lambda k: abs(rb.values[k] - ra.values[i]),
        )
        unused.remove(j)
        pairs.append((ra.projections[i], rb.projections[j], ra.ranks[i]))

    dim = am.shape[0]
    u = np.zeros((dim, dim), dtype=complex)
    for pa, pb, rank in pairs:
        u = u + _range_basis(pb, rank) @ dagger(_range_basis(pa, rank))
    if ra.kernel_rank > 0:
        ka = np.eye(dim, dtype=complex) - ra.support_projection()
        kb = np.eye(dim, dtype=complex) - rb.support_projection()
        u = u + _range_basis(kb, ra.kernel_rank) @ dagger(_range_basis(ka, ra.kernel_rank))
    return u


def involution_image(a) -> Matrix:
    """The adjoint a*; conjugates the signature values, preserves ranks."""
    return dagger(as_matrix(a))
