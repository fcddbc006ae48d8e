"""Peirce projections and eigenspaces of tripotents.

Peirce projections are built literally from the defining formulas
P_1 = Q^2, P_1/2 = 2(e box e - Q^2), P_0 = Id - 2 e box e + Q^2 and come
with orthonormal (Frobenius) bases of the three eigenspaces.  For
families of pairwise orthogonal tripotents the joint refinement is
provided, along with the multiplication-rule checker, the selfadjoint
split of Peirce-1 elements, and the Peirce reflection.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np
import scipy.linalg as sla

from .errors import NotInPeirceOne, NotOrthogonalFamily, ShapeMismatch
from .linalg import (
    DEFAULT_TOL,
    Matrix,
    SuperOperator,
    Tolerance,
    as_matrix,
    dagger,
    fro,
    identity_super,
    unvec,
)
from .triple import (
    Tripotent,
    are_orthogonal,
    as_tripotent,
    box,
    is_triple_automorphism,
    quad,
    triple_product,
)

PEIRCE_LEVELS = (1.0, 0.5, 0.0)

# Rank-revealing threshold for extracting eigenspace bases from
# projection kernels, whose singular values sit at 0 or 1.
_BASIS_RANK_THRESHOLD = 1e-8


def _orthonormal_range(kernel: Matrix, shape: tuple[int, int]) -> tuple[Matrix, ...]:
    q, r, _ = sla.qr(kernel, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    rank = int(np.sum(diag > _BASIS_RANK_THRESHOLD))
    return tuple(unvec(q[:, j].copy(), shape) for j in range(rank))


@dataclass(frozen=True, eq=False)
class PeirceDecomposition:
    """The three Peirce projections of a tripotent with eigenspace bases."""

    tripotent: Tripotent
    p1: SuperOperator
    p12: SuperOperator
    p0: SuperOperator
    bases: dict[float, tuple[Matrix, ...]]

    def projection(self, k) -> SuperOperator:
        table = {1.0: self.p1, 0.5: self.p12, 0.0: self.p0}
        key = float(k)
        if key not in table:
            raise ValueError(f"Peirce index must be one of 1, 1/2, 0; got {k}")
        return table[key]


def peirce_projections(e, tol: Tolerance = DEFAULT_TOL) -> PeirceDecomposition:
    trip = as_tripotent(e, tol)
    m = trip.matrix
    box_op = box(m, m)
    q_op = quad(m, m)
    p1 = q_op.compose(q_op)
    p12 = (box_op - p1) * 2.0
    p0 = identity_super(m.shape) - box_op * 2.0 + p1
    bases = {
        1.0: _orthonormal_range(p1.kernel, m.shape),
        0.5: _orthonormal_range(p12.kernel, m.shape),
        0.0: _orthonormal_range(p0.kernel, m.shape),
    }
    return PeirceDecomposition(trip, p1, p12, p0, bases)


def peirce_part(e, z, k, tol: Tolerance = DEFAULT_TOL) -> Matrix:
    """P_k(e) z for k in {1, 1/2, 0}."""
    dec = e if isinstance(e, PeirceDecomposition) else peirce_projections(e, tol)
    return dec.projection(k).apply(z)


def peirce_apply(e, z, k) -> Matrix:
    """Corner-product form of P_k(e) z, equivalent to the kernel route.

    With R = e e* and D = e* e: P_1 z = R z D, P_1/2 z = R z (1-D) + (1-R) z D,
    P_0 z = (1-R) z (1-D).
    """
    em = e.matrix if isinstance(e, Tripotent) else as_matrix(e)
    zm = as_matrix(z)
    if em.shape != zm.shape:
        raise ShapeMismatch(f"operand shape {zm.shape} != {em.shape}")
    r = em @ dagger(em)
    d = dagger(em) @ em
    i_r = np.eye(r.shape[0], dtype=complex) - r
    i_d = np.eye(d.shape[0], dtype=complex) - d
    key = float(k)
    if key == 1.0:
        return r @ zm @ d
    if key == 0.5:
        return r @ zm @ i_d + i_r @ zm @ d
    if key == 0.0:
        return i_r @ zm @ i_d
    raise ValueError(f"Peirce index must be one of 1, 1/2, 0; got {k}")


def in_peirce_space(e, z, k, tol: Tolerance = DEFAULT_TOL) -> bool:
    zm = as_matrix(z)
    return fro(peirce_apply(e, zm, k) - zm) <= tol.abs * max(1.0, fro(zm))


@dataclass(frozen=True, eq=False)
class JointPeirceDecomposition:
    """Joint Peirce refinement for a family of orthogonal tripotents.

    Index pairs (j, k) with 0 <= j <= k <= n label the summands: (j, j)
    is the 1-space of e_j, (j, k) the intersection of half-spaces,
    (0, j) the half-space of e_j inside the 0-spaces of the others, and
    (0, 0) the common 0-space.
    """

    family: tuple[Tripotent, ...]
    projections: dict[tuple[int, int], SuperOperator]

    def projection(self, j: int, k: int) -> SuperOperator:
        key = (min(j, k), max(j, k))
        return self.projections[key]


def joint_peirce(family, tol: Tolerance = DEFAULT_TOL) -> JointPeirceDecomposition:
    trips = [as_tripotent(e, tol) for e in family]
    if not trips:
        raise NotOrthogonalFamily("family must be nonempty")
    if any(t.rank == 0 for t in trips):
        raise NotOrthogonalFamily("family members must be nonzero")
    shapes = {t.matrix.shape for t in trips}
    if len(shapes) > 1:
        raise ShapeMismatch("family members live in different spaces")
    for i in range(len(trips)):
        for j in range(i + 1, len(trips)):
            if not are_orthogonal(trips[i].matrix, trips[j].matrix, tol):
                raise NotOrthogonalFamily(f"members {i + 1} and {j + 1} are not orthogonal")

    decs = [peirce_projections(t, tol) for t in trips]
    n = len(trips)
    projections: dict[tuple[int, int], SuperOperator] = {}
    for j in range(1, n + 1):
        projections[(j, j)] = decs[j - 1].p1
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            projections[(j, k)] = decs[j - 1].p12.compose(decs[k - 1].p12)
    for j in range(1, n + 1):
        op = decs[j - 1].p12
        for l in range(1, n + 1):
            if l != j:
                op = op.compose(decs[l - 1].p0)
        projections[(0, j)] = op
    op = decs[0].p0
    for l in range(2, n + 1):
        op = op.compose(decs[l - 1].p0)
    projections[(0, 0)] = op
    return JointPeirceDecomposition(tuple(trips), projections)


@dataclass(frozen=True)
class PeirceRuleReport:
    """Worst residuals of the multiplication rules {Z_i Z_j Z_k} c Z_{i-j+k}."""

    rule_residuals: dict[tuple[float, float, float], float]
    z1_box_z0: float

    @property
    def worst_rule(self) -> float:
        return max(self.rule_residuals.values(), default=0.0)

    @property
    def worst(self) -> float:
        return max(self.worst_rule, self.z1_box_z0)

    def passed(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.worst <= tol.abs


def verify_peirce_rules(e, tol: Tolerance = DEFAULT_TOL, trials: int = 32, rng=None) -> PeirceRuleReport:
    """Sample the multiplication rules and the Z_1 box Z_0 = 0 identity.

    For each index triple the product of random eigenspace elements must
    land in the predicted eigenspace (or vanish when the predicted index
    falls outside {0, 1/2, 1}).
    """
    rng = np.random.default_rng(0xA5) if rng is None else rng
    dec = peirce_projections(e, tol)

    def sample(k):
        basis = dec.bases[k]
        if not basis:
            return None
        coeff = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
        z = sum(c * b for c, b in zip(coeff, basis))
        return z / fro(z)

    residuals = {combo: 0.0 for combo in product(PEIRCE_LEVELS, repeat=3)}
    z1z0 = 0.0
    for _ in range(max(trials, 1)):
        picks = {k: sample(k) for k in PEIRCE_LEVELS}
        for combo in residuals:
            zi, zj, zk = (picks[c] for c in combo)
            if zi is None or zj is None or zk is None:
                continue
            t = triple_product(zi, zj, zk)
            target = combo[0] - combo[1] + combo[2]
            if target in PEIRCE_LEVELS:
                r = fro(t - dec.projection(target).apply(t))
            else:
                r = fro(t)
            residuals[combo] = max(residuals[combo], r)
        if picks[1.0] is not None and picks[0.0] is not None:
            z1z0 = max(z1z0, box(picks[1.0], picks[0.0]).norm())
    return PeirceRuleReport(residuals, z1z0)


def selfadjoint_split(e, z, tol: Tolerance = DEFAULT_TOL) -> tuple[Matrix, Matrix]:
    """Split z in Z_1(e) as h + ik with h, k fixed by the involution {e.e}."""
    trip = as_tripotent(e, tol)
    zm = as_matrix(z)
    if not in_peirce_space(trip, zm, 1.0, tol):
        raise NotInPeirceOne("element does not lie in the Peirce 1-space")
    sharp = triple_product(trip.matrix, zm, trip.matrix)
    h = (zm + sharp) / 2.0
    k = (zm - sharp) / 2.0j
    return h, k


def peirce_reflection(e, tol: Tolerance = DEFAULT_TOL) -> SuperOperator:
    """The involutive automorphism z_1 + z_1/2 + z_0 -> z_1 - z_1/2 + z_0."""
    dec = peirce_projections(e, tol)
    return identity_super(dec.tripotent.matrix.shape) - dec.p12 * 2.0


def reflection_is_automorphism(e, tol: Tolerance = DEFAULT_TOL):
    """Convenience: run the automorphism checker on the Peirce reflection."""
    return is_triple_automorphism(peirce_reflection(e, tol), tol=tol)
