"""The triple product 2{abc} = ab*c + cb*a on matrix spaces.

Provides the box and quadratic operators, tripotents (partial
isometries), orthogonality, inner derivations and their exponentials,
and residual checkers for the derivation / automorphism identities and
the four structure axioms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConjugateLinearInput, ShapeMismatch, Singular
from .linalg import (
    DEFAULT_TOL,
    Matrix,
    SuperOperator,
    Tolerance,
    as_matrix,
    dagger,
    fro,
    mat_exp,
    opnorm,
    require_same_shape,
)
from .errors import NotTripotent


def triple_product(a, b, c) -> Matrix:
    """{abc} = (a b* c + c b* a) / 2."""
    am, bm, cm = as_matrix(a), as_matrix(b), as_matrix(c)
    require_same_shape(am, bm, cm)
    bh = dagger(bm)
    return (am @ bh @ cm + cm @ bh @ am) / 2.0


def box(a, b) -> SuperOperator:
    """The complex-linear operator z -> {abz}."""
    am, bm = as_matrix(a), as_matrix(b)
    require_same_shape(am, bm)
    m, n = am.shape
    left = am @ dagger(bm)
    right = dagger(bm) @ am
    kernel = (np.kron(left, np.eye(n)) + np.kron(np.eye(m), right.T)) / 2.0
    return SuperOperator(kernel, (m, n), (m, n), False)


def quad(a, b) -> SuperOperator:
    """The conjugate-linear operator z -> {azb}."""
    am, bm = as_matrix(a), as_matrix(b)
    require_same_shape(am, bm)
    m, n = am.shape
    k = (np.einsum("ik,lj->ijlk", am, bm) + np.einsum("ik,lj->ijlk", bm, am)) / 2.0
    return SuperOperator(k.reshape(m * n, m * n), (m, n), (m, n), True)


@dataclass(frozen=True, eq=False)
class Tripotent:
    """A partial isometry e with {eee} = e."""

    matrix: Matrix
    rank: int
    minimal: bool


def is_tripotent(e, tol: Tolerance = DEFAULT_TOL) -> bool:
    m = as_matrix(e)
    return fro(triple_product(m, m, m) - m) <= tol.abs * max(1.0, fro(m))


def as_tripotent(e, tol: Tolerance = DEFAULT_TOL) -> Tripotent:
    """Validate and wrap a matrix as a tripotent; accepts Tripotent unchanged."""
    if isinstance(e, Tripotent):
        return e
    m = as_matrix(e)
    if not is_tripotent(m, tol):
        raise NotTripotent(
            f"triple-power defect {fro(triple_product(m, m, m) - m):.3e} exceeds tolerance"
        )
    rank = int(np.sum(np.linalg.svd(m, compute_uv=False) > 0.5))
    return Tripotent(m, rank, rank == 1)


def are_orthogonal(x, y, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff the box operator x box y vanishes (kernel Frobenius norm)."""
    xm, ym = as_matrix(x), as_matrix(y)
    return box(xm, ym).norm() <= tol.abs * max(1.0, fro(xm) * fro(ym))


@dataclass(frozen=True, eq=False)
class Derivation:
    """An inner derivation g(e, u) = e box u - u box e with its generators."""

    op: SuperOperator
    base: Matrix
    direction: Matrix


def inner_derivation(e, u) -> Derivation:
    em, um = as_matrix(e), as_matrix(u)
    require_same_shape(em, um)
    return Derivation(box(em, um) - box(um, em), em, um)


def _default_samples(shape, count=32, seed=0x5EED):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        z = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        out.append(z / fro(z))
    return out


def is_triple_derivation(delta: SuperOperator, samples=None, tol: Tolerance = DEFAULT_TOL):
    """Check delta{zzz} = {(dz)zz} + {z(dz)z} + {zz(dz)} on samples.

    Returns (verdict, worst residual).
    """
    if delta.conjugate_linear:
        raise ConjugateLinearInput("derivation check requires a complex-linear operator")
    if samples is None:
        samples = _default_samples(delta.shape_in)
    worst = 0.0
    scale = 1.0
    for z in samples:
        zm = as_matrix(z)
        dz = delta.apply(zm)
        lhs = delta.apply(triple_product(zm, zm, zm))
        rhs = (
            triple_product(dz, zm, zm)
            + triple_product(zm, dz, zm)
            + triple_product(zm, zm, dz)
        )
        worst = max(worst, fro(lhs - rhs))
        scale = max(scale, fro(zm) ** 3)
    return worst <= tol.abs * scale, worst


def is_cstar_derivation(delta: SuperOperator, sample_pairs=None, tol: Tolerance = DEFAULT_TOL):
    """Check the Leibniz rule delta(xy) = delta(x)y + x delta(y) on sample pairs.

    Returns (verdict, worst residual).  The default sample set starts with
    the pair (Id, Id): its Leibniz defect equals ||delta(Id)||, which keeps
    the failing case bounded away from roundoff for every non-derivation
    generator.
    """
    if delta.conjugate_linear:
        raise ConjugateLinearInput("Leibniz check requires a complex-linear operator")
    m, n = delta.shape_in
    if m != n:
        raise ShapeMismatch("Leibniz rule needs square matrices")
    if sample_pairs is None:
        eye = np.eye(n, dtype=complex)
        rnd = _default_samples((n, n), count=31, seed=0x5EED + 1)
        sample_pairs = [(eye, eye)] + [(rnd[i], rnd[(i + 7) % 31]) for i in range(31)]
    worst = 0.0
    scale = 1.0
    for x, y in sample_pairs:
        xm, ym = as_matrix(x), as_matrix(y)
        resid = delta.apply(xm @ ym) - delta.apply(xm) @ ym - xm @ delta.apply(ym)
        worst = max(worst, fro(resid))
        scale = max(scale, fro(xm) * fro(ym))
    return worst <= tol.abs * scale, worst


def triple_exp(delta, t: float = 1.0) -> SuperOperator:
    """exp(t * delta) for a Derivation or complex-linear SuperOperator."""
    op = delta.op if isinstance(delta, Derivation) else delta
    if op.conjugate_linear:
        raise ConjugateLinearInput("exponential is defined for complex-linear operators")
    return SuperOperator(mat_exp(op.kernel * float(t)), op.shape_in, op.shape_out, False)


def is_triple_automorphism(phi: SuperOperator, samples=None, tol: Tolerance = DEFAULT_TOL):
    """Check phi{zzz} = {(phi z)(phi z)(phi z)} and isometry on samples.

    Returns (verdict, worst residual); raises Singular when phi is not
    invertible within tolerance.
    """
    if phi.conjugate_linear:
        raise ConjugateLinearInput("automorphism check requires a complex-linear operator")
    sv = np.linalg.svd(phi.kernel, compute_uv=False)
    if sv[-1] <= tol.abs * max(1.0, sv[0]):
        raise Singular("operator is not invertible within tolerance")
    if samples is None:
        samples = _default_samples(phi.shape_in)
    worst = 0.0
    for z in samples:
        zm = as_matrix(z)
        fz = phi.apply(zm)
        worst = max(worst, fro(phi.apply(triple_product(zm, zm, zm)) - triple_product(fz, fz, fz)))
        worst = max(worst, abs(opnorm(fz) - opnorm(zm)))
    return worst <= tol.abs * 10.0, worst


@dataclass(frozen=True)
class JBAxiomReport:
    """Residuals of the four structure axioms for one input quadruple.

    ``linearity``: symmetry in the outer slots plus scalar (conjugate-)
    linearity probes.  ``commutator``: the identity
    [a box b, c box d] = {abc} box d - c box {dab} on kernels.
    ``positivity``: hermiticity defect of a box a plus any negative part
    of its spectrum.  ``norm_identity``: | ||{aaa}|| - ||a||^3 | relative
    to ||a||^3, in the operator norm.
    """

    linearity: float
    commutator: float
    positivity: float
    norm_identity: float

    def residuals(self) -> tuple[float, float, float, float]:
        return (self.linearity, self.commutator, self.positivity, self.norm_identity)

    def passed(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return all(r <= tol.abs for r in self.residuals())


def check_jb_axioms(a, b, c, d, tol: Tolerance = DEFAULT_TOL) -> JBAxiomReport:
    am, bm, cm, dm = (as_matrix(x) for x in (a, b, c, d))
    require_same_shape(am, bm, cm, dm)

    alpha, beta = 0.7 - 0.4j, -0.3 + 0.9j  # fixed probe scalars
    t0 = triple_product(am, bm, cm)
    linearity = max(
        fro(t0 - triple_product(cm, bm, am)),
        fro(triple_product(alpha * am, bm, cm) - alpha * t0),
        fro(triple_product(am, beta * bm, cm) - np.conj(beta) * t0),
        fro(triple_product(am, bm, alpha * cm) - alpha * t0),
    )

    k_ab, k_cd = box(am, bm).kernel, box(cm, dm).kernel
    lhs = k_ab @ k_cd - k_cd @ k_ab
    rhs = box(t0, dm).kernel - box(cm, triple_product(dm, am, bm)).kernel
    commutator = fro(lhs - rhs)

    k_aa = box(am, am).kernel
    herm_defect = fro(k_aa - dagger(k_aa))
    eigs = np.linalg.eigvalsh((k_aa + dagger(k_aa)) / 2.0)
    positivity = max(herm_defect, max(0.0, -float(eigs[0])) if eigs.size else 0.0)

    cube = opnorm(am) ** 3
    norm_identity = 0.0 if cube == 0.0 else abs(opnorm(triple_product(am, am, am)) - cube) / cube

    return JBAxiomReport(linearity, commutator, positivity, norm_identity)
