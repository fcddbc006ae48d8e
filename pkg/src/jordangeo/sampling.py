"""Seeded random constructions used by the verification suites and the CLI.

All randomness flows through a numpy Generator created from a single
64-bit seed; Haar unitaries come from QR of complex Gaussians with the
standard phase fix, so identical seeds reproduce identical elements.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg as sla

from .linalg import Matrix, as_matrix, dagger, fro


def rng_from_seed(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def complex_gaussian(rng: np.random.Generator, m: int, n: int) -> Matrix:
    return (rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))) / np.sqrt(2.0)


def haar_unitary(rng: np.random.Generator, n: int) -> Matrix:
    g = complex_gaussian(rng, n, n)
    q, r = sla.qr(g)
    d = np.diag(r)
    return q @ np.diag(d / np.abs(d))


def random_normal_algebraic(rng, dim: int, values, ranks) -> Matrix:
    """U diag(values by ranks, 0 padding) U* for a Haar unitary U."""
    if sum(ranks) > dim:
        raise ValueError("total rank exceeds the dimension")
    diag = np.zeros(dim, dtype=complex)
    pos = 0
    for lam, r in zip(values, ranks):
        diag[pos : pos + r] = lam
        pos += r
    u = haar_unitary(rng, dim)
    return u @ np.diag(diag) @ dagger(u)


def random_projection(rng, dim: int, rank: int) -> Matrix:
    u = haar_unitary(rng, dim)
    cols = u[:, :rank]
    return cols @ dagger(cols)


def random_partial_isometry(rng, m: int, n: int, rank: int) -> Matrix:
    """A random tripotent of the given rank in the m x n matrix space."""
    if rank > min(m, n):
        raise ValueError("rank exceeds min(m, n)")
    g = complex_gaussian(rng, m, n)
    u, _, vh = np.linalg.svd(g)
    return u[:, :rank] @ vh[:rank, :]


def orthogonal_tripotent_family(rng, m: int, n: int, ranks) -> list[Matrix]:
    """Pairwise box-orthogonal partial isometries with the given ranks."""
    if sum(ranks) > min(m, n):
        raise ValueError("total rank exceeds min(m, n)")
    u = haar_unitary(rng, m)
    v = haar_unitary(rng, n)
    out = []
    pos = 0
    for r in ranks:
        out.append(u[:, pos : pos + r] @ dagger(v[:, pos : pos + r]))
        pos += r
    return out


def separated_values(rng, count: int, min_abs=0.3, max_abs=2.0, min_sep=0.3, real=False):
    """Spectral values bounded away from zero and from each other."""
    vals: list[complex] = []
    while len(vals) < count:
        if real:
            cand = complex(rng.uniform(min_abs, max_abs))
        else:
            cand = complex(rng.uniform(-max_abs, max_abs), rng.uniform(-max_abs, max_abs))
        if abs(cand) < min_abs or abs(cand) > max_abs:
            continue
        if all(abs(cand - v) >= min_sep for v in vals):
            vals.append(cand)
    if real:
        vals.sort(key=lambda z: z.real)
    return vals


def random_ranks(rng, count: int, total: int) -> list[int]:
    """`count` positive ranks with sum at most `total`."""
    if count > total:
        raise ValueError("cannot fit that many positive ranks")
    ranks = [1] * count
    spare = int(rng.integers(0, total - count + 1))
    for _ in range(spare):
        if rng.random() < 0.5:
            ranks[int(rng.integers(0, count))] += 1
    return ranks


def random_half_element(rng, support_proj: Matrix, hermitian: bool = False) -> Matrix:
    """A unit-norm element of the half eigenspace of a support projection."""
    s = as_matrix(support_proj)
    dim = s.shape[0]
    comp = np.eye(dim, dtype=complex) - s
    w = complex_gaussian(rng, dim, dim)
    z = s @ w @ comp
    if hermitian:
        z = z + dagger(z)
    else:
        z = z + comp @ complex_gaussian(rng, dim, dim) @ s
    return z / fro(z)
