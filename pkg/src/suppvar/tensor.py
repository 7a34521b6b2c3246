"""Tensor products of modules through the comultiplication, and the symmetry.

M ⊗ N uses the basis m_i ⊗ n_j in row-major order (index i * dim N + j),
which is the flattening used by ``np.kron``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from suppvar import linalg
from suppvar.modrep import ModuleError, ModuleRep


class NoBraiding(ValueError):
    """No symmetry is asserted for this algebra."""


def _kron(F, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if F.e == 1:
        return np.kron(a, b) % F.p
    out = F.mul(a[:, None, :, None], b[None, :, None, :])
    return out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])


def tensor(M: ModuleRep, N: ModuleRep) -> ModuleRep:
    """M ⊗ N with a ↦ Σ ρ_M(a_(1)) ⊗ ρ_N(a_(2))."""
    a = M.algebra
    if a.hopf is None:
        raise ModuleError("tensor product needs Hopf data")
    if N.algebra is not a and N.algebra.hash != a.hash:
        raise ModuleError("modules over different algebras")
    F = a.field
    BM, BN = M.basis_matrices, N.basis_matrices
    dim = M.dim * N.dim
    linalg.check_size(dim, "tensor product")
    act = {}
    for name, b in a.generators.items():
        D = a.hopf.delta[b]
        out = np.zeros((dim, dim), dtype=np.int64)
        if F.e == 1:
            # entries stay far below int64 range; reduce once
            for i, j in zip(*np.nonzero(D)):
                out += int(D[i, j]) * np.kron(BM[i], BN[j])
            act[name] = out % F.p
            continue
        for i, j in zip(*np.nonzero(D)):
            out = F.add(out, F.scal(D[i, j], _kron(F, BM[i], BN[j])))
        act[name] = out
    return ModuleRep(a, act, check=True)


def tensor_maps(F, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """f ⊗ g in the row-major flattening."""
    return _kron(F, f, g)


def swap_matrix(m: int, n: int) -> np.ndarray:
    """Matrix of m_i ⊗ n_j ↦ n_j ⊗ m_i."""
    P = np.zeros((m * n, m * n), dtype=np.int64)
    for i in range(m):
        for j in range(n):
            P[j * m + i, i * n + j] = 1
    return P


def has_symmetry(alg) -> bool:
    """True for canonical Λ(c) ⋊ C_2 with the generator acting by -1."""
    if alg.kind != "skew_exterior" or alg.group is None or alg.group.orders != (2,):
        return False
    if alg.hopf is None or not alg.hopf.canonical:
        return False
    F = alg.field
    return np.array_equal(alg.group.action[0], F.neg(np.eye(alg.c, dtype=np.int64)))


@dataclass
class SymmetryMap:
    matrix: np.ndarray
    source: ModuleRep
    target: ModuleRep


def _odd_projector(M: ModuleRep) -> np.ndarray:
    """(1 - h)/2 on M: the projection onto the h = -1 eigenspace."""
    F = M.field
    half = int(F.inv(2))
    return F.scal(half, F.sub(np.eye(M.dim, dtype=np.int64), M.action["g1"]))


def symmetry(M: ModuleRep, N: ModuleRep) -> SymmetryMap:
    """b_{M,N}: m ⊗ n ↦ (-1)^{|m||n|} n ⊗ m, with parity the h-eigenvalue."""
    a = M.algebra
    if not has_symmetry(a):
        raise NoBraiding(f"no braiding is asserted for {a.name}")
    F = a.field
    sign = F.sub(
        np.eye(M.dim * N.dim, dtype=np.int64),
        F.scal(2, _kron(F, _odd_projector(M), _odd_projector(N))),
    )
    B = F.matmul(swap_matrix(M.dim, N.dim), sign)
    return SymmetryMap(B, tensor(M, N), tensor(N, M))


def hopf_projectivity_ideal_check(M: ModuleRep, N: ModuleRep) -> bool:
    """For projective M, whether M ⊗ N is projective (it always should be)."""
    from suppvar.variety import projectivity_test

    if not projectivity_test(M, cross_check=False):
        raise ValueError("first argument must be projective")
    return projectivity_test(tensor(M, N), cross_check=False)


def is_intertwiner(F, X: ModuleRep, Y: ModuleRep, T: np.ndarray) -> bool:
    return all(
        np.array_equal(F.matmul(T, X.action[g]), F.matmul(Y.action[g], T))
        for g in X.algebra.gen_names
    )


__all__ = [
    "NoBraiding",
    "SymmetryMap",
    "has_symmetry",
    "hopf_projectivity_ideal_check",
    "is_intertwiner",
    "swap_matrix",
    "symmetry",
    "tensor",
    "tensor_maps",
]
