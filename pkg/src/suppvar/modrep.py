"""Modules as matrix representations: one action matrix per algebra generator."""
from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from suppvar import linalg
from suppvar.algebra import Algebra, projective_points

MODULE_SCHEMA = "suppvar.module/1"
EXHAUSTIVE_LIMIT = 10**6
RANDOM_SAMPLES = 200


class ModuleError(ValueError):
    """Invalid module data; ``reason`` is machine readable."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class ModuleRep:
    def __init__(self, algebra: Algebra, action: dict, check: bool = True):
        self.algebra = algebra
        F = algebra.field
        names = algebra.gen_names
        missing = [n for n in names if n not in action]
        if missing:
            raise ModuleError(f"missing action for {missing[0]}")
        extra = [n for n in action if n not in names]
        if extra:
            raise ModuleError(f"unknown generator {extra[0]}")
        mats = {n: F.asarray(action[n]) for n in names}
        dims = {m.shape for m in mats.values()}
        if len(dims) != 1:
            raise ModuleError("action matrices have different shapes")
        shape = dims.pop()
        if len(shape) != 2 or shape[0] != shape[1]:
            raise ModuleError("action matrices must be square")
        self.dim = shape[0]
        self.action = mats
        if check:
            self.check_relations()

    def __repr__(self):
        return f"<ModuleRep dim={self.dim} over {self.algebra.name}>"

    @property
    def field(self):
        return self.algebra.field

    def rho(self, name: str) -> np.ndarray:
        return self.action[name]

    # -- representation of arbitrary elements ---------------------------

    @cached_property
    def basis_matrices(self) -> np.ndarray:
        """ρ(b) for every basis element b of the algebra, shape (dim A, n, n)."""
        F, a, n = self.field, self.algebra, self.dim
        out = np.zeros((a.dim, n, n), dtype=np.int64)
        cache: dict[tuple[str, ...], np.ndarray] = {(): np.eye(n, dtype=np.int64)}

        def word(w):
            w = tuple(w)
            if w not in cache:
                cache[w] = F.matmul(word(w[:-1]), self.action[w[-1]])
            return cache[w]

        for b, terms in enumerate(a.words):
            for coeff, w in terms:
                out[b] = F.add(out[b], F.scal(coeff, word(w)))
        return out

    def rho_element(self, v: np.ndarray) -> np.ndarray:
        F, n = self.field, self.dim
        v = np.asarray(v, dtype=np.int64)
        flat = self.basis_matrices.reshape(self.algebra.dim, n * n)
        return F.matmul(v[None, :], flat).reshape(n, n)

    def rho_word(self, word: list[str]) -> np.ndarray:
        m = np.eye(self.dim, dtype=np.int64)
        for g in word:
            m = self.field.matmul(m, self.action[g])
        return m

    def rho_group(self, g: tuple[int, ...]) -> np.ndarray:
        F = self.field
        m = np.eye(self.dim, dtype=np.int64)
        for t, a in enumerate(g):
            if a:
                m = F.matmul(m, F.matpow(self.action[f"g{t + 1}"], a))
        return m

    def rho_line(self, lam) -> np.ndarray:
        """Action of u_λ = Σ λ_i x_i."""
        F = self.field
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        for i, li in enumerate(lam):
            if li:
                out = F.add(out, F.scal(li, self.action[f"x{i + 1}"]))
        return out

    # -- validation -----------------------------------------------------

    def check_relations(self) -> None:
        a, F, n = self.algebra, self.field, self.dim
        zero = np.zeros((n, n), dtype=np.int64)
        eye = np.eye(n, dtype=np.int64)
        if not a.is_skew:
            self._check_homomorphism()
            return
        xs = [self.action[x] for x in a.x_names]
        for i, xi in enumerate(xs):
            if not np.array_equal(F.matmul(xi, xi), zero):
                raise ModuleError(f"relation x{i + 1}^2 violated")
        for i, j in itertools.combinations(range(len(xs)), 2):
            if np.any(F.add(F.matmul(xs[i], xs[j]), F.matmul(xs[j], xs[i]))):
                raise ModuleError(f"relation x{i + 1}x{j + 1}+x{j + 1}x{i + 1} violated")
        if a.group is None:
            return
        gs = [self.action[g] for g in a.g_names]
        for t, (gt, order) in enumerate(zip(gs, a.group.orders)):
            if not np.array_equal(F.matpow(gt, order), eye):
                raise ModuleError(f"relation g{t + 1}^{order} violated")
        for s, t in itertools.combinations(range(len(gs)), 2):
            if not np.array_equal(F.matmul(gs[s], gs[t]), F.matmul(gs[t], gs[s])):
                raise ModuleError(f"relation g{s + 1}g{t + 1}=g{t + 1}g{s + 1} violated")
        for t, gt in enumerate(gs):
            act = a.group.action[t]
            for i in range(a.c):
                image = zero
                for k in range(a.c):
                    if act[k, i]:
                        image = F.add(image, F.scal(act[k, i], xs[k]))
                if not np.array_equal(F.matmul(gt, xs[i]), F.matmul(image, gt)):
                    raise ModuleError(f"relation g{t + 1}x{i + 1}g{t + 1}^-1 violated")

    def _check_homomorphism(self) -> None:
        a, F = self.algebra, self.field
        B = self.basis_matrices
        n = self.dim
        if not np.array_equal(B[a.unit_index], np.eye(n, dtype=np.int64)):
            raise ModuleError("unit does not act as the identity")
        flat = B.reshape(a.dim, n * n)
        for i in range(a.dim):
            lhs = F.matmul(B[i], B.transpose(1, 0, 2).reshape(n, a.dim * n))
            lhs = lhs.reshape(n, a.dim, n).transpose(1, 0, 2).reshape(a.dim, n * n)
            rhs = F.matmul(a.mult[i], flat)
            if not np.array_equal(lhs, rhs):
                raise ModuleError(f"relation at {a.basis_labels[i]} violated")

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        F = self.field
        return {
            "schema": MODULE_SCHEMA,
            "algebra_hash": self.algebra.hash,
            "dim": self.dim,
            "action": {n: F.matrix_to_json(m) for n, m in self.action.items()},
        }

    def fingerprint(self) -> str:
        """Content hash of the algebra hash and the action matrices."""
        fp = self.__dict__.get("_fingerprint")
        if fp is None:
            h = hashlib.sha256(f"{self.algebra.hash}:{self.dim}".encode())
            for n in sorted(self.action):
                h.update(n.encode())
                h.update(np.ascontiguousarray(self.action[n], dtype="<i8").tobytes())
            fp = self._fingerprint = h.hexdigest()[:16]
        return fp


def module_from_json(alg: Algebra, d: dict) -> ModuleRep:
    h = d.get("algebra_hash")
    if h is not None and h != alg.hash:
        raise ModuleError(f"module belongs to algebra {h}, not {alg.hash}")
    F = alg.field
    try:
        action = {n: F.matrix_from_json(m) for n, m in d["action"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ModuleError(f"malformed module file: {exc}") from None
    for n, m in action.items():
        if m.shape != (d.get("dim", m.shape[0]),) * 2:
            raise ModuleError(f"action of {n} does not match dim")
    return ModuleRep(alg, action)


# ---------------------------------------------------------------------------
# basic modules


def trivial_module(a: Algebra) -> ModuleRep:
    if not a.is_skew:
        return _counit_module(a)
    act = {x: np.zeros((1, 1), np.int64) for x in a.x_names}
    act.update({g: np.ones((1, 1), np.int64) for g in a.g_names})
    return ModuleRep(a, act)


def _counit_module(a: Algebra) -> ModuleRep:
    if a.hopf is None:
        raise ModuleError("trivial module needs a counit")
    eps = a.hopf.counit
    return ModuleRep(a, {n: np.array([[eps[b]]], np.int64) for n, b in a.generators.items()})


def character_module(a: Algebra, values) -> ModuleRep:
    """One-dimensional module with x_i ↦ 0 and g_t ↦ values[t]."""
    F = a.field
    values = [int(v) for v in values]
    if a.group is None or len(values) != len(a.group.orders):
        raise ModuleError("one value per group generator required")
    for t, (v, n) in enumerate(zip(values, a.group.orders)):
        if F.pow(v, n) != 1:
            raise ModuleError(f"χ(g{t + 1}) = {v} is not a {n}-th root of unity")
    act = {x: np.zeros((1, 1), np.int64) for x in a.x_names}
    act.update({g: np.array([[v]], np.int64) for g, v in zip(a.g_names, values)})
    return ModuleRep(a, act)


def simple_module(a: Algebra, chi: tuple[int, ...]) -> ModuleRep:
    """The simple module of the character with exponent tuple χ."""
    if a.group is None:
        return trivial_module(a)
    return character_module(a, a.character_generator_values(chi))


def regular_module(a: Algebra) -> ModuleRep:
    return ModuleRep(a, {n: a.mult[b].T.copy() for n, b in a.generators.items()})


def projective_module(a: Algebra, chi: tuple[int, ...] = ()) -> ModuleRep:
    """P(χ) = A e_χ with basis {x_S e_χ}, S running over the monomials of Λ.

    x_i acts by left exterior multiplication; g acts by χ(g) times the
    induced automorphism of Λ.
    """
    if not a.is_skew:
        raise ModuleError("projective_module needs a skew exterior algebra")
    cache = a.__dict__.setdefault("_proj_cache", {})
    if chi in cache:
        return cache[chi]
    F = a.field
    ext = _exterior_left_mult(a)
    act = {x: ext[i] for i, x in enumerate(a.x_names)}
    for t, g in enumerate(a.g_names):
        unit = tuple(int(s == t) for s in range(len(a.group.orders)))
        act[g] = F.scal(a.character_value(chi, unit), a.automorphism(unit))
    m = ModuleRep(a, act)
    cache[chi] = m
    return m


def _exterior_left_mult(a: Algebra) -> list[np.ndarray]:
    from suppvar.algebra import _lambda_table

    monos, table = _lambda_table(a.c)
    return [table[monos.index((i,))].T % a.field.p for i in range(a.c)]


# ---------------------------------------------------------------------------
# constructions


def direct_sum(ms: list[ModuleRep]) -> ModuleRep:
    if not ms:
        raise ModuleError("direct sum of no modules")
    a = ms[0].algebra
    if any(m.algebra is not a and m.algebra.hash != a.hash for m in ms):
        raise ModuleError("modules over different algebras")
    n = sum(m.dim for m in ms)
    act = {}
    for g in a.gen_names:
        big = np.zeros((n, n), dtype=np.int64)
        o = 0
        for m in ms:
            big[o:o + m.dim, o:o + m.dim] = m.action[g]
            o += m.dim
        act[g] = big
    return ModuleRep(a, act, check=False)


def zero_module(a: Algebra) -> ModuleRep:
    return ModuleRep(a, {g: np.zeros((0, 0), np.int64) for g in a.gen_names}, check=False)


def restrict_to_basis(M: ModuleRep, basis: np.ndarray) -> ModuleRep:
    """Submodule spanned by the independent, invariant columns of ``basis``."""
    F = M.field
    k = basis.shape[1]
    if k == 0:
        return zero_module(M.algebra)
    rows, C = linalg.coordinate_map(F, basis)
    act = {}
    for g, m in M.action.items():
        img = F.matmul(m, basis)
        coords = F.matmul(C, img[rows])
        if not np.array_equal(F.matmul(basis, coords), img):
            raise ModuleError("subspace is not invariant")
        act[g] = coords
    return ModuleRep(M.algebra, act, check=False)


def submodule_with_basis(M: ModuleRep, vectors: np.ndarray) -> tuple[ModuleRep, np.ndarray]:
    """Submodule spanned by invariant vectors; returns it with its basis."""
    F = M.field
    vectors = np.asarray(vectors, dtype=np.int64).reshape(M.dim, -1)
    basis = linalg.column_basis(F, vectors) if vectors.shape[1] else vectors
    return restrict_to_basis(M, basis), basis


def submodule(M: ModuleRep, vectors) -> ModuleRep:
    return submodule_with_basis(M, vectors)[0]


def closure(M: ModuleRep, vectors) -> np.ndarray:
    """Basis of the submodule generated by the given vectors."""
    F = M.field
    basis = np.asarray(vectors, dtype=np.int64).reshape(M.dim, -1)
    basis = linalg.column_basis(F, basis) if basis.shape[1] else basis
    while True:
        if basis.shape[1] == 0:
            return basis
        imgs = [basis] + [F.matmul(m, basis) for m in M.action.values()]
        new = linalg.column_basis(F, np.concatenate(imgs, axis=1))
        if new.shape[1] == basis.shape[1]:
            return basis
        basis = new


def generated_submodule(M: ModuleRep, vectors) -> tuple[ModuleRep, np.ndarray]:
    basis = closure(M, vectors)
    return restrict_to_basis(M, basis), basis


def quotient_with_map(M: ModuleRep, sub_basis: np.ndarray) -> tuple[ModuleRep, np.ndarray]:
    """M / span(sub_basis) and the projection matrix M → quotient.

    The quotient basis is the image of the first unit vectors outside the
    submodule.
    """
    F = M.field
    sub_basis = np.asarray(sub_basis, dtype=np.int64).reshape(M.dim, -1)
    if sub_basis.shape[1]:
        sub_basis = linalg.column_basis(F, sub_basis)
        restrict_to_basis(M, sub_basis)  # invariance check
    comp = linalg.complement_columns(F, sub_basis, np.eye(M.dim, dtype=np.int64))
    k = sub_basis.shape[1]
    full = np.concatenate([sub_basis, comp], axis=1)
    inv = linalg.inverse(F, full)
    proj = inv[k:]
    act = {g: F.matmul(proj, F.matmul(m, comp)) for g, m in M.action.items()}
    return ModuleRep(M.algebra, act, check=False), proj


def quotient(M: ModuleRep, sub_basis) -> ModuleRep:
    return quotient_with_map(M, sub_basis)[0]


def conjugate(M: ModuleRep, P: np.ndarray) -> ModuleRep:
    """The module with action P^{-1} ρ(a) P (isomorphic to M via P)."""
    F = M.field
    Pi = linalg.inverse(F, P)
    return ModuleRep(
        M.algebra, {g: F.matmul(Pi, F.matmul(m, P)) for g, m in M.action.items()}, check=False
    )


def twist(M: ModuleRep, lin: np.ndarray) -> ModuleRep:
    """Twist by the automorphism x_i ↦ Σ_k lin[k, i] x_k (group generators fixed).

    For a skew algebra ``lin`` may also be a group element (exponent tuple),
    in which case its action matrix is used.
    """
    a, F = M.algebra, M.field
    if isinstance(lin, tuple):
        lin = a.group_matrix(lin)
    lin = F.asarray(lin)
    act = dict(M.action)
    for i in range(a.c):
        m = np.zeros((M.dim, M.dim), dtype=np.int64)
        for k in range(a.c):
            if lin[k, i]:
                m = F.add(m, F.scal(lin[k, i], M.action[f"x{k + 1}"]))
        act[f"x{i + 1}"] = m
    return ModuleRep(a, act)


def dual(M: ModuleRep) -> ModuleRep:
    """M* with ρ*(a) = ρ(S(a))^T."""
    a = M.algebra
    if a.hopf is None:
        raise ModuleError("dual needs an antipode")
    S = a.hopf.antipode
    act = {n: M.rho_element(S[:, b]).T.copy() for n, b in a.generators.items()}
    return ModuleRep(a, act)


def restrict(M: ModuleRep, sub: Algebra, words: dict[str, list[str]]) -> ModuleRep:
    """Restriction along a subalgebra given by generator images as words."""
    return ModuleRep(sub, {g: M.rho_word(w) for g, w in words.items()})


def restrict_to_sign_subalgebra(M: ModuleRep) -> ModuleRep:
    from suppvar.algebra import sign_subalgebra

    sub, words = _cached_sub(M.algebra, "sign", sign_subalgebra)
    return restrict(M, sub, words)


def restrict_to_exterior(M: ModuleRep) -> ModuleRep:
    from suppvar.algebra import exterior_subalgebra

    sub, words = _cached_sub(M.algebra, "exterior", exterior_subalgebra)
    return restrict(M, sub, words)


def _cached_sub(a: Algebra, key: str, build):
    cache = a.__dict__.setdefault("_sub_cache", {})
    if key not in cache:
        cache[key] = build(a)
    return cache[key]


def extend_module(M: ModuleRep, big: Algebra) -> ModuleRep:
    """Extension of scalars: the same matrices over a larger field."""
    if big.field.p != M.field.p or M.field.e != 1:
        raise ModuleError("scalar extension only from a prime field")
    return ModuleRep(big, {g: m.copy() for g, m in M.action.items()}, check=False)


# ---------------------------------------------------------------------------
# structure: radical, top, socle, characters


def radical_basis(M: ModuleRep) -> np.ndarray:
    """Basis of rad M = rad(A)·M."""
    F, a = M.field, M.algebra
    if a.is_skew:
        mats = [M.action[x] for x in a.x_names]
    else:
        mats = [M.basis_matrices[r] for r in a.radical_basis]
    if not mats or M.dim == 0:
        return np.zeros((M.dim, 0), dtype=np.int64)
    return linalg.column_basis(F, np.concatenate(mats, axis=1))


def socle_basis(M: ModuleRep) -> np.ndarray:
    F, a = M.field, M.algebra
    if a.is_skew:
        mats = [M.action[x] for x in a.x_names]
    else:
        mats = [M.basis_matrices[r] for r in a.radical_basis]
    if M.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    return linalg.kernel_basis(F, np.concatenate(mats, axis=0))


def character_projector(M: ModuleRep, chi: tuple[int, ...]) -> np.ndarray:
    """e_χ = |G|^{-1} Σ_g χ(g)^{-1} ρ(g)."""
    a, F = M.algebra, M.field
    if a.group is None:
        return np.eye(M.dim, dtype=np.int64)
    out = np.zeros((M.dim, M.dim), dtype=np.int64)
    for g in a.group_elements:
        coeff = int(F.inv(a.character_value(chi, g)))
        out = F.add(out, F.scal(coeff, M.rho_group(g)))
    return F.scal(int(F.inv(F.embed(a.group.order))), out)


def isotypic_basis(M: ModuleRep, chi: tuple[int, ...]) -> np.ndarray:
    """Basis of the χ-eigenspace {v : g v = χ(g) v}."""
    E = character_projector(M, chi)
    return linalg.column_basis(M.field, E) if np.any(E) else np.zeros((M.dim, 0), np.int64)


def _chars_mod(M: ModuleRep, sub: np.ndarray, within: np.ndarray | None = None) -> dict:
    """Character multiplicities of (within or M) / sub, for G-stable subspaces."""
    F, a = M.field, M.algebra
    out = {}
    base = linalg.rank(F, sub) if sub.size else 0
    for chi in a.characters():
        E = character_projector(M, chi)
        vecs = E if within is None else F.matmul(E, within)
        k = linalg.rank(F, np.concatenate([sub, vecs], axis=1)) - base
        if k:
            out[chi] = k
    return out


def top_characters(M: ModuleRep) -> dict:
    return _chars_mod(M, radical_basis(M))


def socle_characters(M: ModuleRep) -> dict:
    return _chars_mod(M, np.zeros((M.dim, 0), np.int64), socle_basis(M))


def top_basis(M: ModuleRep) -> tuple[np.ndarray, np.ndarray]:
    """(rad basis R, complement C): C maps onto a basis of M / rad M."""
    R = radical_basis(M)
    C = linalg.complement_columns(M.field, R, np.eye(M.dim, dtype=np.int64))
    return R, C


def rank_profile(M: ModuleRep, e: int | None = None) -> tuple[int, ...]:
    """rank ρ(u_λ) at every point of P^{c-1}; isomorphism invariant."""
    a = M.algebra
    F = a.field
    return tuple(linalg.rank(F, M.rho_line(lam)) for lam in projective_points(F, a.c))


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass
class HomSpace:
    source: ModuleRep
    target: ModuleRep
    basis: list[np.ndarray]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, coeffs) -> np.ndarray:
        F = self.source.field
        out = np.zeros((self.target.dim, self.source.dim), dtype=np.int64)
        for c, b in zip(coeffs, self.basis):
            if c:
                out = F.add(out, F.scal(int(c), b))
        return out


def _isotypic_frame(M: ModuleRep) -> tuple[np.ndarray, list[tuple[tuple, int, int]]]:
    """Eigenbasis Q of the group action with blocks (χ, start, size)."""
    a = M.algebra
    if a.group is None or M.dim == 0:
        return np.eye(M.dim, dtype=np.int64), [((), 0, M.dim)]
    cols, blocks, o = [], [], 0
    for chi in a.characters():
        B = isotypic_basis(M, chi)
        if B.shape[1]:
            cols.append(B)
            blocks.append((chi, o, B.shape[1]))
            o += B.shape[1]
    return np.concatenate(cols, axis=1), blocks


def hom_basis(M: ModuleRep, N: ModuleRep) -> HomSpace:
    """Basis of all intertwiners T: M → N (T ρ_M(a) = ρ_N(a) T)."""
    F, a = M.field, M.algebra
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        return HomSpace(M, N, [])
    # G-equivariant maps are block diagonal between isotypic components
    QM, bM = _isotypic_frame(M)
    QN, bN = _isotypic_frame(N)
    QMi = linalg.inverse(F, QM)
    units = []
    blocksN = {chi: (s, k) for chi, s, k in bN}
    for chi, sm, km in bM:
        if chi not in blocksN:
            continue
        sn, kn = blocksN[chi]
        for i in range(kn):
            for j in range(km):
                units.append(F.mul(QN[:, sn + i][:, None], QMi[sm + j][None, :]))
    if not units:
        return HomSpace(M, N, [])
    U = np.stack(units)  # (u, n, m)
    gens = a.x_names if a.is_skew else a.gen_names
    for g in gens:
        if U.shape[0] == 0:
            break
        u = U.shape[0]
        left = F.matmul(U.reshape(u * n, m), M.action[g]).reshape(u, n, m)
        right = F.matmul(N.action[g], U.transpose(1, 0, 2).reshape(n, u * m))
        right = right.reshape(n, u, m).transpose(1, 0, 2)
        R = F.sub(left, right).reshape(u, n * m).T  # columns: residual per unknown
        K = linalg.kernel_basis(F, R)
        U = F.matmul(K.T, U.reshape(u, n * m)).reshape(-1, n, m)
    return HomSpace(M, N, [U[k] for k in range(U.shape[0])])


def is_homomorphism(M: ModuleRep, N: ModuleRep, T: np.ndarray) -> bool:
    F = M.field
    return all(
        np.array_equal(F.matmul(T, M.action[g]), F.matmul(N.action[g], T))
        for g in M.algebra.gen_names
    )


def _top_images(H: HomSpace) -> tuple[np.ndarray, int]:
    """Matrices of the induced maps top M → top N for each basis element.

    Returns an array of shape (dim H, t_N, t_M).
    """
    F = H.source.field
    RM, CM = top_basis(H.source)
    RN, CN = top_basis(H.target)
    full = np.concatenate([RN, CN], axis=1)
    inv = linalg.inverse(F, full)[RN.shape[1]:]
    tops = [F.matmul(inv, F.matmul(T, CM)) for T in H.basis]
    tM, tN = CM.shape[1], CN.shape[1]
    if not tops:
        return np.zeros((0, tN, tM), dtype=np.int64), tM
    return np.stack(tops), tM


def _independent_subset(F, mats: np.ndarray) -> list[int]:
    if mats.shape[0] == 0:
        return []
    flat = mats.reshape(mats.shape[0], -1).T
    _, piv = linalg.rref(F, flat)
    return list(piv)


def _combos(F, k: int, start: int = 0, stop: int | None = None):
    """Coefficient vectors of F^k in lexicographic code order, as an array."""
    total = F.q**k
    stop = total if stop is None else min(stop, total)
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((idx.size, k), dtype=np.int64)
    for i in range(k - 1, -1, -1):
        out[:, i] = idx % F.q
        idx = idx // F.q
    return out


def _combine(F, coeffs: np.ndarray, mats: np.ndarray) -> np.ndarray:
    """Σ_k coeffs[:, k] mats[k] for a batch of coefficient rows."""
    if F.e == 1:
        b, k = coeffs.shape
        flat = mats.reshape(k, -1)
        return F.matmul(coeffs, flat).reshape((b,) + mats.shape[1:])
    out = np.zeros((coeffs.shape[0],) + mats.shape[1:], dtype=np.int64)
    for k in range(coeffs.shape[1]):
        out = F.add(out, F.mul(coeffs[:, k][:, None, None], mats[k][None]))
    return out


@dataclass
class Yes:
    witness: np.ndarray

    def __bool__(self):
        return True


@dataclass
class No:
    reason: str

    def __bool__(self):
        return False


@dataclass
class Unknown:
    reason: str = "sampling budget exhausted"

    def __bool__(self):
        return False


def is_isomorphic(M: ModuleRep, N: ModuleRep, seed: int = 0, betti: bool = True):
    """Staged isomorphism test: invariants first, then a search for an iso.

    A homomorphism f: M → N with dim M = dim N is an isomorphism iff the
    induced map on tops is, so the search runs over the image of Hom(M, N)
    in Hom(top M, top N).  That image is scanned exhaustively when it has at
    most 10^6 elements, otherwise sampled.
    """
    F, a = M.field, M.algebra
    if M.algebra is not N.algebra and M.algebra.hash != N.algebra.hash:
        return No("different algebras")
    if M.dim != N.dim:
        return No("dim")
    if M.dim == 0:
        return Yes(np.zeros((0, 0), np.int64))
    if a.is_skew:
        if top_characters(M) != top_characters(N):
            return No("top characters")
        if socle_characters(M) != socle_characters(N):
            return No("socle characters")
        if a.c and rank_profile(M) != rank_profile(N):
            return No("rank-variety fingerprint")
        if betti and a.group is not None:
            from suppvar.resolve import syzygy

            s1, s2 = syzygy(M), syzygy(N)
            if s1.dim != s2.dim or syzygy(s1).dim != syzygy(s2).dim:
                return No("Betti fingerprint")
    H = hom_basis(M, N)
    if H.dim == 0:
        return No("exhausted hom space: Hom(M, N) = 0")
    tops, t = _top_images(H)
    if tops.shape[1] != t:
        return No("top dimensions differ")
    keep = _independent_subset(F, tops)
    if not keep:
        return No("exhausted hom space: no map is surjective on tops")
    tops_k = tops[keep]
    k = len(keep)

    def found(coeffs):
        full = np.zeros(H.dim, dtype=np.int64)
        full[keep] = coeffs
        f = H.element(full)
        return Yes(f)

    rng = np.random.default_rng(seed)
    samples = rng.integers(0, F.q, size=(RANDOM_SAMPLES, k))
    ranks = linalg.batched_rank(F, _combine(F, samples, tops_k))
    hit = np.flatnonzero(ranks == t)
    if hit.size:
        return found(samples[hit[0]])
    if F.q**k <= EXHAUSTIVE_LIMIT:
        chunk = 1 << 16
        for s in range(0, F.q**k, chunk):
            cs = _combos(F, k, s, s + chunk)
            ranks = linalg.batched_rank(F, _combine(F, cs, tops_k))
            hit = np.flatnonzero(ranks == t)
            if hit.size:
                return found(cs[hit[0]])
        return No("exhausted hom space: no isomorphism")
    return Unknown()


# ---------------------------------------------------------------------------
# Fitting decomposition


@dataclass
class DecompositionReport:
    summands: list[ModuleRep]
    certainty: str  # "Certified" or "Probabilistic(trials)"
    witness: np.ndarray  # columns: concatenated summand bases inside M
    bases: list[np.ndarray] = field(default_factory=list)
    indecomposable_certified: list[bool] = field(default_factory=list)

    @property
    def dims(self) -> list[int]:
        return [s.dim for s in self.summands]


def _stable_power(F, phi: np.ndarray) -> np.ndarray:
    """φ^(2^t) with 2^t >= dim, where ranks have stabilized."""
    n = phi.shape[0]
    p = phi
    k = 1
    while k < n:
        p = F.matmul(p, p)
        k *= 2
    return p


def _find_splitting(M: ModuleRep, rng, trials: int):
    """A non-nilpotent non-invertible endomorphism, or a certificate of none.

    φ is nilpotent (invertible) iff its induced map on top M is, so the test
    only looks at top maps.  Returns (φ or None, certified).
    """
    F = M.field
    H = hom_basis(M, M)
    tops, t = _top_images(H)
    keep = _independent_subset(F, tops)
    tops_k = tops[keep]
    k = len(keep)

    def classify(cs):
        mats = _combine(F, cs, tops_k)
        if F.e == 1:
            s = 1
            while s < t:
                mats = np.einsum("bij,bjk->bik", mats, mats) % F.p
                s *= 2
        else:
            mats = np.stack([_stable_power(F, m) for m in mats])
        r = linalg.batched_rank(F, mats)
        return np.flatnonzero((r > 0) & (r < t))

    def lift(coeffs):
        full = np.zeros(H.dim, dtype=np.int64)
        full[keep] = coeffs
        return H.element(full)

    if k == 0 or t <= 1:
        return None, F.q**k <= EXHAUSTIVE_LIMIT or t <= 1
    samples = rng.integers(0, F.q, size=(trials, k))
    hit = classify(samples)
    if hit.size:
        return lift(samples[hit[0]]), False
    if F.q**k <= EXHAUSTIVE_LIMIT:
        chunk = 1 << 15
        for s in range(0, F.q**k, chunk):
            cs = _combos(F, k, s, s + chunk)
            hit = classify(cs)
            if hit.size:
                return lift(cs[hit[0]]), False
        return None, True
    return None, False


def fitting_decompose(M: ModuleRep, seed: int = 0, trials: int = 64) -> DecompositionReport:
    """Split M into indecomposables along Fitting decompositions M = im φ^N ⊕ ker φ^N."""
    F = M.field
    rng = np.random.default_rng(seed)
    leaves: list[tuple[ModuleRep, np.ndarray, bool]] = []

    def recurse(N: ModuleRep, basis: np.ndarray, depth: int):
        if N.dim == 0:
            return
        if depth > M.dim:
            leaves.append((N, basis, False))
            return
        phi, certified = _find_splitting(N, rng, trials)
        if phi is None:
            leaves.append((N, basis, certified))
            return
        P = _stable_power(F, phi)
        im = linalg.column_basis(F, P)
        ker = linalg.kernel_basis(F, P)
        for part in (im, ker):
            sub = restrict_to_basis(N, part)
            recurse(sub, F.matmul(basis, part), depth + 1)

    recurse(M, np.eye(M.dim, dtype=np.int64), 0)
    summands = [l[0] for l in leaves]
    bases = [l[1] for l in leaves]
    flags = [l[2] for l in leaves]
    witness = np.concatenate(bases, axis=1) if bases else np.zeros((M.dim, 0), np.int64)
    certainty = "Certified" if all(flags) else f"Probabilistic({trials})"
    return DecompositionReport(summands, certainty, witness, bases, flags)


def is_projective(M: ModuleRep) -> bool:
    """M is projective iff its projective cover is injective."""
    from suppvar.resolve import syzygy

    return syzygy(M).dim == 0

