"""Finite-dimensional algebras by structure constants.

The main constructions are the exterior algebra Λ(c) and skew group algebras
Λ(c) ⋊ G for a finite abelian group G acting linearly on span(x_1..x_c) and
containing a central involution h that negates every x_i.  These carry the
Hopf structure

    Δ(g) = g ⊗ g,  Δ(x_i) = x_i ⊗ 1 + h ⊗ x_i,
    ε(g) = 1,      ε(x_i) = 0,
    S(g) = g^{-1}, S(x_i) = -h x_i.

Every algebra is validated exhaustively at construction (associativity, unit,
radical) and Hopf data is validated by :func:`validate_hopf`.
"""
from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from suppvar import linalg
from suppvar.linalg import FieldSpec

ASSOC_EXHAUSTIVE_MAX_DIM = 64


class AlgebraError(ValueError):
    """An algebra or its Hopf data failed validation."""


# ---------------------------------------------------------------------------
# exterior algebra combinatorics


def monomials(c: int) -> list[tuple[int, ...]]:
    """Square-free monomials of Λ(c), ordered by degree then lexicographically."""
    out = []
    for d in range(c + 1):
        out.extend(itertools.combinations(range(c), d))
    return out


def _wedge(s: tuple[int, ...], t: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """x_S x_T = sign * x_U, or sign 0 when S and T meet."""
    if set(s) & set(t):
        return 0, ()
    inversions = sum(1 for a in s for b in t if a > b)
    return (-1) ** inversions, tuple(sorted(s + t))


def _label(mono: tuple[int, ...]) -> str:
    return "".join(f"x{i + 1}" for i in mono) or "1"


@dataclass
class GroupData:
    """An abelian group ∏ C_{n_t} acting linearly on span(x_1..x_c).

    ``action[t]`` is the c×c matrix of generator t (column i is the image of
    x_i); ``h`` gives the distinguished involution as exponents of the
    generators.
    """

    orders: tuple[int, ...]
    action: list[np.ndarray]
    h: tuple[int, ...]

    @property
    def order(self) -> int:
        return int(np.prod(self.orders)) if self.orders else 1

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*[range(n) for n in self.orders]))

    def to_json(self, F: FieldSpec) -> dict:
        return {
            "orders": list(self.orders),
            "action": [F.matrix_to_json(a) for a in self.action],
            "h": list(self.h),
        }

    @classmethod
    def from_json(cls, d: dict, F: FieldSpec) -> "GroupData":
        return cls(
            tuple(int(n) for n in d["orders"]),
            [F.matrix_from_json(a) for a in d["action"]],
            tuple(int(x) for x in d["h"]),
        )


@dataclass
class HopfData:
    """Comultiplication, counit and antipode on the basis.

    ``delta[b]`` is the matrix of Δ(b_b) in the basis {b_i ⊗ b_j};
    ``antipode[:, b]`` is S(b_b).
    """

    delta: np.ndarray
    counit: np.ndarray
    antipode: np.ndarray
    canonical: bool = False


@dataclass(eq=False)
class Algebra:
    field: FieldSpec
    dim: int
    basis_labels: list[str]
    mult: np.ndarray  # mult[i, j] = b_i b_j as a vector
    unit_index: int
    generators: dict[str, int]  # name -> basis index
    radical_basis: list[int]
    kind: str = "structure_constants"
    c: int = 0
    group: GroupData | None = None
    hopf: HopfData | None = None
    spec: dict = field(default_factory=dict)
    # words[b] = [(coeff, [generator names])] with b = sum coeff * product
    words: list[list[tuple[int, list[str]]]] = field(default_factory=list)
    nilpotency_index: int = 0

    # -- identity --------------------------------------------------------

    @property
    def hash(self) -> str:
        blob = json.dumps(self.spec, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def __repr__(self):
        return f"<Algebra {self.name} dim={self.dim} over {self.field}>"

    @property
    def name(self) -> str:
        if self.kind == "exterior":
            return f"Λ({self.c})"
        if self.kind == "skew_exterior":
            g = "×".join(f"C{n}" for n in self.group.orders)
            return f"Λ({self.c})⋊{g}"
        return "A"

    @property
    def is_skew(self) -> bool:
        return self.kind in ("exterior", "skew_exterior")

    @property
    def x_names(self) -> list[str]:
        return [f"x{i + 1}" for i in range(self.c)]

    @property
    def g_names(self) -> list[str]:
        return [f"g{t + 1}" for t in range(len(self.group.orders))] if self.group else []

    @property
    def gen_names(self) -> list[str]:
        return list(self.generators)

    # -- element arithmetic ---------------------------------------------

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def one(self) -> np.ndarray:
        return self.basis_vector(self.unit_index)

    def mul(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        F = self.field
        outer = F.mul(u[:, None], v[None, :]).reshape(1, -1)
        return F.matmul(outer, self.mult.reshape(self.dim * self.dim, self.dim))[0]

    def gen(self, name: str) -> np.ndarray:
        return self.basis_vector(self.generators[name])

    def word_element(self, word: list[str]) -> np.ndarray:
        v = self.one()
        for g in word:
            v = self.mul(v, self.gen(g))
        return v

    # -- skew structure helpers -----------------------------------------

    def index(self, mono: tuple[int, ...], g: tuple[int, ...] | None = None) -> int:
        """Basis index of x_mono ⊗ g in a skew algebra."""
        monos = monomials(self.c)
        gi = 0
        if self.group is not None and g is not None:
            gi = self.group.elements().index(tuple(x % n for x, n in zip(g, self.group.orders)))
        order = self.group.order if self.group else 1
        return monos.index(tuple(mono)) * order + gi

    def group_element(self, g: tuple[int, ...]) -> np.ndarray:
        return self.basis_vector(self.index((), g))

    @property
    def group_elements(self) -> list[tuple[int, ...]]:
        return self.group.elements() if self.group else [()]

    @property
    def h(self) -> tuple[int, ...] | None:
        return self.group.h if self.group else None

    def characters(self) -> list[tuple[int, ...]]:
        """Characters of G as exponent tuples k: χ(g_t) = ω_t^{k_t}.

        ω_t is the primitive n_t-th root of unity obtained from the field's
        primitive element; the trivial character comes first.
        """
        if not self.group:
            return [()]
        return list(itertools.product(*[range(n) for n in self.group.orders]))

    def character_value(self, chi: tuple[int, ...], g: tuple[int, ...]) -> int:
        F = self.field
        val = 1
        for k, a, n in zip(chi, g, self.group.orders if self.group else ()):
            w = F.root_of_unity(n)
            val = int(F.mul(val, F.pow(w, k * a)))
        return val

    def character_generator_values(self, chi: tuple[int, ...]) -> list[int]:
        return [
            self.character_value(chi, tuple(int(s == t) for s in range(len(chi))))
            for t in range(len(chi))
        ]

    def character_of_values(self, values: list[int]) -> tuple[int, ...]:
        for chi in self.characters():
            if self.character_generator_values(chi) == [int(v) for v in values]:
                return chi
        raise ValueError(f"{values} is not a character of G")

    def sign_character(self) -> tuple[int, ...]:
        """The first character with χ(h) = -1."""
        F = self.field
        for chi in self.characters():
            if self.character_value(chi, self.h) == F.p - 1:
                return chi
        raise ValueError("no character with χ(h) = -1")

    def automorphism(self, g: tuple[int, ...]) -> np.ndarray:
        """Matrix (size 2^c) of the action of g on Λ."""
        return _lambda_automorphism(self.field, self.c, self.group_matrix(g))

    def group_matrix(self, g: tuple[int, ...]) -> np.ndarray:
        F = self.field
        m = np.eye(self.c, dtype=np.int64)
        if self.group:
            for a, mat in zip(g, self.group.action):
                m = F.matmul(m, F.matpow(mat, a))
        return m

    def to_json(self) -> dict:
        return dict(self.spec)


# ---------------------------------------------------------------------------
# construction


def _lambda_table(c: int) -> tuple[list[tuple[int, ...]], np.ndarray]:
    monos = monomials(c)
    pos = {m: i for i, m in enumerate(monos)}
    n = len(monos)
    table = np.zeros((n, n, n), dtype=np.int64)
    for i, s in enumerate(monos):
        for j, t in enumerate(monos):
            sign, u = _wedge(s, t)
            if sign:
                table[i, j, pos[u]] = sign
    return monos, table


def _lambda_automorphism(F: FieldSpec, c: int, lin: np.ndarray) -> np.ndarray:
    """Extend a linear map on span(x_i) to an algebra automorphism of Λ(c)."""
    monos, table = _lambda_table(c)
    n = len(monos)
    tab = table % F.p
    images = []
    for mono in monos:
        v = np.zeros(n, dtype=np.int64)
        v[0] = 1
        for t in mono:
            xt = np.zeros(n, dtype=np.int64)
            for i in range(c):
                xt[monos.index((i,))] = lin[i, t]
            outer = F.mul(v[:, None], xt[None, :]).reshape(1, -1)
            v = F.matmul(outer, tab.reshape(n * n, n))[0]
        images.append(v)
    return np.stack(images, axis=1)


def _skew_words(c: int, group: GroupData | None) -> list[list[tuple[int, list[str]]]]:
    words = []
    elements = group.elements() if group else [()]
    for mono in monomials(c):
        for g in elements:
            w = [f"x{i + 1}" for i in mono]
            for t, a in enumerate(g):
                w += [f"g{t + 1}"] * a
            words.append([(1, w)])
    return words


def _build_skew(F: FieldSpec, c: int, group: GroupData | None) -> tuple[np.ndarray, list[str]]:
    monos, ltab = _lambda_table(c)
    ltab = ltab % F.p
    nl = len(monos)
    elements = group.elements() if group else [()]
    ng = len(elements)
    gpos = {g: i for i, g in enumerate(elements)}
    dim = nl * ng
    table = np.zeros((dim, dim, dim), dtype=np.int64)

    def gmat(g):
        m = np.eye(c, dtype=np.int64)
        for a, mat in zip(g, group.action if group else ()):
            m = F.matmul(m, F.matpow(mat, a))
        return m

    auts = [_lambda_automorphism(F, c, gmat(g)) for g in elements]
    for si in range(nl):
        for gi, g in enumerate(elements):
            # x_S * (g-image of x_T) for all T at once: (nl x nl) matrix
            left = F.matmul(ltab[si].T, auts[gi])  # column T = x_S * ^g x_T
            for gj, g2 in enumerate(elements):
                prod = tuple((a + b) % n for a, b, n in zip(g, g2, group.orders if group else ()))
                k = gpos[prod]
                for ti in range(nl):
                    table[si * ng + gi, ti * ng + gj, k::ng] = left[:, ti]
    labels = []
    for mono in monos:
        for g in elements:
            gl = "".join(f"g{t + 1}" + (f"^{a}" if a > 1 else "") for t, a in enumerate(g) if a)
            base = _label(mono)
            labels.append(base if not gl else (gl if base == "1" else f"{base}·{gl}"))
    return table, labels


def _check_group(F: FieldSpec, c: int, group: GroupData) -> None:
    q = F.q
    if len(group.action) != len(group.orders):
        raise AlgebraError("one action matrix per group generator required")
    if group.order % F.p == 0:
        raise AlgebraError(f"characteristic {F.p} divides |G| = {group.order}")
    for t, (n, mat) in enumerate(zip(group.orders, group.action)):
        if mat.shape != (c, c):
            raise AlgebraError(f"action matrix of g{t + 1} must be {c}x{c}")
        if (q - 1) % n:
            raise AlgebraError(
                f"non-diagonalizable group generator g{t + 1}: order {n} does not divide {q}-1"
            )
        if not np.array_equal(F.matpow(mat, n), np.eye(c, dtype=np.int64)):
            raise AlgebraError(f"g{t + 1}^{n} does not act as the identity")
    for a, b in itertools.combinations(group.action, 2):
        if not np.array_equal(F.matmul(a, b), F.matmul(b, a)):
            raise AlgebraError("group generator actions do not commute")
    h = group.h
    if len(h) != len(group.orders):
        raise AlgebraError("h must give one exponent per generator")
    hn = tuple(x % n for x, n in zip(h, group.orders))
    if not any(hn) or any((2 * x) % n for x, n in zip(hn, group.orders)):
        raise AlgebraError("no central sign involution: h must have order 2")
    m = np.eye(c, dtype=np.int64)
    for a, mat in zip(hn, group.action):
        m = F.matmul(m, F.matpow(mat, a))
    if not np.array_equal(m, F.neg(np.eye(c, dtype=np.int64))):
        raise AlgebraError("no central sign involution: h does not act as -1 on the x_i")
    group.h = hn


def make_exterior(c: int, field: FieldSpec) -> Algebra:
    """The exterior algebra Λ(c) on x_1..x_c."""
    if c < 1:
        raise AlgebraError("c must be at least 1")
    table, labels = _build_skew(field, c, None)
    alg = Algebra(
        field=field,
        dim=2**c,
        basis_labels=labels,
        mult=table,
        unit_index=0,
        generators={f"x{i + 1}": i + 1 for i in range(c)},
        radical_basis=list(range(1, 2**c)),
        kind="exterior",
        c=c,
        spec={"field": field.to_json(), "kind": "exterior", "c": c},
        words=_skew_words(c, None),
    )
    _validate_algebra(alg)
    return alg


def make_skew(c: int, group: GroupData, field: FieldSpec, hopf: str = "canonical") -> Algebra:
    """The skew group algebra Λ(c) ⋊ G with its canonical Hopf structure."""
    if c < 1:
        raise AlgebraError("c must be at least 1")
    group = GroupData(
        tuple(group.orders),
        [field.asarray(a).reshape(c, c) if np.size(a) else np.zeros((c, c), np.int64) for a in group.action],
        tuple(group.h),
    )
    _check_group(field, c, group)
    table, labels = _build_skew(field, c, group)
    ng = group.order
    gens = {f"x{i + 1}": (i + 1) * ng for i in range(c)}
    elements = group.elements()
    for t in range(len(group.orders)):
        unit = tuple(int(s == t) for s in range(len(group.orders)))
        gens[f"g{t + 1}"] = elements.index(unit)
    alg = Algebra(
        field=field,
        dim=(2**c) * ng,
        basis_labels=labels,
        mult=table,
        unit_index=0,
        generators=gens,
        radical_basis=list(range(ng, (2**c) * ng)),
        kind="skew_exterior",
        c=c,
        group=group,
        spec={
            "field": field.to_json(),
            "kind": "skew_exterior",
            "c": c,
            "group": group.to_json(field),
            "hopf": hopf,
        },
        words=_skew_words(c, group),
    )
    _validate_algebra(alg)
    if hopf == "canonical":
        alg.hopf = canonical_hopf(alg)
        report = validate_hopf(alg)
        if not report["ok"]:
            raise AlgebraError(f"Hopf axioms fail: {report['failed']}")
    elif hopf not in (None, "none"):
        raise AlgebraError(f"unknown hopf option {hopf!r}")
    return alg


def sweedler(field: FieldSpec | None = None) -> Algebra:
    """H_4 = Λ(1) ⋊ C_2."""
    field = field or FieldSpec(5)
    return make_skew(1, sign_group(1, field), field)


def sign_group(c: int, field: FieldSpec) -> GroupData:
    """C_2 acting by x_i -> -x_i."""
    return GroupData((2,), [field.neg(np.eye(c, dtype=np.int64))], (1,))


def cyclic_group(c: int, field: FieldSpec, n: int, scalar: int) -> GroupData:
    """C_n whose generator acts by a scalar on every x_i; h = g^{n/2}."""
    if n % 2:
        raise AlgebraError("the group must have even order to contain h")
    return GroupData((n,), [field.scal(scalar, np.eye(c, dtype=np.int64))], (n // 2,))


def make_structure_constants(
    field: FieldSpec,
    mult: np.ndarray,
    generators: dict[str, int],
    radical_basis: list[int],
    unit_index: int = 0,
    basis_labels: list[str] | None = None,
    hopf: HopfData | None = None,
    spec: dict | None = None,
) -> Algebra:
    """A generic algebra from a multiplication table and a designated radical."""
    mult = field.asarray(mult)
    dim = mult.shape[0]
    if mult.shape != (dim, dim, dim):
        raise AlgebraError("multiplication table must be dim x dim x dim")
    alg = Algebra(
        field=field,
        dim=dim,
        basis_labels=basis_labels or [f"b{i}" for i in range(dim)],
        mult=mult,
        unit_index=unit_index,
        generators=dict(generators),
        radical_basis=sorted(radical_basis),
        kind="structure_constants",
        hopf=hopf,
    )
    alg.spec = spec or {
        "field": field.to_json(),
        "kind": "structure_constants",
        "mult": mult.tolist(),
        "generators": dict(generators),
        "radical_basis": sorted(radical_basis),
        "unit_index": unit_index,
    }
    _validate_algebra(alg)
    alg.words = _generic_words(alg)
    if hopf is not None:
        report = validate_hopf(alg)
        if not report["ok"]:
            raise AlgebraError(f"Hopf axioms fail: {report['failed']}")
    return alg


def _generic_words(alg: Algebra) -> list[list[tuple[int, list[str]]]]:
    """Express each basis element through products of generators."""
    F = alg.field
    frontier = [[]]
    found_words: list[list[str]] = []
    found_vecs: list[np.ndarray] = []
    r = 0
    seen = 0
    while frontier and r < alg.dim:
        nxt = []
        for w in frontier:
            v = alg.word_element(w)
            trial = np.stack(found_vecs + [v], axis=1)
            if linalg.rank(F, trial) > r:
                found_vecs.append(v)
                found_words.append(w)
                r += 1
                nxt.extend(w + [g] for g in alg.generators)
        frontier = nxt
        seen += 1
        if seen > alg.dim + 1:
            break
    if r < alg.dim:
        raise AlgebraError("generators do not generate the algebra")
    basis = np.stack(found_vecs, axis=1)
    coeffs = linalg.solve(F, basis, np.eye(alg.dim, dtype=np.int64))
    out = []
    for b in range(alg.dim):
        out.append([(int(coeffs[k, b]), found_words[k]) for k in range(alg.dim) if coeffs[k, b]])
    return out


# ---------------------------------------------------------------------------
# validation


def _validate_algebra(alg: Algebra, rng_seed: int = 0) -> None:
    F, dim, T = alg.field, alg.dim, alg.mult
    eye = np.eye(dim, dtype=np.int64)
    if not (np.array_equal(T[alg.unit_index], eye) and np.array_equal(T[:, alg.unit_index], eye)):
        raise AlgebraError("unit law fails")
    # (b_i b_j) b_k versus b_i (b_j b_k)
    flat = T.reshape(dim * dim, dim)
    if dim <= ASSOC_EXHAUSTIVE_MAX_DIM:
        ii = range(dim)
    else:
        ii = np.random.default_rng(rng_seed).choice(dim, size=16, replace=False)
    for i in ii:
        left = F.matmul(T[i], T.reshape(dim, dim * dim)).reshape(dim * dim, dim)
        right = F.matmul(flat, T[i])
        if not np.array_equal(left, right):
            raise AlgebraError(f"associativity fails at {alg.basis_labels[i]}")
    rad = alg.radical_basis
    outside = [k for k in range(dim) if k not in set(rad)]
    if outside and (np.any(T[:, rad][:, :, outside]) or np.any(T[rad][:, :, outside])):
        raise AlgebraError("radical basis does not span a two-sided ideal")
    # nilpotency
    current = np.eye(dim, dtype=np.int64)[:, rad]
    index = 1
    while current.shape[1]:
        prods = []
        for k in range(current.shape[1]):
            for r in rad:
                prods.append(alg.mul(current[:, k], alg.basis_vector(r)))
        mat = np.stack(prods, axis=1) if prods else np.zeros((dim, 0), np.int64)
        current = linalg.column_basis(F, mat) if np.any(mat) else np.zeros((dim, 0), np.int64)
        index += 1
        if index > dim + 1:
            raise AlgebraError("radical is not nilpotent")
    alg.nilpotency_index = index
    xs = [n for n in alg.generators if n.startswith("x")]
    for a in xs:
        va = alg.gen(a)
        if np.any(alg.mul(va, va)):
            raise AlgebraError(f"relation {a}^2 violated")
        for b in xs:
            if a < b:
                vb = alg.gen(b)
                if np.any(F.add(alg.mul(va, vb), alg.mul(vb, va))):
                    raise AlgebraError(f"relation {a}{b}+{b}{a} violated")


# ---------------------------------------------------------------------------
# Hopf structure


def tensor_square_mul(alg: Algebra, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Product in A ⊗ A of elements given as dim x dim coefficient matrices."""
    F, d, T = alg.field, alg.dim, alg.mult
    u = F.matmul(x.T, T.reshape(d, d * d)).reshape(d, d, d)  # j, k, m
    v = F.matmul(u.transpose(0, 2, 1).reshape(d * d, d), y).reshape(d, d, d)  # j, m, l
    return F.matmul(v.transpose(1, 0, 2).reshape(d, d * d), T.reshape(d * d, d))  # m, n


def hopf_from_generators(
    alg: Algebra,
    gen_delta: dict[str, np.ndarray],
    gen_counit: dict[str, int],
    gen_antipode: dict[str, np.ndarray],
    canonical: bool = False,
) -> HopfData:
    """Extend Δ, ε multiplicatively and S anti-multiplicatively from generators."""
    F, d = alg.field, alg.dim
    one = alg.one()
    unit_delta = np.zeros((d, d), dtype=np.int64)
    unit_delta[alg.unit_index, alg.unit_index] = 1
    delta = np.zeros((d, d, d), dtype=np.int64)
    counit = np.zeros(d, dtype=np.int64)
    antipode = np.zeros((d, d), dtype=np.int64)
    for b, terms in enumerate(alg.words):
        for coeff, word in terms:
            dv, ev, sv = unit_delta, 1, one
            for g in word:
                dv = tensor_square_mul(alg, dv, gen_delta[g])
                ev = int(F.mul(ev, gen_counit[g]))
                sv = alg.mul(gen_antipode[g], sv)
            delta[b] = F.add(delta[b], F.scal(coeff, dv))
            counit[b] = F.add(counit[b], F.mul(coeff, ev))
            antipode[:, b] = F.add(antipode[:, b], F.scal(coeff, sv))
    return HopfData(delta, counit, antipode, canonical)


def canonical_hopf(alg: Algebra) -> HopfData:
    F, d = alg.field, alg.dim
    idx_h = alg.index((), alg.h)
    one = alg.unit_index
    gd, ge, gs = {}, {}, {}
    for name, b in alg.generators.items():
        m = np.zeros((d, d), dtype=np.int64)
        if name.startswith("x"):
            m[b, one] = 1
            m[idx_h, b] = 1
            ge[name] = 0
            gs[name] = F.neg(alg.mul(alg.basis_vector(idx_h), alg.basis_vector(b)))
        else:
            m[b, b] = 1
            ge[name] = 1
            t = int(name[1:]) - 1
            n = alg.group.orders[t]
            inv = tuple((n - 1) * int(s == t) for s in range(len(alg.group.orders)))
            gs[name] = alg.group_element(inv)
        gd[name] = m
    return hopf_from_generators(alg, gd, ge, gs, canonical=True)


def validate_hopf(alg: Algebra) -> dict:
    """Check the Hopf axioms on the basis; failures are reported, not raised.

    Returns ``{"ok": bool, "axioms": {name: {"pass": bool, "failures": [...]}},
    "failed": [names]}``.
    """
    if alg.hopf is None:
        raise AlgebraError("algebra has no Hopf data")
    F, d, T = alg.field, alg.dim, alg.mult
    H = alg.hopf
    lab = alg.basis_labels
    fails: dict[str, list[str]] = {
        "coassociativity": [],
        "counit": [],
        "antipode": [],
        "delta_multiplicative": [],
        "counit_multiplicative": [],
    }
    delta_flat = H.delta.reshape(d, d * d)
    eps = H.counit
    S = H.antipode
    tflat = T.reshape(d * d, d)
    for b in range(d):
        D = H.delta[b]
        left = F.matmul(delta_flat.T, D)  # (i j) x k
        right = F.matmul(D, delta_flat).reshape(d * d, d)  # i x (j k) -> (i j) x k
        if not np.array_equal(left, right):
            fails["coassociativity"].append(lab[b])
        eb = alg.basis_vector(b)
        if not (
            np.array_equal(F.matmul(eps[None, :], D)[0], eb)
            and np.array_equal(F.matmul(D, eps[:, None])[:, 0], eb)
        ):
            fails["counit"].append(lab[b])
        target = F.scal(eps[b], alg.one())
        w1 = F.matmul(S, D).reshape(1, -1)
        w2 = F.matmul(D, S.T).reshape(1, -1)
        if not (
            np.array_equal(F.matmul(w1, tflat)[0], target)
            and np.array_equal(F.matmul(w2, tflat)[0], target)
        ):
            fails["antipode"].append(lab[b])
    for i in range(d):
        # Δ(b_i b_j) for all j at once
        lhs_all = F.matmul(T[i], delta_flat)  # j x (m n)
        for j in range(d):
            rhs = tensor_square_mul(alg, H.delta[i], H.delta[j])
            if not np.array_equal(lhs_all[j].reshape(d, d), rhs):
                fails["delta_multiplicative"].append(f"{lab[i]}*{lab[j]}")
    em = F.matmul(tflat, eps[:, None]).reshape(d, d)
    outer = F.mul(eps[:, None], eps[None, :])
    for i, j in zip(*np.nonzero(em != outer)):
        fails["counit_multiplicative"].append(f"{lab[i]}*{lab[j]}")
    axioms = {k: {"pass": not v, "failures": v} for k, v in fails.items()}
    failed = [k for k, v in fails.items() if v]
    return {"ok": not failed, "axioms": axioms, "failed": failed}


# ---------------------------------------------------------------------------
# line elements


def normalize_point(F: FieldSpec, lam) -> tuple[int, ...]:
    """Scale a nonzero vector so its first nonzero coordinate is 1."""
    lam = np.asarray(lam, dtype=np.int64)
    nz = np.flatnonzero(lam)
    if nz.size == 0:
        raise ValueError("λ must be nonzero")
    return tuple(int(v) for v in F.scal(int(F.inv(lam[nz[0]])), lam))


@dataclass(frozen=True)
class LineElement:
    """u_λ = λ_1 x_1 + ... + λ_c x_c for a normalized nonzero λ."""

    lam: tuple[int, ...]
    element: tuple[int, ...]

    def vector(self) -> np.ndarray:
        return np.array(self.element, dtype=np.int64)


def line_element(alg: Algebra, lam) -> LineElement:
    F = alg.field
    if len(lam) != alg.c:
        raise ValueError(f"λ must have {alg.c} coordinates")
    lam = normalize_point(F, F.asarray(lam) if F.e == 1 else np.asarray(lam))
    v = np.zeros(alg.dim, dtype=np.int64)
    for i, li in enumerate(lam):
        v[alg.generators[f"x{i + 1}"]] = li
    return LineElement(lam, tuple(int(x) for x in v))


# ---------------------------------------------------------------------------
# subalgebras used for restriction


def sign_subalgebra(alg: Algebra) -> tuple[Algebra, dict[str, list[str]]]:
    """A = Λ(c) ⋊ <h> inside Λ(c) ⋊ G and the generator inclusion as words."""
    if alg.kind != "skew_exterior":
        raise AlgebraError("sign subalgebra needs a skew algebra")
    sub = make_skew(alg.c, sign_group(alg.c, alg.field), alg.field)
    words = {x: [x] for x in alg.x_names}
    words["g1"] = [g for t, a in enumerate(alg.h) for g in [f"g{t + 1}"] * a]
    return sub, words


def exterior_subalgebra(alg: Algebra) -> tuple[Algebra, dict[str, list[str]]]:
    if not alg.is_skew:
        raise AlgebraError("exterior subalgebra needs a skew algebra")
    return make_exterior(alg.c, alg.field), {x: [x] for x in alg.x_names}


def extend_scalars(alg: Algebra, e: int) -> Algebra:
    """The same algebra over F_{p^e}."""
    F2 = alg.field.extend(e)
    if F2 == alg.field:
        return alg
    if alg.kind == "exterior":
        return make_exterior(alg.c, F2)
    if alg.kind == "skew_exterior":
        hopf = alg.spec.get("hopf", "canonical")
        return make_skew(alg.c, alg.group, F2, hopf=hopf)
    H = alg.hopf
    return make_structure_constants(
        F2, alg.mult, alg.generators, alg.radical_basis, alg.unit_index, alg.basis_labels, H
    )


# ---------------------------------------------------------------------------
# projective points and files


def projective_points(F: FieldSpec, c: int) -> list[tuple[int, ...]]:
    """Normalized representatives of P^{c-1}(F), sorted lexicographically."""
    q = F.q
    pts = []
    for lead in range(c):
        for tail in itertools.product(range(q), repeat=c - lead - 1):
            pts.append((0,) * lead + (1,) + tail)
    return sorted(pts)


ALGEBRA_SCHEMA = "suppvar.algebra/1"


def algebra_from_json(d: dict) -> Algebra:
    """Load and validate an algebra file."""
    F = FieldSpec.from_json(d["field"])
    kind = d.get("kind")
    if kind == "exterior":
        return make_exterior(int(d["c"]), F)
    if kind == "skew_exterior":
        return make_skew(int(d["c"]), GroupData.from_json(d["group"], F), F, d.get("hopf", "canonical"))
    if kind == "structure_constants":
        mult = np.array(
            [[[F.scalar_from_json(x) for x in row] for row in plane] for plane in d["mult"]],
            dtype=np.int64,
        )
        hopf = None
        if d.get("hopf"):
            h = d["hopf"]
            hopf = HopfData(
                np.array(
                    [[[F.scalar_from_json(x) for x in row] for row in plane] for plane in h["delta"]],
                    dtype=np.int64,
                ),
                np.array([F.scalar_from_json(x) for x in h["counit"]], dtype=np.int64),
                F.matrix_from_json(h["antipode"]),
            )
        return make_structure_constants(
            F,
            mult,
            d["generators"],
            d["radical_basis"],
            int(d.get("unit_index", 0)),
            d.get("basis_labels"),
            hopf,
            spec={k: v for k, v in d.items() if k != "schema"},
        )
    raise AlgebraError(f"unknown algebra kind {kind!r}")


def algebra_to_json(alg: Algebra) -> dict:
    return {"schema": ALGEBRA_SCHEMA, **alg.spec}
