"""Module catalogs, the seeded random-module recipes, and TPP sweeps."""
from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from suppvar import linalg
from suppvar.algebra import (
    Algebra,
    algebra_from_json,
    algebra_to_json,
    cyclic_group,
    make_skew,
    projective_points,
    sign_group,
    sweedler,
)
from suppvar.cohom import aulambda, mlambda
from suppvar.linalg import FieldSpec
from suppvar.modrep import (
    ModuleRep,
    direct_sum,
    generated_submodule,
    is_isomorphic,
    module_from_json,
    projective_module,
    quotient,
    simple_module,
)
from suppvar.resolve import projective_sum, syzygy
from suppvar.tensor import tensor
from suppvar.variety import tpp_check

REPORT_SCHEMA = "suppvar.experiment/1"
RECIPES = ("catalog", "random-quotient", "syzygy-of-random", "tensor-closure")


def builtin_algebra(name: str, p: int = 5) -> Algebra:
    """Named algebras: h4, sign:c (Λ(c) ⋊ C_2), cyclic:c:n:s (C_n acting by s)."""
    F = FieldSpec(p)
    parts = name.split(":")
    if parts[0] == "h4":
        return sweedler(F)
    if parts[0] == "sign":
        c = int(parts[1])
        return make_skew(c, sign_group(c, F), F)
    if parts[0] == "cyclic":
        c, n, s = (int(x) for x in parts[1:4])
        return make_skew(c, cyclic_group(c, F, n, s), F)
    raise ValueError(f"unknown builtin algebra {name!r}")


# ---------------------------------------------------------------------------
# catalogs


def base_catalog(a: Algebra, shifts: int = 2) -> dict[str, ModuleRep]:
    """Simples, projectives, syzygies of simples, Au_λ and M_λ^± for every line."""
    out: dict[str, ModuleRep] = {}
    for chi in a.characters():
        tag = "".join(map(str, chi))
        S = simple_module(a, chi)
        out[f"S[{tag}]"] = S
        out[f"P[{tag}]"] = projective_module(a, chi)
        cur = S
        for n in range(1, shifts + 1):
            cur = syzygy(cur)
            out[f"Omega{n}S[{tag}]"] = cur
    for lam in projective_points(a.field, a.c):
        tag = ",".join(map(str, lam))
        out[f"Au[{tag}]"] = aulambda(a, lam)
        out[f"M+[{tag}]"] = mlambda(a, lam, 1)
        out[f"M-[{tag}]"] = mlambda(a, lam, -1)
    return out


def sums_catalog(base: dict[str, ModuleRep], dim_max: int | None = None) -> dict[str, ModuleRep]:
    """Base modules plus all pairwise direct sums (with repetition)."""
    names = list(base)
    out = dict(base)
    for i, x in enumerate(names):
        for y in names[i:]:
            if dim_max is None or base[x].dim + base[y].dim <= dim_max:
                out[f"{x}+{y}"] = direct_sum([base[x], base[y]])
    return out


def dedupe(modules: dict[str, ModuleRep]) -> dict[str, ModuleRep]:
    """Keep one representative per isomorphism class (first name wins)."""
    kept: dict[str, ModuleRep] = {}
    for name, M in modules.items():
        if not any(N.dim == M.dim and bool(is_isomorphic(M, N)) for N in kept.values()):
            kept[name] = M
    return kept


def tensor_closure(base: dict[str, ModuleRep], dim_max: int) -> dict[str, ModuleRep]:
    """Base plus pairwise tensor products of dimension <= dim_max, up to isomorphism."""
    mods = dict(base)
    names = list(base)
    for x in names:
        for y in names:
            if base[x].dim * base[y].dim <= dim_max:
                mods[f"{x}*{y}"] = tensor(base[x], base[y])
    return dedupe(mods)


# ---------------------------------------------------------------------------
# random modules


def random_quotient(a: Algebra, rng: np.random.Generator, dim_max: int, shift: bool = False):
    """Quotient of 1-3 random P(χ) by the submodule generated by 1-2 random
    vectors from its radical; optionally replaced by its first syzygy.

    Draws repeat until the result has dimension at most dim_max.
    """
    F = a.field
    chars = a.characters()
    nmono = 2**a.c
    for _ in range(1000):
        k = int(rng.integers(1, 4))
        picks = [chars[int(i)] for i in rng.integers(0, len(chars), size=k)]
        P = projective_sum(a, picks)
        s = int(rng.integers(1, 3))
        vecs = rng.integers(0, F.q, size=(P.dim, s))
        # zero the generator coordinates so the vectors lie in rad P
        for j in range(k):
            vecs[j * nmono] = 0
        if not np.any(vecs):
            continue
        _, U = generated_submodule(P, vecs)
        M = quotient(P, U)
        if shift:
            M = syzygy(M)
        if 0 < M.dim <= dim_max:
            return M
    raise RuntimeError("random recipe could not meet dim_max")


def random_module(a: Algebra, rng: np.random.Generator, dim_max: int, recipe: str):
    if recipe == "random-quotient":
        return random_quotient(a, rng, dim_max)
    if recipe == "syzygy-of-random":
        return random_quotient(a, rng, dim_max, shift=True)
    raise ValueError(f"recipe {recipe!r} does not draw random modules")


# ---------------------------------------------------------------------------
# experiment runs


def trial_seed(seed: int, index: int) -> int:
    return (int(seed) ^ int(index)) & ((1 << 64) - 1)


def _points(pts) -> list:
    return [list(p) for p in pts]


def _tpp_record(M: ModuleRep, N: ModuleRep, e) -> dict:
    rep = tpp_check(M, N, e)
    rec = {
        "dims": [M.dim, N.dim],
        "lhs": _points(rep.lhs.points),
        "rhs": _points(rep.rhs),
        "holds": rep.holds,
        "inclusion": rep.inclusion,
        "label": rep.label,
    }
    if not rep.holds:
        rec["witness"] = {"left": M.to_json(), "right": N.to_json()}
    return rec


def _run_random_trial(args) -> dict:
    alg_json, seed, index, dim_max, recipe, e = args
    a = algebra_from_json(alg_json)
    rng = np.random.default_rng(trial_seed(seed, index))
    M = random_module(a, rng, dim_max, recipe)
    N = random_module(a, rng, dim_max, recipe)
    rec = _tpp_record(M, N, e)
    rec["index"] = index
    return rec


def run_experiment(config: dict) -> dict:
    """Run a TPP sweep described by ``config`` and return the report.

    Keys: seed, trials, dim_max, algebra (algebra file contents or a builtin
    name), recipe, field_degree, jobs.
    """
    seed = int(config.get("seed", 0))
    trials = int(config.get("trials", 10))
    dim_max = int(config.get("dim_max", 12))
    recipe = config.get("recipe", "random-quotient")
    e = config.get("field_degree")
    jobs = int(config.get("jobs", 1))
    if recipe not in RECIPES:
        raise ValueError(f"unknown recipe {recipe!r}")
    alg_spec = config.get("algebra", "sign:2")
    a = builtin_algebra(alg_spec) if isinstance(alg_spec, str) else algebra_from_json(alg_spec)
    alg_json = algebra_to_json(a)
    results = []
    if recipe in ("random-quotient", "syzygy-of-random"):
        tasks = [(alg_json, seed, i, dim_max, recipe, e) for i in range(trials)]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_run_random_trial, tasks))
        else:
            results = [_run_random_trial(t) for t in tasks]
    else:
        base = base_catalog(a, shifts=1)
        mods = tensor_closure(base, dim_max) if recipe == "tensor-closure" else base
        names = list(mods)
        idx = 0
        for x in names:
            for y in names:
                if mods[x].dim * mods[y].dim > linalg.max_dim():
                    continue
                rec = _tpp_record(mods[x], mods[y], e)
                rec.update({"index": idx, "pair": [x, y]})
                results.append(rec)
                idx += 1
    results.sort(key=lambda r: r["index"])
    failures = [r for r in results if not r["holds"]]
    report = {
        "schema": REPORT_SCHEMA,
        "config": {
            "seed": seed,
            "trials": trials,
            "dim_max": dim_max,
            "recipe": recipe,
            "field_degree": e,
            "algebra": alg_json,
        },
        "algebra_hash": a.hash,
        "results": results,
        "summary": {
            "pairs": len(results),
            "holds": len(results) - len(failures),
            "failures": len(failures),
            "inclusion_failures": sum(1 for r in results if not r["inclusion"]),
        },
    }
    report["report_hash"] = report_hash(report)
    return report


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def report_hash(report: dict) -> str:
    body = {k: v for k, v in report.items() if k != "report_hash"}
    return hashlib.sha256(canonical_json(body).encode()).hexdigest()


def replay(report: dict, record: dict) -> dict:
    """Recompute a TPP record from its embedded witness modules."""
    a = algebra_from_json(report["config"]["algebra"])
    w = record["witness"]
    M = module_from_json(a, w["left"])
    N = module_from_json(a, w["right"])
    return _tpp_record(M, N, report["config"]["field_degree"])


__all__ = [
    "base_catalog",
    "builtin_algebra",
    "dedupe",
    "random_module",
    "random_quotient",
    "replay",
    "run_experiment",
    "sums_catalog",
    "tensor_closure",
]
