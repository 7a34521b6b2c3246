"""Command line interface.

Exit codes: 0 success, 2 input or validation error, 3 property violation.
"""
from __future__ import annotations

import argparse
import json
import sys

from suppvar import linalg
from suppvar.algebra import AlgebraError, algebra_from_json, validate_hopf
from suppvar.cohom import aulambda, cocycle_from_ext_coords, lzeta, trivial_resolution
from suppvar.experiment import builtin_algebra, canonical_json, run_experiment
from suppvar.modrep import ModuleError, module_from_json
from suppvar.resolve import (
    DEFAULT_STEPS,
    complexity_estimate,
    detect_periodicity,
    resolution_report,
    resolve,
)
from suppvar.tensor import tensor
from suppvar.variety import tpp_check, variety_report

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 2, 3


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg}") from None


def load_algebra(spec: str):
    """An algebra file, or builtin:NAME (h4, sign:c, cyclic:c:n:s)."""
    if spec.startswith("builtin:"):
        return builtin_algebra(spec[len("builtin:"):])
    return algebra_from_json(_read_json(spec))


def load_module(alg, path: str):
    m = module_from_json(alg, _read_json(path))
    linalg.check_size(m.dim, "module")
    return m


def parse_vector(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"cannot parse {text!r} as comma-separated integers") from None


def _emit(args, payload: dict) -> None:
    text = json.dumps(payload, sort_keys=True, indent=None if args.json else 2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    alg = load_algebra(args.algebra)
    out = {"algebra_hash": alg.hash, "dim": alg.dim, "kind": alg.kind}
    code = EXIT_OK
    if alg.hopf is not None:
        rep = validate_hopf(alg)
        out["hopf"] = {k: v["pass"] for k, v in rep["axioms"].items()}
        out["hopf_failures"] = {k: v["failures"] for k, v in rep["axioms"].items() if v["failures"]}
        code = EXIT_OK if rep["ok"] else EXIT_VIOLATION
    if args.module:
        load_module(alg, args.module)
        out["module"] = "valid"
    _emit(args, out)
    return code


def cmd_resolve(args) -> int:
    alg = load_algebra(args.algebra)
    M = load_module(alg, args.module)
    res = resolve(M, args.steps)
    cx = complexity_estimate(res.betti()) if res.length + 1 >= 6 else None
    period = detect_periodicity(M, max(1, min(args.steps, 8)), res) if M.dim else None
    _emit(args, resolution_report(res, period, cx))
    return EXIT_OK


def cmd_variety(args) -> int:
    alg = load_algebra(args.algebra)
    M = load_module(alg, args.module)
    _emit(args, variety_report(M, args.field_degree, args.steps))
    return EXIT_OK


def cmd_tensor(args) -> int:
    alg = load_algebra(args.algebra)
    M, N = load_module(alg, args.left), load_module(alg, args.right)
    _emit(args, tensor(M, N).to_json())
    return EXIT_OK


def cmd_tpp(args) -> int:
    alg = load_algebra(args.algebra)
    M, N = load_module(alg, args.left), load_module(alg, args.right)
    rep = tpp_check(M, N, args.field_degree)
    out = rep.to_json()
    if not rep.holds:
        out["witness"] = {"left": M.to_json(), "right": N.to_json()}
    _emit(args, out)
    return EXIT_OK if rep.holds else EXIT_VIOLATION


def cmd_aulambda(args) -> int:
    alg = load_algebra(args.algebra)
    lam = parse_vector(args.lam)
    if len(lam) != alg.c or not any(x % alg.field.p for x in lam):
        raise InputError(f"--lambda needs {alg.c} coordinates, not all zero")
    _emit(args, aulambda(alg, lam).to_json())
    return EXIT_OK


def cmd_lzeta(args) -> int:
    alg = load_algebra(args.algebra)
    res = trivial_resolution(alg, args.degree + 1)
    zeta = cocycle_from_ext_coords(res, args.degree, parse_vector(args.coeffs))
    if zeta.is_zero():
        raise InputError("the class is zero")
    _emit(args, lzeta(zeta).to_json())
    return EXIT_OK


def cmd_experiment(args) -> int:
    config = _read_json(args.config)
    if args.seed is not None:
        config["seed"] = args.seed
    if args.field_degree is not None:
        config["field_degree"] = args.field_degree
    report = run_experiment(config)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(canonical_json(report) + "\n")
    else:
        print(canonical_json(report))
    return EXIT_VIOLATION if report["summary"]["failures"] else EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--field-degree", type=int, default=d, help="scan lines over F_{p^e}")
    p.add_argument("--steps", type=int, default=argparse.SUPPRESS if suppress else DEFAULT_STEPS)
    p.add_argument("--seed", type=int, default=d)
    p.add_argument("--out", default=d, help="write JSON here instead of stdout")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False,
                   help="compact JSON, errors as JSON")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="suppvar", description="support and rank varieties over Λ(c) ⋊ G")
    _common(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        _common(sp, suppress=True)
        sp.set_defaults(func=func)
        return sp

    sp = add("validate", cmd_validate, "validate an algebra (and optionally a module)")
    sp.add_argument("algebra")
    sp.add_argument("--module")
    sp = add("resolve", cmd_resolve, "minimal resolution report")
    sp.add_argument("algebra")
    sp.add_argument("module")
    sp = add("variety", cmd_variety, "rank variety report")
    sp.add_argument("algebra")
    sp.add_argument("module")
    sp = add("tensor", cmd_tensor, "tensor product module")
    sp.add_argument("algebra")
    sp.add_argument("left")
    sp.add_argument("right")
    sp = add("tpp", cmd_tpp, "check RV(M ⊗ N) = RV(M) ∩ RV(N)")
    sp.add_argument("algebra")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp = add("aulambda", cmd_aulambda, "the module Au_λ")
    sp.add_argument("algebra")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp = add("lzeta", cmd_lzeta, "the module L_ζ for a class in Ext^degree(k, k)")
    sp.add_argument("algebra")
    sp.add_argument("--degree", type=int, default=2)
    sp.add_argument("--coeffs", required=True, help="coordinates in the Ext basis")
    sp = add("experiment", cmd_experiment, "seeded TPP sweep from a config file")
    sp.add_argument("config")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ModuleError, AlgebraError, linalg.SizeLimitExceeded, ValueError) as exc:
        reason = getattr(exc, "reason", None) or str(exc)
        if args.json:
            print(json.dumps({"error": reason}, sort_keys=True))
        else:
            print(f"error: {reason}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

