"""Compare the compiled elimination kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--sizes 64 128 256] [--repeat 5]

Times raw rank/rref on random matrices, then an end-to-end resolution with
each backend selected the way users select it (SUPPVAR_NO_EXT) in a fresh
interpreter.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from suppvar import _kernels_py

try:
    from suppvar import _kernels as _ext
except ImportError:
    _ext = None

END_TO_END = (
    "from suppvar.experiment import builtin_algebra;"
    "from suppvar.modrep import trivial_module;"
    "from suppvar.resolve import resolve;"
    "import time, suppvar.kernels as k;"
    "t = time.perf_counter(); resolve(trivial_module(builtin_algebra('sign:3')), 8);"
    "print(k.BACKEND, time.perf_counter() - t)"
)


def bench_raw(sizes, repeat, p=5):
    rng = np.random.default_rng(0)
    rows = []
    for n in sizes:
        a = rng.integers(0, p, size=(n, n))
        for name, mod in (("python", _kernels_py), ("cython", _ext)):
            if mod is None:
                continue
            for fn in ("rank_modp", "rref_modp"):
                f = getattr(mod, fn)
                t = min(timeit.repeat(lambda: f(a.copy(), p), number=1, repeat=repeat))
                rows.append((n, fn, name, t))
    return rows


def bench_end_to_end():
    out = {}
    for flag in ("0", "1"):
        env = dict(os.environ, SUPPVAR_NO_EXT=flag)
        res = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        backend, secs = res.stdout.split()
        out[backend] = float(secs)
    return out


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ext is None:
        print("compiled extension not built; only the fallback is timed")
    print(f"{'n':>5} {'kernel':>10} {'backend':>8} {'seconds':>10}")
    for n, fn, name, t in bench_raw(args.sizes, args.repeat):
        print(f"{n:>5} {fn:>10} {name:>8} {t:>10.5f}")
    e2e = bench_end_to_end()
    print("resolve k over Λ(3)⋊C2, 8 steps:")
    for name, t in sorted(e2e.items()):
        print(f"  {name:>8} {t:.3f}s")


if __name__ == "__main__":
    main()
