"""Backend selection for the elimination kernels.

The compiled extension is preferred; set ``SUPPVAR_NO_EXT=1`` to force the
numpy fallback (the benchmark and the backend-agreement tests do this).
"""
import os



def _load():
    if os.environ.get("SUPPVAR_NO_EXT", "") not in ("1", "true", "yes"):
        try:
            from suppvar import _kernels

            return "cython", _kernels
        except ImportError:
            pass
    from suppvar import _kernels_py

    return "python", _kernels_py


BACKEND, _impl = _load()
rank_modp = _impl.rank_modp
rref_modp = _impl.rref_modp

__all__ = ["BACKEND", "rank_modp", "rref_modp"]
