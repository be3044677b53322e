"""Backend selection for the dense elimination kernel.

The compiled extension is used when it was built; set
``MODCARTAN_PURE_PYTHON=1`` to force the numpy fallback.
"""
from __future__ import annotations

import os

import numpy as np

from . import _pykernels

BACKEND = "python"
_compiled = None
if os.environ.get("MODCARTAN_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _kernels as _compiled  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _compiled = None


def rref_inplace(A: np.ndarray, p: int, backend: str | None = None) -> np.ndarray:
    """Reduce the C-contiguous int64 array ``A`` to RREF in place; return pivot columns."""
    use = backend or BACKEND
    if use == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return _compiled.rref_inplace(A, p)
    return _pykernels.rref_inplace(A, p)


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _compiled is not None else [])


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Exact ``A @ B mod p`` for int64 arrays with entries in [0, p)."""
    inner = A.shape[1]
    if inner == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    bound = (p - 1) ** 2
    # float64 is exact below 2**53 and goes through BLAS
    if inner * bound < 2**53:
        out = A.astype(np.float64) @ B.astype(np.float64)
        return np.remainder(out, p).astype(np.int64)
    step = max(1, (2**62) // max(bound, 1))
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for s in range(0, inner, step):
        out = (out + A[:, s:s + step] @ B[s:s + step]) % p
    return out
