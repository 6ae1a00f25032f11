"""Weight-histogram backend selection.

The compiled Cython kernel is used when it was built; otherwise the numpy
implementation.  Set ``GRMKIT_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import _spectrum_py

_py_hist = _spectrum_py.weight_histogram

try:
    if os.environ.get("GRMKIT_PURE_PYTHON"):
        raise ImportError("fallback forced")
    from ._spectrum import weight_histogram as _c_hist
    BACKEND = "cython"
except ImportError:
    _c_hist = None
    BACKEND = "python"

BACKENDS = {"python": _py_hist}
if _c_hist is not None:
    BACKENDS["cython"] = _c_hist


def weight_histogram(rows, offset, add, mul, sub, backend: str | None = None) -> np.ndarray:
    fn = BACKENDS[backend or BACKEND]
    return fn(rows, offset, add, mul, sub)


def _partition_task(args):
    rows, offset, add, mul, sub, backend = args
    return weight_histogram(rows, offset, add, mul, sub, backend)


def partitioned_histogram(rows, add, mul, sub, prefix: int = 1, workers: int = 1,
                          backend: str | None = None) -> np.ndarray:
    """Histogram over the full span of ``rows``, split on the first ``prefix`` coefficients.

    Each partition fixes the leading coefficients; results are summed, so the
    output does not depend on ``prefix`` or ``workers``.
    """
    rows = np.asarray(rows)
    k, P = rows.shape
    prefix = max(0, min(prefix, k))
    head, rest = rows[:prefix], rows[prefix:]
    offsets = _spectrum_py.span(head.astype(add.dtype), add, mul) if prefix else np.zeros((1, P), add.dtype)
    tasks = [(rest, off, add, mul, sub, backend) for off in offsets]
    total = np.zeros(P + 1, dtype=np.int64)
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for h in pool.map(_partition_task, tasks):
                total += h
    else:
        for t in tasks:
            total += _partition_task(t)
    return total
