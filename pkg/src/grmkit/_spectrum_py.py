"""Pure numpy weight-histogram kernel (fallback for the compiled one)."""

from __future__ import annotations

import numpy as np

# words materialised per leaf: q^L * P entries
LEAF_CELLS = 1 << 21


def span(rows: np.ndarray, add: np.ndarray, mul: np.ndarray) -> np.ndarray:
    """Every linear combination of ``rows``; the last row's coefficient varies fastest."""
    k, P = rows.shape
    words = np.zeros((1, P), dtype=add.dtype)
    for r in rows:
        scaled = mul[:, r]  # (q, P)
        words = add[words[:, None, :], scaled[None, :, :]].reshape(-1, P)
    return words


def weight_histogram(rows, offset, add, mul, sub=None) -> np.ndarray:
    """Histogram of Hamming weights of ``offset + span(rows)``.

    ``sub`` is accepted for signature parity with the compiled kernel.
    """
    rows = np.ascontiguousarray(rows, dtype=add.dtype)
    offset = np.ascontiguousarray(offset, dtype=add.dtype)
    q = add.shape[0]
    k, P = rows.shape
    hist = np.zeros(P + 1, dtype=np.int64)
    _accumulate(rows, offset, add, mul, q, hist)
    return hist


def _accumulate(rows, offset, add, mul, q, hist) -> None:
    k, P = rows.shape
    if k == 0 or q**k * P <= LEAF_CELLS:
        words = add[span(rows, add, mul), offset[None, :]]
        hist += np.bincount(np.count_nonzero(words, axis=1), minlength=len(hist))
        return
    head, rest = rows[0], rows[1:]
    for c in range(q):
        _accumulate(rest, add[offset, mul[c, head]], add, mul, q, hist)
