# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled weight-histogram kernel.

Walks GF(q)^k in modular q-ary Gray order: step t changes only digit
v_q(t), by +1 in code order, so each step costs one row update.
"""

import numpy as np


def weight_histogram(rows, offset, add, mul, sub):
    cdef int[:, ::1] R = np.ascontiguousarray(rows, dtype=np.int32)
    cdef int[:, ::1] A = np.ascontiguousarray(add, dtype=np.int32)
    cdef int[:, ::1] M = np.ascontiguousarray(mul, dtype=np.int32)
    cdef int[:, ::1] S = np.ascontiguousarray(sub, dtype=np.int32)
    cdef int q = A.shape[0]
    cdef int k = R.shape[0]
    cdef int P = R.shape[1]
    hist_arr = np.zeros(P + 1, dtype=np.int64)
    cdef long long[::1] hist = hist_arr
    cdef int[::1] word = np.array(offset, dtype=np.int32, copy=True)
    # scaled[i, c, j] = c * rows[i, j]
    cdef int[:, :, ::1] scaled = np.zeros((max(k, 1), q, P), dtype=np.int32)
    cdef int[::1] digit = np.zeros(max(k, 1), dtype=np.int32)
    cdef int i, j, c, a, b, old, new, delta, weight = 0
    cdef long long t, tt, total = 1

    for i in range(k):
        total *= q
        for c in range(q):
            for j in range(P):
                scaled[i, c, j] = M[c, R[i, j]]
    for j in range(P):
        if word[j] != 0:
            weight += 1
    hist[weight] += 1

    with nogil:
        for t in range(1, total):
            i = 0
            tt = t
            while tt % q == 0:
                tt = tt // q
                i += 1
            old = digit[i]
            new = old + 1
            if new == q:
                new = 0
            digit[i] = new
            delta = S[new, old]
            for j in range(P):
                a = word[j]
                b = A[a, scaled[i, delta, j]]
                if a != 0:
                    weight -= 1
                if b != 0:
                    weight += 1
                word[j] = b
            hist[weight] += 1
    return hist_arr
