# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled dense row reduction over F_p."""
import numpy as np

from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free


cdef inline int64_t _inv_mod(int64_t a, int64_t p) noexcept nogil:
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_inplace(int64_t[:, ::1] A, int64_t p):
    """Bring ``A`` (entries in [0, p)) to reduced row-echelon form in place.

    Returns the pivot columns as an int64 array; rows past the rank are zero.
    """
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k, piv, nnz
    cdef int64_t inv, f, tmp
    cdef Py_ssize_t *nzcols
    pivots = np.empty(min(m, n), dtype=np.int64)
    cdef int64_t[::1] pv = pivots
    if m == 0 or n == 0:
        return pivots[:0]
    nzcols = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    if nzcols == NULL:
        raise MemoryError()
    try:
        with nogil:
            for c in range(n):
                if r == m:
                    break
                piv = -1
                for i in range(r, m):
                    if A[i, c] != 0:
                        piv = i
                        break
                if piv < 0:
                    continue
                if piv != r:
                    for j in range(c, n):
                        tmp = A[r, j]
                        A[r, j] = A[piv, j]
                        A[piv, j] = tmp
                inv = _inv_mod(A[r, c], p)
                nnz = 0
                for j in range(c, n):
                    if A[r, j] != 0:
                        A[r, j] = (A[r, j] * inv) % p
                        nzcols[nnz] = j
                        nnz += 1
                for i in range(m):
                    if i == r:
                        continue
                    f = A[i, c]
                    if f == 0:
                        continue
                    f = p - f
                    for k in range(nnz):
                        j = nzcols[k]
                        A[i, j] = (A[i, j] + f * A[r, j]) % p
                pv[r] = c
                r += 1
    finally:
        free(nzcols)
    return pivots[:r]
