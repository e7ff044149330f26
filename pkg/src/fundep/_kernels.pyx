# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Mirrors ``_kernels_py`` exactly; both release nothing
observable but speed, and the GIL is dropped inside the loops so callers may
run slices on worker threads."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, realloc, free
from libc.stdint cimport int64_t, uint32_t, uint8_t

cnp.import_array()

BACKEND = "cython"


def nash_scan(const int64_t[::1] sizes, const int64_t[::1] local_idx,
              const int64_t[::1] local_off, const int64_t[::1] strides,
              const int64_t[::1] flag_off, const uint8_t[::1] flags,
              int64_t lo, int64_t hi):
    cdef Py_ssize_t n = sizes.shape[0]
    cdef int64_t *digits = <int64_t *> malloc((n + 1) * sizeof(int64_t))
    cdef Py_ssize_t cap = 64, count = 0
    cdef int64_t *hits = <int64_t *> malloc(cap * sizeof(int64_t))
    cdef int64_t *grown
    cdef int64_t lin, rest, k
    cdef Py_ssize_t v, j
    cdef bint ok
    if digits == NULL or hits == NULL:
        free(digits)
        free(hits)
        raise MemoryError()
    try:
        with nogil:
            rest = lo
            for v in range(n - 1, -1, -1):
                digits[v] = rest % sizes[v]
                rest = rest // sizes[v]
            lin = lo
            while lin < hi:
                ok = True
                for v in range(n):
                    k = flag_off[v]
                    for j in range(local_off[v], local_off[v + 1]):
                        k += digits[local_idx[j]] * strides[j]
                    if not flags[k]:
                        ok = False
                        break
                if ok:
                    if count == cap:
                        cap *= 2
                        grown = <int64_t *> realloc(hits, cap * sizeof(int64_t))
                        if grown == NULL:
                            with gil:
                                raise MemoryError()
                        hits = grown
                    hits[count] = lin
                    count += 1
                v = n - 1
                while v >= 0:
                    digits[v] += 1
                    if digits[v] < sizes[v]:
                        break
                    digits[v] = 0
                    v -= 1
                lin += 1
        out = np.empty(count, dtype=np.int64)
        for j in range(count):
            out[j] = hits[j]
        return out
    finally:
        free(digits)
        free(hits)


def closure_pass(uint32_t[::1] clos, Py_ssize_t lo, Py_ssize_t hi,
                 const uint32_t[::1] hyp_lhs, const uint32_t[::1] hyp_rhs,
                 const uint32_t[::1] cut_border, bint use_contiguity):
    cdef Py_ssize_t full = clos.shape[0] - 1
    cdef Py_ssize_t nh = hyp_lhs.shape[0]
    cdef Py_ssize_t L, U, h
    cdef uint32_t c, start, before, rem, low, W, cw, X, old
    cdef bint changed = False
    with nogil:
        for L in range(lo, hi):
            start = clos[L]
            c = start | <uint32_t> L
            while True:
                before = c
                rem = <uint32_t> L
                while rem:
                    low = rem & (~rem + 1)
                    c |= clos[L ^ low]
                    rem ^= low
                for h in range(nh):
                    if hyp_lhs[h] & ~c == 0:
                        c |= hyp_rhs[h]
                c |= clos[c]
                if c == before:
                    break
            if c != start:
                clos[L] = c
                changed = True
            if not use_contiguity:
                continue
            for U in range(full + 1):
                W = <uint32_t> full & ~(<uint32_t> U)
                cw = c & W
                if cw == 0:
                    continue
                X = cut_border[U] | (<uint32_t> L & W)
                old = clos[X]
                if (old | cw) != old:
                    clos[X] = old | cw
                    changed = True
                    if X == <uint32_t> L:
                        c |= cw
    return changed
