# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Dyck-path DP over Z/mZ for word-sized moduli (m < 2**62).

Same contract as _dyck_py.dyck_dp_mod; products are taken in 128-bit
intermediates so any modulus below 2**62 is safe.
"""

from libc.stdlib cimport calloc, free

ctypedef unsigned long long u64

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"


def dyck_dp_mod(bvals, long n_max, object modulus, height_cap=None):
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    if modulus >= (1 << 62):
        raise ValueError("compiled kernel supports moduli below 2**62")

    cdef u64 m = <u64> modulus
    cdef long h_max = n_max
    if height_cap is not None:
        h_max = min(<long> height_cap, n_max)
    if h_max < 0:
        h_max = 0
    if len(bvals) < h_max:
        raise ValueError(
            f"need {h_max} weight values (heights 0..{h_max - 1}), got {len(bvals)}"
        )

    cdef long size = h_max + 3
    cdef u64* b = <u64*> calloc(max(h_max, 1), sizeof(u64))
    cdef u64* prev = <u64*> calloc(size, sizeof(u64))
    cdef u64* cur = <u64*> calloc(size, sizeof(u64))
    cdef u64* tmp
    if b == NULL or prev == NULL or cur == NULL:
        free(b); free(prev); free(cur)
        raise MemoryError()

    cdef long i, s, j, lo, hi
    cdef u64 v
    out = [0] * (n_max + 1)
    try:
        for i in range(h_max):
            b[i] = <u64> (bvals[i] % modulus)
        prev[0] = 1 % m
        out[0] = prev[0]
        for s in range(1, 2 * n_max + 1):
            hi = min(s, 2 * n_max - s)
            if hi > h_max:
                hi = h_max
            lo = s & 1
            for j in range(lo, hi + 1, 2):
                v = prev[j + 1]
                if j:
                    v = <u64> ((prev[j + 1] + <u128> prev[j - 1] * b[j - 1]) % m)
                cur[j] = v
            if hi + 2 < size:
                cur[hi + 2] = 0
            tmp = prev; prev = cur; cur = tmp
            if lo == 0:
                out[s >> 1] = prev[0]
        return out
    finally:
        free(b)
        free(prev)
        free(cur)
