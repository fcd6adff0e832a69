# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: state-map construction and Monte Carlo trajectories.

Outputs are bit-identical to ``_pykernels``; both consume the same Philox
streams from ``_rng.trial_stream`` in the same order.
"""

import numpy as np
cimport numpy as cnp
from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc
from numpy.random cimport bitgen_t

from ._rng import COUPON, WALK, trial_stream

cnp.import_array()


cdef inline int64_t _bounded(bitgen_t *rng, int64_t m) noexcept nogil:
    return <int64_t>(((rng.next_uint64(rng.state) >> 32) * <uint64_t>m) >> 32)


cdef inline bitgen_t *_bitgen(object bg) except NULL:
    return <bitgen_t *>PyCapsule_GetPointer(bg.capsule, "BitGenerator")


def build_right_mul_maps(int n, int64_t order, mul_in, atom_colors, atom_perms):
    cdef const int64_t[:, ::1] mul = np.ascontiguousarray(mul_in, dtype=np.int64)
    cdef const int64_t[:, ::1] hs = np.ascontiguousarray(atom_colors, dtype=np.int64)
    cdef const int64_t[:, ::1] etas = np.ascontiguousarray(atom_perms, dtype=np.int64)
    cdef int64_t n_atoms = hs.shape[0]
    cdef int64_t nfact = 1
    cdef int64_t i, j, k, a, code, rank, size, smaller, d
    for i in range(2, n + 1):
        nfact *= i
    size = nfact
    for i in range(n):
        size *= order
    out = np.empty((n_atoms, size), dtype=np.int64)
    cdef int64_t[:, ::1] res = out
    cdef int64_t *fact = <int64_t *>malloc(n * sizeof(int64_t))
    cdef int64_t *colors = <int64_t *>malloc(n * sizeof(int64_t))
    cdef int64_t *perm = <int64_t *>malloc(n * sizeof(int64_t))
    cdef int64_t *pinv = <int64_t *>malloc(n * sizeof(int64_t))
    cdef int64_t *newp = <int64_t *>malloc(n * sizeof(int64_t))
    cdef int64_t *pool = <int64_t *>malloc(n * sizeof(int64_t))
    try:
        fact[n - 1] = 1
        for j in range(n - 2, -1, -1):
            fact[j] = fact[j + 1] * (n - 1 - j)
        with nogil:
            for i in range(size):
                code = i // nfact
                rank = i % nfact
                for j in range(n - 1, -1, -1):
                    colors[j] = code % order
                    code = code // order
                for j in range(n):
                    pool[j] = j
                for j in range(n):
                    d = rank // fact[j]
                    rank = rank % fact[j]
                    perm[j] = pool[d]
                    for k in range(d, n - 1 - j):
                        pool[k] = pool[k + 1]
                for j in range(n):
                    pinv[perm[j]] = j
                for a in range(n_atoms):
                    code = 0
                    for j in range(n):
                        code = code * order + mul[colors[j], hs[a, pinv[j]]]
                        newp[j] = perm[etas[a, j]]
                    rank = 0
                    for j in range(n):
                        smaller = 0
                        for k in range(j + 1, n):
                            if newp[k] < newp[j]:
                                smaller += 1
                        rank += smaller * fact[j]
                    res[a, i] = code * nfact + rank
    finally:
        free(fact); free(colors); free(perm); free(pinv); free(newp); free(pool)
    return out


cdef int64_t _walk(bitgen_t *rng, int64_t n, int64_t order, const int64_t[:, ::1] mul,
                   const int64_t[::1] inv, int64_t *perm, int64_t *colors,
                   int64_t steps, int64_t fixed) noexcept nogil:
    cdef int64_t last = n - 1
    cdef int64_t s, i, g, a, b
    for s in range(steps):
        i = _bounded(rng, n)
        g = _bounded(rng, order)
        b = perm[last]
        if i == last:
            colors[b] = mul[colors[b], g]
            continue
        a = perm[i]
        fixed -= (a == i) + (b == last)
        colors[a] = mul[colors[a], inv[g]]
        colors[b] = mul[colors[b], g]
        perm[i] = b
        perm[last] = a
        fixed += (b == i) + (a == last)
    return fixed


def walk_fixed_points(int64_t n, mul_in, inv_in, int64_t identity, checkpoints_in,
                      int64_t trials, uint64_t seed, int64_t trial_offset=0):
    cdef const int64_t[:, ::1] mul = np.ascontiguousarray(mul_in, dtype=np.int64)
    cdef const int64_t[::1] inv = np.ascontiguousarray(inv_in, dtype=np.int64)
    cdef const int64_t[::1] cps = np.ascontiguousarray(checkpoints_in, dtype=np.int64)
    cdef int64_t order = mul.shape[0]
    cdef int64_t ncp = cps.shape[0]
    out = np.zeros((trials, ncp), dtype=np.int64)
    cdef int64_t[:, ::1] res = out
    cdef int64_t *perm = <int64_t *>malloc(n * sizeof(int64_t))
    cdef int64_t *colors = <int64_t *>malloc(n * sizeof(int64_t))
    cdef int64_t t, j, c, step, fixed
    cdef bitgen_t *rng
    try:
        for t in range(trials):
            bg = trial_stream(seed, WALK, trial_offset + t)
            rng = _bitgen(bg)
            with nogil:
                for j in range(n):
                    perm[j] = j
                    colors[j] = identity
                fixed = n
                step = 0
                for c in range(ncp):
                    fixed = _walk(rng, n, order, mul, inv, perm, colors, cps[c] - step, fixed)
                    step = cps[c]
                    res[t, c] = fixed
    finally:
        free(perm); free(colors)
    return out


def walk_states(int64_t n, mul_in, inv_in, int64_t identity, int64_t k,
                int64_t trials, uint64_t seed, int64_t trial_offset=0):
    cdef const int64_t[:, ::1] mul = np.ascontiguousarray(mul_in, dtype=np.int64)
    cdef const int64_t[::1] inv = np.ascontiguousarray(inv_in, dtype=np.int64)
    cdef int64_t order = mul.shape[0]
    perms = np.empty((trials, n), dtype=np.int64)
    colors = np.empty((trials, n), dtype=np.int64)
    cdef int64_t[:, ::1] p = perms
    cdef int64_t[:, ::1] col = colors
    cdef int64_t t, j
    cdef bitgen_t *rng
    for t in range(trials):
        bg = trial_stream(seed, WALK, trial_offset + t)
        rng = _bitgen(bg)
        with nogil:
            for j in range(n):
                p[t, j] = j
                col[t, j] = identity
            _walk(rng, n, order, mul, inv, &p[t, 0], &col[t, 0], k, n)
    return colors, perms


def twisted_coupons(int64_t n, int64_t trials, uint64_t seed, int64_t trial_offset=0):
    out = np.empty((trials, 3), dtype=np.int64)
    cdef int64_t[:, ::1] res = out
    cdef char *seen = <char *>malloc(n)
    cdef int64_t t, j, x, count, steps, last, extra
    cdef bitgen_t *rng
    try:
        for t in range(trials):
            bg = trial_stream(seed, COUPON, trial_offset + t)
            rng = _bitgen(bg)
            with nogil:
                for j in range(n):
                    seen[j] = 0
                count = 0
                steps = 0
                last = -1
                while count < n:
                    x = _bounded(rng, n)
                    steps += 1
                    if not seen[x]:
                        seen[x] = 1
                        count += 1
                        last = x
                extra = 0
                if last != n - 1:
                    while True:
                        extra += 1
                        if _bounded(rng, n) == n - 1:
                            break
                res[t, 0] = steps
                res[t, 1] = extra
                res[t, 2] = steps + extra
    finally:
        free(seen)
    return out
