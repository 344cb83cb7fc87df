# cython: boundscheck=False, wraparound=False, cdivision=True
"""
Compiled kernel for the availability-sampling Monte Carlo.

Mirrors _sampler_py draw for draw (same keyed splitmix streams, same
partial Fisher-Yates with undo, same rejection rule for bounded draws),
so the two backends produce identical tallies.  The trial loop runs
without the GIL, so trial ranges can execute on real threads.
"""

from libc.stdlib cimport free, malloc

ctypedef unsigned long long u64

cdef u64 GOLDEN = 0x9E3779B97F4A7C15ULL


cdef inline u64 fmix64(u64 z) nogil:
    z ^= z >> 30
    z *= 0xBF58476D1CE4E5B9ULL
    z ^= z >> 27
    z *= 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline long bounded(u64 *state, long m) nogil:
    # rejection below the largest multiple of m; rem == 0 means 2^64
    cdef u64 rem = ((<u64>0 - <u64>m) % <u64>m)
    cdef u64 zone = <u64>0 - rem
    cdef u64 u
    while True:
        state[0] += GOLDEN
        u = fmix64(state[0])
        if rem == 0 or u < zone:
            return <long>(u % <u64>m)


def run_trials(long n, long d, long c, long s, object seed_obj,
               long t0, long t1, long long[::1] y_out, long long[::1] z_out):
    """Fill y_out[t] and z_out[t] for trials t in [t0, t1)."""
    cdef u64 seed = <u64>(int(seed_obj) & ((1 << 64) - 1))
    cdef long nundo = max(1, d if d > s else s)
    cdef long *perm = <long *>malloc(n * sizeof(long))
    cdef long *undo = <long *>malloc(nundo * sizeof(long))
    cdef long long *hidden_stamp = <long long *>malloc(n * sizeof(long long))
    cdef long long *union_stamp = <long long *>malloc(n * sizeof(long long))
    if perm == NULL or undo == NULL or hidden_stamp == NULL or union_stamp == NULL:
        free(perm); free(undo); free(hidden_stamp); free(union_stamp)
        raise MemoryError()
    cdef long t, j, idx, m, r, v, node, y, z, hit
    cdef long long tt
    cdef u64 tkey, state
    with nogil:
        for j in range(n):
            perm[j] = j
            hidden_stamp[j] = -1
            union_stamp[j] = -1
        for t in range(t0, t1):
            tt = t
            tkey = fmix64(seed + GOLDEN * (<u64>t + 1))
            state = fmix64(tkey + GOLDEN)
            for j in range(d):
                r = bounded(&state, n - j)
                idx = j + r
                v = perm[j]; perm[j] = perm[idx]; perm[idx] = v
                hidden_stamp[perm[j]] = tt
                undo[j] = idx
            for j in range(d - 1, -1, -1):
                idx = undo[j]
                v = perm[j]; perm[j] = perm[idx]; perm[idx] = v
            y = 0
            z = 0
            for node in range(1, c + 1):
                state = fmix64(tkey + GOLDEN * (<u64>node + 1))
                hit = 0
                for j in range(s):
                    r = bounded(&state, n - j)
                    idx = j + r
                    v = perm[j]; perm[j] = perm[idx]; perm[idx] = v
                    undo[j] = idx
                    v = perm[j]
                    if hidden_stamp[v] == tt:
                        hit = 1
                    if union_stamp[v] != tt:
                        union_stamp[v] = tt
                        z += 1
                for j in range(s - 1, -1, -1):
                    idx = undo[j]
                    v = perm[j]; perm[j] = perm[idx]; perm[idx] = v
                y += hit
            y_out[t] = y
            z_out[t] = z
    free(perm); free(undo); free(hidden_stamp); free(union_stamp)
