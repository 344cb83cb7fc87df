"""
Numpy backend for the availability-sampling Monte Carlo.

Implements exactly the same draw sequence as the compiled kernel so both
backends produce identical tallies: a splitmix-style generator is keyed
per (seed, trial, lane) -- lane 0 picks the hidden chunks, lane i >= 1 is
light node i -- and each lane samples without replacement by a partial
Fisher-Yates over an index array whose swaps are undone afterwards
(O(draws) per lane, no per-lane array rebuild).  Bounded draws use
rejection below the largest multiple of the bound, so every lane consumes
the same number of raw draws in either backend.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _fmix64(z: int) -> int:
    z &= MASK64
    z ^= z >> 30
    z = (z * _MIX1) & MASK64
    z ^= z >> 27
    z = (z * _MIX2) & MASK64
    return z ^ (z >> 31)


def _fmix64_vec(z: np.ndarray) -> np.ndarray:
    z = z.copy()
    z ^= z >> np.uint64(30)
    z *= np.uint64(_MIX1)
    z ^= z >> np.uint64(27)
    z *= np.uint64(_MIX2)
    z ^= z >> np.uint64(31)
    return z


def _zone(m: int) -> int:
    """Largest multiple of m representable in 64 bits (0 means 2^64)."""
    rem = (1 << 64) % m
    return 0 if rem == 0 else (1 << 64) - rem


def _draw_bounded_scalar(state: int, m: int) -> tuple[int, int]:
    zone = _zone(m)
    while True:
        state = (state + GOLDEN) & MASK64
        u = _fmix64(state)
        if zone == 0 or u < zone:
            return state, u % m


def _draw_bounded_vec(states: np.ndarray, m: int) -> np.ndarray:
    """Advance every lane at least once; redraw only rejected lanes."""
    zone = _zone(m)
    states += np.uint64(GOLDEN)
    u = _fmix64_vec(states)
    if zone != 0:
        bad = u >= np.uint64(zone)
        while bad.any():
            states[bad] += np.uint64(GOLDEN)
            u[bad] = _fmix64_vec(states[bad])
            bad[bad] = u[bad] >= np.uint64(zone)
    return u % np.uint64(m)


def run_trials(n: int, d: int, c: int, s: int, seed: int,
               t0: int, t1: int, y_out: np.ndarray, z_out: np.ndarray) -> None:
    """Fill y_out[t] (nodes hitting a hidden chunk) and z_out[t] (distinct
    chunks collected) for trials t in [t0, t1)."""
    seed &= MASK64
    perm = np.tile(np.arange(n, dtype=np.int64), (c, 1))
    rows = np.arange(c)
    hidden_stamp = np.full(n, -1, dtype=np.int64)
    union_stamp = np.full(n, -1, dtype=np.int64)
    perm1 = list(range(n))
    samples = np.empty((c, s), dtype=np.int64)
    idxrec = np.empty((c, s), dtype=np.int64)
    for t in range(t0, t1):
        tkey = _fmix64(seed + GOLDEN * (t + 1))
        # hidden chunks: lane 0, scalar partial Fisher-Yates with undo
        state = _fmix64((tkey + GOLDEN) & MASK64)
        undo = []
        for j in range(d):
            state, r = _draw_bounded_scalar(state, n - j)
            idx = j + r
            perm1[j], perm1[idx] = perm1[idx], perm1[j]
            hidden_stamp[perm1[j]] = t
            undo.append(idx)
        for j in range(d - 1, -1, -1):
            idx = undo[j]
            perm1[j], perm1[idx] = perm1[idx], perm1[j]
        # light nodes: lanes 1..c, vectorized across nodes
        lanes = np.arange(2, c + 2, dtype=np.uint64)
        states = _fmix64_vec(np.uint64(tkey) + np.uint64(GOLDEN) * lanes)
        for j in range(s):
            r = _draw_bounded_vec(states, n - j).astype(np.int64)
            idx = j + r
            vj = perm[rows, j]    # advanced indexing yields copies
            vi = perm[rows, idx]
            perm[rows, j] = vi
            perm[rows, idx] = vj  # lanes with idx == j keep vi == vj
            samples[:, j] = vi
            idxrec[:, j] = idx
        for j in range(s - 1, -1, -1):
            idx = idxrec[:, j]
            vj = perm[rows, j]
            vi = perm[rows, idx]
            perm[rows, j] = vi
            perm[rows, idx] = vj
        y_out[t] = (hidden_stamp[samples] == t).any(axis=1).sum() if s else 0
        union_stamp[samples.reshape(-1)] = t
        z_out[t] = (union_stamp == t).sum()
