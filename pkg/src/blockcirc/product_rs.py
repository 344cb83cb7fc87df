"""
Square product of a basic RS component code, with a peeling decoder.

An n0 x n0 grid is a codeword when every row and every column lies in the
[n0, k0, n0-k0+1] component code; the product has parameters
[n0^2, k0^2, (n0-k0+1)^2].  Erasure decoding peels: any line (row or
column) with at most n0-k0 erasures is decoded, and sweeps repeat until a
full pass makes no progress.  A fully erased (n0-k0+1) x (n0-k0+1) minor
is the classic stopping set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .field import Field
from .grs import (GrsSpec, NotACodewordError, brs_spec, erasure_decode,
                  eval_generator_matrix, n_erasures, to_poly)
from .matpoly import Matrix, min_row_space_weight
from .bc_code import default_locators

Grid = list  # n0 x n0 nested lists, None marking an erasure

RECOVERED = "recovered"
STALLED = "stalled"


@dataclass(frozen=True)
class ProductSpec:
    n0: int
    k0: int
    field: Field
    component: GrsSpec

    @property
    def n(self) -> int:
        return self.n0 ** 2

    @property
    def k(self) -> int:
        return self.k0 ** 2

    @property
    def d(self) -> int:
        return (self.n0 - self.k0 + 1) ** 2


def build(n0: int, k0: int, field: Field) -> ProductSpec:
    if not 1 <= k0 <= n0:
        raise ValueError("component dimension must satisfy 1 <= k0 <= n0")
    if field.q <= n0:
        raise ValueError(f"field order {field.q} too small; need q > {n0}")
    component = brs_spec(field, default_locators(field, n0), n0 - k0)
    return ProductSpec(n0, k0, field, component)


def _component_generator(spec: ProductSpec) -> Matrix:
    return eval_generator_matrix(spec.component)


def encode(spec: ProductSpec, message: Sequence[Sequence[int]]) -> Grid:
    """Encode a k0 x k0 coefficient grid: G^T M G with G the component
    generator, so rows and columns are component codewords."""
    m = Matrix(spec.field, message)
    if m.rows != spec.k0 or m.cols != spec.k0:
        raise ValueError(f"message grid must be {spec.k0} x {spec.k0}")
    g = _component_generator(spec)
    full = g.transpose().matmul(m).matmul(g)
    return [[int(v) for v in row] for row in full.data]


def line_ok(spec: ProductSpec, line: Sequence[Optional[int]]) -> bool:
    """Check one complete row/column against the component parity checks."""
    try:
        to_poly(spec.component, list(line))
        return True
    except NotACodewordError:
        return False


def peel_decode(spec: ProductSpec, grid: Grid):
    """Iterative row/column peeling.  Returns (grid, status, residual).

    Never modifies an unerased cell; stalls (with the partial fill) when a
    sweep over all rows then all columns recovers nothing.
    """
    n0, r = spec.n0, spec.n0 - spec.k0
    work = [list(row) for row in grid]
    if len(work) != n0 or any(len(row) != n0 for row in work):
        raise ValueError(f"grid must be {n0} x {n0}")
    while True:
        progress = False
        for i in range(n0):
            if 0 < n_erasures(work[i]) <= r:
                work[i] = erasure_decode(spec.component, work[i])
                progress = True
        for j in range(n0):
            col = [work[i][j] for i in range(n0)]
            if 0 < n_erasures(col) <= r:
                col = erasure_decode(spec.component, col)
                for i in range(n0):
                    work[i][j] = col[i]
                progress = True
        if not progress:
            break
    residual = sum(n_erasures(row) for row in work)
    return work, (RECOVERED if residual == 0 else STALLED), residual


def brute_force_min_distance(spec: ProductSpec, budget: int = 1 << 20) -> int:
    """Exhaustive minimum distance via the k0^2 x n0^2 Kronecker generator."""
    g = _component_generator(spec).data
    f = spec.field
    if f.kind == "prime":
        kron = np.kron(g, g) % f.q
    else:
        k0, n0 = g.shape
        kron = np.zeros((k0 * k0, n0 * n0), dtype=np.int64)
        for a in range(k0):
            for b in range(k0):
                kron[a * k0 + b] = f.vec_mul(np.repeat(g[a], n0), np.tile(g[b], n0))
    return min_row_space_weight(Matrix(f, kron, check=False), budget=budget)


def grid_to_json(grid: Grid) -> list[list[int]]:
    return [[-1 if v is None else int(v) for v in row] for row in grid]


def grid_from_json(rows: Sequence[Sequence[int]]) -> Grid:
    return [[None if v == -1 else int(v) for v in row] for row in rows]
