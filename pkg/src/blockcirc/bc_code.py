"""
Block circulant codes built from basic Reed-Solomon local codes.

Construction outline, for overlap factor lam and mu = lam*nu local codes:

1. Pick lam*(rho+omega) distinct nonzero locators and split them into
   2*lam ordered blocks following the topology segments: odd blocks are
   the omega-wide information runs, even blocks the rho-wide parity runs.
2. For each residue t in [1, lam] assemble the rho x (lam*omega + rho)
   local parity-check matrix W_t out of Vandermonde blocks on the locator
   blocks, scaled column-wise so that W_t is the parity-check matrix of a
   [lam*omega + rho, lam*omega, rho+1] basic RS code over its locators.
3. The global parity-check matrix has one block row per local code; block
   row i places W_t (t = ((i-1) mod lam) + 1) on the column blocks of
   support i, wrapping cyclically on the last nu-th of the rows.

Dimension is mu*omega because the parity column blocks meet each block
row in an invertible rho x rho Vandermonde product, making the parity
submatrix block diagonal and invertible.  Systematic encoding solves for
each parity run from the information runs of its own local code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import topology as topo
from .field import Field, field_from_json, is_characteristic_two
from .matpoly import Matrix, SingularMatrixError, min_row_space_weight
from .grs import GrsSpec, brs_spec, pc_matrix

DEFAULT_ENUM_BUDGET = 1 << 20


class ConstructionError(ValueError):
    """Parameters or locators that do not yield a valid code."""


def default_locators(field: Field, count: int) -> tuple[int, ...]:
    """Consecutive powers 1, g, g^2, ... of the field's fixed generator."""
    if count > field.q - 1:
        raise ConstructionError(
            f"need {count} distinct nonzero locators but field has {field.q - 1}")
    g = field.generator()
    out = []
    x = 1
    for _ in range(count):
        out.append(x)
        x = field.mul(x, g)
    return tuple(out)


def partition_locators(params: topo.TopologyParams, locators: Sequence[int]) \
        -> list[tuple[int, ...]]:
    """Split locators into 2*lam ordered blocks, indexed 1..2*lam.

    Odd block ell holds the locators at the information run of local code
    (ell+1)/2; even block ell those at the parity run of code ell/2.
    Returns a list whose slot 0 is unused.
    """
    if len(locators) != params.period:
        raise ConstructionError(
            f"expected {params.period} locators, got {len(locators)}")
    if len(set(locators)) != len(locators) or 0 in locators:
        raise ConstructionError("locators must be distinct and nonzero")
    blocks: list[tuple[int, ...]] = [()]
    for ell in range(1, 2 * params.lam + 1):
        if ell % 2 == 1:
            idxs = topo.segment(params, (ell + 1) // 2, 1)
        else:
            idxs = topo.segment(params, ell // 2, 0)
        blocks.append(tuple(locators[j] for j in idxs))
    return blocks


def local_block_columns(t: int, lam: int) -> list[int]:
    """Locator-block indices of W_t's column blocks, in matrix order.

    First the code's own information block (2t-1), then its parity block
    (2t), then the remaining odd blocks clockwise, wrapping modulo 2*lam.
    """
    wrap = lambda x: ((x - 1) % (2 * lam)) + 1
    cols = [wrap(2 * t - 1), 2 * t]
    cols += [wrap(2 * t + 1 + 2 * u) for u in range(lam - 1)]
    return cols


def build_local_codes(params: topo.TopologyParams, field: Field,
                      blocks: list[tuple[int, ...]]) \
        -> tuple[list[GrsSpec], list[Matrix]]:
    """The lam distinct local codes and their parity-check matrices W_t.

    W_t is the BRS parity-check matrix over the concatenation of its
    locator blocks, so by construction it annihilates evaluations of
    every polynomial of degree < lam*omega on those locators.
    """
    specs = []
    mats = []
    for t in range(1, params.lam + 1):
        seq: list[int] = []
        for j in local_block_columns(t, params.lam):
            seq.extend(blocks[j])
        spec = brs_spec(field, seq, params.rho)
        specs.append(spec)
        mats.append(pc_matrix(spec))
    return specs, mats


def _row_block_columns(i: int, mu: int, lam: int) -> list[int]:
    """Column-block indices (1..2*mu) receiving W_t in block row i."""
    wrap = lambda x: ((x - 1) % (2 * mu)) + 1
    cols = [wrap(2 * i - 1), 2 * i]
    cols += [wrap(2 * i + 1 + 2 * u) for u in range(lam - 1)]
    return cols


def _col_block_span(c: int, rho: int, omega: int) -> tuple[int, int]:
    """Global column range of column block c (odd blocks omega wide)."""
    if c % 2 == 1:
        start = ((c + 1) // 2 - 1) * (rho + omega)
        return start, start + omega
    start = (c // 2 - 1) * (rho + omega) + omega
    return start, start + rho


def build_pc_matrix(params: topo.TopologyParams, field: Field,
                    w_mats: Sequence[Matrix]) -> Matrix:
    """Assemble the mu*rho x n parity-check matrix from the W_t blocks."""
    h = Matrix.zeros(field, params.mu * params.rho, params.n)
    for i in range(1, params.mu + 1):
        t = ((i - 1) % params.lam) + 1
        w = w_mats[t - 1]
        r0 = (i - 1) * params.rho
        off = 0
        for c in _row_block_columns(i, params.mu, params.lam):
            lo, hi = _col_block_span(c, params.rho, params.omega)
            width = hi - lo
            h.data[r0:r0 + params.rho, lo:hi] = w.data[:, off:off + width]
            off += width
    return h


class BcCode:
    """A fully built block circulant code instance."""

    def __init__(self, params: topo.TopologyParams, field: Field,
                 locators: Optional[Sequence[int]] = None):
        if field.q <= params.period:
            raise ConstructionError(
                f"field order {field.q} too small; need q > {params.period}")
        self.params = params
        self.field = field
        self.locators = (tuple(locators) if locators is not None
                         else default_locators(field, params.period))
        self.sets = topo.build_sets(params)
        self.locator_blocks = partition_locators(params, self.locators)
        self.local_specs, self.local_pc = build_local_codes(
            params, field, self.locator_blocks)
        self.pc = build_pc_matrix(params, field, self.local_pc)
        self._parity_solvers = self._solve_parity_blocks()
        if self.pc.rank() != params.mu * params.rho:
            raise ConstructionError(
                "parity-check matrix is rank deficient; choose other locators")

    # -- geometry -----------------------------------------------------------
    @property
    def n(self) -> int:
        return self.params.n

    @property
    def k(self) -> int:
        return self.params.k

    def locator_of(self, pos: int) -> int:
        return self.locators[topo.locator_index(self.params, pos)]

    def local_code_index(self, i: int) -> int:
        """Which of the lam distinct local codes sits on support i."""
        return ((i - 1) % self.params.lam) + 1

    def local_spec(self, i: int) -> GrsSpec:
        return self.local_specs[self.local_code_index(i) - 1]

    # -- systematic encoding --------------------------------------------------
    def _solve_parity_blocks(self):
        """Per local code i: matrix taking its info symbols to its parities.

        Block row i of the parity-check matrix reads W_even * parity +
        W_odd * info = 0 with W_even an invertible rho x rho block, so
        parity = -(W_even^-1 W_odd) * info.
        """
        p = self.params
        f = self.field
        solvers = []
        for i in range(1, p.mu + 1):
            t = self.local_code_index(i)
            w = self.local_pc[t - 1]
            w_even = Matrix(f, w.data[:, p.omega:p.omega + p.rho], check=False)
            w_odd = Matrix(f, np.concatenate(
                [w.data[:, :p.omega], w.data[:, p.omega + p.rho:]], axis=1),
                check=False)
            try:
                s = w_even.inverse().matmul(w_odd)
            except SingularMatrixError as exc:
                raise ConstructionError(f"parity block of local code {i} "
                                        f"is singular: {exc}") from exc
            solvers.append(Matrix(f, f.vec_neg(s.data), check=False))
        return solvers

    @cached_property
    def info_positions(self) -> list[int]:
        return topo.information_positions(self.params)

    @cached_property
    def _info_index(self) -> dict[int, int]:
        return {pos: t for t, pos in enumerate(self.info_positions)}

    @cached_property
    def generator(self) -> Matrix:
        """k x n systematic generator; identity on information positions."""
        p = self.params
        g = Matrix.zeros(self.field, p.k, p.n)
        for t, pos in enumerate(self.info_positions):
            g.data[t, pos] = 1
        for i in range(1, p.mu + 1):
            info_cols = []
            for j in range(1, p.lam + 1):
                info_cols.extend(self.sets.segment(i, j))
            msg_rows = [self._info_index[pos] for pos in info_cols]
            par_cols = list(self.sets.segment(i, 0))
            g.data[np.ix_(msg_rows, par_cols)] = self._parity_solvers[i - 1].data.T
        return g

    def encode(self, message: Sequence[int]) -> list[int]:
        if len(message) != self.k:
            raise ValueError(f"message length {len(message)} != k = {self.k}")
        row = Matrix(self.field, [list(message)])
        return [int(v) for v in row.matmul(self.generator).data[0]]

    def is_codeword(self, word: Sequence[int]) -> bool:
        col = Matrix(self.field, [[v] for v in word])
        return self.pc.matmul(col).is_zero()

    def local_codeword(self, word: Sequence[int], i: int) -> list[int]:
        return [word[pos] for pos in self.sets.support(i)]

    # -- distance ---------------------------------------------------------------
    def min_distance_analytic(self) -> Optional[int]:
        p = self.params
        if p.lam == 2:
            return 2 * p.rho + 1
        if is_characteristic_two(self.field) and (p.nu & (p.nu - 1)) == 0:
            return p.lam * p.rho + 1
        return None

    def brute_force_min_distance(self, budget: int = DEFAULT_ENUM_BUDGET) -> int:
        return min_row_space_weight(self.generator, budget=budget)

    def shorten(self, z: int) -> "ShortenedBcCode":
        return ShortenedBcCode(self, z)

    # -- serialization --------------------------------------------------------
    def to_json(self) -> dict:
        p = self.params
        return {"mu": p.mu, "lambda": p.lam, "omega": p.omega, "rho": p.rho,
                "field": self.field.to_json(), "locators": list(self.locators)}

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh)
            fh.write("\n")

    @classmethod
    def from_json(cls, obj: dict) -> "BcCode":
        params = topo.TopologyParams(obj["mu"], obj["lambda"], obj["omega"], obj["rho"])
        f = field_from_json(obj["field"])
        return cls(params, f, obj.get("locators"))

    @classmethod
    def load(cls, path) -> "BcCode":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def __repr__(self):
        p = self.params
        return f"BcCode[{p.mu},{p.lam},{p.omega},{p.rho}] over {self.field}"


@dataclass(frozen=True)
class ShortenedBcCode:
    """Message space of the parent with the last z info symbols pinned to 0.

    Reported parameters keep the parent block length by default (the
    pinned symbols stay in the codeword as structural zeros); pass
    convention="conventional" for the [n-z, k-z] view that drops them.
    """

    parent: BcCode
    z: int

    def __post_init__(self):
        if not 0 <= self.z < self.parent.k:
            raise ValueError("can only pin fewer symbols than the dimension")

    @property
    def k(self) -> int:
        return self.parent.k - self.z

    def params_report(self, convention: str = "paper") -> tuple[int, int, Optional[int]]:
        d = self.parent.min_distance_analytic()
        if convention == "paper":
            return (self.parent.n, self.k, d)
        if convention == "conventional":
            return (self.parent.n - self.z, self.k, d)
        raise ValueError(f"unknown convention {convention!r}")

    def encode(self, message: Sequence[int]) -> list[int]:
        if len(message) != self.k:
            raise ValueError(f"message length {len(message)} != k = {self.k}")
        return self.parent.encode(list(message) + [0] * self.z)


def build(mu: int, lam: int, omega: int, rho: int, field: Field,
          locators: Optional[Sequence[int]] = None) -> BcCode:
    return BcCode(topo.TopologyParams(mu, lam, omega, rho), field, locators)
