"""
Index combinatorics of the block circulant layout.

mu local codes sit on a ring of n = mu*(rho+omega) positions.  Local code
i (1-based) covers a support of lambda*omega + rho positions, split into
an ordered run of segments: its first information segment, its rho parity
positions, then the information segments it shares with the next
lambda - 1 codes clockwise.  Every information position belongs to
exactly lam codes (lam - 1 overlaps when lam == mu); every parity
position belongs to exactly one.

All segment arithmetic is modulo n.  Local code indices are 1-based
throughout, matching the block-row order of the parity-check matrix.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class TopologyParams:
    mu: int      # number of local codes
    lam: int     # overlap factor (>= 2)
    omega: int   # overlap width (>= 1)
    rho: int     # local parity count (>= 1)

    def __post_init__(self):
        if self.lam < 2:
            raise ValueError("overlap factor must be >= 2")
        if self.omega < 1 or self.rho < 1:
            raise ValueError("overlap width and parity count must be >= 1")
        if self.mu < self.lam or self.mu % self.lam != 0:
            raise ValueError("mu must be a positive multiple of lam")

    @property
    def nu(self) -> int:
        return self.mu // self.lam

    @property
    def n(self) -> int:
        return self.mu * (self.rho + self.omega)

    @property
    def k(self) -> int:
        return self.mu * self.omega

    @property
    def local_len(self) -> int:
        return self.lam * self.omega + self.rho

    @property
    def period(self) -> int:
        """Positions this far apart repeat the same locator."""
        return self.lam * (self.rho + self.omega)

    def rate(self) -> float:
        return self.omega / (self.rho + self.omega)


def segment(p: TopologyParams, i: int, j: int) -> tuple[int, ...]:
    """Positions of segment j of local code i (j = 0 is the parity run).

    For j in [1, lam] the segment is the omega-wide information run
    starting at (i+j-2)*(rho+omega); for j = 0 it is the rho parity
    positions ending at i*(rho+omega)-1.  Everything is mod n.
    """
    if not 1 <= i <= p.mu:
        raise ValueError(f"local code index {i} out of range")
    step = p.rho + p.omega
    if j == 0:
        start = i * p.omega + (i - 1) * p.rho
        return tuple((start + t) % p.n for t in range(p.rho))
    if 1 <= j <= p.lam:
        start = (i + j - 2) * step
        return tuple((start + t) % p.n for t in range(p.omega))
    raise ValueError(f"segment index {j} out of range")


def support(p: TopologyParams, i: int) -> tuple[int, ...]:
    """Ordered support of local code i: first info run, parities, then the
    remaining info runs clockwise.  Matches the column order of the
    local parity-check block."""
    out = list(segment(p, i, 1)) + list(segment(p, i, 0))
    for j in range(2, p.lam + 1):
        out.extend(segment(p, i, j))
    return tuple(out)


@dataclass(frozen=True)
class TopologySets:
    params: TopologyParams
    supports: tuple[tuple[int, ...], ...]            # index i-1
    segments: tuple[tuple[tuple[int, ...], ...], ...]  # [i-1][j]

    def support(self, i: int) -> tuple[int, ...]:
        return self.supports[i - 1]

    def segment(self, i: int, j: int) -> tuple[int, ...]:
        return self.segments[i - 1][j]


def build_sets(p: TopologyParams) -> TopologySets:
    sups = []
    segs = []
    for i in range(1, p.mu + 1):
        segs.append(tuple(segment(p, i, j) for j in range(p.lam + 1)))
        sups.append(support(p, i))
    sets = TopologySets(p, tuple(sups), tuple(segs))
    _validate(p, sets)
    return sets


def _validate(p: TopologyParams, sets: TopologySets):
    parity = set()
    counts = [0] * p.n
    for i in range(1, p.mu + 1):
        sup = sets.support(i)
        if len(sup) != p.local_len or len(set(sup)) != p.local_len:
            raise AssertionError("support size or disjointness violated")
        blocks = [sets.segment(i, j) for j in range(p.lam + 1)]
        if set(sup) != set().union(*map(set, blocks)):
            raise AssertionError("support must be the union of its segments")
        parity.update(blocks[0])
        for pos in sup:
            counts[pos] += 1
    for pos in range(p.n):
        want = 1 if pos in parity else p.lam
        if counts[pos] != want:
            raise AssertionError(f"position {pos} covered {counts[pos]} times, wanted {want}")


def locator_index(p: TopologyParams, pos: int) -> int:
    """Index into the locator list shared by positions one period apart."""
    if not 0 <= pos < p.n:
        raise ValueError(f"position {pos} out of range")
    return pos % p.period


def overlap_partners(p: TopologyParams, i: int) -> set[int]:
    """Local codes whose supports intersect the support of code i."""
    sets = build_sets(p)
    mine = set(sets.support(i))
    return {j for j in range(1, p.mu + 1)
            if j != i and mine & set(sets.support(j))}


def information_positions(p: TopologyParams) -> list[int]:
    """All information positions in increasing order (message layout)."""
    step = p.rho + p.omega
    return [(a * step + t) for a in range(p.mu) for t in range(p.omega)]


def parity_positions(p: TopologyParams) -> list[int]:
    step = p.rho + p.omega
    return [(a * step + p.omega + t) for a in range(p.mu) for t in range(p.rho)]
