"""
Generalized and basic Reed-Solomon codes over explicit locator sets.

A code is described by its ordered locators (distinct nonzero evaluation
points) and its parity count r.  The parity-check view is V_r(locators)
times a diagonal of column multipliers; the evaluation view scales the
message polynomial's evaluations by generator multipliers.  Choosing the
parity multipliers as inverse locator-difference products makes every
generator multiplier 1; that choice ("basic" RS) is the default and the
only one the block circulant construction uses.

Erasures are represented by None.  Decoding interpolates the message
polynomial from the lowest-indexed unerased coordinates and fills only
the erased positions, so an unerased symbol is never modified.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import reduce
from typing import Optional, Sequence

from .field import Field
from .matpoly import Matrix, interpolate, poly_degree, poly_eval_one, vandermonde

ERASURE = None


class NotACodewordError(ValueError):
    """Input fails the parity checks of the code."""


def n_erasures(values: Sequence[Optional[int]]) -> int:
    return sum(1 for v in values if v is None)


def erasure_positions(values: Sequence[Optional[int]]) -> list[int]:
    return [i for i, v in enumerate(values) if v is None]


def brs_multipliers(f: Field, locators: Sequence[int]) -> list[int]:
    """Parity multipliers that make all generator multipliers equal 1.

    beta_i = inverse of prod_{j != i} (alpha_i - alpha_j); the empty
    product (single locator) gives 1.
    """
    out = []
    for i, ai in enumerate(locators):
        prod = reduce(f.mul, (f.sub(ai, aj) for j, aj in enumerate(locators) if j != i), 1)
        if prod == 0:
            raise ValueError("locators must be distinct")
        out.append(f.inv(prod))
    return out


@dataclass(frozen=True)
class GrsSpec:
    """An [n0, n0-r, r+1] GRS code given by locators and multipliers."""

    field: Field
    locators: tuple[int, ...]
    r: int
    pc_multipliers: tuple[int, ...] = dc_field(default=())

    def __post_init__(self):
        locs = tuple(self.field.check_element(a) for a in self.locators)
        if len(set(locs)) != len(locs):
            raise ValueError("locators must be distinct")
        if any(a == 0 for a in locs):
            raise ValueError("locators must be nonzero")
        if not 0 <= self.r <= len(locs):
            raise ValueError("parity count out of range")
        object.__setattr__(self, "locators", locs)
        if not self.pc_multipliers:
            object.__setattr__(self, "pc_multipliers",
                               tuple(brs_multipliers(self.field, locs)))
        elif any(b == 0 for b in self.pc_multipliers):
            raise ValueError("parity multipliers must be nonzero")

    @property
    def n0(self) -> int:
        return len(self.locators)

    @property
    def k0(self) -> int:
        return self.n0 - self.r

    @property
    def d0(self) -> int:
        return self.r + 1

    def generator_multipliers(self) -> list[int]:
        """Per-position evaluation scalings implied by the parity multipliers."""
        f = self.field
        out = []
        for i, ai in enumerate(self.locators):
            prod = reduce(f.mul,
                          (f.sub(ai, aj) for j, aj in enumerate(self.locators) if j != i),
                          1)
            out.append(f.inv(f.mul(self.pc_multipliers[i], prod)))
        return out

    def is_brs(self) -> bool:
        return all(b == 1 for b in self.generator_multipliers())


def brs_spec(f: Field, locators: Sequence[int], r: int) -> GrsSpec:
    return GrsSpec(f, tuple(locators), r)


def pc_matrix(spec: GrsSpec) -> Matrix:
    """r x n0 parity-check matrix: Vandermonde columns scaled per position."""
    v = vandermonde(spec.field, spec.r, spec.locators)
    return v.scale_cols(spec.pc_multipliers)


def encode_eval(spec: GrsSpec, coeffs: Sequence[int]) -> list[int]:
    """Codeword of a message polynomial (degree <= k0-1)."""
    if poly_degree(coeffs) > spec.k0 - 1:
        raise ValueError(f"message degree {poly_degree(coeffs)} too high for k0={spec.k0}")
    f = spec.field
    gm = spec.generator_multipliers()
    return [f.mul(g, poly_eval_one(f, coeffs, a)) for g, a in zip(gm, spec.locators)]


def erasure_fill_points(f: Field, locators: Sequence[int], k: int,
                        values: Sequence[Optional[int]]) -> list[Optional[int]]:
    """Core erasure decoder for evaluation words with unit scalings.

    values[i] is the evaluation of some polynomial of degree < k at
    locators[i], or None.  If at most len - k entries are erased, the
    polynomial is interpolated from the k lowest-indexed unerased entries
    and only the erased slots are filled; otherwise the word is returned
    unchanged (as a copy).
    """
    out = list(values)
    missing = erasure_positions(values)
    if not missing or len(missing) > len(values) - k:
        return out
    known = [(locators[i], values[i]) for i in range(len(values)) if values[i] is not None]
    coeffs = interpolate(f, known[:k])
    for i in missing:
        out[i] = poly_eval_one(f, coeffs, locators[i])
    return out


def erasure_decode(spec: GrsSpec, values: Sequence[Optional[int]]) -> list[Optional[int]]:
    """Recover a codeword from at most r erasures; more leaves it untouched."""
    if len(values) != spec.n0:
        raise ValueError(f"word length {len(values)} != {spec.n0}")
    gm = spec.generator_multipliers()
    f = spec.field
    if all(g == 1 for g in gm):
        return erasure_fill_points(f, spec.locators, spec.k0, values)
    unscaled = [None if v is None else f.mul(v, f.inv(g)) for v, g in zip(values, gm)]
    filled = erasure_fill_points(f, spec.locators, spec.k0, unscaled)
    return [values[i] if values[i] is not None
            else (None if filled[i] is None else f.mul(filled[i], gm[i]))
            for i in range(len(values))]


def to_poly(spec: GrsSpec, codeword: Sequence[int]) -> list[int]:
    """Inverse of the evaluation map; validates membership in the code."""
    if len(codeword) != spec.n0 or any(v is None for v in codeword):
        raise NotACodewordError("expected a complete word of code length")
    f = spec.field
    gm = spec.generator_multipliers()
    unscaled = [f.mul(v, f.inv(g)) for v, g in zip(codeword, gm)]
    pts = list(zip(spec.locators, unscaled))
    coeffs = interpolate(f, pts[:spec.k0])
    for a, y in pts[spec.k0:]:
        if poly_eval_one(f, coeffs, a) != y:
            raise NotACodewordError("word fails the parity checks")
    return coeffs


def eval_generator_matrix(spec: GrsSpec) -> Matrix:
    """k0 x n0 generator whose rows are scaled evaluations of 1, X, X^2, ...

    Row u equals encode_eval of the monomial X^u; message coefficient
    vectors times this matrix reproduce encode_eval.
    """
    v = vandermonde(spec.field, spec.k0, spec.locators)
    return v.scale_cols(spec.generator_multipliers())
