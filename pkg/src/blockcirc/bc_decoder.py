"""
Two-phase erasure decoder for block circulant codes with overlap factor 2.

Phase 1 repeatedly decodes every local code holding between 1 and rho
erasures; a round decodes all qualifying codes against the round-start
word and merges the recoveries, so rounds map directly onto parallel
tasks.

Phase 2 handles leftovers that straddle a pair of consecutive local
codes.  A pair qualifies when its union holds at most 2*rho erasures and
the overlaps flanking the pair are erasure free.  For such a pair the
difference of the two local message polynomials is recoverable: it
vanishes on the shared overlap, its values on the left overlap are plain
symbol differences one period apart, and that pins it down through one
local decode (it is identically zero when there are only two local
codes).  Adding/subtracting that difference converts symbols of one
local code into evaluations of the other's polynomial, which extends
each local word to a word of the length-2*(rho+omega) code over the
union of both locator sets; decoding there fills everything.

Erased local codes not covered by any qualifying pair are left erased and
the outcome is flagged uncorrectable.  Only erased positions are ever
written, so a symbol present in the input is never altered.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .bc_code import BcCode
from .grs import brs_spec, erasure_fill_points, n_erasures
from .matpoly import interpolate, poly_eval_one

Word = list  # length-n list of canonical ints, None marking an erasure

FULLY_RECOVERED = "fully-recovered"
UNCORRECTABLE = "uncorrectable-remainder"


class UnsupportedTopologyError(ValueError):
    """The pair decoder only covers overlap factor 2."""


@dataclass
class DecodeOutcome:
    word: Word
    status: str
    rounds: int
    pairs_used: list[tuple[int, int]] = dc_field(default_factory=list)


@dataclass
class PlanTask:
    kind: str                      # "local" or "pair"
    codes: tuple[int, ...]
    reads: tuple[int, ...]
    writes: tuple[int, ...]

    def to_json(self):
        return {"kind": self.kind, "codes": list(self.codes),
                "reads": list(self.reads), "writes": list(self.writes)}


def _require_lambda2(code: BcCode):
    if code.params.lam != 2:
        raise UnsupportedTopologyError(
            f"pair decoding requires overlap factor 2, got {code.params.lam}")


def _check_word(code: BcCode, word: Sequence[Optional[int]]) -> Word:
    if len(word) != code.n:
        raise ValueError(f"word length {len(word)} != n = {code.n}")
    return [None if v is None else code.field.check_element(v) for v in word]


def _support_erasures(code: BcCode, word: Word, i: int) -> int:
    return sum(1 for pos in code.sets.support(i) if word[pos] is None)


def _decode_local(code: BcCode, word: Word, i: int) -> dict[int, int]:
    """Erasure-decode local code i against word; returns recovered positions."""
    sup = code.sets.support(i)
    values = [word[pos] for pos in sup]
    locs = [code.locator_of(pos) for pos in sup]
    k0 = code.params.lam * code.params.omega
    filled = erasure_fill_points(code.field, locs, k0, values)
    return {pos: filled[t] for t, pos in enumerate(sup)
            if values[t] is None and filled[t] is not None}


def _phase1(code: BcCode, word: Word):
    """Iterate local decoding until no local code qualifies."""
    p = code.params
    rounds = []
    while True:
        j1 = [i for i in range(1, p.mu + 1)
              if 0 < _support_erasures(code, word, i) <= p.rho]
        if not j1:
            break
        tasks = []
        merged: dict[int, int] = {}
        for i in j1:
            rec = _decode_local(code, word, i)
            # overlapping codes may recover the same symbol; values agree,
            # but the plan credits each position to one task only
            fresh = tuple(sorted(set(rec) - set(merged)))
            for pos, val in rec.items():
                assert merged.get(pos, val) == val
                merged[pos] = val
            tasks.append(PlanTask("local", (i,), code.sets.support(i), fresh))
        for pos, val in merged.items():
            word[pos] = val
        rounds.append(tasks)
    return rounds


def phase1_local(code: BcCode, word: Sequence[Optional[int]]) -> tuple[Word, int]:
    """Run only the iterated local-decoding phase.

    Returns the partially recovered word and the number of rounds taken;
    symbols outside the qualifying local codes are untouched.
    """
    _require_lambda2(code)
    work = _check_word(code, word)
    rounds = _phase1(code, work)
    return work, len(rounds)


def compute_j2(code: BcCode, word: Sequence[Optional[int]]):
    """Qualifying pairs of consecutive local codes, and whether they cover
    every local code that still holds erasures."""
    _require_lambda2(code)
    p = code.params
    word = list(word)
    total = n_erasures(word)
    if total == 0:
        return [], True
    if p.mu == 2:
        pairs = [(1, 2)] if total <= 2 * p.rho else []
    else:
        nxt = lambda i: (i % p.mu) + 1
        prv = lambda i: ((i - 2) % p.mu) + 1
        pairs = []
        for i in range(1, p.mu + 1):
            i2 = nxt(i)
            union = set(code.sets.support(i)) | set(code.sets.support(i2))
            ne = sum(1 for pos in union if word[pos] is None)
            if not 0 < ne <= 2 * p.rho:
                continue
            left = set(code.sets.support(prv(i))) & set(code.sets.support(i))
            right = set(code.sets.support(i2)) & set(code.sets.support(nxt(i2)))
            if any(word[pos] is None for pos in left | right):
                continue
            pairs.append((i, i2))
    still = {i for i in range(1, p.mu + 1) if _support_erasures(code, word, i) > 0}
    covered = still <= {i for pr in pairs for i in pr}
    return pairs, covered


def aux_code_spec(code: BcCode):
    """The [2*(omega+rho), 2*omega, 2*rho+1] code over the union of two
    consecutive locator sets (the same for every pair because locators
    repeat with the period).  Pair decoding decodes in this code, with
    per-position locators standing in for the column permutation."""
    _require_lambda2(code)
    return brs_spec(code.field, code.locators, 2 * code.params.rho)


def _difference_poly(code: BcCode, word: Word, i1: int) -> list[int]:
    """Difference of the pair's message polynomials, as coefficients."""
    p = code.params
    f = code.field
    if p.mu == 2:
        return [0]
    sup = code.sets.support(i1)
    shat: list[Optional[int]] = []
    seg1 = set(code.sets.segment(i1, 1))
    seg0 = set(code.sets.segment(i1, 0))
    for pos in sup:
        if pos in seg1:
            other = (pos + p.period) % p.n
            assert word[pos] is not None and word[other] is not None, \
                "pair not certified by compute_j2"
            shat.append(f.sub(word[pos], word[other]))
        elif pos in seg0:
            shat.append(None)
        else:
            shat.append(0)
    locs = [code.locator_of(pos) for pos in sup]
    k0 = p.lam * p.omega
    filled = erasure_fill_points(f, locs, k0, shat)
    assert all(v is not None for v in filled)
    return interpolate(f, list(zip(locs, filled))[:k0])


def pair_decode(code: BcCode, word: Sequence[Optional[int]],
                pair: tuple[int, int]) -> Word:
    """Decode the union of a qualifying pair; fills only erased positions."""
    _require_lambda2(code)
    word = _check_word(code, word)
    updates = _pair_updates(code, word, pair)
    for pos, val in updates.items():
        word[pos] = val
    return word


def _pair_updates(code: BcCode, word: Word, pair: tuple[int, int]) -> dict[int, int]:
    p = code.params
    f = code.field
    i1, i2 = pair
    sup1, sup2 = code.sets.support(i1), code.sets.support(i2)
    if all(word[pos] is not None for pos in set(sup1) | set(sup2)):
        return {}
    diff = _difference_poly(code, word, i1)
    diff_at = lambda pos: poly_eval_one(f, diff, code.locator_of(pos))

    def extended(base_sup, extra, sign):
        positions = list(base_sup) + list(extra)
        values: list[Optional[int]] = [word[pos] for pos in base_sup]
        for pos in extra:
            v = word[pos]
            if v is None:
                values.append(None)
            else:
                values.append(f.add(v, diff_at(pos)) if sign > 0
                              else f.sub(v, diff_at(pos)))
        locs = [code.locator_of(pos) for pos in positions]
        filled = erasure_fill_points(f, locs, 2 * p.omega, values)
        assert all(v is not None for v in filled), \
            "pair certified by compute_j2 cannot exceed the joint distance"
        return dict(zip(positions, filled))

    # word 1 lives on support(i1) plus the second code's parity run,
    # shifted into the first polynomial by adding the difference there;
    # word 2 symmetrically subtracts it on the first code's parity run.
    u1 = extended(sup1, code.sets.segment(i2, 0), +1)
    u2 = extended(sup2, code.sets.segment(i1, 0), -1)
    updates = {}
    for pos in sup1:
        if word[pos] is None:
            updates[pos] = u1[pos]
    for pos in sup2:
        if word[pos] is None and pos not in updates:
            updates[pos] = u2[pos]
    return updates


def decode(code: BcCode, word: Sequence[Optional[int]]) -> DecodeOutcome:
    """Full two-phase decode.  Every returned symbol is either taken from
    the input or decoded; positions that cannot be pinned down stay None
    and flag the outcome as uncorrectable."""
    _require_lambda2(code)
    work = _check_word(code, word)
    round_tasks = _phase1(code, work)
    pairs, covered = compute_j2(code, work)
    for pr in pairs:
        for pos, val in _pair_updates(code, work, pr).items():
            work[pos] = val
    status = FULLY_RECOVERED if n_erasures(work) == 0 else UNCORRECTABLE
    return DecodeOutcome(word=work, status=status, rounds=len(round_tasks),
                         pairs_used=pairs)


def distributed_plan(code: BcCode, word: Sequence[Optional[int]]) -> list[list[PlanTask]]:
    """Round-indexed schedule equivalent to decode().

    Tasks inside a round read the round-start word and have pairwise
    disjoint write sets, so they may run in parallel; rounds are a hard
    sequential dependency.
    """
    _require_lambda2(code)
    work = _check_word(code, word)
    rounds = _phase1(code, work)
    pairs, _ = compute_j2(code, work)
    if pairs:
        tasks = []
        for pr in pairs:
            updates = _pair_updates(code, work, pr)
            reads = tuple(sorted(set(code.sets.support(pr[0]))
                                 | set(code.sets.support(pr[1]))
                                 | set(code.sets.segment(pr[1], 0))
                                 | set(code.sets.segment(pr[0], 0))))
            tasks.append(PlanTask("pair", pr, reads, tuple(sorted(updates))))
            for pos, val in updates.items():
                work[pos] = val
        rounds.append(tasks)
    return rounds


def execute_plan(code: BcCode, word: Sequence[Optional[int]],
                 plan: list[list[PlanTask]]) -> Word:
    """Re-run a plan round by round; used to check plan equivalence."""
    work = _check_word(code, word)
    for round_tasks in plan:
        staged: dict[int, int] = {}
        seen: set[int] = set()
        for task in round_tasks:
            if task.kind == "local":
                upd = _decode_local(code, work, task.codes[0])
            else:
                upd = _pair_updates(code, work, tuple(task.codes))
            upd = {pos: val for pos, val in upd.items() if pos in task.writes}
            assert not (seen & set(upd)), "write sets within a round must be disjoint"
            seen |= set(upd)
            staged.update(upd)
        for pos, val in staged.items():
            work[pos] = val
    return work


def plan_to_json(plan: list[list[PlanTask]]) -> dict:
    return {"rounds": [[t.to_json() for t in rnd] for rnd in plan]}
