import random

import pytest

from blockcirc.field import build_field
from blockcirc.grs import encode_eval
from blockcirc.product_rs import (RECOVERED, STALLED, brute_force_min_distance,
                                  build, encode, grid_from_json, grid_to_json,
                                  line_ok, peel_decode)

GF41 = build_field("prime", 41)
GF5 = build_field("prime", 5)
GF4 = build_field("binary", 2)


def random_message(spec, rng):
    return [[rng.randrange(spec.field.q) for _ in range(spec.k0)]
            for _ in range(spec.k0)]


def erase_cells(grid, cells):
    return [[None if (i, j) in cells else v for j, v in enumerate(row)]
            for i, row in enumerate(grid)]


def test_headline_parameters():
    spec = build(38, 32, GF41)
    assert (spec.n, spec.k, spec.d) == (1444, 1024, 49)


def test_full_rate_distance_one():
    assert build(4, 4, GF5).d == 1


def test_field_too_small():
    with pytest.raises(ValueError):
        build(5, 2, GF5)


def test_encode_zero_and_constraints():
    spec = build(4, 2, GF5)
    zero = encode(spec, [[0, 0], [0, 0]])
    assert zero == [[0] * 4 for _ in range(4)]
    rng = random.Random(1)
    grid = encode(spec, random_message(spec, rng))
    for row in grid:
        assert line_ok(spec, row)
    for j in range(spec.n0):
        assert line_ok(spec, [grid[i][j] for i in range(spec.n0)])


def test_rank_one_message_is_outer_product():
    spec = build(5, 3, build_field("prime", 7))
    f = spec.field
    u = [2, 0, 5]
    v = [1, 3, 4]
    msg = [[f.mul(a, b) for b in v] for a in u]
    grid = encode(spec, msg)
    eu = encode_eval(spec.component, u)
    ev = encode_eval(spec.component, v)
    for i in range(5):
        for j in range(5):
            assert grid[i][j] == f.mul(eu[i], ev[j])


def test_peeling_recovers_punctured_minor():
    spec = build(4, 2, GF5)   # r = 2, minor side r+1 = 3
    rng = random.Random(2)
    grid = encode(spec, random_message(spec, rng))
    cells = {(i, j) for i in (0, 1, 2) for j in (1, 2, 3)} - {(1, 2)}
    out, status, residual = peel_decode(spec, erase_cells(grid, cells))
    assert status == RECOVERED and residual == 0 and out == grid


def test_peeling_stalls_on_full_minor():
    spec = build(4, 2, GF5)
    rng = random.Random(3)
    grid = encode(spec, random_message(spec, rng))
    cells = {(i, j) for i in (0, 1, 2) for j in (1, 2, 3)}
    out, status, residual = peel_decode(spec, erase_cells(grid, cells))
    assert status == STALLED and residual == 9
    for i in range(4):
        for j in range(4):
            if (i, j) in cells:
                assert out[i][j] is None
            else:
                assert out[i][j] == grid[i][j]


def test_peeling_noop_and_safety():
    spec = build(4, 2, GF5)
    rng = random.Random(4)
    grid = encode(spec, random_message(spec, rng))
    out, status, residual = peel_decode(spec, grid)
    assert status == RECOVERED and out == grid
    for _ in range(30):
        cells = {(rng.randrange(4), rng.randrange(4)) for _ in range(rng.randrange(1, 12))}
        out, _, _ = peel_decode(spec, erase_cells(grid, cells))
        for i in range(4):
            for j in range(4):
                if (i, j) not in cells:
                    assert out[i][j] == grid[i][j]
                else:
                    assert out[i][j] is None or out[i][j] == grid[i][j]


def _peel_columns_first(spec, grid):
    from blockcirc.grs import erasure_decode, n_erasures
    n0, r = spec.n0, spec.n0 - spec.k0
    work = [list(row) for row in grid]
    while True:
        progress = False
        for j in range(n0):
            col = [work[i][j] for i in range(n0)]
            if 0 < n_erasures(col) <= r:
                col = erasure_decode(spec.component, col)
                for i in range(n0):
                    work[i][j] = col[i]
                progress = True
        for i in range(n0):
            if 0 < n_erasures(work[i]) <= r:
                work[i] = erasure_decode(spec.component, work[i])
                progress = True
        if not progress:
            break
    return work


def test_peeling_order_independent_fixpoint():
    spec = build(4, 2, GF5)
    rng = random.Random(5)
    grid = encode(spec, random_message(spec, rng))
    for _ in range(30):
        cells = {(rng.randrange(4), rng.randrange(4)) for _ in range(rng.randrange(1, 14))}
        erased = erase_cells(grid, cells)
        a, _, _ = peel_decode(spec, erased)
        b = _peel_columns_first(spec, erased)
        assert a == b


@pytest.mark.parametrize("n0,k0,field", [(3, 2, GF4), (4, 2, GF5)])
def test_brute_force_distance(n0, k0, field):
    spec = build(n0, k0, field)
    assert brute_force_min_distance(spec) == (n0 - k0 + 1) ** 2


def test_grid_json_round_trip():
    grid = [[1, None], [None, 3]]
    assert grid_from_json(grid_to_json(grid)) == grid
