from itertools import combinations

import numpy as np
import pytest

from blockcirc import build, build_field
from blockcirc.bc_code import (BcCode, ConstructionError, default_locators,
                               local_block_columns, partition_locators)
from blockcirc.grs import encode_eval
from blockcirc.matpoly import BudgetExceededError, Matrix
from blockcirc.topology import TopologyParams


def as_col(f, values):
    return Matrix(f, [[v] for v in values])


def test_default_locators_gf11(gf11):
    # powers of the generator 2
    assert default_locators(gf11, 8) == (1, 2, 4, 8, 5, 10, 9, 7)


def test_partition_blocks(example_code):
    blocks = example_code.locator_blocks
    assert blocks[1] == (1, 2)
    assert blocks[2] == (4, 8)
    assert blocks[3] == (5, 10)
    assert blocks[4] == (9, 7)


def test_partition_small():
    f = build_field("prime", 5)
    params = TopologyParams(2, 2, 1, 1)
    blocks = partition_locators(params, (1, 2, 4, 3))
    assert blocks[1:] == [(1,), (2,), (4,), (3,)]
    odd = [a for ell in (1, 3) for a in blocks[ell]]
    assert len(odd) == params.lam * params.omega


def test_local_block_columns():
    assert local_block_columns(1, 2) == [1, 2, 3]
    assert local_block_columns(2, 2) == [3, 4, 1]
    assert local_block_columns(2, 3) == [3, 4, 5, 1]
    assert local_block_columns(3, 3) == [5, 6, 1, 3]


def test_local_code_locator_sequences(example_code):
    # first local code evaluates on blocks 1,2,3; second on 3,4,1
    assert example_code.local_specs[0].locators == (1, 2, 4, 8, 5, 10)
    assert example_code.local_specs[1].locators == (5, 10, 9, 7, 1, 2)


def test_w_matrices_annihilate_brs(example_code):
    f = example_code.field
    for t, spec in enumerate(example_code.local_specs):
        cw = encode_eval(spec, [7, 3, 2, 9])
        assert example_code.local_pc[t].matmul(as_col(f, cw)).is_zero()


def test_w_matrix_mds_columns(example_code):
    # every rho columns of W_i are independent
    for w in example_code.local_pc:
        for cols in combinations(range(w.cols), 2):
            sub = Matrix(w.field, w.data[:, list(cols)])
            assert sub.rank() == 2


def test_h_block_structure(example_code):
    p = example_code.params
    h, w2 = example_code.pc, example_code.local_pc[1]
    # block row 2 carries the second local matrix on column blocks 3, 4, 5
    r = slice(p.rho, 2 * p.rho)
    np.testing.assert_array_equal(h.data[r, 4:6], w2.data[:, 0:2])
    np.testing.assert_array_equal(h.data[r, 6:8], w2.data[:, 2:4])
    np.testing.assert_array_equal(h.data[r, 8:10], w2.data[:, 4:6])
    assert not h.data[r, 0:4].any() and not h.data[r, 10:].any()


def test_h_wraps_for_two_local_codes():
    f = build_field("prime", 11)
    code = build(2, 2, 2, 2, f)
    w2 = code.local_pc[1]
    # second block row wraps: its last block lands on column block 1
    np.testing.assert_array_equal(code.pc.data[2:4, 0:2], w2.data[:, 4:6])


def test_h_row_support_matches_topology(example_code):
    p = example_code.params
    for i in range(1, p.mu + 1):
        rows = example_code.pc.data[(i - 1) * p.rho:i * p.rho]
        support = set(np.nonzero(rows)[1].tolist())
        assert support == set(example_code.sets.support(i))


def test_rank_and_orthogonality(example_code):
    p = example_code.params
    assert example_code.pc.rank() == p.mu * p.rho
    assert example_code.pc.matmul(example_code.generator.transpose()).is_zero()
    assert example_code.generator.rank() == p.k


def test_parity_solver_blocks_dense(example_code):
    # the non-identity generator blocks have no zero entries
    for s in example_code._parity_solvers:
        assert (s.data != 0).all()


def test_generator_row_weights(example_code):
    g = example_code.generator.data
    weights = np.count_nonzero(g, axis=1)
    assert weights[0] == 2 * example_code.params.rho + 1
    assert (weights == 2 * example_code.params.rho + 1).all()


def test_encode_systematic(example_code):
    assert example_code.encode([0] * 8) == [0] * 16
    msg = [3, 1, 4, 1, 5, 9, 2, 6]
    cw = example_code.encode(msg)
    assert example_code.is_codeword(cw)
    assert [cw[pos] for pos in example_code.info_positions] == msg
    unit = example_code.encode([1] + [0] * 7)
    assert sum(1 for v in unit if v != 0) == 2 * example_code.params.rho + 1
    with pytest.raises(ValueError):
        example_code.encode([1, 2, 3])


def test_local_codewords_in_local_codes(example_code):
    cw = example_code.encode([3, 1, 4, 1, 5, 9, 2, 6])
    f = example_code.field
    for i in range(1, 5):
        t = example_code.local_code_index(i)
        assert t == (1 if i % 2 == 1 else 2)
        local = example_code.local_codeword(cw, i)
        assert example_code.local_pc[t - 1].matmul(as_col(f, local)).is_zero()


def test_brute_force_min_distance_small():
    code = build(2, 2, 1, 1, build_field("prime", 5))
    assert code.brute_force_min_distance() == 3
    with pytest.raises(BudgetExceededError):
        code.brute_force_min_distance(budget=10)


def test_rate(example_code):
    p = example_code.params
    assert example_code.k / example_code.n == p.omega / (p.rho + p.omega)


def test_serialization_round_trip(example_code, tmp_path):
    path = tmp_path / "spec.json"
    example_code.save(path)
    loaded = BcCode.load(path)
    assert loaded.locators == example_code.locators
    assert loaded.pc == example_code.pc


def test_construction_errors():
    with pytest.raises(ConstructionError):
        build(4, 2, 2, 2, build_field("prime", 7))   # q <= lam*(rho+omega)
    f = build_field("prime", 11)
    with pytest.raises(ConstructionError):
        BcCode(TopologyParams(4, 2, 2, 2), f, locators=[1] * 8)


def test_shorten_reports_paper_convention():
    f = build_field("prime", 11)
    code = build(4, 2, 2, 2, f)
    short = code.shorten(2)
    assert short.params_report() == (16, 6, 5)
    assert short.params_report("conventional") == (14, 6, 5)
    assert code.shorten(0).params_report() == (16, 8, 5)
    cw = short.encode([1, 2, 3, 4, 5, 6])
    assert code.is_codeword(cw)
    assert cw == code.encode([1, 2, 3, 4, 5, 6, 0, 0])
    with pytest.raises(ValueError):
        code.shorten(8)


def test_shortened_headline_parameters():
    f = build_field("prime", 239)
    code = build(12, 2, 86, 32, f)
    assert (code.n, code.k) == (1416, 1032)
    assert code.min_distance_analytic() == 65
    assert code.shorten(8).params_report() == (1416, 1024, 65)


def test_min_distance_analytic_conditions(gf8):
    assert build(4, 2, 1, 1, build_field("prime", 5)).min_distance_analytic() == 3
    assert build(3, 3, 1, 1, gf8).min_distance_analytic() == 4      # nu = 1 = 2^0
    assert build(6, 3, 1, 1, gf8).min_distance_analytic() == 4      # nu = 2
    f13 = build_field("prime", 13)
    assert build(3, 3, 1, 1, f13).min_distance_analytic() is None   # odd characteristic
    f17 = build_field("prime", 17)
    assert build(9, 3, 1, 1, f17).min_distance_analytic() is None   # nu = 3
