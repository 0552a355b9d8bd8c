import json
from fractions import Fraction

import numpy as np
import pytest

from oracles import dk_matrix, global_by_kron
from qips import _scalar
from qips.errors import DomainError, StructureError
from qips.ips_core import (
    Configuration,
    DKParams,
    LocalOperator,
    block_permutation,
    brute_force_global,
    build_dk_local,
    classify_local,
    direct_sum,
    empirical_step_distribution,
    global_from_local,
    local_from_json,
    sample_trajectory,
    split_blocks,
    total_variation,
)

HALF = Fraction(1, 2)


def dk(p, q, mode=_scalar.EXACT):
    return build_dk_local(DKParams(p, q), mode)


class TestConfiguration:
    def test_index_site_zero_most_significant(self):
        assert Configuration.from_string("011").index == 3
        assert Configuration.from_string("100").index == 4

    def test_roundtrip(self):
        for k in range(16):
            assert Configuration.from_index(k, 4).index == k

    @pytest.mark.parametrize("bits", [(0,), (0, 2), ()])
    def test_rejects_bad_bits(self, bits):
        with pytest.raises(DomainError):
            Configuration(bits)


class TestBuildDK:
    def test_half_zero_columns(self):
        # columns 00, 01, 10, 11 at (p, q) = (1/2, 0)
        a = dk(HALF, 0).entries
        assert list(a[:, 0]) == [1, 0, 0, 0]
        assert list(a[:, 1]) == [0, HALF, 0, HALF]
        assert list(a[:, 2]) == [HALF, 0, HALF, 0]
        assert list(a[:, 3]) == [0, 1, 0, 0]

    def test_zero_zero_forces_empty_left_site(self):
        a = dk(0, 0).entries
        assert list(a[:, 0]) == [1, 0, 0, 0]
        assert list(a[:, 1]) == [0, 1, 0, 0]
        assert list(a[:, 2]) == [1, 0, 0, 0]
        assert list(a[:, 3]) == [0, 1, 0, 0]

    @pytest.mark.parametrize("p,q", [(Fraction(1, 3), HALF), (Fraction(3, 10), Fraction(7, 10)), (1, 1)])
    def test_matches_oracle(self, p, q):
        assert np.array_equal(dk(p, q).entries, dk_matrix(p, q))

    def test_column_sums_one(self):
        a = dk(Fraction(2, 7), Fraction(5, 9)).entries
        assert all(sum(a[:, c]) == 1 for c in range(4))

    @pytest.mark.parametrize("p,q", [(-0.1, 0.5), (0.5, 1.01)])
    def test_out_of_range(self, p, q):
        with pytest.raises(DomainError):
            DKParams(p, q)


class TestClassify:
    def test_dk_half_zero(self):
        c = classify_local(dk(HALF, 0))
        assert (c.right_preserving, c.is_pca, c.is_qca) == (True, True, False)

    def test_identity(self):
        c = classify_local(LocalOperator(np.eye(4)))
        assert c.is_pca and c.is_qca

    def test_rule_90_is_qca(self):
        c = classify_local(dk(1, 0))
        assert c.is_pca and c.is_qca

    def test_dk_one_one_is_not_unitary(self):
        # columns 01 and 11 coincide, so the matrix is singular
        a = dk(1, 1).entries
        assert list(a[:, 1]) == list(a[:, 3])
        c = classify_local(dk(1, 1))
        assert c.is_pca and not c.is_qca

    def test_grid_all_pca(self):
        for p in np.linspace(0, 1, 11):
            for q in np.linspace(0, 1, 11):
                assert classify_local(dk(p, q, _scalar.FLOAT)).is_pca

    def test_complex_unitary(self):
        h = np.diag([1, 1j, 1, -1j])
        c = classify_local(LocalOperator(h))
        assert c.is_qca and not c.is_pca and c.right_preserving

    def test_not_right_preserving(self):
        a = np.eye(4)
        a[1, 0] = 0.5
        assert not classify_local(LocalOperator(a)).right_preserving


class TestGlobal:
    def test_n2_is_local(self):
        op = dk(Fraction(1, 3), HALF)
        assert np.array_equal(global_from_local(op, 2).entries, op.entries)

    def test_identity_n4(self):
        g = global_from_local(LocalOperator(np.eye(4)), 4)
        assert np.array_equal(g.entries, np.eye(16))

    def test_n3_against_kron_oracle(self):
        op = dk(1 / 3, 0.5, _scalar.FLOAT)
        oracle = global_by_kron(dk_matrix(1 / 3, 0.5), 3)
        assert np.max(np.abs(global_from_local(op, 3).entries - oracle)) < 1e-15

    @pytest.mark.parametrize("N", [2, 3, 4, 5])
    def test_against_weight_product(self, N):
        op = dk(Fraction(2, 5), Fraction(3, 4))
        assert np.array_equal(global_from_local(op, N).entries, brute_force_global(op, N))

    def test_weight_product_trusts_kron(self):
        op = dk(0.3, 0.8, _scalar.FLOAT)
        b = _scalar.float_array(brute_force_global(op, 4))
        assert np.max(np.abs(b - global_by_kron(dk_matrix(0.3, 0.8), 4))) < 1e-15

    def test_columns_stochastic(self):
        g = global_from_local(dk(0.37, 0.81, _scalar.FLOAT), 5).entries
        assert np.max(np.abs(g.sum(axis=0) - 1)) < 1e-13

    def test_last_bit_blocks(self):
        g = global_from_local(dk(0.37, 0.81, _scalar.FLOAT), 4).entries
        r = np.arange(16)
        assert np.all(g[(r[:, None] % 2) != (r[None, :] % 2)] == 0)

    def test_small_n(self):
        with pytest.raises(DomainError):
            global_from_local(dk(HALF, HALF), 1)

    def test_cap(self):
        with pytest.raises(DomainError):
            global_from_local(dk(HALF, HALF), 13)

    def test_rejects_non_preserving(self):
        a = np.eye(4)
        a[1, 0], a[0, 0] = 0.5, 0.5
        with pytest.raises(StructureError):
            global_from_local(LocalOperator(a), 3)


class TestSplit:
    def test_n2_paper_blocks(self):
        p, q = Fraction(1, 3), Fraction(1, 2)
        b0, b1 = split_blocks(global_from_local(dk(p, q), 2))
        assert b0.tolist() == [[1, 1 - p], [0, p]]
        assert b1.tolist() == [[1 - p, 1 - q], [p, q]]

    def test_identity(self):
        b0, b1 = split_blocks(global_from_local(LocalOperator(np.eye(4)), 3))
        assert np.array_equal(b0, np.eye(4)) and np.array_equal(b1, np.eye(4))

    def test_n3_stochastic_blocks(self):
        oracle = global_by_kron(dk_matrix(1 / 3, 0.5), 3)
        b0, b1 = split_blocks(global_from_local(dk(Fraction(1, 3), HALF), 3))
        for b in (b0, b1):
            assert all(sum(b[:, c]) == 1 for c in range(4))
        assert np.allclose(_scalar.float_array(b0), oracle[::2, ::2], atol=1e-15)

    def test_direct_sum_reassembles(self):
        g = global_from_local(dk(Fraction(1, 3), HALF), 3)
        perm = block_permutation(3)
        assert np.array_equal(direct_sum(*split_blocks(g)), g.entries[np.ix_(perm, perm)])

    def test_cross_block_error(self):
        from qips.ips_core import GlobalOperator

        a = np.eye(4)
        a[0, 1] = 0.1
        with pytest.raises(StructureError):
            split_blocks(GlobalOperator(a, 2))


class TestSampler:
    def test_rule_90_keeps_10(self):
        traj = sample_trajectory(dk(1, 0, _scalar.FLOAT), Configuration.from_string("10"), 25, seed=3)
        assert all(str(c) == "10" for c in traj)
        assert len(traj) == 26

    def test_q_zero_clears_full_state(self):
        for seed in range(20):
            traj = sample_trajectory(dk(0.6, 0, _scalar.FLOAT), Configuration.from_string("111"), 1, seed)
            assert str(traj[1]) == "001"

    def test_last_site_frozen(self):
        traj = sample_trajectory(dk(0.5, 0.5, _scalar.FLOAT), Configuration.from_string("10110"), 50, 1)
        assert {c.bits[-1] for c in traj} == {0}

    def test_deterministic(self):
        op = dk(0.4, 0.7, _scalar.FLOAT)
        init = Configuration.from_string("1101")
        assert sample_trajectory(op, init, 30, 11) == sample_trajectory(op, init, 30, 11)

    def test_frequencies_match_column(self):
        op = dk(0.5, 0.5, _scalar.FLOAT)
        init = Configuration.from_string("10")
        emp = empirical_step_distribution(op, init, 100_000, seed=2024)
        exact = _scalar.float_array(global_from_local(op, 2).entries)[:, init.index]
        assert total_variation(emp, exact) <= 0.01

    def test_rejects_non_pca(self):
        with pytest.raises(DomainError):
            sample_trajectory(LocalOperator(np.diag([1, 1j, 1, -1j])), Configuration.from_string("10"), 1, 0)

    def test_rejects_negative_steps(self):
        with pytest.raises(DomainError):
            sample_trajectory(dk(0.5, 0.5, _scalar.FLOAT), Configuration.from_string("10"), -1, 0)


class TestJson:
    def test_dk_model(self):
        op = local_from_json({"model": "dk", "p": "1/2", "q": 0}, _scalar.EXACT)
        assert np.array_equal(op.entries, dk(HALF, 0).entries)

    def test_local_entries(self, tmp_path):
        path = tmp_path / "id.json"
        path.write_text(json.dumps({"local": np.eye(4).ravel().tolist()}))
        assert np.array_equal(local_from_json(path).entries, np.eye(4))

    def test_positional_diagnostic(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"local": [1, 0,\n 0 0]}')
        with pytest.raises(DomainError, match=r"bad.json:2:"):
            local_from_json(path)

    def test_wrong_length(self):
        with pytest.raises(DomainError, match="16"):
            local_from_json({"local": [1, 0, 0]})

    def test_bad_entry_position(self):
        vals = ["1"] * 15 + ["x/y"]
        with pytest.raises(DomainError, match=r"\[15\]"):
            local_from_json({"local": vals})
