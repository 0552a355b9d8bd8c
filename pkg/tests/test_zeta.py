import math
from fractions import Fraction

import numpy as np
import pytest

from oracles import poly_from_roots_product, sympy_charpoly
from qips import _scalar
from qips.errors import DomainError, ReconstructionError, TheoremViolation
from qips.graph_markov import ArcSet, Graph, MarkovChain, random_chain
from qips.pipeline import combined_reciprocal, dk_chains, quiet_quantize
from qips.polynomial import Polynomial
from qips.quantizer import quantize, symmetrize
from qips.zeta import (
    charpoly,
    compare_p_s,
    corollary4_spectrum,
    multiset_distance,
    rationalize_poly,
    theorem2_rhs,
    verify_theorem2,
    zeta_function,
    zeta_reciprocal,
)

F = Fraction


def single_vertex_chain():
    g = Graph(1, ())
    return MarkovChain(g, ArcSet.of(g), np.array([F(1)], dtype=object))


class TestCharpoly:
    def test_block_one(self):
        p = F(2, 7)
        P1 = np.array([[1, 1 - p], [0, p]], dtype=object)
        assert charpoly(P1) == Polynomial([-1, 1]) * Polynomial([-p, 1])

    def test_identity(self):
        assert charpoly(_scalar.eye(2, True)) == Polynomial([1, -2, 1])

    def test_random_rational_vs_cofactor(self):
        rng = np.random.default_rng(4)
        for _ in range(5):
            A = np.array(
                [[F(int(rng.integers(-9, 10)), int(rng.integers(1, 8))) for _ in range(3)] for _ in range(3)],
                dtype=object,
            )
            assert list(charpoly(A).coeffs) == sympy_charpoly(A)

    def test_rational_entries_vs_sympy(self):
        rng = np.random.default_rng(5)
        A = np.array(
            [[F(int(rng.integers(-9, 10)), int(rng.integers(1, 12))) if rng.uniform() < 0.6 else F(0)
              for _ in range(6)] for _ in range(6)],
            dtype=object,
        )
        assert list(charpoly(A).coeffs) == sympy_charpoly(A)

    def test_exact_coin_dim_64_matches_float(self):
        coin = quantize(dk_chains(4, F(1, 2), F(0), _scalar.EXACT)[1])
        assert coin.exact and coin.dim == 64
        exact = charpoly(coin.U)
        assert exact.to_float().max_gap(charpoly(_scalar.float_array(coin.U))) <= 1e-9 * exact.max_abs()

    def test_float_accuracy_dim_24(self):
        rng = np.random.default_rng(9)
        A = np.array([[F(int(rng.integers(-3, 4)), 4) for _ in range(24)] for _ in range(24)], dtype=object)
        exact = charpoly(A)
        approx = charpoly(_scalar.float_array(A))
        scale = max(1.0, exact.max_abs())
        assert approx.max_gap(exact) / scale <= 1e-9

    def test_dimension_cap(self, monkeypatch):
        import qips.zeta as z

        monkeypatch.setattr(z, "MAX_DIM", 3)
        with pytest.raises(DomainError):
            charpoly(np.eye(4))

    def test_rejects_non_square(self):
        with pytest.raises(DomainError):
            charpoly(np.ones((2, 3)))


class TestZetaReciprocal:
    def test_case_i_combined(self):
        chains = dk_chains(2, F(1, 2), 0, _scalar.EXACT)
        recip = combined_reciprocal([quantize(c) for c in chains.values()])
        # (1 - u^2)(1 - u^6)
        assert recip == Polynomial([1, 0, -1, 0, 0, 0, -1, 0, 1])

    def test_identity(self):
        for k in (1, 3, 5):
            assert zeta_reciprocal(_scalar.eye(k, True)) == Polynomial([1, -1]) ** k

    @pytest.mark.parametrize("p,q", [(0.3, 0.7), (0.1, 0.95), (0.5, 0.5)])
    def test_paper_charpoly_reversed(self, p, q):
        coins = [quantize(c) for c in dk_chains(2, p, q).values()]
        recip = combined_reciprocal(coins)
        chi = poly_from_roots_product([-1, 1], [-1, 1], [1, 1], [1, 1], [1, -2 * p, 1], [1, 2 * (p - q), 1])
        # reversing the degree-8 polynomial in x gives det(I - uU)
        assert np.max(np.abs(np.array(recip.coeffs) - chi[::-1])) <= 1e-9

    def test_zeta_function_value_at_zero(self):
        z = zeta_function(quantize(dk_chains(2, F(1, 2), 0, _scalar.EXACT)[1]))
        assert z(F(0)) == 1

    def test_corollary3_substitution(self):
        coin = quantize(dk_chains(3, 0.4, 0.9)[2])
        recip = zeta_reciprocal(coin)
        assert recip.reversed(coin.dim).max_gap(charpoly(coin)) == 0.0


class TestTheorem2:
    def test_rhs_block_one(self):
        p = F(1, 5)
        chi = Polynomial([-1, 1]) * Polynomial([-p, 1])
        rhs = theorem2_rhs(2, 1, chi).as_polynomial()
        expected = Polynomial([1, -1]) * Polynomial([1, 1]) * Polynomial([1, -2 * p, 1])
        assert rhs == expected
        assert rhs == zeta_reciprocal(quantize(dk_chains(2, p, F(1, 3), _scalar.EXACT)[1]))

    def test_rhs_single_vertex(self):
        assert theorem2_rhs(1, 0, Polynomial([-1, 1])).as_polynomial() == Polynomial([1, -1])
        assert verify_theorem2(single_vertex_chain()).max_coefficient_gap == 0

    def test_rhs_requires_monic(self):
        with pytest.raises(DomainError):
            theorem2_rhs(2, 1, Polynomial([1, 1, 2]))

    def test_grid_n2(self):
        vals = [0, 0.25, 0.5, 0.75, 1]
        for p in vals:
            for q in vals:
                for ch in dk_chains(2, p, q).values():
                    assert verify_theorem2(ch).max_coefficient_gap <= 1e-10

    def test_all_loops_exact(self):
        g = Graph.complete(3)
        arcs = ArcSet.of(g)
        prob = np.array([F(1) if u == v else F(0) for u, v in arcs.arcs], dtype=object)
        rep = verify_theorem2(MarkovChain(g, arcs, prob))
        assert rep.mode == "exact" and rep.max_coefficient_gap == 0
        assert rep.lhs == Polynomial([1, -1]) ** 3 * Polynomial([1, 1]) ** 3 * Polynomial([1, -1]) ** 3

    def test_n3_third_half(self):
        for ch in dk_chains(3, 1 / 3, 0.5).values():
            assert verify_theorem2(ch).max_coefficient_gap <= 1e-9

    def test_random_chain_k3(self):
        rng = np.random.default_rng(21)
        ch = random_chain(rng, 3, edge_prob=1.0)
        assert verify_theorem2(ch).max_coefficient_gap <= 1e-9

    def test_m_less_than_n_denominator_cancels(self):
        # path on 4 vertices: n = 4, m = 3
        g = Graph(4, ((0, 1), (1, 2), (2, 3)))
        arcs = ArcSet.of(g)
        prob = []
        for u, v in arcs.arcs:
            deg = sum(1 for a in arcs.arcs if a[0] == u)
            prob.append(F(1, deg))
        rep = verify_theorem2(MarkovChain(g, arcs, np.array(prob, dtype=object)))
        assert rep.max_coefficient_gap <= 1e-12


class TestCorollary4:
    def test_block_one_half(self):
        ch = dk_chains(2, 0.5, 0.2)[1]
        rep = corollary4_spectrum(symmetrize(ch), ch.n, ch.m)
        expected = [1, -1, complex(0.5, math.sqrt(3) / 2), complex(0.5, -math.sqrt(3) / 2)]
        assert rep.cancelled == 1
        assert multiset_distance(rep.eigenvalues, expected) <= 1e-12

    def test_single_vertex(self):
        rep = corollary4_spectrum(np.eye(1), 1, 0)
        assert rep.eigenvalues.tolist() == [1]

    def test_n3_component_two(self):
        ch = dk_chains(3, 1 / 3, 0.5)[2]
        rep = corollary4_spectrum(symmetrize(ch), ch.n, ch.m)
        assert (rep.minus_one_mult, rep.plus_one_mult) == (6, 2)
        assert len(rep.eigenvalues) == 16
        direct = np.linalg.eigvals(quantize(ch).U)
        assert multiset_distance(rep.eigenvalues, direct) <= 1e-9
        assert np.max(np.abs(np.abs(rep.eigenvalues) - 1)) <= 1e-9

    def test_cancellation_impossible(self):
        with pytest.raises(TheoremViolation):
            corollary4_spectrum(np.diag([0.5, 0.25]), 2, 1)

    def test_radius_check(self):
        with pytest.raises(TheoremViolation):
            corollary4_spectrum(np.diag([1.5]), 1, 0)


class TestRationalize:
    def test_small_rational(self):
        out = rationalize_poly(Polynomial([1.0, -0.5000000001]))
        assert out == Polynomial([1, F(-1, 2)])

    def test_case_i_floats(self):
        coins = [quantize(c) for c in dk_chains(2, 0.5, 0.0).values()]
        out = rationalize_poly(combined_reciprocal(coins))
        assert out == Polynomial([1, 0, -1, 0, 0, 0, -1, 0, 1])

    def test_random_matrix_float_vs_exact(self):
        rng = np.random.default_rng(2)
        A = np.array([[F(int(rng.integers(-5, 6)), int(rng.integers(1, 5))) for _ in range(4)] for _ in range(4)], dtype=object)
        assert rationalize_poly(charpoly(_scalar.float_array(A))) == charpoly(A)

    def test_irrational_fails(self):
        with pytest.raises(ReconstructionError):
            rationalize_poly(Polynomial([math.pi]), tol=1e-14, max_den=100)


class TestPvsS:
    @pytest.mark.parametrize("p,q", [(0.2, 0.9), (F(1, 3), F(1, 2)), (0.7, 0.1)])
    def test_n2_equal(self, p, q):
        from qips.pipeline import component_blocks, ModelSpec

        spec = ModelSpec.dk(2, p, q)
        blocks = component_blocks(spec)
        for c, ch in dk_chains(2, p, q).items():
            assert compare_p_s(blocks[c], symmetrize(ch)).equal(1e-12)

    def test_n3_remark(self):
        from qips.pipeline import component_blocks, ModelSpec

        spec = ModelSpec.dk(3, F(1, 3), F(1, 2), _scalar.EXACT)
        blocks = component_blocks(spec)
        chains = dk_chains(3, F(1, 3), F(1, 2), _scalar.EXACT)
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            c1 = compare_p_s(blocks[1], symmetrize(chains[1]))
            c2 = compare_p_s(blocks[2], symmetrize(chains[2]))
        assert c1.gap <= 1e-10
        assert c2.gap > 1e-6


def test_palindromic_reciprocal():
    for p, q in [(0.1, 0.2), (0.6, 0.35), (0.9, 0.9)]:
        for ch in dk_chains(3, p, q).values():
            r = np.array(zeta_reciprocal(quiet_quantize(ch)).coeffs)
            assert min(np.max(np.abs(r[::-1] - C * r)) for C in (1, -1)) <= 1e-9
