import math
from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from qips.abszeta import CyclotomicForm, detect_automorphy, theorem5_expand, to_cyclotomic_form
from qips.graph_markov import random_chain
from qips.ips_core import DKParams, build_dk_local, global_from_local, split_blocks
from qips.multiple_zeta import log_multiple_gamma, multiple_hurwitz_zeta
from qips.pipeline import dk_chains, quiet_quantize
from qips.quantizer import symmetrize, unitarity_defect
from qips.zeta import corollary4_spectrum, multiset_distance, verify_theorem2, zeta_reciprocal

SETTINGS = settings(max_examples=40, deadline=None)

unit = st.floats(0.0, 1.0, allow_nan=False)
seeds = st.integers(0, 2**32 - 1)


def chain_from(seed, n, edge_prob, zero_prob):
    return random_chain(np.random.default_rng(seed), n, edge_prob, zero_prob)


chains = st.builds(
    chain_from, seeds, st.integers(1, 8), st.floats(0.0, 1.0), st.sampled_from([0.0, 0.0, 0.3])
)


@SETTINGS
@given(chains)
def test_theorem2_random_chains(chain):
    assert verify_theorem2(chain).relative_gap <= 1e-10


@SETTINGS
@given(chains)
def test_coin_orthogonal(chain):
    assert unitarity_defect(quiet_quantize(chain)) <= 1e-12


@SETTINGS
@given(chains)
def test_reciprocal_palindromic(chain):
    # U real orthogonal: coefficients reverse up to the sign (-1)^d det U
    coin = quiet_quantize(chain)
    r = np.array(zeta_reciprocal(coin).coeffs, dtype=float)
    r = np.concatenate([r, np.zeros(coin.dim + 1 - len(r))])
    sign = (-1) ** coin.dim * round(np.linalg.det(coin.U))
    assert np.max(np.abs(r[::-1] - sign * r)) <= 1e-9 * max(1.0, np.max(np.abs(r)))


@SETTINGS
@given(chains)
def test_spectrum_prediction(chain):
    coin = quiet_quantize(chain)
    rep = corollary4_spectrum(symmetrize(chain), chain.n, chain.m)
    assert multiset_distance(rep.eigenvalues, np.linalg.eigvals(coin.U)) <= 1e-6


@SETTINGS
@given(unit, unit, st.integers(2, 5))
def test_global_operator_stochastic_and_split(p, q, N):
    g = global_from_local(build_dk_local(DKParams(p, q)), N)
    G = np.asarray(g.entries, dtype=float)
    assert np.all(G >= 0) and np.max(np.abs(G.sum(axis=0) - 1)) <= 1e-12
    b1, b2 = split_blocks(g)
    assert np.array_equal(b1, G[0::2, 0::2]) and np.array_equal(b2, G[1::2, 1::2])


@SETTINGS
@given(unit, unit)
def test_dk_n2_reciprocal_matches_factorisation(p, q):
    coins = [quiet_quantize(c) for c in dk_chains(2, p, q).values()]
    got = np.polynomial.polynomial.polyfromroots([])
    for c in coins:
        got = np.polynomial.polynomial.polymul(got, np.array(zeta_reciprocal(c).coeffs, dtype=float))
    want = np.polynomial.polynomial.polymul([1, 0, -1], [1, 0, -1])
    want = np.polynomial.polynomial.polymul(want, [1, -2 * p, 1])
    want = np.polynomial.polynomial.polymul(want, [1, 2 * (p - q), 1])
    assert np.max(np.abs(got - want)) <= 1e-12


def disjoint_lists(draw):
    m = draw(st.lists(st.integers(1, 8), max_size=3))
    n = draw(st.lists(st.integers(1, 8).filter(lambda k: k not in m), max_size=3))
    return m, n


@st.composite
def forms(draw):
    m, n = disjoint_lists(draw)
    return CyclotomicForm(2 * draw(st.integers(0, 3)), tuple(m), tuple(n))


@SETTINGS
@given(forms())
def test_cyclotomic_round_trip(form):
    assert to_cyclotomic_form(form.to_rational_function()) == form


@SETTINGS
@given(forms())
def test_theorem5_identities(form):
    rep = theorem5_expand(form)
    w = detect_automorphy(form.to_rational_function())
    assert (rep.C, rep.D) == (w.C, w.D)
    assert len(rep.gamma_terms) == 2**form.a
    assert sum(t.exponent for t in rep.gamma_terms) == (1 if form.a == 0 else 0)
    assert rep.deg_f == Fraction(form.ell, 2) + sum(form.m_list) - sum(form.n_list)


@SETTINGS
@given(
    st.floats(0.2, 5.0),
    st.lists(st.floats(0.5, 3.0), min_size=1, max_size=3),
)
def test_gamma_ladder(x, om):
    om = tuple(om)
    lhs = log_multiple_gamma(x + om[-1], om) + log_multiple_gamma(x, om[:-1])
    assert math.isclose(lhs, log_multiple_gamma(x, om), rel_tol=1e-9, abs_tol=1e-7)


@SETTINGS
@given(
    st.floats(2.5, 6.0),
    st.floats(0.2, 4.0),
    st.lists(st.floats(0.5, 3.0), min_size=1, max_size=2),
    st.floats(0.5, 2.0),
)
def test_zeta_scaling(s, x, om, c):
    lhs = multiple_hurwitz_zeta(s, c * x, tuple(c * w for w in om))
    rhs = c ** (-s) * multiple_hurwitz_zeta(s, x, tuple(om))
    assert math.isclose(lhs, rhs, rel_tol=1e-10)
