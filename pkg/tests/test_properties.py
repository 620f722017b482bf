"""Property-based checks of structural invariants."""
from fractions import Fraction
from itertools import combinations

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from zetacode.cycles import count_4cycles, count_triangles, four_cycles_bruteforce, triangles_bruteforce
from zetacode.ensemble import EnsembleSpec, averaged_zeta
from zetacode.gaussian import wick_coefficient
from zetacode.graph import (
    build_graph,
    collapse_normal_graph,
    hashimoto_matrix,
    m_cover,
    tanner_from_parity,
)
from zetacode.ldp import bernoulli_kl, bernoulli_log_mgf, legendre_rate
from zetacode.pseudo import codewords_bruteforce, cover_pseudocodewords, pseudocodewords_from_zeta
from zetacode.series import TruncatedSeries, UnivariatePolynomial
from zetacode.zeta import (
    closed_walk_counts,
    edge_zeta_inverse_det,
    ihara_zeta_inverse_bass,
    prime_cycles,
    zeta_inverse_from_primes,
)

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def multigraphs(draw, max_vertices=5, max_edges=7, min_edges=1):
    n = draw(st.integers(2, max_vertices))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1])
    edges = draw(st.lists(pair, min_size=min_edges, max_size=max_edges))
    return build_graph(n, edges)


@st.composite
def simple_graphs(draw, max_vertices=8):
    n = draw(st.integers(1, max_vertices))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def cycle_codes(draw, max_checks=5, max_bits=8):
    m = draw(st.integers(2, max_checks))
    n = draw(st.integers(1, max_bits))
    H = np.zeros((m, n), dtype=np.int64)
    for i in range(n):
        a, b = draw(st.lists(st.integers(0, m - 1), min_size=2, max_size=2, unique=True))
        H[a, i] = H[b, i] = 1
    return H


@st.composite
def parity_matrices(draw, max_rows=4, max_cols=6):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    bits = draw(st.lists(st.integers(0, 1), min_size=m * n, max_size=m * n))
    H = np.array(bits, dtype=np.int64).reshape(m, n)
    H[0, 0] = 1
    return H


# graph core -----------------------------------------------------------------

@SETTINGS
@given(multigraphs())
def test_hashimoto_row_sums(g):
    B = hashimoto_matrix(g)
    tail, head = g.directed_edges()
    deg = g.degrees()
    assert (B.sum(axis=1) == deg[head] - 1).all()
    assert B.sum() == int((deg * (deg - 1)).sum())
    E = g.num_edges
    assert all(B[i, (i + E) % (2 * E)] == 0 for i in range(2 * E))


@SETTINGS
@given(parity_matrices())
def test_tanner_round_trip(H):
    assert np.array_equal(tanner_from_parity(H).to_parity(), H)


@SETTINGS
@given(multigraphs(), st.integers(1, 3), st.data())
def test_cover_is_local_isomorphism(g, M, data):
    perms = [tuple(data.draw(st.permutations(range(M)))) for _ in range(g.num_edges)]
    c = m_cover(g, M, perms)
    assert (c.graph.degrees() == np.repeat(g.degrees(), M)).all()
    assert (np.bincount([c.project_edge(f) for f in range(c.graph.num_edges)], minlength=g.num_edges) == M).all()


@SETTINGS
@given(cycle_codes())
def test_collapse_sizes(H):
    g, bit_to_edge = collapse_normal_graph(H)
    assert g.num_edges == H.shape[1] and g.num_vertices == H.shape[0]
    assert sorted(bit_to_edge) == list(range(H.shape[1]))


# zeta engine -----------------------------------------------------------------

@SETTINGS
@given(multigraphs(max_edges=6))
def test_determinant_equals_prime_product(g):
    D = 8
    assert edge_zeta_inverse_det(g, None, D) == zeta_inverse_from_primes(prime_cycles(g, D), None, D,
                                                                          nvars=g.num_edges)


@SETTINGS
@given(multigraphs(max_edges=6))
def test_bass_identity(g):
    det = UnivariatePolynomial.from_series(edge_zeta_inverse_det(g, "single", 2 * g.num_edges))
    assert ihara_zeta_inverse_bass(g) == det


@SETTINGS
@given(multigraphs(max_edges=6), st.integers(0, 6))
def test_truncation_consistency(g, Dp):
    assert edge_zeta_inverse_det(g, None, 7).truncate(Dp) == edge_zeta_inverse_det(g, None, Dp)


@SETTINGS
@given(multigraphs(max_edges=6))
def test_log_derivative_is_walk_generating_function(g):
    D = 8
    Z = edge_zeta_inverse_det(g, "single", D).reciprocal()
    N = closed_walk_counts(g, D)
    uZp = TruncatedSeries.from_terms(1, D, {(d,): d * Z.coefficient((d,)) for d in range(D + 1)})
    walks = TruncatedSeries.from_terms(1, D, {(m,): N[m - 1] for m in range(1, D + 1)})
    assert uZp == Z * walks


@SETTINGS
@given(multigraphs(max_edges=6))
def test_integrality(g):
    assert edge_zeta_inverse_det(g, None, 8).is_integral()


# pseudo-codewords ------------------------------------------------------------

@SETTINGS
@given(cycle_codes())
def test_zeta_exponents_reduce_to_codewords(H):
    words = set(codewords_bruteforce(H))
    for p in pseudocodewords_from_zeta(H, 8):
        assert tuple(x % 2 for x in p) in words


@SETTINGS
@given(cycle_codes(max_bits=6))
def test_codewords_appear_as_exponents(H):
    n = H.shape[1]
    exps = pseudocodewords_from_zeta(H, n)
    for c in codewords_bruteforce(H):
        assert c in exps


@SETTINGS
@given(cycle_codes(max_bits=6))
def test_exponents_closed_under_addition(H):
    D = 6
    exps = list(pseudocodewords_from_zeta(H, D))
    found = set(exps)
    for p in exps:
        for q in exps:
            if sum(p) + sum(q) <= D:
                assert tuple(a + b for a, b in zip(p, q)) in found


@SETTINGS
@given(parity_matrices(max_rows=3, max_cols=4), st.data())
def test_cover_projection_is_codeword(H, data):
    T = tanner_from_parity(H)
    perms = [tuple(data.draw(st.permutations(range(2)))) for _ in range(T.graph.num_edges)]
    cover = m_cover(T.graph, 2, perms)
    for w, _, ok in cover_pseudocodewords(T, cover):
        assert ok
        assert all(0 <= x * 2 <= 2 and (x * 2).denominator == 1 for x in w)


# ensemble and Gaussian moments -------------------------------------------------

@SETTINGS
@given(multigraphs(max_edges=6), st.floats(0.0, 0.3))
def test_point_mass_matches_exact_zeta(g, u):
    B = hashimoto_matrix(g)
    from zetacode.graph import spectral_radius

    rho = spectral_radius(B.astype(float))
    if rho and u >= 1 / rho - 1e-6:
        return
    exact = 1 / float(ihara_zeta_inverse_bass(g)(Fraction(u)))
    got = averaged_zeta(EnsembleSpec.point_mass(g), u).mean
    assert abs(got - exact) <= 1e-10 * abs(exact)


@SETTINGS
@given(st.integers(1, 4), st.sampled_from([1, 3, 5]), st.data())
def test_odd_wick_coefficients_vanish(n, k, data):
    m = np.array(data.draw(st.lists(st.integers(-3, 3), min_size=n * n, max_size=n * n))).reshape(n, n)
    assert wick_coefficient(m, k).value == 0


# cycle statistics ------------------------------------------------------------

@SETTINGS
@given(simple_graphs())
def test_trace_counts_match_enumeration(g):
    assert count_triangles(g) == triangles_bruteforce(g)
    assert count_4cycles(g) == four_cycles_bruteforce(g)


@SETTINGS
@given(st.floats(0.05, 0.95), st.floats(0.01, 0.99))
def test_legendre_matches_kl(q, x):
    r = legendre_rate(bernoulli_log_mgf(q), x, 60.0)
    assert r.rate >= 0
    assert abs(r.rate - bernoulli_kl(x, q)) < 1e-6


@SETTINGS
@given(st.floats(0.05, 0.95))
def test_rate_vanishes_at_mean(q):
    assert legendre_rate(bernoulli_log_mgf(q), q, 20.0).rate <= 1e-9
