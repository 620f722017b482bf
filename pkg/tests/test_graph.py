import numpy as np
import pytest

from zetacode.errors import CodeError, GraphError
from zetacode.graph import (
    build_graph,
    collapse_normal_graph,
    complete_graph,
    cycle_graph,
    hashimoto_matrix,
    is_cycle_code,
    lifted_parity_check,
    m_cover,
    random_cover,
    spectral_radius,
    tanner_from_parity,
)

CIRC3 = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
DOUBLED = build_graph(2, [(0, 1), (0, 1)])


class TestBuildGraph:
    def test_single_edge(self):
        g = build_graph(2, [(0, 1)])
        assert g.num_edges == 1 and g.num_vertices == 2

    def test_triangle(self):
        g = build_graph(3, [(0, 1), (1, 2), (2, 0)])
        assert g.degrees().tolist() == [2, 2, 2]
        assert g.cycle_rank == 1

    def test_doubled_edge_is_allowed(self):
        assert DOUBLED.num_edges == 2
        assert not DOUBLED.is_simple()
        assert DOUBLED.adjacency_matrix().tolist() == [[0, 2], [2, 0]]

    def test_self_loop_names_edge(self):
        with pytest.raises(GraphError, match="edge 1"):
            build_graph(3, [(0, 1), (2, 2)])

    def test_out_of_range_vertex(self):
        with pytest.raises(GraphError):
            build_graph(2, [(0, 2)])

    def test_components(self):
        g = build_graph(5, [(0, 1), (2, 3)])
        assert not g.is_connected()
        assert g.cycle_rank == 0
        assert sorted(map(sorted, g.components())) == [[0, 1], [2, 3], [4]]


class TestHashimoto:
    def test_single_edge_is_zero(self):
        assert hashimoto_matrix(build_graph(2, [(0, 1)])).tolist() == [[0, 0], [0, 0]]

    def test_triangle_rows(self):
        B = hashimoto_matrix(cycle_graph(3))
        assert B.shape == (6, 6)
        assert (B.sum(axis=1) == 1).all()

    def test_doubled_edge(self):
        # edge k is 0->1 and edge 2+k is 1->0; 0->1 can only continue back along the other copy
        B = hashimoto_matrix(DOUBLED)
        assert B.shape == (4, 4)
        assert (B.sum(axis=1) == 1).all()
        assert B[0, 3] == 1 and B[0, 1] == 0 and B[0, 2] == 0
        assert B[1, 2] == 1 and B[2, 1] == 1 and B[3, 0] == 1

    def test_empty_edge_set(self):
        with pytest.raises(GraphError):
            hashimoto_matrix(build_graph(3, []))

    def test_row_sums_and_total(self):
        g = complete_graph(5)
        B = hashimoto_matrix(g)
        tail, head = g.directed_edges()
        deg = g.degrees()
        assert (B.sum(axis=1) == deg[head] - 1).all()
        assert B.sum() == int((deg * (deg - 1)).sum())
        E = g.num_edges
        for i in range(2 * E):
            assert B[i, (i + E) % (2 * E)] == 0


class TestSpectralRadius:
    def test_zero(self):
        assert spectral_radius(np.zeros((2, 2))) == 0

    def test_triangle(self):
        assert spectral_radius(hashimoto_matrix(cycle_graph(3))) == pytest.approx(1.0, abs=1e-9)

    def test_k4(self):
        assert spectral_radius(hashimoto_matrix(complete_graph(4))) == pytest.approx(2.0, abs=1e-9)

    def test_nilpotent(self):
        assert spectral_radius([[0, 1], [0, 0]]) == 0

    def test_signed_matrix(self):
        m = np.array([[0.0, -2.0], [2.0, 0.0]])
        assert spectral_radius(m) == pytest.approx(2.0)

    def test_non_square(self):
        with pytest.raises(ValueError):
            spectral_radius(np.zeros((2, 3)))


class TestTanner:
    def test_single_check(self):
        T = tanner_from_parity([[1, 1]])
        assert (T.num_checks, T.num_bits, T.graph.num_edges) == (1, 2, 2)

    def test_circulant_is_six_cycle(self):
        T = tanner_from_parity(CIRC3)
        g = T.graph
        assert g.num_vertices == 6 and g.num_edges == 6
        assert (g.degrees() == 2).all() and g.is_connected()

    def test_square_is_four_cycle(self):
        g = tanner_from_parity([[1, 1], [1, 1]]).graph
        assert g.num_vertices == 4 and g.num_edges == 4 and (g.degrees() == 2).all()
        assert g.is_simple()

    def test_round_trip(self):
        H = np.array([[1, 0, 1, 1], [0, 1, 1, 0], [1, 1, 0, 1]])
        assert np.array_equal(tanner_from_parity(H).to_parity(), H)

    def test_all_zero_rejected(self):
        with pytest.raises(CodeError):
            tanner_from_parity([[0, 0], [0, 0]])


class TestCycleCode:
    def test_circulant(self):
        assert is_cycle_code(CIRC3) and is_cycle_code(CIRC3, strict=True)

    def test_weight_one_column(self):
        assert not is_cycle_code([[1, 1, 1]])

    def test_mixed_row_weights(self):
        # every column has weight 2 here, so only the strict (row-regular) mode rejects it
        H = [[1, 1, 0], [1, 1, 1], [0, 0, 1]]
        assert is_cycle_code(H)
        assert not is_cycle_code(H, strict=True)

    def test_mixed_column_weights(self):
        assert not is_cycle_code([[1, 1, 0], [1, 0, 1], [1, 0, 0]])


class TestCollapse:
    def test_circulant_gives_triangle(self):
        g, bit_to_edge = collapse_normal_graph(CIRC3)
        assert g.num_vertices == 3 and g.num_edges == 3
        assert (g.degrees() == 2).all() and g.is_simple() and g.is_connected()
        assert bit_to_edge == (0, 1, 2)

    def test_square_gives_doubled_edge(self):
        g, _ = collapse_normal_graph([[1, 1], [1, 1]])
        assert g.num_vertices == 2 and g.num_edges == 2 and not g.is_simple()

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_single_cycle(self, n):
        from helpers import circulant_cycle_code

        g, _ = collapse_normal_graph(circulant_cycle_code(n))
        assert g.num_edges == n and (g.degrees() == 2).all() and g.is_connected()

    def test_rejects_degree_three_bit(self):
        with pytest.raises(CodeError):
            collapse_normal_graph([[1, 1], [1, 0], [1, 1]])

    def test_accepts_tanner_graph(self):
        g, _ = collapse_normal_graph(tanner_from_parity(CIRC3))
        assert g.num_edges == 3


class TestCover:
    def test_one_cover_is_identity(self):
        g = complete_graph(4)
        c = m_cover(g, 1, [(0,)] * g.num_edges)
        assert c.graph == g

    def test_single_edge_two_cover(self):
        c = m_cover(build_graph(2, [(0, 1)]), 2, [(0, 1)])
        assert c.graph.num_edges == 2 and len(c.graph.components()) == 2

    def test_triangle_twisted_is_hexagon(self):
        c = m_cover(cycle_graph(3), 2, [(0, 1), (0, 1), (1, 0)])
        g = c.graph
        assert g.num_vertices == 6 and g.is_connected() and (g.degrees() == 2).all()

    def test_arity_mismatch(self):
        with pytest.raises(GraphError):
            m_cover(cycle_graph(3), 2, [(0, 1), (0, 1)])
        with pytest.raises(GraphError):
            m_cover(cycle_graph(3), 2, [(0, 1), (0, 1), (0, 0)])

    def test_projection_and_degrees(self):
        g = complete_graph(4)
        c = random_cover(g, 3, seed=5)
        deg = g.degrees()
        assert (c.graph.degrees() == np.repeat(deg, 3)).all()
        counts = np.bincount([c.project_edge(f) for f in range(c.graph.num_edges)])
        assert (counts == 3).all()
        for f, (x, y) in enumerate(c.graph.edges):
            assert {c.project_vertex(x), c.project_vertex(y)} == set(g.edges[c.project_edge(f)])

    def test_lifted_parity_shape(self):
        T = tanner_from_parity(CIRC3)
        c = random_cover(T.graph, 2, seed=0)
        Ht = lifted_parity_check(T, c)
        assert Ht.shape == (6, 6)
        assert (Ht.sum(axis=0) == 2).all()
