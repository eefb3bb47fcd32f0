import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from pdcost import graph as gm
from pdcost.datasets import load_bundled, nordic32
from pdcost.graph import (
    Graph,
    GraphFormatError,
    VertexCapError,
    cartesian_product,
    clique,
    closed_neighborhood,
    closed_twin_reduction,
    cycle,
    disjoint_union,
    members,
    parse_graph,
    path,
    read_graph,
    serialize_graph,
    star,
    to_mask,
    twin_pairs,
    write_graph,
)


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, c in zip(pairs, chosen) if c])


class TestGraphType:
    def test_symmetric_and_loopless(self):
        G = oracles.random_graph(random.Random(1), 12, 0.4)
        for v in range(G.n):
            assert not G.adj[v] >> v & 1
            for u in members(G.adj[v]):
                assert G.adj[u] >> v & 1

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            Graph(0)
        with pytest.raises(ValueError):
            Graph(3, [(1, 1)])
        with pytest.raises(ValueError):
            Graph(3, [(0, 3)])

    def test_immutable(self):
        G = path(3)
        with pytest.raises(AttributeError):
            G.n = 4

    def test_equality_and_hash(self):
        assert path(4) == Graph(4, [(2, 3), (1, 2), (0, 1)])
        assert hash(path(4)) == hash(Graph(4, [(0, 1), (1, 2), (2, 3)]))
        assert path(4) != cycle(4)

    def test_components_and_bipartition(self):
        G = disjoint_union([path(3), cycle(5), clique(1)])
        assert len(G.components()) == 3
        assert not G.is_connected()
        assert G.bipartition() is None
        X, Y = cycle(6).bipartition()
        assert X | Y == cycle(6).full and not X & Y

    def test_induced_subgraph(self):
        H, labels = cycle(6).induced_subgraph(to_mask([0, 1, 2, 4]))
        assert labels == [0, 1, 2, 4]
        assert sorted(H.edges()) == [(0, 1), (1, 2)]

    def test_check_set(self):
        with pytest.raises(ValueError):
            path(3).check_set(1 << 3)


class TestNeighborhoods:
    def test_path_center(self):
        assert closed_neighborhood(path(3), 0b010) == 0b111

    def test_empty_set(self):
        assert closed_neighborhood(cycle(5), 0) == 0

    def test_nordic_vertex_41(self):
        N = closed_neighborhood(nordic32(), 1 << 41)
        assert members(N) == [11, 26, 38, 39, 41, 42, 43]

    @given(graphs(), st.data())
    def test_union_of_closed_neighborhoods(self, G, data):
        S = data.draw(st.sets(st.integers(0, G.n - 1)))
        adj = oracles.adjacency(G)
        expect = set().union(*({v} | adj[v] for v in S)) if S else set()
        got = closed_neighborhood(G, to_mask(S))
        assert set(members(got)) == expect
        assert to_mask(S) & ~got == 0


class TestGenerators:
    def test_counts(self):
        assert cycle(6).m == 6
        assert clique(4).m == 6
        assert path(5).m == 4
        assert star(3).degrees() == [3, 1, 1, 1]

    def test_invalid(self):
        for bad in (lambda: cycle(2), lambda: path(0), lambda: clique(0)):
            with pytest.raises(ValueError):
                bad()

    def test_matching_union(self):
        G = disjoint_union([clique(2)] * 3)
        assert G.n == 6 and sorted(G.edges()) == [(0, 1), (2, 3), (4, 5)]


class TestCartesianProduct:
    def test_square(self):
        assert nx.is_isomorphic(oracles.to_nx(cartesian_product(path(2), path(2))), nx.cycle_graph(4))

    def test_prism(self):
        G = cartesian_product(path(2), cycle(4))
        assert G.n == 8 and set(G.degrees()) == {3}

    def test_edge_count_formula(self):
        G = cartesian_product(path(5), cycle(10))
        assert (G.n, G.m) == (50, 90)

    def test_row_major_adjacency(self):
        G, H = path(3), cycle(4)
        P = cartesian_product(G, H)
        for (i, j), (k, l) in combinations([(i, j) for i in range(3) for j in range(4)], 2):
            adjacent = (i == k and H.has_edge(j, l)) or (j == l and G.has_edge(i, k))
            assert P.has_edge(i * 4 + j, k * 4 + l) == adjacent

    def test_matches_networkx(self):
        rng = random.Random(5)
        for _ in range(10):
            G = oracles.random_graph(rng, rng.randint(1, 5), 0.5)
            H = oracles.random_graph(rng, rng.randint(1, 5), 0.5)
            ref = nx.cartesian_product(oracles.to_nx(G), oracles.to_nx(H))
            assert nx.is_isomorphic(oracles.to_nx(cartesian_product(G, H)), ref)

    @settings(max_examples=60)
    @given(graphs(max_n=5), graphs(max_n=5))
    def test_degree_is_sum(self, G, H):
        P = cartesian_product(G, H)
        for i in range(G.n):
            for j in range(H.n):
                assert P.degree(i * H.n + j) == G.degree(i) + H.degree(j)

    def test_vertex_cap(self):
        with pytest.raises(VertexCapError) as err:
            cartesian_product(path(10), path(10), vertex_cap=50)
        assert err.value.required == 100

    def test_default_cap(self):
        with pytest.raises(VertexCapError):
            cartesian_product(path(65), path(64))
        assert gm.VERTEX_CAP == 4096


class TestTwins:
    def test_reduction_examples(self):
        assert closed_twin_reduction(clique(4)) == [0]
        assert closed_twin_reduction(star(3)) == [0]
        assert closed_twin_reduction(path(4)) == [1, 2]

    def test_twin_pairs_examples(self):
        assert twin_pairs(clique(3)) == [(0, 1), (0, 2), (1, 2)]
        assert twin_pairs(path(4)) == []
        assert twin_pairs(star(3)) == [(1, 2), (1, 3), (2, 3)]

    def test_reduction_soundness(self):
        rng = random.Random(11)
        for _ in range(120):
            G = oracles.random_graph(rng, rng.randint(2, 8), rng.choice([0.2, 0.4, 0.6]))
            adj = oracles.adjacency(G)
            cands = closed_twin_reduction(G)
            for k in range(1, min(3, G.n) + 1):
                full = oracles.brute_max_obs(adj, k)
                pool = cands + [v for v in range(G.n) if v not in cands]
                # a k-set drawn from the candidates, padded only if too few exist
                restricted = max(
                    len(oracles.obs(adj, S))
                    for S in combinations(pool[: max(k, len(cands))], k)
                )
                assert restricted == full


class TestFileFormat:
    def test_single_edge(self):
        G = parse_graph("p edge 2 1\ne 1 2\n")
        assert G.n == 2 and G.edges() == [(0, 1)]

    def test_edgeless(self):
        G = parse_graph("c nothing\np edge 3 0\n")
        assert G.n == 3 and G.m == 0

    @pytest.mark.parametrize(
        "text, line",
        [
            ("p edge 3 1\ne 1 1\n", 2),
            ("p edge 3 2\ne 1 2\ne 2 1\n", 3),
            ("p edge 3 1\ne 1 4\n", 2),
            ("p edge 3 1\ne 1 x\n", 2),
            ("c hi\np edge 3 1\nq 1 2\n", 3),
            ("e 1 2\n", 1),
            ("p edge 3 2\ne 1 2\n", 1),
            ("p edge 3\n", 1),
        ],
    )
    def test_errors_name_line(self, text, line):
        with pytest.raises(GraphFormatError) as err:
            parse_graph(text)
        assert err.value.lineno == line
        assert f"line {line}" in str(err.value)

    def test_missing_header(self):
        with pytest.raises(GraphFormatError):
            parse_graph("c only a comment\n")

    def test_cap_on_parse(self):
        with pytest.raises(VertexCapError):
            parse_graph("p edge 10 0\n", vertex_cap=5)

    def test_serializer_sorts(self):
        G = Graph(4, [(3, 2), (1, 0), (0, 3)])
        assert serialize_graph(G) == "p edge 4 3\ne 1 2\ne 1 4\ne 3 4\n"

    @given(graphs(max_n=12))
    def test_roundtrip(self, G):
        text = serialize_graph(G, ["roundtrip"])
        assert parse_graph(text) == G
        assert serialize_graph(parse_graph(text), ["roundtrip"]) == text

    def test_file_roundtrip(self, tmp_path):
        G = cycle(7)
        write_graph(G, tmp_path / "c7.gr")
        assert read_graph(tmp_path / "c7.gr") == G


class TestNordicDataset:
    """The bundled 60-bus grid, transcribed from a drawing."""

    def test_size(self):
        G = nordic32()
        assert G.n == 60
        # the drawing has 72 distinct edges
        assert G.m == 72
        assert G.is_connected()

    def test_bundled_name(self):
        assert load_bundled("nordic32_60.gr") == nordic32()
        with pytest.raises(KeyError):
            load_bundled("missing.gr")

    def test_degree_sequence(self):
        degs = nordic32().degrees()
        assert sum(degs) == 144
        assert degs.count(1) == 23
        assert max(degs) == 6 and degs[41] == 6

    def test_every_leaf_hangs_on_a_bus(self):
        G = nordic32()
        for v in range(60):
            if G.degree(v) == 1:
                (u,) = G.nbrs[v]
                assert G.degree(u) >= 2
