from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from fundep.errors import GraphFormatError, InvalidVertexError, NoValidCutError
from fundep.fixtures import DIAMOND, K4, PATH4, SPIDER, SQUARE_TAIL
from fundep.graph import (Graph, adj_plus, border, border_mask, complete_graph,
                          enumerate_cuts, equiv_classes, is_sparse, path_graph)

from oracles import brute_classes, distance

NAMES = "abcde"


@st.composite
def graphs(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    names = NAMES[:n]
    pairs = list(combinations(names, 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(names, chosen)


def subsets(g):
    return [frozenset(g.names(m)) for m in range(1 << g.n)]


class TestConstruction:
    def test_vertices_sorted_and_edges_canonical(self):
        g = Graph(["c", "a", "b"], [("c", "a")])
        assert g.vertices == ("a", "b", "c")
        assert g.edges == {("a", "c")}

    @pytest.mark.parametrize("edges", [[("a", "a")], [("a", "b"), ("b", "a")]])
    def test_rejects_loops_and_duplicates(self, edges):
        with pytest.raises(GraphFormatError):
            Graph("ab", edges)

    def test_rejects_dangling_endpoint(self):
        with pytest.raises(InvalidVertexError):
            Graph("ab", [("a", "z")])

    @pytest.mark.parametrize("name", ["", "A", "a-b", "a b"])
    def test_rejects_bad_names(self, name):
        with pytest.raises(GraphFormatError):
            Graph([name, "b"])

    def test_hashable_and_equal(self):
        assert path_graph("abc") == Graph("cba", [("b", "c"), ("a", "b")])
        assert len({path_graph("abc"), path_graph("abc")}) == 1


class TestBorder:
    def test_path_halves(self):
        assert border(PATH4, {"a", "b"}) == {"b"}
        assert border(PATH4, {"c", "d"}) == {"c"}

    def test_square_tail_cut(self):
        assert border(SQUARE_TAIL, {"a", "b", "c"}) == {"b", "c"}
        assert border(SQUARE_TAIL, {"d", "e"}) == {"d"}

    def test_spider_cut(self):
        assert border(SPIDER, {"c", "f"}) == {"f"}
        assert border(SPIDER, {"a", "b", "d", "e"}) == {"d", "e"}

    def test_everything_and_nothing(self):
        assert border(PATH4, PATH4.vertices) == frozenset()
        assert border(PATH4, ()) == frozenset()

    def test_unknown_vertex(self):
        with pytest.raises(InvalidVertexError):
            border(PATH4, {"z"})

    @settings(max_examples=60, deadline=None)
    @given(graphs())
    def test_subset_and_union_bound(self, g):
        for x in range(1 << g.n):
            bx = border_mask(g, x)
            assert bx & ~x == 0
            for y in range(1 << g.n):
                assert border_mask(g, x | y) & ~(bx | border_mask(g, y)) == 0


class TestAdjPlus:
    def test_path(self):
        assert adj_plus(PATH4, "b") == {"a", "b", "c"}

    def test_isolated(self):
        assert adj_plus(Graph("ab"), "a") == {"a"}

    def test_complete(self):
        assert adj_plus(K4, "c") == set(K4.vertices)

    def test_unknown(self):
        with pytest.raises(InvalidVertexError):
            adj_plus(PATH4, "x")


class TestCuts:
    def test_two_free_vertices(self):
        cuts = list(enumerate_cuts(PATH4, {"a"}, {"d"}))
        assert len(cuts) == 4
        assert all("a" in c.u and "d" in c.w for c in cuts)
        assert [sorted(c.u) for c in cuts] == [["a"], ["a", "b"], ["a", "c"], ["a", "b", "c"]]

    def test_fully_constrained(self):
        cuts = list(enumerate_cuts(PATH4, {"a", "b"}, {"c", "d"}))
        assert len(cuts) == 1

    def test_overlap_rejected(self):
        with pytest.raises(NoValidCutError):
            list(enumerate_cuts(PATH4, {"a", "b"}, {"b"}))

    @settings(max_examples=30, deadline=None)
    @given(graphs())
    def test_unconstrained_count_and_partition(self, g):
        cuts = list(enumerate_cuts(g))
        assert len(cuts) == 2 ** g.n
        assert len(set(cuts)) == len(cuts)
        for c in cuts:
            assert not c.u & c.w and c.u | c.w == set(g.vertices)


class TestEquivClasses:
    def test_empty_s_connected(self):
        assert equiv_classes(PATH4, ()) == [set(PATH4.vertices)]

    def test_path_split_at_blocked_edge(self):
        # frozen from the simple-path oracle in tests/oracles.py
        assert equiv_classes(PATH4, {"b", "c"}) == [{"a", "b"}, {"c", "d"}]

    def test_all_blocked(self):
        assert equiv_classes(PATH4, PATH4.vertices) == [{v} for v in PATH4.vertices]

    @settings(max_examples=40, deadline=None)
    @given(graphs(), st.data())
    def test_matches_path_enumeration(self, g, data):
        s = data.draw(st.sets(st.sampled_from(g.vertices)))
        got = equiv_classes(g, s)
        assert sorted(map(sorted, got)) == sorted(map(sorted, brute_classes(g.vertices, g.edges, s)))
        assert sum(len(c) for c in got) == g.n

    @settings(max_examples=40, deadline=None)
    @given(graphs(), st.data())
    def test_class_borders_inside_s(self, g, data):
        s = data.draw(st.sets(st.sampled_from(g.vertices)))
        for cls in equiv_classes(g, s):
            assert border(g, cls) <= s


class TestSparse:
    def test_path_ends(self):
        assert is_sparse(PATH4, {"a", "d"})

    def test_adjacent(self):
        assert not is_sparse(PATH4, {"a", "b"})

    def test_small(self):
        assert is_sparse(PATH4, ())
        assert is_sparse(PATH4, {"c"})

    def test_spider_leaves(self):
        assert is_sparse(SPIDER, {"a", "b", "c"})
        assert not is_sparse(DIAMOND, {"a", "d"})

    @settings(max_examples=40, deadline=None)
    @given(graphs(), st.data())
    def test_against_bfs(self, g, data):
        w = data.draw(st.sets(st.sampled_from(g.vertices)))
        expected = all((d := distance(g.vertices, g.edges, x, y)) is None or d >= 3
                       for x, y in combinations(sorted(w), 2))
        assert is_sparse(g, w) == expected


def test_complete_graph_cut_borders_cover_everything():
    g = complete_graph("abcd")
    full = g.full_mask
    for u in range(1, full):
        assert g.cut_border_table[u] == full
