import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from fundep.derivation import (closure_fixpoint, closure_map, decide_formula, decide_query,
                               derives_atom, falsifying_assignment, saturate_atoms,
                               saturate_masks, sparse_principle_formula)
from fundep.errors import NotSparseError, TooLargeError
from fundep.fixtures import (CASES, DIAMOND, EDGE, GRAPHS, K4, PATH3, PATH4, SMALL_GRAPHS,
                             SPIDER, SQUARE_TAIL, TRIANGLE)
from fundep.formula import FALSE, Atom, Dep, implies, parse
from fundep.game import constant_game, holds_atom
from fundep.graph import Graph, complete_graph, path_graph
from fundep import kernels

SMALL = list(SMALL_GRAPHS.values())


def all_atoms(g):
    n = g.n
    return [Atom(g.names(a), g.names(b)) for a in range(1 << n) for b in range(1 << n)]


def random_hyps(g, rng, k):
    out = []
    for _ in range(k):
        lhs = rng.randrange(1 << g.n)
        rhs = rng.randrange(1 << g.n)
        out.append(Atom(g.names(lhs), g.names(rhs)))
    return out


class TestOracle:
    @pytest.mark.parametrize("g", SMALL, ids=lambda g: g.vertices and "".join(g.vertices))
    def test_no_hypotheses_gives_reflexive_atoms(self, g):
        derived = saturate_atoms(g)
        assert derived == {a for a in all_atoms(g) if set(a.rhs) <= set(a.lhs)}

    def test_no_hypotheses_cross_check_with_constant_game(self):
        # every equilibrium of a two-strategy constant game, so only reflexive atoms hold
        game = constant_game(PATH4, 2)
        assert {a for a in all_atoms(PATH4) if holds_atom(game, a)} == saturate_atoms(PATH4)

    def test_path4_relay(self):
        assert Atom("bc", "d") in saturate_atoms(PATH4, ["a |> d"])

    def test_path3_no_relay(self):
        assert Atom("b", "c") not in saturate_atoms(PATH3, ["a |> c"])

    def test_contiguity_switch(self):
        assert Atom("bc", "d") not in saturate_atoms(PATH4, ["a |> d"], use_contiguity=False)

    def test_size_limit(self):
        with pytest.raises(TooLargeError):
            saturate_atoms(SPIDER)

    def test_unknown_extra_rule(self):
        with pytest.raises(ValueError):
            saturate_masks(EDGE, [], extra_rules=["cut_elim"])

    @pytest.mark.parametrize("rule", ["left_mono", "right_mono"])
    def test_monotonicity_rules_admissible(self, rule):
        rng = random.Random(5)
        for g in SMALL:
            for _ in range(5):
                h = random_hyps(g, rng, 2)
                assert saturate_atoms(g, h) == saturate_atoms(g, h, extra_rules=[rule])


class TestClosureMap:
    def test_path4(self):
        cm = closure_map(PATH4, ["a |> d"])
        assert cm.closure("a") == {"a", "d"}
        assert cm.closure("bc") == {"b", "c", "d"}
        assert cm.closure("abcd") == set("abcd")
        assert cm.derives(Atom("bc", "d"))

    def test_atoms_match_oracle_exactly(self):
        assert closure_map(PATH4, ["a |> d"]).atoms() == saturate_atoms(PATH4, ["a |> d"])

    @pytest.mark.parametrize("name", sorted(SMALL_GRAPHS))
    def test_oracle_equivalence_random(self, name):
        g = SMALL_GRAPHS[name]
        rng = random.Random(hash(name) & 0xFFFF)
        for _ in range(8):
            h = random_hyps(g, rng, rng.randint(0, 3))
            assert closure_map(g, h).atoms() == saturate_atoms(g, h)

    def test_oracle_equivalence_five_vertices(self):
        rng = random.Random(3)
        for _ in range(3):
            h = random_hyps(SQUARE_TAIL, rng, 2)
            assert closure_map(SQUARE_TAIL, h).atoms() == saturate_atoms(SQUARE_TAIL, h)

    @settings(max_examples=30, deadline=None)
    @given(st.sampled_from(SMALL), st.integers(0, 2**32))
    def test_invariants(self, g, seed):
        h = random_hyps(g, random.Random(seed), 2)
        t = closure_map(g, h).table
        for a in range(1 << g.n):
            assert t[a] & a == a
            assert t[t[a]] == t[a]
            for b in range(1 << g.n):
                if a & b == a:
                    assert t[a] & t[b] == t[a]

    @settings(max_examples=30, deadline=None)
    @given(st.sampled_from(SMALL), st.integers(0, 2**32))
    def test_monotone_in_hypotheses(self, g, seed):
        rng = random.Random(seed)
        h = random_hyps(g, rng, 2)
        more = h + random_hyps(g, rng, 1)
        small, big = closure_map(g, h).table, closure_map(g, more).table
        assert all(s & b == s for s, b in zip(small, big))

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_complete_graphs_ignore_contiguity(self, n):
        g = complete_graph("abcd"[:n])
        rng = random.Random(n)
        for _ in range(20):
            h = random_hyps(g, rng, 2)
            assert closure_map(g, h).table == closure_map(g, h, use_contiguity=False).table

    def test_contiguity_matters_on_paths(self):
        with_cut = closure_map(PATH4, ["a |> d"])
        without = closure_map(PATH4, ["a |> d"], use_contiguity=False)
        assert with_cut.table != without.table

    def test_threads_agree(self):
        rng = random.Random(11)
        g = path_graph("abcdefg")
        h = random_hyps(g, rng, 3)
        single = closure_map(g, h).table
        assert closure_map(g, h, threads=3).table == single

    def test_backends_agree(self):
        g = path_graph("abcdef")
        h = [Atom("a", "f"), Atom("c", "e")]
        ref = closure_fixpoint(g, h, backend=kernels.python_backend)
        for kern in kernels.backends().values():
            assert list(closure_fixpoint(g, h, backend=kern)) == list(ref)

    def test_bound(self):
        with pytest.raises(TooLargeError, match="raise the bound"):
            closure_map(path_graph("abcd"), bound=3)

    def test_twelve_vertices(self):
        g = path_graph([f"v{i:02d}" for i in range(12)])
        cm = closure_map(g, [Atom(["v00"], ["v11"])])
        assert cm.derives(Atom(["v05", "v06"], ["v11"]))


class TestFormulas:
    @pytest.mark.parametrize("case", [c for c in CASES if c.verdict in ("derivable", "underivable")],
                             ids=lambda c: c.name)
    def test_fixture_verdicts(self, case):
        g = GRAPHS[case.graph]
        assert decide_formula(g, case.parsed()) == (case.verdict == "derivable")

    def test_falsum(self):
        assert not decide_formula(EDGE, FALSE)
        assert falsifying_assignment(EDGE, FALSE) == {}

    def test_tautologies(self):
        assert decide_formula(EDGE, parse("a |> a"))
        assert decide_formula(EDGE, parse("false -> a |> b"))
        assert decide_formula(PATH3, parse("(a |> b -> false) -> a |> b -> b |> c"))

    def test_axiom_instances(self):
        assert decide_formula(PATH3, parse("a |> b -> a,c |> b,c"))
        assert decide_formula(PATH3, parse("a |> b -> b |> c -> a |> c"))

    def test_falsifying_assignment_is_closed(self):
        f = parse("(a |> c) -> (b |> c)", PATH3)
        truth = falsifying_assignment(PATH3, f)
        assert truth == {Atom("a", "c"): True, Atom("b", "c"): False}

    def test_query_atoms_and_formulas_agree(self):
        h = [Atom("a", "d")]
        assert decide_query(PATH4, h, Dep(Atom("bc", "d")))
        assert decide_query(PATH4, h, implies(Dep(Atom("b", "a")), Dep(Atom("bc", "d"))))
        assert not decide_query(PATH4, h, Dep(Atom("b", "d")))

    def test_atom_limit(self):
        f = implies(*(Dep(Atom(a, b)) for a, b in product("abcde", repeat=2)))
        with pytest.raises(TooLargeError):
            decide_formula(SQUARE_TAIL, f)


class TestSparse:
    def test_spider(self):
        f = sparse_principle_formula(SPIDER, "abc")
        assert str(f) == "b,c,d,e,f |> a -> a,c,d,e,f |> b -> a,b,d,e,f |> c -> d,e,f |> a,b,c"
        assert decide_formula(SPIDER, f)

    def test_path4_ends(self):
        assert decide_formula(PATH4, sparse_principle_formula(PATH4, "ad"))

    def test_not_sparse(self):
        with pytest.raises(NotSparseError):
            sparse_principle_formula(PATH4, "ac")

    @pytest.mark.parametrize("g", [PATH4, SQUARE_TAIL, path_graph("abcdef")], ids=["path4", "square_tail", "path6"])
    def test_every_sparse_pair(self, g):
        for a in g.vertices:
            for b in g.vertices:
                if a < b and sparse_ok(g, a, b):
                    assert decide_formula(g, sparse_principle_formula(g, [a, b]))


def sparse_ok(g, a, b):
    from fundep.graph import distances_from
    return distances_from(g, a).get(b, 99) >= 3
