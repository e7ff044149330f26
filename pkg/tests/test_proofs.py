import random
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from fundep.derivation import closure_map
from fundep.errors import NoProofError
from fundep.fixtures import PATH3, PATH4, SMALL_GRAPHS, SPIDER, SQUARE_TAIL
from fundep.formula import Atom
from fundep.graph import Cut
from fundep.proofs import (ProofCheckError, ProofStep, check_trace, derive_trace,
                           format_trace, parse_trace)

HYP = [Atom("a", "d")]
GOAL = Atom("bc", "d")


def path4_trace():
    return derive_trace(PATH4, HYP, GOAL)


class TestDerive:
    def test_path4_uses_contiguity_on_middle_cut(self):
        steps = path4_trace()
        check_trace(PATH4, HYP, steps, GOAL)
        cuts = {s.cut for s in steps if s.rule == "Contiguity"}
        assert Cut(frozenset("ab"), frozenset("cd")) in cuts
        assert steps[-1].atom == GOAL

    def test_trivial_goal(self):
        assert derive_trace(PATH4, HYP, "a,b |> b") == [ProofStep(1, Atom("ab", "b"), "Reflexivity")]

    def test_goal_is_hypothesis(self):
        assert derive_trace(PATH4, HYP, "a |> d") == [ProofStep(1, Atom("a", "d"), "Hypothesis")]

    def test_underivable(self):
        with pytest.raises(NoProofError):
            derive_trace(PATH3, [Atom("a", "c")], Atom("b", "c"))

    def test_square_tail(self):
        h = [Atom("ac", "e")]
        steps = derive_trace(SQUARE_TAIL, h, Atom("bcd", "e"))
        check_trace(SQUARE_TAIL, h, steps, Atom("bcd", "e"))

    def test_spider_sparse_leaves(self):
        h = [Atom("bcdef", "a"), Atom("acdef", "b"), Atom("abdef", "c")]
        goal = Atom("def", "abc")
        check_trace(SPIDER, h, derive_trace(SPIDER, h, goal), goal)

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from(list(SMALL_GRAPHS.values())), st.integers(0, 2**32))
    def test_every_derivable_atom_has_a_checked_trace(self, g, seed):
        rng = random.Random(seed)
        h = [Atom(g.names(rng.randrange(1 << g.n)), g.names(rng.randrange(1 << g.n))) for _ in range(2)]
        cm = closure_map(g, h)
        lhs = rng.randrange(1 << g.n)
        for rhs in (cm.table[lhs], cm.table[lhs] & rng.randrange(1 << g.n)):
            goal = Atom(g.names(lhs), g.names(rhs))
            check_trace(g, h, derive_trace(g, h, goal), goal)


class TestFormat:
    def test_round_trip(self):
        steps = path4_trace()
        text = format_trace(steps)
        assert parse_trace(text, PATH4) == steps
        assert format_trace(parse_trace(text)) == text

    def test_line_shape(self):
        step = ProofStep(3, Atom("bc", "d"), "Contiguity", (2,), Cut(frozenset("ab"), frozenset("cd")))
        assert str(step) == "3. b,c |> d [Contiguity from 2; cut=(a,b|c,d)]"
        assert parse_trace(str(step)) == [step]

    def test_empty_sets(self):
        step = ProofStep(1, Atom("a", ()), "Reflexivity")
        assert str(step) == "1. a |> . [Reflexivity]"
        assert parse_trace(str(step)) == [step]

    def test_garbage(self):
        with pytest.raises(ProofCheckError, match="line 1"):
            parse_trace("this is not a step")


class TestChecker:
    def test_rejects_wrong_goal(self):
        with pytest.raises(ProofCheckError, match="goal"):
            check_trace(PATH4, HYP, path4_trace(), Atom("b", "d"))

    def test_rejects_missing_hypothesis(self):
        with pytest.raises(ProofCheckError):
            check_trace(PATH4, [], path4_trace(), GOAL)

    def test_rejects_renumbering(self):
        steps = path4_trace()
        with pytest.raises(ProofCheckError):
            check_trace(PATH4, HYP, [replace(steps[0], index=2)] + steps[1:])

    def test_rejects_forward_premise(self):
        bad = [ProofStep(1, Atom("a", "a"), "Transitivity", (1, 2))]
        with pytest.raises(ProofCheckError, match="earlier"):
            check_trace(PATH4, HYP, bad)

    def test_rejects_wrong_cut(self):
        steps = path4_trace()
        k = next(i for i, s in enumerate(steps) if s.rule == "Contiguity")
        steps[k] = replace(steps[k], cut=Cut(frozenset("abc"), frozenset("d")))
        with pytest.raises(ProofCheckError):
            check_trace(PATH4, HYP, steps, GOAL)

    def test_rejects_bogus_cut(self):
        steps = [ProofStep(1, Atom("a", "d"), "Hypothesis"),
                 ProofStep(2, Atom("b", "d"), "Contiguity", (1,), Cut(frozenset("ab"), frozenset("cd")))]
        with pytest.raises(ProofCheckError):
            check_trace(PATH4, HYP, steps)

    def test_rejects_bad_reflexivity(self):
        with pytest.raises(ProofCheckError, match="Reflexivity"):
            check_trace(PATH4, [], [ProofStep(1, Atom("a", "b"), "Reflexivity")])

    def test_rejects_bad_augmentation(self):
        steps = [ProofStep(1, Atom("a", "d"), "Hypothesis"),
                 ProofStep(2, Atom("ab", "dc"), "Augmentation", (1,))]
        with pytest.raises(ProofCheckError, match="Augmentation"):
            check_trace(PATH4, HYP, steps)

    def test_accepts_augmentation(self):
        steps = [ProofStep(1, Atom("a", "d"), "Hypothesis"),
                 ProofStep(2, Atom("ac", "dc"), "Augmentation", (1,))]
        check_trace(PATH4, HYP, steps)

    def test_rejects_unknown_rule(self):
        with pytest.raises(ProofCheckError, match="unknown rule"):
            check_trace(PATH4, HYP, [ProofStep(1, Atom("a", "d"), "Magic")])

    def test_monotonicity_rules(self):
        steps = [ProofStep(1, Atom("a", "d"), "Hypothesis"),
                 ProofStep(2, Atom("ab", "d"), "LeftMono", (1,)),
                 ProofStep(3, Atom("ab", ()), "RightMono", (2,))]
        check_trace(PATH4, HYP, steps)
