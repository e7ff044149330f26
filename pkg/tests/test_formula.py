import pytest
from hypothesis import given, strategies as st

from fundep.errors import IncompleteAssignmentError, InvalidVertexError, ParseError
from fundep.fixtures import PATH4
from fundep.formula import (FALSE, Atom, Dep, Falsum, Implies, atoms_of, dep, eval_prop,
                            negate, parse, render)

names = st.sets(st.sampled_from("abcd"))
atoms = st.builds(Atom, names, names)
formulas = st.recursive(
    st.one_of(st.just(FALSE), st.builds(Dep, atoms)),
    lambda inner: st.builds(Implies, inner, inner),
    max_leaves=8,
)


class TestParse:
    def test_implication_of_atoms(self):
        f = parse("a |> d -> b,c |> d", PATH4)
        assert f == Implies(dep("a", "d"), dep("bc", "d"))

    def test_falsum(self):
        assert parse("false") == Falsum()

    def test_empty_sets(self):
        assert parse(". |> .") == Dep(Atom((), ()))

    def test_right_associative(self):
        f = parse("a |> b -> b |> c -> a |> c")
        assert f == Implies(dep("a", "b"), Implies(dep("b", "c"), dep("a", "c")))

    def test_parenthesised_left(self):
        f = parse("(a |> b -> false) -> false")
        assert f == Implies(Implies(dep("a", "b"), FALSE), FALSE)

    def test_whitespace_insignificant(self):
        assert parse("a,b|>c->false") == parse("  a , b  |>  c  ->  false ")

    def test_unknown_vertex_named(self):
        with pytest.raises(InvalidVertexError, match="'z'"):
            parse("a |> z", PATH4)

    @pytest.mark.parametrize("text, pos", [
        ("a |>", 4), ("a b", 2), ("(a |> b", 7), ("a |> b ->", 9), ("a |> b)", 6), ("a & b", 2),
    ])
    def test_syntax_error_position(self, text, pos):
        with pytest.raises(ParseError) as exc:
            parse(text)
        assert exc.value.position == pos

    def test_empty_text(self):
        with pytest.raises(ParseError):
            parse("   ")


class TestRender:
    def test_sorted_members(self):
        assert render(Dep(Atom(["b", "a"], ["d"]))) == "a,b |> d"

    def test_minimal_parentheses(self):
        f = Implies(dep("a", "b"), Implies(dep("b", "c"), FALSE))
        assert render(f) == "a |> b -> b |> c -> false"
        assert render(Implies(Implies(dep("a", "b"), FALSE), FALSE)) == "(a |> b -> false) -> false"

    def test_falsum_and_empty(self):
        assert render(FALSE) == "false"
        assert render(dep((), ())) == ". |> ."

    @given(formulas)
    def test_round_trip(self, f):
        assert parse(render(f)) == f

    @given(formulas)
    def test_render_idempotent(self, f):
        text = render(f)
        assert render(parse(text)) == text


class TestAtoms:
    def test_three_atoms(self):
        f = parse("a,c |> d -> (d,b |> a -> b,c |> a,d)")
        assert atoms_of(f) == {Atom("ac", "d"), Atom("bd", "a"), Atom("bc", "ad")}

    def test_falsum(self):
        assert atoms_of(FALSE) == frozenset()

    def test_single(self):
        assert atoms_of(dep("a", "b")) == {Atom("a", "b")}

    def test_duplicates_collapse(self):
        assert len(atoms_of(parse("a |> b -> a |> b"))) == 1


class TestEval:
    @pytest.mark.parametrize("value", [True, False])
    def test_self_implication(self, value):
        assert eval_prop(parse("a |> b -> a |> b"), {Atom("a", "b"): value})

    def test_falsum(self):
        assert not eval_prop(FALSE, {})

    def test_material_implication(self):
        f = parse("a |> d -> b,c |> d")
        assert not eval_prop(f, {Atom("a", "d"): True, Atom("bc", "d"): False})
        assert eval_prop(f, {Atom("a", "d"): False, Atom("bc", "d"): False})

    def test_negation(self):
        assert eval_prop(negate(dep("a", "b")), {Atom("a", "b"): False})

    def test_missing_atom(self):
        with pytest.raises(IncompleteAssignmentError):
            eval_prop(dep("a", "b"), {})
