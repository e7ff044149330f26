"""Functional dependence between players' strategies in pure Nash equilibria
of games whose payoffs are localised by an undirected dependency graph."""

from fundep.canonical import (build_pennies_game, constant_profile, counterexample,
                              formula_counterexample, product_game)
from fundep.derivation import (closure_map, decide_formula, decide_query, derives_atom,
                               saturate_atoms, sparse_principle_formula)
from fundep.formula import FALSE, Atom, Dep, Falsum, Implies, atoms_of, eval_prop, parse, render
from fundep.game import (Game, enumerate_nash, holds_atom, is_nash, models, payoff,
                         random_game, stitch)
from fundep.graph import (Cut, Graph, adj_plus, border, complete_graph, enumerate_cuts,
                          equiv_classes, is_sparse, path_graph)
from fundep.kernels import BACKEND
from fundep.proofs import check_trace, derive_trace

__version__ = "0.1.0"
