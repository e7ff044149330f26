"""JSON file formats.

Graph::

    {"vertices": ["a", "b"], "edges": [["a", "b"]]}

Game (``graph`` inline or a path relative to the game file)::

    {"graph": {...} | "graph.json",
     "strategies": {"a": ["a1", "a2"], ...},
     "payoffs": {"a": [{"profile": {"a": "a1", "b": "b1"}, "value": 1}, ...], ...}}

Values are integers or ``"p/q"`` strings.  Labels are strings; labels of
product games are nested arrays and load back as tuples.

Query::

    {"graph": ..., "hypotheses": ["a |> d"], "goal": "b,c |> d"}

Counterexample: a game document plus
``"witness": {"profiles": [{...}, {...}], "refuted": "b |> c", "a_star": [...]}``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from fundep.errors import FundepError, GraphFormatError, IncompleteGameError
from fundep.formula import Atom, Formula, parse, parse_atom
from fundep.game import Game, game_from_tables, profile_dict
from fundep.graph import Graph

PathLike = Union[str, Path]


class FileFormatError(FundepError, ValueError):
    pass


def _read_json(path: PathLike) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: not valid JSON ({exc})") from None
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc.strerror}") from None


def _require(doc: Any, key: str, where: str) -> Any:
    if not isinstance(doc, dict) or key not in doc:
        raise FileFormatError(f"{where}: missing field {key!r}")
    return doc[key]


def graph_from_doc(doc: Any) -> Graph:
    vertices = _require(doc, "vertices", "graph")
    edges = _require(doc, "edges", "graph")
    if not isinstance(vertices, list) or not isinstance(edges, list):
        raise GraphFormatError("graph: 'vertices' and 'edges' must be arrays")
    for e in edges:
        if not isinstance(e, list) or len(e) != 2:
            raise GraphFormatError(f"graph: edge {e!r} is not a two-element array")
    return Graph(vertices, edges)


def graph_to_doc(g: Graph) -> dict:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in sorted(g.edges)]}


def load_graph(path: PathLike) -> Graph:
    return graph_from_doc(_read_json(path))


def _graph_field(doc: dict, base: Path) -> Graph:
    ref = _require(doc, "graph", "document")
    if isinstance(ref, str):
        return load_graph(base / ref)
    return graph_from_doc(ref)


def _label_in(x: Any):
    if isinstance(x, list):
        return tuple(_label_in(y) for y in x)
    if isinstance(x, str):
        return x
    raise FileFormatError(f"strategy label {x!r} must be a string")


def _label_out(x: Any):
    if isinstance(x, tuple):
        return [_label_out(y) for y in x]
    return x


def _value_in(x: Any) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise FileFormatError(f"payoff value {x!r} must be an integer or a 'p/q' string")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise FileFormatError(f"payoff value {x!r} is not a rational number") from None


def _value_out(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def game_from_doc(doc: dict, base: PathLike = ".") -> Game:
    g = _graph_field(doc, Path(base))
    raw = _require(doc, "strategies", "game")
    if not isinstance(raw, dict):
        raise FileFormatError("game: 'strategies' must be an object")
    strategies = {v: [_label_in(s) for s in labels] for v, labels in raw.items()}
    payoffs = _require(doc, "payoffs", "game")
    if not isinstance(payoffs, dict):
        raise FileFormatError("game: 'payoffs' must be an object")
    rows = []
    for v, entries in payoffs.items():
        g.check_vertex(v)
        for entry in entries:
            local = _require(entry, "profile", f"payoff row of {v!r}")
            value = _require(entry, "value", f"payoff row of {v!r}")
            rows.append((v, {u: _label_in(s) for u, s in local.items()}, _value_in(value)))
    missing = set(g.vertices) - set(payoffs)
    if missing:
        raise IncompleteGameError(f"no payoff table for {sorted(missing)}")
    return game_from_tables(g, strategies, rows)


def game_to_doc(game: Game) -> dict:
    g = game.graph
    payoffs = {}
    for v in g.vertices:
        names = game.local_vertices(v)
        payoffs[v] = [
            {"profile": {u: _label_out(s) for u, s in zip(names, key)}, "value": _value_out(val)}
            for key, val in game.payoff_table(v).items()
        ]
    return {
        "graph": graph_to_doc(g),
        "strategies": {v: [_label_out(s) for s in game.strategies[v]] for v in g.vertices},
        "payoffs": payoffs,
    }


def load_game(path: PathLike) -> Game:
    return game_from_doc(_read_json(path), Path(path).parent)


def profile_to_doc(game: Game, p) -> dict:
    return {v: _label_out(s) for v, s in profile_dict(game, p).items()}


def profile_from_doc(game: Game, doc: dict):
    return game.profile({v: _label_in(s) for v, s in doc.items()})


def load_query(path: PathLike) -> tuple[Graph, list[Atom], Formula]:
    doc = _read_json(path)
    g = _graph_field(doc, Path(path).parent)
    hyps = [parse_atom(text, g) for text in doc.get("hypotheses", [])]
    goal = parse(_require(doc, "goal", "query"), g)
    return g, hyps, goal


def counterexample_to_doc(cx) -> dict:
    doc = game_to_doc(cx.game)
    doc["witness"] = {
        "profiles": [profile_to_doc(cx.game, cx.first), profile_to_doc(cx.game, cx.second)],
        "refuted": str(cx.refuted),
        "hypotheses": sorted(str(a) for a in cx.hypotheses),
        "a_star": sorted(cx.a_star),
    }
    return doc


def load_counterexample(path: PathLike):
    """Game, the two witness profiles, and the refuted atom."""
    doc = _read_json(path)
    game = game_from_doc(doc, Path(path).parent)
    witness = _require(doc, "witness", "counterexample")
    first, second = (profile_from_doc(game, p) for p in _require(witness, "profiles", "witness"))
    refuted = parse_atom(_require(witness, "refuted", "witness"), game.graph)
    return game, first, second, refuted


def write_json(path: PathLike, doc: Any) -> None:
    text = json.dumps(doc, indent=1) + "\n"
    Path(path).write_text(text)
