"""Write the built-in graphs, games and queries as JSON under fixtures/."""

from pathlib import Path

from fundep import io
from fundep.fixtures import GAMES, GRAPHS

QUERIES = {
    "path4_relay": ("path4", ["a |> d"], "b,c |> d"),
    "path4_end": ("path4", ["a |> d"], "b |> d"),
    "path3_no_relay": ("path3", ["a |> c"], "b |> c"),
    "square_tail": ("square_tail", ["a,c |> e"], "b,c,d |> e"),
    "spider_cycle": ("spider", [], "a |> b -> (b |> c -> (c |> a -> d,e,f |> a,b,c))"),
    "diamond_separation": ("diamond", [], "(a |> d) -> (b,c |> d)"),
    "falsum": ("path4", [], "false"),
}


def main(root: Path = Path(__file__).resolve().parent.parent / "fixtures") -> None:
    for sub in ("graphs", "games", "queries"):
        (root / sub).mkdir(parents=True, exist_ok=True)
    for name, g in GRAPHS.items():
        io.write_json(root / "graphs" / f"{name}.json", io.graph_to_doc(g))
    for name, make in GAMES.items():
        io.write_json(root / "games" / f"{name}.json", io.game_to_doc(make()))
    for name, (graph, hyps, goal) in QUERIES.items():
        doc = {"graph": f"../graphs/{graph}.json", "hypotheses": hyps, "goal": goal}
        io.write_json(root / "queries" / f"{name}.json", doc)


if __name__ == "__main__":
    main()
