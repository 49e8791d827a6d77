"""Tight cut decomposition of hypergraphs with perfect matchings, in exact arithmetic."""

from importlib import resources

from .errors import BudgetExceeded, HyperbricksError, ParseError, PreconditionError, TheoremViolation
from .hypergraph import Hypergraph, parse, serialize

__all__ = [
    "BudgetExceeded", "HyperbricksError", "Hypergraph", "ParseError", "PreconditionError",
    "TheoremViolation", "fixture_names", "load_fixture", "parse", "serialize",
]


def fixture_names() -> list[str]:
    files = resources.files(__package__).joinpath("fixtures").iterdir()
    return sorted(f.name[:-5] for f in files if f.name.endswith(".json"))


def load_fixture(name: str) -> Hypergraph:
    """Load a shipped fixture such as ``"F1"``."""
    path = resources.files(__package__).joinpath("fixtures", f"{name}.json")
    return parse(path.read_text(encoding="utf-8"))
