"""Bundled graphs."""

from __future__ import annotations

from importlib import resources

from .graph import Graph, parse_graph

BUNDLED = ("nordic32_60.gr",)


def bundled_path(name: str):
    return resources.files("pdcost").joinpath("data", name)


def load_bundled(name: str) -> Graph:
    if name not in BUNDLED:
        raise KeyError(f"no bundled graph {name!r}; have {', '.join(BUNDLED)}")
    return parse_graph(bundled_path(name).read_text(encoding="utf-8"))


def nordic32() -> Graph:
    """The 60-node Nordic32 grid; vertex ``v`` is label ``v`` of the drawing."""
    return load_bundled("nordic32_60.gr")
