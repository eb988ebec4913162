"""Fixture catalog of small finite groups.

All groups of order at most 16, S4, S5 and the Heisenberg groups mod 3 and
mod 5 (orders 27 and 125), stored as tables in ``data/catalog.json``. The
Heisenberg groups are the smallest nonabelian 3- and 5-groups, which the
separation search needs for commutator-type elements under p-group tags.
"""
import json
from functools import lru_cache
from importlib import resources

from .algebra import FiniteGroup, validate_group


@lru_cache(maxsize=None)
def catalog() -> tuple:
    """Every catalog group, sorted by order (stable within an order)."""
    raw = json.loads(resources.files("graphprod").joinpath("data/catalog.json").read_text())
    return tuple(validate_group(g["table"], name=g["name"]) for g in raw["groups"])


def by_name(name: str) -> FiniteGroup:
    for G in catalog():
        if G.name == name:
            return G
    raise KeyError(name)


def up_to_order(n: int) -> tuple:
    return tuple(G for G in catalog() if G.order <= n)
