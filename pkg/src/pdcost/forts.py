"""Forts: recognition, entrances, the minimum fort number and minimal forts.

A fort is a nonempty set ``F`` such that no vertex outside ``F`` has exactly
one neighbor in ``F``.  The unobserved part of any non-dominating sensor
placement is a fort, and a placement dominates iff it meets ``F ∪ e(F)`` for
every (minimal) fort ``F``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, VertexSet, iter_members, members, open_neighborhood, twin_pairs
from .propagation import observed_mask

DEFAULT_ENUMERATION_LIMIT = 10**6


class FortLimitError(RuntimeError):
    pass


def entrance(G: Graph, F: VertexSet) -> VertexSet:
    """Vertices outside ``F`` with at least one neighbor in ``F``."""
    return open_neighborhood(G, F) & ~F


def _violations(G: Graph, F: VertexSet) -> list[int]:
    adj = G.adj
    return [x for x in iter_members(entrance(G, F)) if (adj[x] & F).bit_count() == 1]


def is_fort(G: Graph, F: VertexSet) -> bool:
    G.check_set(F)
    if not F:
        raise ValueError("a fort must be nonempty")
    adj = G.adj
    for x in iter_members(entrance(G, F)):
        if (adj[x] & F).bit_count() == 1:
            return False
    return True


@dataclass(frozen=True)
class FortCertificate:
    fort: VertexSet
    entrance: VertexSet

    @classmethod
    def certify(cls, G: Graph, F: VertexSet) -> FortCertificate:
        if not is_fort(G, F):
            raise ValueError(f"{members(F)} is not a fort")
        return cls(F, entrance(G, F))

    @property
    def territory(self) -> VertexSet:
        """The fort together with its entrance."""
        return self.fort | self.entrance

    @property
    def size(self) -> int:
        return self.fort.bit_count()

    def to_json(self) -> dict:
        return {"fort": members(self.fort), "entrance": members(self.entrance)}


def fort_complement(G: Graph, S: VertexSet) -> FortCertificate | None:
    """Certificate for the unobserved set of ``S``, or None if ``S`` dominates."""
    rest = G.full & ~observed_mask(G, S)
    if not rest:
        return None
    return FortCertificate.certify(G, rest)


class _FortSearch:
    """Branching search for forts.

    A partial set ``F`` with a violated vertex ``x`` (outside, exactly one
    neighbor in ``F``) must grow by ``x`` itself or by another neighbor of
    ``x``.  Options are tried in turn, each later branch excluding the earlier
    ones, so subtrees are disjoint.  Every fort containing the start set and
    avoiding the excluded vertices contains some leaf of the search, hence
    every minimal fort is reached as a leaf.
    """

    def __init__(self, G: Graph, size_bound: int, collect: bool, limit: int = 0):
        self.G = G
        self.bound = size_bound
        self.collect = collect
        self.limit = limit
        self.found: list[VertexSet] = []
        self.best: VertexSet | None = None

    def run(self) -> None:
        for v in range(self.G.n):
            excluded = (1 << v) - 1
            self._rec(1 << v, excluded)

    def _rec(self, F: VertexSet, X: VertexSet) -> None:
        size = F.bit_count()
        if size > self.bound:
            return
        adj = self.G.adj
        choice = None
        for x in _violations(self.G, F):
            opts = (adj[x] | 1 << x) & ~F & ~X
            if choice is None or opts.bit_count() < choice.bit_count():
                choice = opts
                if not opts:
                    return
        if choice is None:
            if self.collect:
                self.found.append(F)
                if self.limit and len(self.found) > self.limit:
                    raise FortLimitError(f"more than {self.limit} forts found")
            elif self.best is None or size < self.best.bit_count():
                self.best = F
                self.bound = size - 1
            return
        if size + 1 > self.bound:
            return
        for o in iter_members(choice):
            self._rec(F | 1 << o, X)
            X |= 1 << o


def default_size_cap(G: Graph) -> int:
    return G.n if G.n <= 24 else 6


def minimum_fort(G: Graph, size_cap: int | None = None) -> VertexSet | None:
    """A smallest fort of size at most ``size_cap``, or None if there is none."""
    if size_cap is None:
        size_cap = default_size_cap(G)
    if size_cap < 1:
        raise ValueError("size_cap must be positive")
    for v in range(G.n):
        if not G.adj[v]:
            return 1 << v
    if size_cap < 2:
        return None
    pairs = twin_pairs(G)
    if pairs:
        x, y = pairs[0]
        return 1 << x | 1 << y
    if size_cap < 3:
        return None
    search = _FortSearch(G, size_cap, collect=False)
    search.run()
    return search.best


def min_fort_number(G: Graph, size_cap: int | None = None) -> int | None:
    """The minimum fort size, or None when it exceeds ``size_cap``.

    ``V(G)`` is always a fort, so with ``size_cap >= n`` the answer is exact.
    """
    F = minimum_fort(G, size_cap)
    return None if F is None else F.bit_count()


def enumerate_minimal_forts(
    G: Graph, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> list[FortCertificate]:
    """All inclusion-minimal forts, sorted by size then members.

    Exponential; raises :class:`FortLimitError` past ``limit`` forts.
    """
    search = _FortSearch(G, G.n, collect=True, limit=limit)
    search.run()
    leaves = sorted(set(search.found), key=lambda f: (f.bit_count(), members(f)))
    minimal: list[VertexSet] = []
    for F in leaves:
        if not any(M & ~F == 0 for M in minimal):
            minimal.append(F)
    return [FortCertificate(F, entrance(G, F)) for F in minimal]


__all__ = [
    "FortCertificate",
    "FortLimitError",
    "entrance",
    "enumerate_minimal_forts",
    "fort_complement",
    "is_fort",
    "min_fort_number",
    "minimum_fort",
    "twin_pairs",
]
