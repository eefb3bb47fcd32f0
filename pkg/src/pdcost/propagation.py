"""The power domination process and its closure operators.

All sets are bitmasks (see :mod:`pdcost.graph`).  Forcing runs in synchronous
rounds: at each round every eligible forcer is taken in increasing label
order, and the vertices it forces join the set only when the round ends.
The fixed point does not depend on this order, only the recorded chronology
does.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, VertexSet, closed_neighborhood, iter_members, members


@dataclass(frozen=True)
class PropagationTrace:
    """Result of a closure run: start set, fixed point, and forces in order."""

    initial: VertexSet
    final: VertexSet
    forces: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return self.final.bit_count()

    @property
    def observed(self) -> list[int]:
        return members(self.final)

    def replay(self, G: Graph) -> bool:
        """Check that the forces are valid when applied one at a time."""
        cur = self.initial
        for x, y in self.forces:
            if not cur >> x & 1 or cur >> y & 1:
                return False
            if G.adj[x] & ~cur != 1 << y:
                return False
            cur |= 1 << y
        return cur == self.final


def _neighbors_of(G: Graph, mask: VertexSet) -> VertexSet:
    adj = G.adj
    out = 0
    for v in iter_members(mask):
        out |= adj[v]
    return out


def close_mask(G: Graph, B: VertexSet, check: VertexSet | None = None) -> VertexSet:
    """Zero forcing closure of ``B`` without a trace.

    ``check`` limits the first round to the given forcers; callers extending
    an already-closed set pass only the vertices whose outside neighborhood
    changed.
    """
    adj = G.adj
    check = B if check is None else check & B
    while check:
        newly = 0
        for x in iter_members(check):
            out = adj[x] & ~B
            if out and not out & (out - 1):
                newly |= out
        if not newly:
            break
        B |= newly
        check = (newly | _neighbors_of(G, newly)) & B
    return B


def extend_closed(G: Graph, B: VertexSet, add: VertexSet) -> VertexSet:
    """``C(B ∪ add)`` for a set ``B`` that is already closed."""
    new = add & ~B
    if not new:
        return B
    B |= new
    return close_mask(G, B, new | _neighbors_of(G, new))


def zero_forcing_closure(G: Graph, T: VertexSet) -> PropagationTrace:
    """Close ``T`` under forcing by members of the current set."""
    G.check_set(T)
    adj = G.adj
    B = T
    check = T
    forces = []
    while check:
        newly = 0
        for x in iter_members(check):
            out = adj[x] & ~B
            if out and not out & (out - 1) and not newly & out:
                newly |= out
                forces.append((x, out.bit_length() - 1))
        if not newly:
            break
        B |= newly
        check = (newly | _neighbors_of(G, newly)) & B
    return PropagationTrace(T, B, tuple(forces))


def star_closure(G: Graph, T: VertexSet) -> VertexSet:
    """Close ``T`` under forcing by any vertex of ``G``, inside the set or not."""
    G.check_set(T)
    adj = G.adj
    B = T
    check = G.full
    while check:
        newly = 0
        for x in iter_members(check):
            out = adj[x] & ~B
            if out and not out & (out - 1):
                newly |= out
        if not newly:
            break
        B |= newly
        check = _neighbors_of(G, newly)
    return B


def observed_mask(G: Graph, S: VertexSet) -> VertexSet:
    """``Obs(G; S)`` as a bitmask."""
    return close_mask(G, closed_neighborhood(G, S))


def observe(G: Graph, S: VertexSet) -> PropagationTrace:
    """Run the power domination process from sensors ``S``.

    The trace starts at ``N[S]``; its final set is ``Obs(G; S)``.
    """
    return zero_forcing_closure(G, closed_neighborhood(G, S))


def is_power_dominating_set(G: Graph, S: VertexSet) -> bool:
    return observed_mask(G, S) == G.full
