"""Immutable simple graphs with bitmask adjacency.

Vertices are the integers ``0..n-1``.  A vertex set is a plain ``int`` used as
a bitmask (bit ``v`` set means ``v`` is a member); see :func:`to_mask` and
:func:`members` for converting to and from ordinary collections.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence

VertexSet = int

#: Hard cap on the number of vertices any constructor will produce.
VERTEX_CAP = 4096


class GraphFormatError(ValueError):
    """Raised when graph-file text cannot be parsed."""

    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class VertexCapError(ValueError):
    """Raised when a construction would exceed the vertex cap."""

    def __init__(self, required: int, cap: int) -> None:
        super().__init__(
            f"graph needs {required} vertices, above the vertex cap {cap}"
        )
        self.required = required
        self.cap = cap


def check_cap(n: int, vertex_cap: int | None = None) -> None:
    cap = VERTEX_CAP if vertex_cap is None else vertex_cap
    if n > cap:
        raise VertexCapError(n, cap)


def to_mask(vertices: Iterable[int]) -> VertexSet:
    mask = 0
    for v in vertices:
        if v < 0:
            raise ValueError(f"negative vertex {v}")
        mask |= 1 << v
    return mask


def members(mask: VertexSet) -> list[int]:
    """Return the vertices of ``mask`` in increasing order."""
    if mask.bit_length() > 256:
        # bit peeling is quadratic in the word count on wide masks
        bits = bin(mask)[:1:-1]
        out = []
        i = bits.find("1")
        while i >= 0:
            out.append(i)
            i = bits.find("1", i + 1)
        return out
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_members(mask: VertexSet) -> Iterator[int]:
    if mask.bit_length() > 256:
        yield from members(mask)
        return
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """A simple undirected graph on vertices ``0..n-1``.

    Instances are immutable; ``adj[v]`` is the neighbor bitmask of ``v`` and
    ``nbrs[v]`` the sorted neighbor tuple.
    """

    __slots__ = ("n", "adj", "nbrs", "closed", "full", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if n < 1:
            raise ValueError("a graph needs at least one vertex")
        nb: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            nb[u].add(v)
            nb[v].add(u)
        nbrs = [tuple(sorted(x)) for x in nb]
        adj = [to_mask(x) for x in nbrs]
        self._setup(n, adj, sum(map(len, nbrs)) // 2, nbrs)

    def _setup(
        self, n: int, adj: Sequence[int], m: int, nbrs: Sequence[tuple[int, ...]] | None = None
    ) -> None:
        if nbrs is None:
            nbrs = [tuple(members(a)) for a in adj]
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(adj))
        object.__setattr__(self, "nbrs", tuple(nbrs))
        object.__setattr__(
            self, "closed", tuple(a | (1 << v) for v, a in enumerate(adj))
        )
        object.__setattr__(self, "full", (1 << n) - 1)
        object.__setattr__(self, "_m", m)

    @classmethod
    def from_adjacency(cls, adj: Sequence[int]) -> Graph:
        """Build from neighbor bitmasks, checking symmetry and loops."""
        n = len(adj)
        if n < 1:
            raise ValueError("a graph needs at least one vertex")
        full = (1 << n) - 1
        for v, a in enumerate(adj):
            if a & ~full:
                raise ValueError(f"vertex {v} has a neighbor >= n")
            if a >> v & 1:
                raise ValueError(f"self-loop at {v}")
            for u in iter_members(a):
                if not adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")
        g = cls.__new__(cls)
        g._setup(n, adj, sum(a.bit_count() for a in adj) // 2)
        return g

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def m(self) -> int:
        return self._m

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.nbrs[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.nbrs[v])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.nbrs]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def check_set(self, mask: VertexSet) -> VertexSet:
        if mask < 0 or mask & ~self.full:
            raise ValueError(f"vertex set has members outside 0..{self.n - 1}")
        return mask

    def mask(self, vertices: Iterable[int]) -> VertexSet:
        return self.check_set(to_mask(vertices))

    def components(self) -> list[VertexSet]:
        seen = 0
        comps = []
        for v in range(self.n):
            if seen >> v & 1:
                continue
            comp = frontier = 1 << v
            while frontier:
                nxt = 0
                for u in iter_members(frontier):
                    nxt |= self.adj[u]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def bipartition(self) -> tuple[VertexSet, VertexSet] | None:
        """Return a 2-coloring ``(side0, side1)``, or None if not bipartite."""
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self.nbrs[u]:
                    if color[w] < 0:
                        color[w] = 1 - color[u]
                        stack.append(w)
                    elif color[w] == color[u]:
                        return None
        side0 = to_mask(v for v in range(self.n) if color[v] == 0)
        return side0, self.full & ~side0

    def induced_subgraph(self, mask: VertexSet) -> tuple[Graph, list[int]]:
        """Return ``G[mask]`` relabeled densely plus the new-to-old label map."""
        old = members(self.check_set(mask))
        if not old:
            raise ValueError("induced subgraph needs at least one vertex")
        index = {v: i for i, v in enumerate(old)}
        edges = [
            (index[u], index[v]) for u, v in self.edges() if u in index and v in index
        ]
        return Graph(len(old), edges), old

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.adj == other.adj

    def __hash__(self) -> int:
        return hash(self.adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def closed_neighborhood(G: Graph, S: VertexSet) -> VertexSet:
    """``N[S]``: the members of ``S`` together with all their neighbors."""
    out = 0
    for v in iter_members(G.check_set(S)):
        out |= G.closed[v]
    return out


def open_neighborhood(G: Graph, S: VertexSet) -> VertexSet:
    out = 0
    for v in iter_members(G.check_set(S)):
        out |= G.adj[v]
    return out


# ---------------------------------------------------------------------------
# Generators


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def clique(n: int) -> Graph:
    if n < 1:
        raise ValueError("clique needs n >= 1")
    return Graph(n, combinations(range(n), 2))


def star(leaves: int) -> Graph:
    """``K_{1,leaves}`` with center 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def empty_graph(n: int) -> Graph:
    return Graph(n)


def disjoint_union(graphs: Sequence[Graph], vertex_cap: int | None = None) -> Graph:
    """Union with the vertices of ``graphs[i]`` shifted past those of earlier ones."""
    if not graphs:
        raise ValueError("disjoint_union needs at least one graph")
    total = sum(g.n for g in graphs)
    check_cap(total, vertex_cap)
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph(total, edges)


def cartesian_product(G: Graph, H: Graph, vertex_cap: int | None = None) -> Graph:
    """``G □ H`` with vertex ``(i, j)`` stored at index ``i * H.n + j``."""
    n = G.n * H.n
    check_cap(n, vertex_cap)
    edges = []
    for i in range(G.n):
        for j, jj in H.edges():
            edges.append((i * H.n + j, i * H.n + jj))
    for i, ii in G.edges():
        for j in range(H.n):
            edges.append((i * H.n + j, ii * H.n + j))
    return Graph(n, edges)


def closed_twin_reduction(G: Graph) -> list[int]:
    """Sensor candidates that suffice for every budget.

    A vertex ``u`` is dropped when some ``v`` has ``N[u]`` strictly inside
    ``N[v]``, or ``N[u] == N[v]`` and ``v < u``.  Since the observed set is
    monotone in the dominated set, swapping ``u`` for ``v`` never loses.
    """
    closed = G.closed
    keep = []
    for u in range(G.n):
        cu = closed[u]
        dominated = False
        # only vertices of N[u] can have N[v] ⊇ N[u]
        for v in iter_members(cu):
            if v == u:
                continue
            cv = closed[v]
            if cu & ~cv == 0 and (cu != cv or v < u):
                dominated = True
                break
        if not dominated:
            keep.append(u)
    return keep


def twin_pairs(G: Graph) -> list[tuple[int, int]]:
    """All pairs ``x < y`` with ``N(x) == N(y)`` or ``N[x] == N[y]``."""
    pairs = []
    for x, y in combinations(range(G.n), 2):
        if G.adj[x] == G.adj[y] or G.closed[x] == G.closed[y]:
            pairs.append((x, y))
    return pairs


# ---------------------------------------------------------------------------
# File format


def parse_graph(text: str, vertex_cap: int | None = None) -> Graph:
    """Parse the ``p edge`` format (1-based ids in the file, 0-based in memory)."""
    n = m = None
    header_line = 0
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError(lineno, "duplicate header")
            if len(parts) != 4 or parts[1] != "edge":
                raise GraphFormatError(lineno, "header must be 'p edge <n> <m>'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(lineno, "non-integer in header") from None
            if n < 1 or m < 0:
                raise GraphFormatError(lineno, "header needs n >= 1 and m >= 0")
            check_cap(n, vertex_cap)
            header_line = lineno
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError(lineno, "edge before header")
            if len(parts) != 3:
                raise GraphFormatError(lineno, "edge line must be 'e <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(lineno, "non-integer vertex id") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(lineno, f"vertex id out of range 1..{n}")
            if u == v:
                raise GraphFormatError(lineno, f"self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphFormatError(lineno, f"duplicate edge {u} {v}")
            seen.add(key)
            edges.append((u - 1, v - 1))
        else:
            raise GraphFormatError(lineno, f"unrecognized line {line!r}")
    if n is None:
        raise GraphFormatError(0, "missing 'p edge' header")
    if len(edges) != m:
        raise GraphFormatError(
            header_line, f"header declares {m} edges, found {len(edges)}"
        )
    return Graph(n, edges)


def serialize_graph(G: Graph, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {G.n} {G.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def read_graph(path, vertex_cap: int | None = None) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read(), vertex_cap=vertex_cap)


def write_graph(G: Graph, path, comments: Sequence[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_graph(G, comments))
