"""Grid gadgets, the affix operation and graphs with prescribed useful sizes.

A ``⊞^a_{ℓ,2m}`` gadget is the cylindrical grid ``P_ℓ □ C_{2m}`` whose first
two columns carry pendant paths of length two (layers L1 and L2); every L2
vertex is joined to each of the ``a`` affix vertices through its own
subdivision vertex (layer L3).  Affixing identifies the affix vertices with a
chosen vertex set of a host graph.  Without sensors on the whole affix set
only a strip of the gadget whose width does not depend on ``m`` gets observed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .graph import Graph, VertexSet, check_cap, clique, members, to_mask
from .propagation import observed_mask

ROLES = ("affix", "grid", "L1", "L2", "L3")


@dataclass(frozen=True)
class GadgetSpec:
    a: int
    ell: int
    two_m: int

    def __post_init__(self) -> None:
        if self.a < 1 or self.ell < 1:
            raise ValueError("gadget needs a >= 1 and ell >= 1")
        if self.two_m < 4 or self.two_m % 2:
            raise ValueError("cycle length must be even and at least 4")

    @property
    def m(self) -> int:
        return self.two_m // 2

    @property
    def role_sizes(self) -> dict[str, int]:
        ell = self.ell
        return {
            "affix": self.a,
            "grid": self.two_m * ell,
            "L1": 2 * ell,
            "L2": 2 * ell,
            "L3": 2 * self.a * ell,
        }

    @property
    def order(self) -> int:
        return sum(self.role_sizes.values())


@dataclass(frozen=True)
class GadgetGraph:
    """A gadget with its role partition.

    Vertices are laid out as affix ``x_1..x_a`` first, then grid vertex
    ``(t, c)`` at ``a + t * 2m + c``, then L1, L2 and L3.
    """

    spec: GadgetSpec
    graph: Graph
    roles: dict[str, VertexSet]

    @property
    def affix_vertices(self) -> list[int]:
        return list(range(self.spec.a))

    def grid_vertex(self, t: int, c: int) -> int:
        return self.spec.a + t * self.spec.two_m + c

    def column(self, c: int) -> VertexSet:
        return to_mask(self.grid_vertex(t, c) for t in range(self.spec.ell))


def build_gadget(spec: GadgetSpec, vertex_cap: int | None = None) -> GadgetGraph:
    check_cap(spec.order, vertex_cap)
    a, ell, w = spec.a, spec.ell, spec.two_m
    edges = []
    grid0 = a
    for t in range(ell):
        for c in range(w):
            v = grid0 + t * w + c
            edges.append((v, grid0 + t * w + (c + 1) % w))
            if t + 1 < ell:
                edges.append((v, v + w))
    l1 = grid0 + ell * w
    l2 = l1 + 2 * ell
    l3 = l2 + 2 * ell
    for t in range(ell):
        for c in (0, 1):
            i = 2 * t + c
            edges.append((grid0 + t * w + c, l1 + i))
            edges.append((l1 + i, l2 + i))
    for i in range(2 * ell):
        for x in range(a):
            sub = l3 + i * a + x
            edges.append((l2 + i, sub))
            edges.append((sub, x))
    n = l3 + 2 * a * ell
    roles = {
        "affix": (1 << a) - 1,
        "grid": ((1 << l1) - 1) & ~((1 << grid0) - 1),
        "L1": ((1 << l2) - 1) & ~((1 << l1) - 1),
        "L2": ((1 << l3) - 1) & ~((1 << l2) - 1),
        "L3": ((1 << n) - 1) & ~((1 << l3) - 1),
    }
    return GadgetGraph(spec, Graph(n, edges), roles)


@dataclass(frozen=True)
class AffixedGraph:
    """Host graph with one gadget attached.

    ``label_map[u]`` is the new label of gadget vertex ``u``; host vertices
    keep their labels.  ``added`` holds the vertices the gadget brought in.
    """

    graph: Graph
    host_order: int
    attach: tuple[int, ...]
    label_map: tuple[int, ...]
    roles: dict[str, VertexSet]

    @property
    def added(self) -> VertexSet:
        return self.graph.full & ~((1 << self.host_order) - 1)


def affix(
    G0: Graph, A: VertexSet, gadget: GadgetGraph, vertex_cap: int | None = None
) -> AffixedGraph:
    """Identify the sorted members of ``A`` with affix vertices ``x_1..x_a``."""
    attach = members(G0.check_set(A))
    if len(attach) != gadget.spec.a:
        raise ValueError(
            f"gadget has {gadget.spec.a} affix vertices but |A| = {len(attach)}"
        )
    gn = gadget.graph.n
    a = gadget.spec.a
    total = G0.n + gn - a
    check_cap(total, vertex_cap)
    label = list(attach) + list(range(G0.n, G0.n + gn - a))
    edges = G0.edges()
    edges.extend((label[u], label[v]) for u, v in gadget.graph.edges())
    roles = {}
    for role, mask in gadget.roles.items():
        roles[role] = to_mask(label[u] for u in members(mask))
    return AffixedGraph(Graph(total, edges), G0.n, tuple(attach), tuple(label), roles)


def leafy_host(core: Graph, leaves_per_vertex: int) -> Graph:
    """``core`` with ``leaves_per_vertex`` pendant vertices on every vertex."""
    edges = core.edges()
    nxt = core.n
    for v in range(core.n):
        for _ in range(leaves_per_vertex):
            edges.append((v, nxt))
            nxt += 1
    return Graph(nxt, edges)


def cycle_lengths(s: int, R) -> dict[int, int]:
    """Cycle lengths ``x_i`` for the sizes in ``R``, largest ``i`` first.

    ``x_i = 2 ⌈(63 s^4 + (4s^2 + s) Σ_{t>i} x_t) / (4s + 1)⌉`` for nonzero
    ``i`` in ``R`` and 0 otherwise.
    """
    _check_sizes(s, R)
    x: dict[int, int] = {}
    tail = 0
    for i in range(s, 0, -1):
        if i in R:
            num = 63 * s**4 + (4 * s * s + s) * tail
            x[i] = 2 * -(-num // (4 * s + 1))
        else:
            x[i] = 0
        tail += x[i]
    return x


def _check_sizes(s: int, R) -> None:
    if s < 1:
        raise ValueError("s must be at least 1")
    if 0 not in R or s not in R or any(not 0 <= i <= s for i in R):
        raise ValueError("R must be a subset of 0..s containing 0 and s")


@dataclass
class Realization:
    """Graph built to have useful sizes ``R``, with its construction data."""

    graph: Graph
    s: int
    R: tuple[int, ...]
    ell: int
    x: dict[int, int]
    attach_sets: dict[int, VertexSet]
    clique: VertexSet
    gadgets: dict[int, dict[str, VertexSet]] = field(default_factory=dict)
    vertex_bound: int = 0
    mini: bool = False

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "R": list(self.R),
            "ell": self.ell,
            "n": self.graph.n,
            "mini": self.mini,
            "x": {str(i): v for i, v in sorted(self.x.items())},
            "A": {str(i): members(m) for i, m in sorted(self.attach_sets.items())},
            "clique": members(self.clique),
            "vertexBound": self.vertex_bound,
            "gadgets": {
                str(i): {r: members(m) for r, m in roles.items()}
                for i, roles in sorted(self.gadgets.items())
            },
        }


def realized_order(s: int, R, ell: int, x: dict[int, int]) -> int:
    n = s + s * (s + 1)
    for i in R:
        if i:
            n += 4 * ell + 2 * ell * i + ell * x[i]
    return n


def realize_useful_sizes(
    s: int,
    R,
    vertex_cap: int | None = None,
    *,
    ell: int | None = None,
    cycles: dict[int, int] | None = None,
) -> Realization:
    """Build a graph whose useful sizes are exactly ``R``.

    The host is ``K_s`` with ``s + 1`` leaves on each clique vertex; for each
    nonzero ``i`` in ``R`` a ``⊞^i_{4s+1, x_i}`` gadget is affixed at the first
    ``i`` clique vertices.  Passing ``ell`` or ``cycles`` gives a small
    "mini" instance that ignores the size constants, for end-to-end checks on
    graphs the exact solver can handle.
    """
    R = tuple(sorted(set(R)))
    _check_sizes(s, R)
    mini = ell is not None or cycles is not None
    if ell is None:
        ell = 4 * s + 1
    x = cycle_lengths(s, R) if cycles is None else dict(cycles)
    for i in R:
        if i and (x.get(i, 0) < 4 or x[i] % 2):
            raise ValueError(f"cycle length for size {i} must be even and >= 4")
    check_cap(realized_order(s, R, ell, x), vertex_cap)

    G = leafy_host(clique(s), s + 1)
    K = (1 << s) - 1
    attach = {i: (1 << i) - 1 for i in range(1, s + 1)}
    gadgets = {}
    for i in sorted(R, reverse=True):
        if not i:
            continue
        gadget = build_gadget(GadgetSpec(i, ell, x[i]), vertex_cap=vertex_cap)
        res = affix(G, attach[i], gadget, vertex_cap=vertex_cap)
        G = res.graph
        gadgets[i] = res.roles
    bound = 33 * s**3 + (4 * s + 1) * sum(x[i] for i in R if i)
    x_out = {i: x.get(i, 0) for i in range(1, s + 1)}
    return Realization(G, s, R, ell, x_out, attach, K, gadgets, bound, mini)


@dataclass
class BoundedObservanceReport:
    bound: int
    max_observed: int
    checked: int
    violations: list[tuple[int, ...]]
    covering_full: bool
    exhaustive: bool

    @property
    def ratio(self) -> float:
        return self.max_observed / self.bound

    @property
    def ok(self) -> bool:
        return not self.violations and self.covering_full


def verify_bounded_observance(
    aff: AffixedGraph,
    s: int,
    trials: int = 1000,
    *,
    exhaustive_limit: int = 200_000,
    seed: int = 0,
) -> BoundedObservanceReport:
    """Check the observance bound on the gadget for sensor sets of size ``s``.

    Sets missing part of the attach set may observe at most
    ``2ℓ(|A| + 3s + 2)`` gadget vertices; sets covering it observe them all.
    All ``s``-sets are tried when there are at most ``exhaustive_limit`` of
    them, otherwise ``trials`` random ones plus the covering sets.
    """
    G = aff.graph
    A = to_mask(aff.attach)
    ell = aff.roles["L1"].bit_count() // 2
    m = aff.roles["grid"].bit_count() // (2 * ell)
    if not (m >= ell > 4 * s):
        raise ValueError(f"need m >= ell > 4s, got m={m}, ell={ell}, s={s}")
    host = (1 << aff.host_order) - 1
    for w in aff.attach:
        leaves = [u for u in G.nbrs[w] if host >> u & 1 and G.degree(u) == 1]
        if len(leaves) < s + 1:
            raise ValueError(f"attach vertex {w} has fewer than {s + 1} leaves")
    if s < 1 or s > G.n:
        raise ValueError("s must be in 1..n")

    bound = 2 * ell * (len(aff.attach) + 3 * s + 2)
    added = aff.added
    exhaustive = comb(G.n, s) <= exhaustive_limit
    if exhaustive:
        sets = combinations(range(G.n), s)
    else:
        rng = random.Random(seed)
        sets = (tuple(sorted(rng.sample(range(G.n), s))) for _ in range(trials))
    worst = 0
    checked = 0
    violations = []
    for S in sets:
        mask = to_mask(S)
        if A & ~mask == 0:
            continue
        seen = (observed_mask(G, mask) & added).bit_count()
        checked += 1
        worst = max(worst, seen)
        if seen > bound:
            violations.append(S)
    covering_full = True
    if len(aff.attach) <= s:
        rest = [v for v in range(G.n) if not A >> v & 1]
        extra = s - len(aff.attach)
        for pad in combinations(rest, extra) if exhaustive else [tuple(rest[:extra])]:
            mask = A | to_mask(pad)
            if observed_mask(G, mask) & added != added:
                covering_full = False
                break
    return BoundedObservanceReport(bound, worst, checked, violations, covering_full, exhaustive)


# ---------------------------------------------------------------------------
# Graphs showing the γ_P threshold cannot be lowered


def matching_graph(n: int) -> Graph:
    """``(n/2) K_2``."""
    if n < 2 or n % 2:
        raise ValueError("n must be even and positive")
    return Graph(n, [(2 * i, 2 * i + 1) for i in range(n // 2)])


@dataclass(frozen=True)
class CliqueOfHexagons:
    graph: Graph
    clique: VertexSet
    outer: tuple[VertexSet, ...]


def clique_of_hexagons(n: int) -> CliqueOfHexagons:
    """``(n/6) C_6`` with an independent triple from each hexagon made a clique.

    Hexagon ``c`` occupies ``6c..6c+5`` in cycle order; its even offsets join
    the clique and its odd offsets form a fort of size 3.
    """
    if n < 6 or n % 6:
        raise ValueError("n must be a positive multiple of 6")
    edges = []
    for c in range(n // 6):
        base = 6 * c
        edges.extend((base + i, base + (i + 1) % 6) for i in range(6))
    K = [v for v in range(n) if v % 2 == 0]
    edges.extend(combinations(K, 2))
    outer = tuple(to_mask(6 * c + o for o in (1, 3, 5)) for c in range(n // 6))
    return CliqueOfHexagons(Graph(n, edges), to_mask(K), outer)
