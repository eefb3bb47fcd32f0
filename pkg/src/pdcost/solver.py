"""Exact maximum observance per sensor budget.

The search state is the closed observed set ``B`` rather than the sensor set.
Adding a sensor at ``v`` moves ``B`` to ``C(B ∪ N[v])``, which equals the
observed set of the enlarged sensor set because the closure satisfies
``C(A ∪ X) = C(C(A) ∪ X)``.  States are expanded one budget level at a time;
a state contained in another state of the same level can never do better
(closure is monotone), so each level keeps only its maximal states.
"""

from __future__ import annotations

import bisect
import os
from dataclasses import dataclass, field
from typing import NamedTuple

from .graph import Graph, closed_twin_reduction
from .propagation import extend_closed, observed_mask

# rough per-state footprint of the frontier dict (key, witness tuple, slots)
_BYTES_PER_STATE = 400
_DEFAULT_MEMO_MB = 1024


class SolverLimitError(RuntimeError):
    """The state budget ran out before an exact value could be certified."""


class ObsResult(NamedTuple):
    value: int
    witness: tuple[int, ...]
    exact: bool


@dataclass(frozen=True)
class ObservanceRow:
    k: int
    max_obs: int
    witness: tuple[int, ...]
    exact: bool = True

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "maxObs": self.max_obs,
            "witness": list(self.witness),
            "exact": self.exact,
        }


@dataclass
class ObservanceTable:
    """``maxObs(G; k)`` for ``k = 0..`` up to the requested budget or ``γ_P``."""

    n: int
    rows: list[ObservanceRow] = field(default_factory=list)
    gamma_p: int | None = None

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(r.max_obs for r in self.rows)

    @property
    def k_max(self) -> int:
        return len(self.rows) - 1

    @property
    def all_exact(self) -> bool:
        return all(r.exact for r in self.rows)

    def row(self, k: int) -> ObservanceRow:
        if not 0 <= k < len(self.rows):
            raise IndexError(f"no row for k={k}")
        return self.rows[k]

    def complete(self) -> bool:
        """True when every row through ``γ_P`` is present and exact."""
        return self.gamma_p is not None and self.all_exact

    def to_json(self) -> dict:
        out = {"n": self.n, "rows": [r.to_json() for r in self.rows]}
        out["gammaP"] = self.gamma_p
        return out

    @classmethod
    def from_json(cls, data: dict) -> ObservanceTable:
        rows = [
            ObservanceRow(r["k"], r["maxObs"], tuple(r["witness"]), r["exact"])
            for r in data["rows"]
        ]
        return cls(data["n"], rows, data.get("gammaP"))

    @classmethod
    def from_values(cls, n: int, values) -> ObservanceTable:
        """Table without witnesses, for analysing a known ``maxObs`` sequence."""
        rows = [ObservanceRow(k, m, ()) for k, m in enumerate(values)]
        gamma = rows[-1].k if rows and rows[-1].max_obs == n else None
        return cls(n, rows, gamma)


def state_budget() -> int:
    """Frontier size limit derived from ``PDCOST_MEMO_MB``."""
    mb = int(os.environ.get("PDCOST_MEMO_MB", _DEFAULT_MEMO_MB))
    return max(1, mb * 1_000_000 // _BYTES_PER_STATE)


def _maximal_states(states: dict[int, tuple[int, ...]]) -> dict[int, tuple[int, ...]]:
    order = sorted(states, key=lambda b: (-b.bit_count(), states[b]))
    kept: list[int] = []
    out = {}
    for b in order:
        for k in kept:
            if not b & ~k:
                break
        else:
            kept.append(b)
            out[b] = states[b]
    return out


def _candidate_order(G: Graph) -> list[int]:
    cands = closed_twin_reduction(G)
    gain = {v: observed_mask(G, 1 << v).bit_count() for v in cands}
    return sorted(cands, key=lambda v: (-gain[v], v))


def _pad(G: Graph, witness: tuple[int, ...], k: int) -> tuple[int, ...]:
    used = set(witness)
    extra = [v for v in range(G.n) if v not in used][: k - len(witness)]
    return tuple(sorted(witness + tuple(extra)))


def observance_table(
    G: Graph,
    k_max: int | None = None,
    *,
    max_states: int | None = None,
    strict: bool = False,
) -> ObservanceTable:
    """Compute ``maxObs(G; k)`` for ``k = 0..k_max``, stopping at ``γ_P``.

    When a level holds more than ``max_states`` maximal states the frontier is
    cut to the best ones; later rows are then lower bounds marked inexact
    (or, with ``strict``, :class:`SolverLimitError` is raised).
    """
    if k_max is None:
        k_max = G.n
    if not 0 <= k_max <= G.n:
        raise ValueError(f"k_max must lie in 0..{G.n}")
    if max_states is None:
        max_states = state_budget()
    cands = _candidate_order(G)
    closed = G.closed

    table = ObservanceTable(G.n, [ObservanceRow(0, 0, ())])
    frontier: dict[int, tuple[int, ...]] = {0: ()}
    exact = True
    for k in range(1, k_max + 1):
        nxt: dict[int, tuple[int, ...]] = {}
        for B, W in frontier.items():
            for v in cands:
                cv = closed[v]
                if not cv & ~B:
                    continue
                B2 = extend_closed(G, B, cv)
                i = bisect.bisect(W, v)
                W2 = W[:i] + (v,) + W[i:]
                old = nxt.get(B2)
                if old is None or W2 < old:
                    nxt[B2] = W2
        frontier = _maximal_states(nxt)
        best = max(b.bit_count() for b in frontier)
        witness = min(W for b, W in frontier.items() if b.bit_count() == best)
        table.rows.append(ObservanceRow(k, best, witness, exact))
        if best == G.n:
            if exact:
                table.gamma_p = k
            break
        if len(frontier) > max_states:
            if strict:
                raise SolverLimitError(
                    f"level {k} has {len(frontier)} maximal states, "
                    f"budget is {max_states}"
                )
            keep = sorted(frontier, key=lambda b: (-b.bit_count(), frontier[b]))
            frontier = {b: frontier[b] for b in keep[:max_states]}
            exact = False
    return table


def max_obs(G: Graph, k: int, *, max_states: int | None = None) -> ObsResult:
    """Exact ``maxObs(G; k)`` with the lexicographically least witness found.

    Raises :class:`SolverLimitError` rather than return an uncertified value.
    """
    if not 0 <= k <= G.n:
        raise ValueError(f"budget k={k} outside 0..{G.n}")
    table = observance_table(G, k, max_states=max_states, strict=True)
    if k <= table.k_max:
        row = table.rows[k]
        return ObsResult(row.max_obs, row.witness, row.exact)
    last = table.rows[-1]
    return ObsResult(last.max_obs, _pad(G, last.witness, k), last.exact)


def power_domination_number(G: Graph, *, max_states: int | None = None) -> int:
    table = observance_table(G, G.n, max_states=max_states, strict=True)
    assert table.gamma_p is not None
    return table.gamma_p


def minimum_power_dominating_set(G: Graph, *, max_states: int | None = None) -> tuple[int, ...]:
    table = observance_table(G, G.n, max_states=max_states, strict=True)
    return table.rows[-1].witness


def marginal_obs(table: ObservanceTable, k: int) -> int:
    """``MObs(G; k) = maxObs(G; k) - maxObs(G; k-1)``."""
    if not 1 <= k <= table.k_max:
        raise ValueError(f"k={k} outside 1..{table.k_max}")
    if not (table.rows[k].exact and table.rows[k - 1].exact):
        raise ValueError(f"row {k} or {k - 1} is not exact")
    return table.rows[k].max_obs - table.rows[k - 1].max_obs


def greedy_observance(G: Graph, k: int) -> ObsResult:
    """Lower bound from repeatedly adding the best single sensor.

    Ties go to the smallest label.  The result is flagged inexact.
    """
    if not 0 <= k <= G.n:
        raise ValueError(f"budget k={k} outside 0..{G.n}")
    cands = closed_twin_reduction(G)
    B = 0
    chosen: list[int] = []
    for _ in range(k):
        best_v, best_B = None, B
        for v in cands:
            if v in chosen:
                continue
            B2 = extend_closed(G, B, G.closed[v])
            if best_v is None or B2.bit_count() > best_B.bit_count():
                best_v, best_B = v, B2
        if best_v is None or best_B == B:
            break
        chosen.append(best_v)
        B = best_B
    witness = _pad(G, tuple(sorted(chosen)), k)
    return ObsResult(B.bit_count(), witness, False)


__all__ = [
    "ObsResult",
    "ObservanceRow",
    "ObservanceTable",
    "SolverLimitError",
    "greedy_observance",
    "marginal_obs",
    "max_obs",
    "minimum_power_dominating_set",
    "observance_table",
    "power_domination_number",
    "state_budget",
]
