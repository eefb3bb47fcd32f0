"""Cost of a sensor placement, the minimum-cost envelope and useful sizes.

With ``m_k = maxObs(G; k)`` the best cost using ``k`` sensors is the line
``k + β (n - m_k)`` in the observance cost ratio ``β``.  Everything here is
exact: ratios are :class:`fractions.Fraction` and no float ever enters an
envelope or usefulness decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .graph import Graph, VertexSet
from .propagation import observed_mask
from .solver import ObservanceTable, marginal_obs

Rational = Fraction
RationalLike = Union[Fraction, int, str]


class TableNotExactError(ValueError):
    """The table does not cover every size through ``γ_P`` exactly."""


def as_rational(value: RationalLike) -> Fraction:
    """Parse ``"p/q"`` strings, ints or Fractions; floats are refused."""
    if isinstance(value, float):
        raise TypeError("use an exact rational, not a float")
    return Fraction(value)


def format_rational(value: Fraction | None) -> str:
    if value is None:
        return "inf"
    return str(value)


def _check_beta(beta: RationalLike) -> Fraction:
    b = as_rational(beta)
    if b < 0:
        raise ValueError("beta must be nonnegative")
    return b


def cost(G: Graph, S: VertexSet, beta: RationalLike) -> Fraction:
    """``|S| + β (n - |Obs(G; S)|)``."""
    b = _check_beta(beta)
    unobserved = G.n - observed_mask(G, S).bit_count()
    return S.bit_count() + b * unobserved


@dataclass(frozen=True)
class CostLine:
    k: int
    slope: int

    @property
    def intercept(self) -> int:
        return self.k

    def at(self, beta: RationalLike) -> Fraction:
        return self.k + as_rational(beta) * self.slope

    def __str__(self) -> str:
        if self.slope == 0:
            return str(self.k)
        if self.k == 0:
            return f"{self.slope}β"
        return f"{self.k} + {self.slope}β"


@dataclass(frozen=True)
class Segment:
    """Size ``k`` is β-best on ``[lo, hi]``; ``hi`` None means unbounded."""

    lo: Fraction
    hi: Fraction | None
    k: int
    line: CostLine

    def contains(self, beta: Fraction) -> bool:
        return self.lo <= beta and (self.hi is None or beta <= self.hi)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
            "line": str(self.line),
        }


def cost_lines(table: ObservanceTable) -> list[CostLine]:
    _require_complete(table)
    return [CostLine(r.k, table.n - r.max_obs) for r in table.rows]


def _require_complete(table: ObservanceTable) -> None:
    if not table.complete():
        raise TableNotExactError(
            "need exact maxObs values for every size through the power "
            "domination number"
        )
    m = table.values
    if any(a >= b for a, b in zip(m, m[1:])):
        raise ValueError(f"maxObs values {m} are not strictly increasing")


@dataclass(frozen=True)
class CostEnvelope:
    segments: tuple[Segment, ...]
    lines: tuple[CostLine, ...]

    @property
    def sizes(self) -> list[int]:
        return [s.k for s in self.segments]

    @property
    def breakpoints(self) -> list[Fraction]:
        return [s.hi for s in self.segments if s.hi is not None]

    def value_at(self, beta: RationalLike) -> Fraction:
        b = _check_beta(beta)
        for seg in self.segments:
            if seg.contains(b):
                return seg.line.at(b)
        raise AssertionError("segments must tile [0, inf)")

    def best_sizes(self, beta: RationalLike) -> list[int]:
        """Every size whose line attains the minimum cost at ``beta``."""
        b = _check_beta(beta)
        low = self.value_at(b)
        return [ln.k for ln in self.lines if ln.at(b) == low]

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.segments]


def envelope(table: ObservanceTable) -> CostEnvelope:
    """Exact lower envelope of the cost lines over ``β ∈ [0, ∞)``.

    Lines ``i < j`` cross at ``β = (j - i) / (m_j - m_i)``.  From the current
    line the walk moves to the line with the earliest crossing, taking the
    largest size on ties so that point-only minimizers get no segment.
    """
    lines = cost_lines(table)
    m = table.values
    g = table.gamma_p
    segments = []
    cur, lo = 0, Fraction(0)
    while cur < g:
        nxt, at = None, None
        for j in range(cur + 1, g + 1):
            cross = Fraction(j - cur, m[j] - m[cur])
            if at is None or cross <= at:
                nxt, at = j, cross
        segments.append(Segment(lo, at, cur, lines[cur]))
        cur, lo = nxt, at
    segments.append(Segment(lo, None, g, lines[g]))
    return CostEnvelope(tuple(segments), tuple(lines))


@dataclass(frozen=True)
class UsefulSizeReport:
    """Useful sizes plus, for every size, the interval where it is β-best.

    ``intervals[k]`` is ``(lo, hi)`` with ``hi`` None for unbounded, or None
    when size ``k`` is never β-best.
    """

    useful: tuple[int, ...]
    intervals: dict[int, tuple[Fraction, Fraction | None] | None]

    def to_json(self) -> dict:
        iv = {}
        for k, span in self.intervals.items():
            iv[str(k)] = None if span is None else [format_rational(x) for x in span]
        return {"useful": list(self.useful), "intervals": iv}


def useful_sizes(table: ObservanceTable) -> UsefulSizeReport:
    """Decide usefulness of each size from the ``maxObs`` values.

    Size ``i`` strictly between 0 and ``γ_P`` is useful iff the largest ratio
    ``(i-j)/(m_i-m_j)`` over ``j < i`` is strictly below the smallest ratio
    ``(j-i)/(m_j-m_i)`` over ``j > i``.  Sizes 0 and ``γ_P`` always are.  The
    answer is checked against the envelope walk.
    """
    _require_complete(table)
    m = table.values
    g = table.gamma_p
    useful = []
    intervals: dict[int, tuple[Fraction, Fraction | None] | None] = {}
    for i in range(g + 1):
        lo = max((Fraction(i - j, m[i] - m[j]) for j in range(i)), default=Fraction(0))
        hi = min((Fraction(j - i, m[j] - m[i]) for j in range(i + 1, g + 1)), default=None)
        if i in (0, g) or lo < hi:
            useful.append(i)
        intervals[i] = (lo, hi) if hi is None or lo <= hi else None
    env_sizes = envelope(table).sizes
    if env_sizes != useful:
        raise AssertionError(f"usefulness {useful} disagrees with envelope {env_sizes}")
    return UsefulSizeReport(tuple(useful), intervals)


def marginal_cost(table: ObservanceTable, k: int, beta: RationalLike) -> Fraction:
    """``1 - β MObs(G; k)``, the change in best cost from ``k-1`` to ``k``."""
    b = _check_beta(beta)
    if table.gamma_p is not None and k > table.gamma_p:
        raise ValueError("k must not exceed the power domination number")
    return 1 - b * marginal_obs(table, k)


def best_cost(table: ObservanceTable, k: int, beta: RationalLike) -> Fraction:
    """``C(G; k, β) = k + β (n - maxObs(G; k))``."""
    b = _check_beta(beta)
    return k + b * (table.n - table.row(k).max_obs)


def step_comparison(table: ObservanceTable, k: int, beta: RationalLike) -> int:
    """Sign of ``C(k-1) - C(k)``: -1 when ``k-1`` sensors cost less, 0 on ties.

    Equivalently compares ``β`` with ``1 / MObs(G; k)``.
    """
    b = _check_beta(beta)
    threshold = Fraction(1, marginal_obs(table, k))
    return (b > threshold) - (b < threshold)


@dataclass(frozen=True)
class GammaThreshold:
    """``β`` at and above which every minimum power dominating set is β-best.

    ``conservative`` is set when the minimum fort number was only bounded
    below; the bound still holds because it shrinks as the fort number grows.
    """

    beta: Fraction
    fort_term: Fraction
    ratio_term: Fraction
    conservative: bool

    def to_json(self) -> dict:
        return {
            "beta": format_rational(self.beta),
            "fortTerm": format_rational(self.fort_term),
            "ratioTerm": format_rational(self.ratio_term),
            "conservative": self.conservative,
        }


def fort_term(f: int, gamma_p: int) -> Fraction:
    if f < 1:
        raise ValueError("minimum fort number must be at least 1")
    if f == 1:
        return Fraction(1)
    if f == 2:
        return Fraction(1, 2)
    if f == 3:
        # the correction vanishes; avoids 0/0 when γ_P = 1
        return Fraction(1, 3)
    return Fraction(1, 3) - Fraction(f - 3, 3 * (f + 3 * gamma_p - 6))


def gamma_threshold(
    n: int, gamma_p: int, f: int, *, f_exact: bool = True
) -> GammaThreshold:
    """Threshold ``max{B(f), γ_P / n}``.

    Pass ``f_exact=False`` with a lower bound ``f``: ``B`` never increases
    with ``f``, so the threshold at the bound stays valid.
    """
    ft = fort_term(f, gamma_p)
    rt = Fraction(gamma_p, n)
    return GammaThreshold(max(ft, rt), ft, rt, not f_exact)
