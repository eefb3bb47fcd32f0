"""One-call cost analysis of a graph, and sampled cost curves for plotting."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .cost import (
    CostLine,
    TableNotExactError,
    as_rational,
    envelope,
    format_rational,
    gamma_threshold,
    useful_sizes,
)
from .forts import default_size_cap, minimum_fort
from .graph import Graph, members
from .solver import ObservanceTable, observance_table

SCHEMA = "pdcost.analysis/1"


@dataclass
class AnalysisReport:
    """Everything the analysis computed, in JSON-ready form.

    Rationals are kept as ``"p/q"`` strings so the JSON carries them exactly.
    """

    graph: dict
    table: dict
    envelope: list | None = None
    useful: dict | None = None
    gamma_p: int | None = None
    fort: dict | None = None
    gamma_threshold: dict | None = None
    beta_query: dict | None = None
    exact: bool = True
    seconds: float = 0.0
    schema: str = SCHEMA
    mapping: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "schema": self.schema,
            "graph": self.graph,
            "table": self.table,
            "envelope": self.envelope,
            "useful": self.useful,
            "gammaP": self.gamma_p,
            "fort": self.fort,
            "gammaThreshold": self.gamma_threshold,
            "betaQuery": self.beta_query,
            "exact": self.exact,
            "seconds": self.seconds,
            "mapping": self.mapping,
        }

    @classmethod
    def from_json(cls, data: dict) -> AnalysisReport:
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        return cls(
            graph=data["graph"],
            table=data["table"],
            envelope=data["envelope"],
            useful=data["useful"],
            gamma_p=data["gammaP"],
            fort=data["fort"],
            gamma_threshold=data["gammaThreshold"],
            beta_query=data["betaQuery"],
            exact=data["exact"],
            seconds=data["seconds"],
            mapping=data.get("mapping", {}),
        )


def analyze(
    G: Graph,
    *,
    beta=None,
    fort_cap: int | None = None,
    max_states: int | None = None,
) -> tuple[AnalysisReport, ObservanceTable]:
    """Table, envelope, useful sizes, fort number and γ_P threshold for ``G``.

    When the solver cannot certify the table the report is returned with
    ``exact`` False and no envelope; callers decide how to surface that.
    """
    start = time.perf_counter()
    table = observance_table(G, max_states=max_states)
    report = AnalysisReport(
        graph={"n": G.n, "m": G.m, "components": len(G.components())},
        table=table.to_json(),
        mapping={"fileIdOffset": 1},
    )
    if fort_cap is None:
        fort_cap = default_size_cap(G)
    F = minimum_fort(G, fort_cap)
    if F is None:
        report.fort = {"value": None, "lowerBound": fort_cap + 1, "exact": False}
    else:
        report.fort = {"value": F.bit_count(), "witness": members(F), "exact": True}
    if table.complete():
        env = envelope(table)
        report.envelope = env.to_json()
        report.useful = useful_sizes(table).to_json()
        report.gamma_p = table.gamma_p
        f = report.fort["value"] or report.fort["lowerBound"]
        report.gamma_threshold = gamma_threshold(
            G.n, table.gamma_p, f, f_exact=report.fort["exact"]
        ).to_json()
        if beta is not None:
            b = as_rational(beta)
            sizes = env.best_sizes(b)
            report.beta_query = {
                "beta": format_rational(b),
                "bestSizes": sizes,
                "cost": format_rational(env.value_at(b)),
                "witness": list(table.rows[sizes[0]].witness),
            }
    else:
        report.exact = False
    report.seconds = round(time.perf_counter() - start, 3)
    return report, table


def sample_betas(samples: int = 100, beta_max=1) -> list[Fraction]:
    if samples < 1:
        raise ValueError("need at least one sample interval")
    top = as_rational(beta_max)
    return [top * i / samples for i in range(samples + 1)]


def plot_rows(table: ObservanceTable, betas) -> list[dict]:
    """Cost of every size and of the envelope at each sampled ``β``."""
    if not table.complete():
        raise TableNotExactError("plot data needs an exact table")
    env = envelope(table)
    rows = []
    for b in betas:
        row = {"beta": b}
        for ln in env.lines:
            row[f"k{ln.k}"] = ln.at(b)
        row["envelope"] = env.value_at(b)
        rows.append(row)
    return rows


def plot_csv(table: ObservanceTable, betas) -> str:
    rows = plot_rows(table, betas)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = list(rows[0])
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(row[h])) for h in header])
    return buf.getvalue()


def table_csv(table: ObservanceTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "maxObs", "witness", "costLine", "exact"])
    for r in table.rows:
        line = str(CostLine(r.k, table.n - r.max_obs))
        writer.writerow([r.k, r.max_obs, " ".join(map(str, r.witness)), line, r.exact])
    return buf.getvalue()
