"""Sensor placement under a cost trade-off in the power domination model."""

from .analysis import AnalysisReport, analyze
from .constructions import (
    GadgetSpec,
    affix,
    build_gadget,
    clique_of_hexagons,
    realize_useful_sizes,
)
from .cost import (
    CostEnvelope,
    cost,
    envelope,
    gamma_threshold,
    useful_sizes,
)
from .datasets import load_bundled, nordic32
from .forts import (
    enumerate_minimal_forts,
    is_fort,
    min_fort_number,
    minimum_fort,
)
from .graph import Graph, parse_graph, read_graph, serialize_graph, write_graph
from .propagation import (
    is_power_dominating_set,
    observe,
    star_closure,
    zero_forcing_closure,
)
from .solver import (
    ObservanceTable,
    max_obs,
    observance_table,
    power_domination_number,
)

__version__ = "0.1.0"
