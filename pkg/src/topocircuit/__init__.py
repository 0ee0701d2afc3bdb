"""Weighted-multigraph path enumeration and symbolic RLC transfer functions."""

from .dtm import (
    Circuit,
    TransferFunction,
    cycle_value,
    determinant,
    is_degenerate,
    non_excited_graph,
    numerator,
    spanning_trees,
    transfer_function,
)
from .multigraph import Branch, BranchKind, GraphError, Multigraph, build_graph, is_connected, supplement
from .netlist import NetlistError, parse
from .pathfinder import Path, SameEndpointsError, TransferCycle, cycles_through, enumerate_paths, transfer_cycles
from .symbolic import TopoPolynomial, poly_render

__version__ = "0.1.0"
