"""Kempe-swap reconfiguration of colorings on 6-regular toroidal graphs."""

from ._kernels import BACKEND
from .torus_graph import (
    GraphParams,
    PlainGraph,
    TorusGraph,
    build_circulant,
    build_shifted_grid,
    canonical_forms,
    enumerate_graphs,
    sample_uniform,
)

__version__ = "0.1.0"
