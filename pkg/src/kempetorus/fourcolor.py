"""Four-colorability of 6-regular toroidal graphs.

:func:`classify` answers from a fixed list of exceptions; each verdict
that claims colorability carries a witness found by :func:`solve_4coloring`,
an exact backtracking search that also refutes the exceptions directly.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels as K
from .coloring import Coloring, adjacency
from .errors import CapExceeded, SimpleGraphViolation
from .torus_graph import (
    GraphParams,
    build_circulant,
    build_shifted_grid,
    canonical_forms,
    underlying_circulant,
    underlying_grid,
)

# sporadic circulants C_n[1, r, r+1], as (r, n)
SPORADIC = (
    (3, 13), (3, 17), (3, 18), (3, 25), (4, 17), (6, 17), (6, 25), (6, 33),
    (7, 19), (7, 25), (7, 26), (9, 25), (10, 25), (10, 26), (10, 37), (14, 33),
)
SMALL_GRIDS = ((3, 3, 2), (3, 3, 3), (5, 3, 2), (5, 3, 3), (5, 5, 3), (5, 5, 4))


@dataclass
class FourColorVerdict:
    colorable: bool
    exception_case: int | None = None
    witness: Coloring | None = None

    def to_json(self):
        return {
            "colorable": self.colorable,
            "exception_case": self.exception_case,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def circulant_case(n, r):
    """Exception item (3, 4 or 5) for ``C_n[1, r, r+1]``, or ``None``."""
    if (r, n) in SPORADIC:
        return 5
    if n % 4 == 0:
        return None
    if r == 2:
        return 4
    if n in (2 * r + 2, 2 * r + 3, 3 * r + 1, 3 * r + 2):
        return 3
    return None


def grid_case(a, b, c):
    """Exception item (1 or 2) for the literal parameters ``T[a x b, c]``, or ``None``."""
    if (a, b, c) in SMALL_GRIDS:
        return 1
    if b == 2 and c == 1 and a % 2 == 1:
        return 2
    return None


def _forms_case(forms):
    for a, b, c in forms:
        case = grid_case(a, b, c)
        if case is not None:
            return case
    for a, b, c in forms:
        if b == 1:
            # T[n x 1, c] is the circulant C_n[1, c-2, c-1]
            case = circulant_case(a, c - 2)
            if case is not None:
                return case
    return None


@lru_cache(maxsize=None)
def _exception_keys():
    keys = {}
    for triple in SMALL_GRIDS:
        try:
            g = build_shifted_grid(*triple)
        except SimpleGraphViolation:
            continue
        keys.setdefault(tuple(canonical_forms(g)), 1)
    return keys


def exception_case(params):
    """Index of the exception item matched by ``params``, or ``None``.

    Simple graphs are matched through every parameterization in their
    canonical forms, so isomorphic inputs agree.  Multigraph parameters are
    matched literally.
    """
    try:
        g = params.build()
    except SimpleGraphViolation:
        if params.family == "shifted_grid":
            return grid_case(*params.values)
        return circulant_case(*params.values)
    # a graph can sit in two items (C25[1,9,10] is also T[5x5,c]); literal parameters win
    if params.family == "circulant":
        case = circulant_case(*params.values)
        if case is not None:
            return case
    forms = canonical_forms(g)
    case = _forms_case(forms)
    if case is None:
        case = _exception_keys().get(tuple(forms))
    return case


def underlying(params):
    """Simple graph of ``params``; parallel edges collapse for multigraph parameters."""
    try:
        return params.build()
    except SimpleGraphViolation:
        if params.family == "shifted_grid":
            return underlying_grid(*params.values)
        return underlying_circulant(*params.values)


def solve_4coloring(g, node_cap=10**8):
    """A proper 4-coloring, or ``None`` when none exists.

    Vertices are chosen by saturation, then by remaining degree, then by
    id; colors are tried in increasing order with first-use symmetry
    breaking, so the result is deterministic.

    Raises
    ------
    CapExceeded
        If the search visits more than ``node_cap`` nodes undecided.
    """
    nbrs, deg = adjacency(g)
    n = g.n
    prio = np.arange(n, dtype=np.int64)
    pref = np.tile(np.arange(1, 5, dtype=np.int64), (n, 1))
    status, colors, nodes = K.dsatur(nbrs, deg, 4, prio, pref, int(node_cap), True)
    if status < 0:
        raise CapExceeded(f"4-coloring search exceeded {node_cap} nodes")
    if status == 0:
        return None
    return Coloring(colors, 4)


def classify(params, node_cap=10**8):
    if isinstance(params, dict):
        params = GraphParams.from_json(params)
    case = exception_case(params)
    if case is not None:
        return FourColorVerdict(False, case, None)
    return FourColorVerdict(True, None, solve_4coloring(underlying(params), node_cap))


def sporadic_graphs():
    return [build_circulant(n, r) for r, n in SPORADIC]
