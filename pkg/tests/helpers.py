"""Figure fixtures and coloring generators shared by the tests."""

import numpy as np

from kempetorus import _kernels as K
from kempetorus.coloring import Coloring, adjacency, random_proper
from kempetorus.degeneracy import Template
from kempetorus.patterns import FOURTH_AT, TRIPLE_AT, place, place_all
from kempetorus.reconfig import ladder_index

# figure palette
GREEN, ORANGE, BLUE, RED, PURPLE = 1, 2, 3, 4, 5

# numbered vertices around the two good 4-templates (doubled coordinates)
TEMPLATE_LABELS = {1: (0, 0), 2: (2, 0), 3: (3, 1)}

TWO_COLOR_LAYOUT = {
    1: (0, 0), 2: (3, 1), 3: (6, 2), 4: (1, 3), 5: (1, 1), 6: (-1, 1), 7: (2, 2),
    8: (0, 2), 9: (2, 0), 10: (4, 2), 11: (3, 3), 12: (3, -1), 13: (5, 1),
}

# vertices 1..8 of the alternating-sets configuration
ALTERNATING = {
    1: ((-1, -1), RED), 2: ((-1, 1), ORANGE), 3: ((1, -1), ORANGE), 4: ((1, 1), RED),
    5: ((3, -1), RED), 6: ((3, 1), ORANGE), 7: ((0, 0), GREEN), 8: ((2, 0), BLUE),
}

# parallel pairs centered at 20, crossing pairs centered at 5
PARALLEL = {1: ((-1, -1), GREEN), 2: ((-1, 1), GREEN), 3: ((1, -1), BLUE), 4: ((1, 1), BLUE), 20: ((0, 0), None)}
CROSSING = {1: ((0, 0), BLUE), 2: ((1, -1), RED), 3: ((3, -1), BLUE), 4: ((4, 0), RED), 5: ((2, 0), None)}


def standard_templates(g, origin=0, frame=(0, 1)):
    """``(left, right, numbered)``: the two standard good 4-templates and the labelled vertices."""
    triple = {place(g, origin, xy, frame) for xy in TRIPLE_AT}
    left = Template([triple | {place(g, origin, FOURTH_AT[0], frame)}])
    right = Template([triple | {place(g, origin, FOURTH_AT[1], frame)}])
    return left, right, place_all(g, origin, TEMPLATE_LABELS, frame)


def two_color_layout(g, origin=0, frame=(0, 1)):
    return place_all(g, origin, TWO_COLOR_LAYOUT, frame)


def colored_fixture(g, spec, origin=0, frame=(0, 1)):
    """``(labels, fixed)`` for a ``{label: (xy, color)}`` figure spec."""
    labels = place_all(g, origin, {k: xy for k, (xy, _) in spec.items()}, frame)
    fixed = {labels[k]: c for k, (_, c) in spec.items() if c is not None}
    return labels, fixed


def adversarial_coloring(g, seed, iters=3000):
    """A proper 5-coloring pushed down the motif ladder by random Kempe descent.

    Moves that do not increase the ladder score are accepted, so the
    result is usually poor in triples and pairs.
    """
    rng = np.random.default_rng(seed)
    idx = ladder_index(g)
    nbrs, deg = adjacency(g)
    col = random_proper(g, 5, seed).colors.copy()
    best = idx.scores(col)
    for _ in range(iters):
        v = int(rng.integers(g.n))
        b = int(rng.integers(1, 6))
        if b == col[v]:
            continue
        child = col.copy()
        K.swap_inplace(nbrs, deg, child, v, int(col[v]), b)
        score = idx.scores(child)
        if score <= best:
            col, best = child, score
    return Coloring(col, 5)
