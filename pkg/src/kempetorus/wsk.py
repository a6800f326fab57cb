"""Zero-temperature Wang-Swendsen-Kotecky dynamics.

Each step picks a vertex ``v`` uniformly and a color ``beta`` uniformly among
the ``k - 1`` colors other than ``phi(v)``, then swaps the ``phi(v)``/``beta``
Kempe component of ``v``.  Every proposal is a valid swap of a proper
coloring, so nothing is ever rejected and the chain is symmetric.  This is
one standard choice of proposal; the generator is documented in
:mod:`kempetorus._kernels`.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .coloring import Coloring, KempeMove, adjacency, is_proper, random_proper

PROPOSAL = "uniform-vertex-uniform-color"


def seed_state(seed):
    """Generator state for ``seed`` (one splitmix64 round)."""
    return int(K._seed_state(seed))


def _draw(state, m):
    if K.USE_NUMBA:
        x, out = K._rand_below(np.uint64(state), m)
    else:
        x, out = K._rand_below(state, m)
    return int(x), int(out)


def wsk_step(g, phi, k, rng_state):
    """One step from ``phi``.

    Returns
    -------
    (Coloring, KempeMove, int)
        The new coloring, the move taken and the advanced generator state.
    """
    state, v = _draw(rng_state, g.n)
    state, r = _draw(state, k - 1)
    a = phi[v]
    beta = r + 1
    if beta >= a:
        beta += 1
    move = KempeMove(v, a, beta)
    out = phi.copy()
    nbrs, deg = adjacency(g)
    K.swap_inplace(nbrs, deg, out.colors, v, a, beta)
    return out, move, state


@dataclass
class ChainStats:
    steps: int
    accepted: int
    rejected: int
    distinct_states: int
    distinct_orbits: int
    initial: Coloring
    final: Coloring
    class_visits: dict | None = None
    moves: list = field(default_factory=list, repr=False)
    hashes: np.ndarray = field(default=None, repr=False)
    trajectory: np.ndarray = field(default=None, repr=False)

    def to_json(self):
        return {
            "proposal": PROPOSAL,
            "steps": self.steps,
            "accepted": self.accepted,
            "rejected": self.rejected,
            "distinct_states": self.distinct_states,
            "distinct_orbits": self.distinct_orbits,
            "class_visits": None
            if self.class_visits is None
            else {str(c): v for c, v in sorted(self.class_visits.items())},
            "final": self.final.to_json(),
        }


def run_chain(g, k, steps, seed, class_report=None, initial=None, record=False):
    """Run the chain for ``steps`` steps from ``initial`` (default: ``random_proper(g, k, seed)``).

    The trajectory is a deterministic function of ``seed`` and the start.
    With ``class_report`` each visited state is tallied under its Kempe
    class, which records the full trajectory internally.
    """
    if initial is None:
        initial = random_proper(g, k, seed)
    if not is_proper(g, initial):
        raise ValueError("initial coloring must be proper")
    nbrs, deg = adjacency(g)
    keep = bool(record or class_report is not None)
    final, anchors, betas, hashes, canon, traj = K.wsk_run(
        nbrs, deg, initial.colors.astype(np.int64), int(k), int(steps), int(seed), keep
    )
    visits = None
    if class_report is not None:
        visits = {}
        for row in traj:
            c = class_report.class_of(row.astype(np.int64))
            visits[c] = visits.get(c, 0) + 1
    moves = []
    if record:
        for s in range(steps):
            v = int(anchors[s])
            moves.append(KempeMove(v, int(traj[s, v]), int(betas[s])))
    return ChainStats(
        steps=int(steps),
        accepted=int(steps),
        rejected=0,
        distinct_states=len(np.unique(hashes)),
        distinct_orbits=len(np.unique(canon)),
        initial=initial.copy(),
        final=Coloring(final, k),
        class_visits=visits,
        moves=moves,
        hashes=hashes,
        trajectory=traj if record else None,
    )
