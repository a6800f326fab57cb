"""Colorings, Kempe swaps and replayable swap-sequence certificates."""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .errors import AnchorColorMismatch, LengthMismatch, Unsatisfiable


def adjacency(g):
    """``(nbrs, deg)`` arrays for any graph exposing them."""
    return np.ascontiguousarray(g.nbrs, dtype=np.int64), np.ascontiguousarray(g.deg, dtype=np.int64)


@dataclass(eq=False)
class Coloring:
    """A total assignment of colors ``1..k`` to vertices ``0..n-1``.

    Properness is checked with :func:`is_proper`, never assumed.
    """

    colors: np.ndarray
    k: int

    def __post_init__(self):
        self.colors = np.asarray(self.colors, dtype=np.int64).copy()
        self.k = int(self.k)
        if self.colors.ndim != 1:
            raise ValueError("colors must be one-dimensional")
        if self.colors.size and (self.colors.min() < 1 or self.colors.max() > self.k):
            raise ValueError(f"colors must lie in 1..{self.k}")

    def __eq__(self, other):
        return (
            isinstance(other, Coloring)
            and self.k == other.k
            and np.array_equal(self.colors, other.colors)
        )

    def __len__(self):
        return self.colors.shape[0]

    def __getitem__(self, v):
        return int(self.colors[v])

    def copy(self):
        return Coloring(self.colors, self.k)

    @property
    def hash64(self):
        return coloring_hash(self.colors)

    def to_json(self):
        return {"k": self.k, "colors": self.colors.tolist()}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["colors"], obj["k"])


def coloring_hash(colors):
    """FNV-1a 64-bit hash over the color bytes in vertex order."""
    return int(K.fnv1a64(np.ascontiguousarray(colors, dtype=np.int64)))


@dataclass(frozen=True)
class KempeMove:
    """Interchange ``alpha`` and ``beta`` on the component containing ``anchor``."""

    anchor: int
    alpha: int
    beta: int

    def __post_init__(self):
        if self.alpha == self.beta:
            raise ValueError("a Kempe move needs two distinct colors")

    def to_json(self):
        return {"anchor": self.anchor, "alpha": self.alpha, "beta": self.beta}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["anchor"]), int(obj["alpha"]), int(obj["beta"]))


@dataclass
class Certificate:
    """A hash-anchored Kempe move sequence from one coloring to another."""

    graph: str
    start_hash: int
    end_hash: int
    moves: list = field(default_factory=list)

    def __len__(self):
        return len(self.moves)

    def reversed(self):
        # swaps are involutions: undo the moves in reverse order
        return Certificate(self.graph, self.end_hash, self.start_hash, list(reversed(self.moves)))

    def then(self, other):
        if other.start_hash != self.end_hash:
            raise ValueError("certificates do not chain")
        return Certificate(self.graph, self.start_hash, other.end_hash, self.moves + other.moves)

    def to_json(self):
        return {
            "graph": self.graph,
            "start_hash": f"{self.start_hash:016x}",
            "end_hash": f"{self.end_hash:016x}",
            "moves": [m.to_json() for m in self.moves],
        }

    @classmethod
    def from_json(cls, obj):
        def parse(h):
            return int(h, 16) if isinstance(h, str) else int(h)

        return cls(
            obj["graph"],
            parse(obj["start_hash"]),
            parse(obj["end_hash"]),
            [KempeMove.from_json(m) for m in obj["moves"]],
        )


def _check_length(g, phi):
    if len(phi) != g.n:
        raise LengthMismatch(f"coloring has {len(phi)} entries, graph has {g.n} vertices")


def is_proper(g, phi):
    _check_length(g, phi)
    nbrs, deg = adjacency(g)
    return bool(K.is_proper(nbrs, deg, phi.colors))


def kempe_component(g, phi, v, alpha, beta):
    """Sorted vertices of the ``alpha``/``beta`` component containing ``v``."""
    _check_length(g, phi)
    if phi[v] not in (alpha, beta):
        raise AnchorColorMismatch(f"vertex {v} has color {phi[v]}, not {alpha} or {beta}")
    nbrs, deg = adjacency(g)
    return K.kempe_component(nbrs, deg, phi.colors, int(v), int(alpha), int(beta))


def apply_move(g, phi, move):
    """Return a new coloring with ``move`` applied."""
    out = phi.copy()
    apply_move_inplace(g, out, move)
    return out


def apply_move_inplace(g, phi, move):
    if phi[move.anchor] not in (move.alpha, move.beta):
        raise AnchorColorMismatch(
            f"vertex {move.anchor} has color {phi[move.anchor]}, not {move.alpha} or {move.beta}"
        )
    nbrs, deg = adjacency(g)
    return K.swap_inplace(nbrs, deg, phi.colors, move.anchor, move.alpha, move.beta)


def _move_arrays(moves):
    anchors = np.array([m.anchor for m in moves], dtype=np.int64)
    alphas = np.array([m.alpha for m in moves], dtype=np.int64)
    betas = np.array([m.beta for m in moves], dtype=np.int64)
    return anchors, alphas, betas


def replay(g, phi, moves):
    """Apply ``moves`` to a copy of ``phi``; raise on the first invalid move."""
    out = phi.copy()
    nbrs, deg = adjacency(g)
    bad = K.replay(nbrs, deg, out.colors, out.k, *_move_arrays(moves))
    if bad >= 0:
        raise AnchorColorMismatch(f"move {bad} ({moves[bad]}) is not a valid Kempe swap")
    return out


@dataclass(frozen=True)
class Verdict:
    """Outcome of certificate verification; truthy iff the certificate is valid."""

    ok: bool
    failed_at: int = -1
    reason: str = ""

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"ok": self.ok, "failed_at": self.failed_at, "reason": self.reason}


def verify_certificate(g, phi_start, cert):
    """Independently replay ``cert`` from ``phi_start``.

    Checks the graph fingerprint, the start hash, that every move is a valid
    swap of a proper coloring, and the end hash.  ``failed_at`` is the index
    of the first failing move (``len(moves)`` for an end-hash mismatch).
    """
    if cert.graph != g.fingerprint:
        return Verdict(False, -1, "graph fingerprint mismatch")
    if len(phi_start) != g.n:
        return Verdict(False, -1, "coloring length mismatch")
    if coloring_hash(phi_start.colors) != cert.start_hash:
        return Verdict(False, -1, "start hash mismatch")
    nbrs, deg = adjacency(g)
    cur = phi_start.colors.copy()
    if not K.is_proper(nbrs, deg, cur):
        return Verdict(False, -1, "start coloring is not proper")
    bad = K.replay(nbrs, deg, cur, phi_start.k, *_move_arrays(cert.moves))
    if bad >= 0:
        return Verdict(False, bad, "invalid move")
    if not K.is_proper(nbrs, deg, cur):
        return Verdict(False, len(cert.moves), "properness violated")
    if coloring_hash(cur) != cert.end_hash:
        return Verdict(False, len(cert.moves), "end hash mismatch")
    return Verdict(True)


def make_certificate(g, phi_start, moves):
    """Certificate for ``moves`` replayed from ``phi_start`` (which must be valid)."""
    end = replay(g, phi_start, moves)
    return Certificate(g.fingerprint, phi_start.hash64, end.hash64, list(moves)), end


def random_proper(g, k, seed, node_cap=10**7):
    """A proper k-coloring drawn by randomized saturation-first backtracking.

    Vertex tie-breaks and per-vertex color preferences come from a seeded
    permutation, so equal seeds give equal colorings.

    Raises
    ------
    Unsatisfiable
        If the search proves no proper k-coloring exists.
    """
    rng = np.random.default_rng(seed)
    n = g.n
    prio = rng.permutation(n).astype(np.int64)
    pref = np.argsort(rng.random((n, k)), axis=1).astype(np.int64) + 1
    nbrs, deg = adjacency(g)
    status, colors, _ = K.dsatur(nbrs, deg, k, prio, pref, node_cap, False)
    if status == 0:
        raise Unsatisfiable(f"graph has no proper {k}-coloring")
    if status < 0:
        raise Unsatisfiable(f"no {k}-coloring found within {node_cap} nodes")
    return Coloring(colors, k)


def transposition_moves(g, phi, alpha, beta):
    """Moves swapping every ``alpha``/``beta`` component, transposing the two colors globally."""
    cur = phi.copy()
    moves = []
    nbrs, deg = adjacency(g)
    done = np.zeros(g.n, dtype=bool)
    for v in range(g.n):
        if done[v] or cur[v] not in (alpha, beta):
            continue
        comp = K.kempe_component(nbrs, deg, cur.colors, v, alpha, beta)
        done[comp] = True
        moves.append(KempeMove(v, alpha, beta))
    for m in moves:
        apply_move_inplace(g, cur, m)
    return moves, cur


def permutation_moves(g, phi, target):
    """Moves from ``phi`` to ``target`` when ``target`` is a color permutation of ``phi``.

    Returns ``None`` if ``target`` is not such a permutation.
    """
    perm = {}
    for a, b in zip(phi.colors.tolist(), target.colors.tolist()):
        if perm.setdefault(a, b) != b:
            return None
    if len(set(perm.values())) != len(perm):
        return None
    # extend to a bijection of 1..k, then sort it into place by transpositions
    full = dict(perm)
    spare = [c for c in range(1, phi.k + 1) if c not in full.values()]
    for c in range(1, phi.k + 1):
        if c not in full:
            full[c] = spare.pop(0)
    cur = phi.copy()
    moves = []
    # position[c] = color currently standing for original color c
    current_of = {c: c for c in range(1, phi.k + 1)}
    for c in range(1, phi.k + 1):
        want = full[c]
        have = current_of[c]
        if have == want:
            continue
        owner = next(d for d, h in current_of.items() if h == want)
        step, cur = transposition_moves(g, cur, have, want)
        moves += step
        current_of[c], current_of[owner] = want, have
    return moves
