"""Construction, canonical parameters and enumeration of 6-regular toroidal graphs.

Every 6-regular toroidal graph is a shifted triangulated grid ``T[a x b, c]``.
Both families built here are quotients of the triangular lattice ``Z^2`` by a
rank-2 deck lattice, so each vertex ``v`` lists its six neighbors in one fixed
cyclic order and the edge ``v -> rotation[v, k]`` carries the same voltage
(lattice step) ``DIRS[k]`` at every vertex.

Grid vertices ``(i, j)`` (1-based row, column) get index ``(i-1)*b + (j-1)``;
circulant vertex ``i`` (1-based) gets index ``i - 1``.
"""

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .errors import MalformedRotation, NoValidGraph, SimpleGraphViolation

# (drow, dcol) steps of T[a x b, c] in rotation order W, N, NE, E, S, SW.
GRID_DIRS = ((0, -1), (-1, 0), (-1, 1), (0, 1), (1, 0), (1, -1))
# (+1, +r) steps of C_n[1, r, r+1] in rotation order +1, +(r+1), +r, -1, -(r+1), -r.
CIRC_DIRS = ((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1))

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3


def fnv1a64_bytes(data: bytes) -> int:
    h = FNV_OFFSET
    for byte in data:
        h = ((h ^ byte) * FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h


@dataclass(frozen=True)
class GraphParams:
    """``("shifted_grid", a, b, c)`` or ``("circulant", n, r)``."""

    family: str
    values: tuple

    @classmethod
    def grid(cls, a, b, c):
        return cls("shifted_grid", (int(a), int(b), int(c)))

    @classmethod
    def circulant(cls, n, r):
        return cls("circulant", (int(n), int(r)))

    def to_json(self):
        if self.family == "shifted_grid":
            a, b, c = self.values
            return {"family": "shifted_grid", "a": a, "b": b, "c": c}
        n, r = self.values
        return {"family": "circulant", "n": n, "r": r}

    @classmethod
    def from_json(cls, obj):
        fam = obj.get("family")
        if fam == "shifted_grid":
            return cls.grid(obj["a"], obj["b"], obj["c"])
        if fam == "circulant":
            return cls.circulant(obj["n"], obj["r"])
        raise ValueError(f"unknown graph family {fam!r}")

    def build(self):
        if self.family == "shifted_grid":
            return build_shifted_grid(*self.values)
        return build_circulant(*self.values)

    def __str__(self):
        if self.family == "shifted_grid":
            return "T[{}x{},{}]".format(*self.values)
        n, r = self.values
        return f"C{n}[1,{r},{r + 1}]"


@dataclass(frozen=True, eq=False)
class TorusGraph:
    """An immutable 6-regular graph embedded as a torus triangulation.

    Attributes
    ----------
    params : GraphParams
        Family and parameters the graph was built from.
    rotation : ndarray, shape (n, 6)
        Neighbors of each vertex in cyclic order.
    dirs : tuple of 6 (int, int)
        Voltage carried by the edge ``v -> rotation[v, k]`` for every ``v``.
    deck_lattice : ((int, int), (int, int))
        Generators of the lattice of closed-walk voltages.
    """

    params: GraphParams
    rotation: np.ndarray
    dirs: tuple
    deck_lattice: tuple
    _shift: object = field(repr=False, compare=False)

    @property
    def family(self):
        return self.params.family

    @property
    def n(self):
        return self.rotation.shape[0]

    vertex_count = n

    @property
    def nbrs(self):
        return self.rotation

    @cached_property
    def deg(self):
        return np.full(self.n, 6, dtype=np.int64)

    @cached_property
    def voltages(self):
        """Array ``(n, 6, 2)`` of per-directed-edge voltages."""
        return np.broadcast_to(np.array(self.dirs, dtype=np.int64), (self.n, 6, 2))

    @cached_property
    def neighbor_sets(self):
        return [frozenset(row) for row in self.rotation.tolist()]

    def has_edge(self, u, v):
        return v in self.neighbor_sets[u]

    def voltage(self, u, v):
        """Voltage of the directed edge ``u -> v``."""
        row = self.rotation[u]
        for k in range(6):
            if row[k] == v:
                return self.dirs[k]
        raise KeyError(f"{u} and {v} are not adjacent")

    def shift(self, v, vec):
        """Vertex reached from ``v`` by the lattice displacement ``vec``."""
        return self._shift(v, int(vec[0]), int(vec[1]))

    def edges(self):
        """Sorted list of edges ``(u, v)`` with ``u < v`` (0-based)."""
        out = set()
        for u, row in enumerate(self.rotation.tolist()):
            for v in row:
                out.add((min(u, v), max(u, v)))
        return sorted(out)

    def label(self, v):
        """1-based vertex name: ``(i, j)`` for grids, ``i`` for circulants."""
        v = int(v)
        if self.family == "shifted_grid":
            b = self.params.values[1]
            return (v // b + 1, v % b + 1)
        return v + 1

    def vertex(self, label):
        if self.family == "shifted_grid":
            a, b, _ = self.params.values
            i, j = label
            return ((i - 1) % a) * b + (j - 1) % b
        return (label - 1) % self.n

    def to_dimacs(self):
        edges = self.edges()
        lines = [f"p edge {self.n} {len(edges)}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in edges]
        return "\n".join(lines) + "\n"

    @cached_property
    def fingerprint(self):
        return "{:016x}".format(fnv1a64_bytes(self.to_dimacs().encode()))

    def check_invariants(self):
        """Raise ``MalformedRotation`` unless every structural invariant holds."""
        rot = self.rotation
        for v in range(self.n):
            row = rot[v].tolist()
            if len(set(row)) != 6 or v in row:
                raise MalformedRotation(f"vertex {v} has neighbors {row}")
            for k in range(6):
                x, y = row[k], row[(k + 1) % 6]
                if not self.has_edge(x, y):
                    raise MalformedRotation(f"rotation at {v}: {x},{y} not adjacent")
                if self.voltage(x, v) != tuple(-d for d in self.dirs[k]):
                    raise MalformedRotation(f"voltage of {v}->{x} not antisymmetric")
                d1, d2 = self.dirs[k], self.dirs[(k + 1) % 6]
                d3 = self.voltage(x, y)
                if (d1[0] + d3[0] - d2[0], d1[1] + d3[1] - d2[1]) != (0, 0):
                    raise MalformedRotation(f"face ({v},{x},{y}) has nonzero voltage")
        return True


def _check_simple(rotation, name):
    for v, row in enumerate(rotation.tolist()):
        if v in row:
            raise SimpleGraphViolation(f"{name}: loop at vertex {v}")
        if len(set(row)) != 6:
            raise SimpleGraphViolation(f"{name}: parallel edges at vertex {v}")


def build_shifted_grid(a: int, b: int, c: int) -> TorusGraph:
    """The triangulated toroidal grid ``T[a x b, c]``.

    Raises
    ------
    SimpleGraphViolation
        If the parameters produce a loop or parallel edges.
    """
    a, b, c = int(a), int(b), int(c)
    if a < 1 or b < 1 or not 1 <= c <= a:
        raise ValueError(f"need a, b >= 1 and 1 <= c <= a, got {(a, b, c)}")
    s = c - 1

    def shift(v, dx, dy):
        i, j = divmod(v, b)
        y = j + dy
        t, jj = divmod(y, b)
        return ((i + dx + s * t) % a) * b + jj

    n = a * b
    rotation = np.empty((n, 6), dtype=np.int64)
    for v in range(n):
        for k, (dx, dy) in enumerate(GRID_DIRS):
            rotation[v, k] = shift(v, dx, dy)
    params = GraphParams.grid(a, b, c)
    _check_simple(rotation, str(params))
    lattice = ((a, 0), (-s, b))
    return TorusGraph(params, rotation, GRID_DIRS, lattice, shift)


def build_circulant(n: int, r: int) -> TorusGraph:
    """The circulant ``C_n[1, r, r+1]`` with its natural torus embedding."""
    n, r = int(n), int(r)
    if n < 1 or r < 1:
        raise ValueError(f"need n, r >= 1, got {(n, r)}")

    def shift(v, dx, dy):
        return (v + dx + r * dy) % n

    rotation = np.empty((n, 6), dtype=np.int64)
    for v in range(n):
        for k, (dx, dy) in enumerate(CIRC_DIRS):
            rotation[v, k] = shift(v, dx, dy)
    params = GraphParams.circulant(n, r)
    _check_simple(rotation, str(params))
    lattice = ((n, 0), (-r, 1))
    return TorusGraph(params, rotation, CIRC_DIRS, lattice, shift)


def straight_line(g, start, first):
    """Vertices of the closed straight-line walk leaving ``start`` towards ``first``.

    The successor of each vertex is the neighbor three positions after the
    predecessor in its rotation; the walk stops on returning to ``start``.
    """
    walk = [start]
    prev, cur = start, first
    while cur != start:
        walk.append(cur)
        if len(walk) > g.n:
            raise MalformedRotation(f"straight line from {start} via {first} does not close")
        row = g.rotation[cur].tolist()
        prev, cur = cur, row[(row.index(prev) + 3) % 6]
    return walk


def canonical_forms(g: TorusGraph) -> list:
    """All ``(a, b, c)`` with ``c <= a`` such that ``g`` is isomorphic to ``T[a x b, c]``.

    For each of the six edges at vertex 0, the straight line through it is
    taken as a column; each of the two rotation-neighbors of that edge serves
    as the row direction (one per orientation).  Walking the column gives
    ``a``; walking the row until it first re-enters the column gives ``b``
    and the row offset ``c - 1`` at which it lands.
    """
    rot = g.rotation[0].tolist()
    forms = set()
    for k in range(6):
        column = straight_line(g, 0, rot[k])
        a = len(column)
        pos = {v: i for i, v in enumerate(column)}
        for e in (rot[(k - 1) % 6], rot[(k + 1) % 6]):
            prev, cur = 0, e
            steps = 1
            while cur not in pos:
                row = g.rotation[cur].tolist()
                prev, cur = cur, row[(row.index(prev) + 3) % 6]
                steps += 1
                if steps > g.n + 1:
                    raise MalformedRotation("row walk does not meet the column")
            b = steps
            if a * b != g.n:
                raise MalformedRotation(f"column {a} x row {b} != {g.n}")
            forms.add((a, b, pos[cur] + 1))
    return sorted(forms)


def canonical_key(g: TorusGraph) -> tuple:
    """Isomorphism invariant: two graphs are isomorphic iff their keys are equal."""
    return tuple(canonical_forms(g))


def divisor_pairs(n: int):
    return [(a, n // a) for a in range(1, n + 1) if n % a == 0]


def parameterizations(a: int, b: int) -> list:
    """Raw parameter triples ``(a, b, c)`` for a fixed grid shape, ``c = 1..a``."""
    return [(a, b, c) for c in range(1, a + 1)]


def simple_parameterizations(n: int) -> list:
    out = []
    for a, b in divisor_pairs(n):
        for triple in parameterizations(a, b):
            try:
                build_shifted_grid(*triple)
            except SimpleGraphViolation:
                continue
            out.append(triple)
    return out


def enumerate_graphs(n: int) -> list:
    """One representative per isomorphism class of simple 6-regular toroidal graphs on ``n`` vertices.

    Representatives are built from the smallest parameter triple of their
    class and returned in increasing order of that triple.
    """
    return list(_enumerate(n))


@lru_cache(maxsize=64)
def _enumerate(n):
    classes = {}
    for triple in simple_parameterizations(n):
        g = build_shifted_grid(*triple)
        key = canonical_key(g)
        if key not in classes:
            classes[key] = key[0]
    return tuple(build_shifted_grid(*classes[key]) for key in sorted(classes, key=lambda kk: kk[0]))


def sample_uniform(n: int, seed: int, *, per_triple: bool = False) -> TorusGraph:
    """Sample a 6-regular toroidal graph on ``n`` vertices.

    By default the draw is uniform over isomorphism classes; with
    ``per_triple`` it is uniform over valid parameter triples ``(a, b, c)``.
    """
    rng = np.random.default_rng(seed)
    if per_triple:
        triples = simple_parameterizations(n)
        if not triples:
            raise NoValidGraph(f"no simple 6-regular toroidal graph on {n} vertices")
        return build_shifted_grid(*triples[rng.integers(len(triples))])
    graphs = enumerate_graphs(n)
    if not graphs:
        raise NoValidGraph(f"no simple 6-regular toroidal graph on {n} vertices")
    return graphs[rng.integers(len(graphs))]


class PlainGraph:
    """A simple graph given by edges, for fixtures outside the torus families.

    Exposes the same ``n``/``nbrs``/``deg`` surface the kernels consume.
    """

    def __init__(self, n, edges, name="graph"):
        self.name = name
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                continue
            adj[u].add(v)
            adj[v].add(u)
        width = max([len(s) for s in adj] + [1])
        self.nbrs = np.full((n, width), -1, dtype=np.int64)
        self.deg = np.zeros(n, dtype=np.int64)
        for v, s in enumerate(adj):
            row = sorted(s)
            self.nbrs[v, : len(row)] = row
            self.deg[v] = len(row)
        self.neighbor_sets = [frozenset(s) for s in adj]

    @property
    def n(self):
        return self.nbrs.shape[0]

    def has_edge(self, u, v):
        return v in self.neighbor_sets[u]

    def edges(self):
        return sorted((u, v) for u in range(self.n) for v in self.neighbor_sets[u] if u < v)

    @property
    def fingerprint(self):
        lines = [f"p edge {self.n} {len(self.edges())}"] + [f"e {u + 1} {v + 1}" for u, v in self.edges()]
        return "{:016x}".format(fnv1a64_bytes(("\n".join(lines) + "\n").encode()))


def underlying_grid(a: int, b: int, c: int) -> PlainGraph:
    """Underlying simple graph of ``T[a x b, c]``, tolerating parallel edges.

    Used for the multigraph members of the four-colorability exception list.
    """
    s = c - 1
    edges = []
    for v in range(a * b):
        i, j = divmod(v, b)
        for dx, dy in GRID_DIRS:
            t, jj = divmod(j + dy, b)
            edges.append((v, ((i + dx + s * t) % a) * b + jj))
    return PlainGraph(a * b, edges, name=f"T[{a}x{b},{c}]")


def underlying_circulant(n: int, r: int) -> PlainGraph:
    edges = [(v, (v + d) % n) for v in range(n) for d in (1, r, r + 1)]
    return PlainGraph(n, edges, name=f"C{n}[1,{r},{r + 1}]")
