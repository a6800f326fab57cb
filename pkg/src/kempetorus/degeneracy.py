"""Templates, contraction, 4-degeneracy orders and well-behaved subgraphs.

A template is a collection of disjoint independent vertex sets ("colors").
Contracting it identifies each color into one super-vertex; the template is
good when the quotient is 4-degenerate.  An order ``sigma`` of quotient
vertices is a 4-degeneracy order when every vertex has at least ``d(v) - 4``
neighbors before it, ``d`` being the degree in the quotient.
"""

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidPrefix, NotIndependent, Overlap

DEGENERACY = 4


@dataclass(frozen=True)
class Template:
    colors: tuple

    def __init__(self, colors):
        object.__setattr__(self, "colors", tuple(frozenset(int(v) for v in c) for c in colors))

    @property
    def vertices(self):
        return frozenset().union(*self.colors) if self.colors else frozenset()

    @property
    def monochromatic(self):
        return len(self.colors) == 1

    def __len__(self):
        return sum(len(c) for c in self.colors)

    def with_color(self, vertices):
        return Template(self.colors + (frozenset(vertices),))

    def validate(self, g):
        seen = set()
        for color in self.colors:
            if seen & color:
                raise Overlap(f"template colors share vertices {sorted(seen & color)}")
            seen |= color
            for v in color:
                if g.neighbor_sets[v] & color:
                    raise NotIndependent(f"template color {sorted(color)} is not independent")
        return self

    def appears_in(self, phi):
        """True iff every color of the template is monochromatic under ``phi``."""
        return all(len({phi[v] for v in c}) <= 1 for c in self.colors)

    def to_json(self):
        return {"colors": [sorted(c) for c in self.colors]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["colors"])


class QuotientGraph:
    """The graph ``G_T`` obtained by contracting a template.

    Uncontracted vertices keep their ids; color ``j`` of the template becomes
    the new vertex ``n + j``.  Parallel edges collapse.
    """

    def __init__(self, g, template):
        n = g.n
        self.n_original = n
        self.vmap = np.arange(n, dtype=np.int64)
        self.members = {}
        self.super_ids = []
        for j, color in enumerate(template.colors):
            sid = n + j
            self.super_ids.append(sid)
            self.members[sid] = tuple(sorted(color))
            for v in color:
                self.vmap[v] = sid
        for v in range(n):
            if self.vmap[v] == v:
                self.members[v] = (v,)
        self.adj = {q: set() for q in self.members}
        for u, v in g.edges():
            qu, qv = int(self.vmap[u]), int(self.vmap[v])
            if qu != qv:
                self.adj[qu].add(qv)
                self.adj[qv].add(qu)
        self.ids = sorted(self.members)

    def __len__(self):
        return len(self.ids)

    def degree(self, q):
        return len(self.adj[q])

    def edge_count(self):
        return sum(len(s) for s in self.adj.values()) // 2


def contract(g, template):
    template.validate(g)
    return QuotientGraph(g, template)


def order_violations(qg, order):
    """Positions in ``order`` whose vertex has fewer than ``d - 4`` earlier neighbors."""
    pos = {q: i for i, q in enumerate(order)}
    bad = []
    for i, q in enumerate(order):
        earlier = sum(1 for u in qg.adj[q] if pos.get(u, len(order)) < i)
        if earlier < qg.degree(q) - DEGENERACY:
            bad.append(i)
    return bad


def is_degeneracy_order(qg, order, complete=True):
    if len(set(order)) != len(order):
        return False
    if complete and set(order) != set(qg.ids):
        return False
    return not order_violations(qg, order)


def degeneracy_order(qg, prefix=None, last=()):
    """Extend ``prefix`` to a full 4-degeneracy order by connected growth.

    Vertices are appended once they have at least ``d - 4`` placed
    neighbors, preferring those touching the placed region.  Super-vertices
    and any vertex in ``last`` are held back and appended at the end.
    Returns the order, or ``None`` if growth stalls.
    """
    prefix = [int(q) for q in (prefix or [])]
    if not is_degeneracy_order(qg, prefix, complete=False):
        raise InvalidPrefix(f"{prefix} is not a 4-degeneracy prefix")
    held = set(qg.super_ids) | {int(q) for q in last}
    if held & set(prefix):
        raise InvalidPrefix("prefix may not contain held-back vertices")
    placed = set(prefix)
    order = list(prefix)
    count = {q: 0 for q in qg.ids}
    for q in prefix:
        for u in qg.adj[q]:
            count[u] += 1
    pending = [q for q in qg.ids if q not in placed and q not in held]
    while pending:
        best = None
        for q in pending:
            if count[q] >= qg.degree(q) - DEGENERACY:
                key = (count[q] == 0, q)
                if best is None or key < best[0]:
                    best = (key, q)
        if best is None:
            return None
        q = best[1]
        pending.remove(q)
        placed.add(q)
        order.append(q)
        for u in qg.adj[q]:
            count[u] += 1
    tail = sorted(held & set(qg.ids))
    while tail:
        for q in tail:
            if count[q] >= qg.degree(q) - DEGENERACY:
                break
        else:
            return None
        tail.remove(q)
        order.append(q)
        for u in qg.adj[q]:
            count[u] += 1
    return order


def peel_order(qg, last=()):
    """Exact test: a 4-degeneracy order if the quotient is 4-degenerate, else ``None``.

    Repeatedly removes a vertex with at most four remaining neighbors; the
    removal sequence is the order.  Its success does not depend on which
    eligible vertex is taken.  Vertices in ``last`` are never removed and
    are appended at the end, which decides whether an order ending with
    them exists.
    """
    held = {int(q) for q in last}
    remaining = {q: len(qg.adj[q]) for q in qg.ids}
    alive = set(qg.ids)
    queue = deque(sorted(q for q in qg.ids if remaining[q] <= DEGENERACY and q not in held))
    queued = set(queue)
    order = []
    while queue:
        q = queue.popleft()
        alive.discard(q)
        order.append(q)
        for u in qg.adj[q]:
            if u in alive:
                remaining[u] -= 1
                if remaining[u] <= DEGENERACY and u not in queued and u not in held:
                    queued.add(u)
                    queue.append(u)
    if alive - held:
        return None
    while alive:
        q = next((q for q in sorted(alive) if remaining[q] <= DEGENERACY), None)
        if q is None:
            return None
        alive.discard(q)
        order.append(q)
        for u in qg.adj[q]:
            if u in alive:
                remaining[u] -= 1
    return order


def good_order(qg):
    """Exact test for a 4-degeneracy order of ``qg`` ending with its super-vertices."""
    return peel_order(qg, last=qg.super_ids)


def is_good(g, template, prefix=None):
    """A 4-degeneracy order of ``G_T`` witnessing goodness, or ``None``.

    The order ends with the super-vertices, so any proper coloring of the
    template extends greedily.  Connected growth is tried first, then the
    exact peeling test.
    """
    qg = contract(g, template)
    order = degeneracy_order(qg, prefix)
    if order is None:
        order = good_order(qg)
    return order


def extend_coloring(g, template, colors, k=5, seed=None):
    """Extend a coloring of the template to all of ``G`` greedily.

    ``colors[j]`` is the color of template color ``j``.  The other vertices
    are colored in reverse of a 4-degeneracy order that ends with the
    super-vertices; each has at most four colored neighbors when its turn
    comes, so ``k >= 5`` always succeeds.  With ``seed`` the color is drawn
    at random among the free ones, else the smallest is used.

    Returns ``None`` if no such order exists.
    """
    qg = contract(g, template)
    order = good_order(qg)
    if order is None:
        return None
    rng = None if seed is None else np.random.default_rng(seed)
    out = np.zeros(g.n, dtype=np.int64)
    for j, color in enumerate(template.colors):
        for v in color:
            out[v] = colors[j]
    for q in reversed(order):
        if q in qg.super_ids:
            continue
        used = {int(out[u]) for u in g.neighbor_sets[q]}
        free = [c for c in range(1, k + 1) if c not in used]
        if not free:
            raise AssertionError("greedy extension ran out of colors")
        out[q] = free[0] if rng is None else free[int(rng.integers(len(free)))]
    return out


def bfs_distances(g, source, cutoff=None, within=None):
    """Distances from ``source`` (a vertex or an iterable of vertices)."""
    sources = [source] if np.isscalar(source) else list(source)
    dist = {int(s): 0 for s in sources}
    queue = deque(dist)
    while queue:
        v = queue.popleft()
        d = dist[v]
        if cutoff is not None and d >= cutoff:
            continue
        for u in g.neighbor_sets[v]:
            u = int(u)
            if u in dist or (within is not None and u not in within):
                continue
            dist[u] = d + 1
            queue.append(u)
    return dist


def ball(g, vertices, radius):
    return set(bfs_distances(g, vertices, radius))


def is_locally_connected(g, H):
    """Every pair of ``H`` at distance two in ``G`` has a common neighbor inside ``H``."""
    H = {int(v) for v in H}
    for v in H:
        nv = g.neighbor_sets[v]
        second = set()
        for u in nv:
            second |= g.neighbor_sets[u]
        for w in second:
            if w <= v or w not in H or w in nv:
                continue
            if not (nv & g.neighbor_sets[w] & H):
                return False
    return True


def excluded_hubs(g, H):
    """Vertices outside ``H`` with at least four neighbors in ``H``."""
    H = {int(v) for v in H}
    around = set()
    for v in H:
        around |= g.neighbor_sets[v]
    return sorted(w for w in around - H if len(g.neighbor_sets[w] & H) >= 4)


def induced_diameter(g, H):
    H = {int(v) for v in H}
    best = 0
    for v in H:
        dist = bfs_distances(g, v, within=H)
        if len(dist) < len(H):
            return float("inf")
        best = max(best, max(dist.values()))
    return best


def complement_connected(g, H):
    H = {int(v) for v in H}
    rest = [v for v in range(g.n) if v not in H]
    if not rest:
        return True
    within = set(rest)
    return len(bfs_distances(g, rest[0], within=within)) == len(rest)


@lru_cache(maxsize=32)
def _six_cycles(g):
    from .topology import short_noncontractible_cycles

    return tuple(short_noncontractible_cycles(g, 6))


def six_cycle_completions(g, H):
    """Vertices completing a non-contractible 6-cycle that meets ``H`` in exactly five vertices."""
    H = {int(v) for v in H}
    out = set()
    for cyc in _six_cycles(g):
        inside = cyc & H
        if len(inside) == 5:
            out |= cyc - H
    return sorted(out)


def is_well_behaved(g, H, augment_six_cycles=False, edge_width=None):
    """``H`` is locally connected and ``G - H`` is connected.

    When ``edge_width >= 7`` is supplied and ``H`` has induced diameter at
    most 4, local connectivity is decided by the excluded-hub criterion.
    With ``augment_six_cycles`` (``T[6 x b]`` mode), the last vertex of each
    non-contractible 6-cycle with five vertices in ``H`` is added first.
    """
    H = {int(v) for v in H}
    if augment_six_cycles:
        H |= set(six_cycle_completions(g, H))
    if edge_width is not None and edge_width >= 7 and induced_diameter(g, H) <= 4:
        local = not excluded_hubs(g, H)
    else:
        local = is_locally_connected(g, H)
    return local and complement_connected(g, H)
