"""Homology classes of closed walks and edge-width.

A closed walk is contractible on the torus exactly when its net voltage is
zero.  The edge-width search runs breadth-first over lifts ``(vertex,
voltage)`` in the universal cover, starting from vertex 0 at the origin, and
stops at the first lift of vertex 0 away from the origin.  Both graph
families are vertex-transitive, so one base vertex suffices.
"""

from collections import deque

from .errors import NotAWalk, NotClosed


def walk_class(g, walk):
    """Net voltage ``(x, y)`` of a closed walk given as a vertex sequence."""
    walk = [int(v) for v in walk]
    if len(walk) < 2 or walk[0] != walk[-1]:
        raise NotClosed("walk must start and end at the same vertex")
    x = y = 0
    for u, v in zip(walk, walk[1:]):
        if not g.has_edge(u, v):
            raise NotAWalk(f"{u} and {v} are not adjacent")
        dx, dy = g.voltage(u, v)
        x += dx
        y += dy
    return (x, y)


def walk_from_steps(g, start, steps):
    """Vertex sequence from ``start`` following lattice steps (voltages)."""
    walk = [start]
    for step in steps:
        walk.append(g.shift(walk[-1], step))
    return walk


def circulant_walk(g, start, lengths):
    """Walk in ``C_n[1, r, r+1]`` along signed edge lengths such as ``6, 6, 6, -1``."""
    n, r = g.params.values
    step_of = {1: (1, 0), r: (0, 1), r + 1: (1, 1)}
    steps = []
    for length in lengths:
        dx, dy = step_of[abs(length)]
        steps.append((dx, dy) if length > 0 else (-dx, -dy))
    return walk_from_steps(g, start, steps)


def _cover_radius(g):
    vals = g.params.values
    if g.family == "shifted_grid":
        return 2 * (vals[0] + vals[1])
    return 2 * vals[0]


def edge_width(g, base=0):
    """Shortest non-contractible cycle.

    Returns
    -------
    (int, list)
        The length and a witness cycle ``[v0, ..., v0]`` through ``base``
        whose net voltage is nonzero.
    """
    start = (base, 0, 0)
    parent = {start: None}
    frontier = deque([start])
    cap = _cover_radius(g)
    dist = {start: 0}
    while frontier:
        node = frontier.popleft()
        v, x, y = node
        d = dist[node]
        if d >= cap:
            raise RuntimeError(f"cover search exceeded radius {cap}")
        for k in range(6):
            u = int(g.rotation[v, k])
            dx, dy = g.dirs[k]
            nxt = (u, x + dx, y + dy)
            if nxt in parent:
                continue
            parent[nxt] = node
            dist[nxt] = d + 1
            if u == base:
                path = []
                cur = nxt
                while cur is not None:
                    path.append(cur[0])
                    cur = parent[cur]
                path.reverse()
                return d + 1, path
            frontier.append(nxt)
    raise RuntimeError("no non-contractible cycle found")


def edge_width_all_vertices(g):
    """Per-vertex variant: minimum over every base vertex (used to validate transitivity)."""
    return min(edge_width(g, v)[0] for v in range(g.n))


def is_simple_cycle(walk):
    inner = walk[:-1]
    return walk[0] == walk[-1] and len(set(inner)) == len(inner)


def short_noncontractible_cycles(g, length):
    """All non-contractible simple cycles of exactly ``length`` edges, as vertex frozensets.

    Depth-first enumeration with a distance prune; intended for small
    lengths (the six-cycle check of ``T[6 x b]``).
    """
    from .degeneracy import bfs_distances

    found = set()
    for s in range(g.n):
        dist = bfs_distances(g, s, length)

        def dfs(path, vol):
            v = path[-1]
            remaining = length - (len(path) - 1)
            for k in range(6):
                u = int(g.rotation[v, k])
                dx, dy = g.dirs[k]
                nv = (vol[0] + dx, vol[1] + dy)
                if remaining == 1:
                    if u == s and nv != (0, 0):
                        found.add(frozenset(path))
                    continue
                if u <= s or u in path or dist.get(u, length + 1) > remaining - 1:
                    continue
                path.append(u)
                dfs(path, nv)
                path.pop()

        dfs([s], (0, 0))
    return sorted(found, key=sorted)
