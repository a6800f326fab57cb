"""Local color motifs and the templates they generate.

Motifs are read off the rotation system, so they are found the same way on
shifted grids and circulants.  Around a center ``c`` with rotation
``R[0..5]``:

* triple: one color on ``R[s], R[s+2], R[s+4]``;
* pair: two vertices of one color with exactly two common neighbors;
* parallel pairs: one color on ``R[k+2], R[k+4]`` and another on
  ``R[k+5], R[k+1]``;
* crossing pairs: one color on ``R[j], R[j+2]`` and another on
  ``R[j+1], R[j+3]``.

Figure coordinates use the doubled hexagonal convention: the six
neighbors of ``(x, y)`` are ``(x +- 2, y)`` and ``(x +- 1, y +- 1)``.
"""

from dataclasses import dataclass

from .degeneracy import Template, bfs_distances, contract, good_order, is_good

KINDS = ("triple", "parallel_pairs", "crossing_pairs", "pair")

# E, NE, NW, W, SW, SE in doubled coordinates
DOUBLED_DIRS = ((2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1))


@dataclass(frozen=True)
class Pattern:
    """A motif occurrence.

    ``witness`` lists the motif vertices in figure order followed by the
    center: ``(t1, t2, t3, center)`` for triples, ``(u, w, c1, c2)`` for
    pairs, and ``(p1, p2, p3, p4, center)`` for parallel and crossing pairs.
    ``classes`` holds the same-colored vertex groups.
    """

    kind: str
    witness: tuple
    classes: tuple

    @property
    def center(self):
        return self.witness[-1] if self.kind != "pair" else None

    @property
    def vertices(self):
        return frozenset(self.witness)

    def to_json(self):
        return {"kind": self.kind, "witness": list(self.witness)}


def _rot(g, c):
    return [int(u) for u in g.rotation[c]]


def _common(g, u, w):
    return g.neighbor_sets[u] & g.neighbor_sets[w]


def _is_pair(g, u, w):
    return len(_common(g, u, w)) == 2


def find_patterns(g, phi, kinds=KINDS, within=None):
    """All motif occurrences in ``phi``, in a deterministic order.

    Parameters
    ----------
    kinds : iterable of str
        Subset of ``"triple"``, ``"parallel_pairs"``, ``"crossing_pairs"``,
        ``"pair"``.
    within : set of int, optional
        Only report motifs whose colored vertices all lie in this set.
    """
    col = phi.colors
    kinds = set(kinds)
    out = []

    def ok(vs):
        return within is None or all(v in within for v in vs)

    if "triple" in kinds:
        for c in range(g.n):
            R = _rot(g, c)
            for s in (0, 1):
                t = (R[s], R[s + 2], R[s + 4])
                if col[t[0]] == col[t[1]] == col[t[2]] and ok(t):
                    out.append(Pattern("triple", t + (c,), (tuple(sorted(t)),)))
    if "parallel_pairs" in kinds:
        for c in range(g.n):
            R = _rot(g, c)
            for k in range(3):
                A = (R[(k + 4) % 6], R[(k + 2) % 6])
                B = (R[(k + 5) % 6], R[(k + 1) % 6])
                if col[A[0]] == col[A[1]] and col[B[0]] == col[B[1]] and ok(A + B):
                    if _is_pair(g, *A) and _is_pair(g, *B):
                        out.append(
                            Pattern("parallel_pairs", A + B + (c,), (tuple(sorted(A)), tuple(sorted(B))))
                        )
    if "crossing_pairs" in kinds:
        for c in range(g.n):
            R = _rot(g, c)
            for j in range(6):
                p = tuple(R[(j + i) % 6] for i in range(4))
                A, B = (p[0], p[2]), (p[1], p[3])
                if col[A[0]] == col[A[1]] and col[B[0]] == col[B[1]] and ok(p):
                    if _is_pair(g, *A) and _is_pair(g, *B):
                        out.append(
                            Pattern("crossing_pairs", p + (c,), (tuple(sorted(A)), tuple(sorted(B))))
                        )
    if "pair" in kinds:
        for u in range(g.n):
            near = set()
            for x in g.neighbor_sets[u]:
                near |= g.neighbor_sets[x]
            for w in sorted(near):
                if w <= u or col[u] != col[w] or not ok((u, w)):
                    continue
                common = _common(g, u, w)
                if len(common) == 2:
                    out.append(Pattern("pair", (u, w) + tuple(sorted(common)), ((u, w),)))
    order = {kind: i for i, kind in enumerate(KINDS)}
    out.sort(key=lambda p: (order[p.kind], p.witness))
    return out


def best_rank(g, phi):
    """Ladder rank of ``phi``: 3 triple, 2 parallel or crossing pairs, 1 pair, 0 none."""
    for rank, kinds in ((3, ("triple",)), (2, ("parallel_pairs", "crossing_pairs")), (1, ("pair",))):
        if find_patterns(g, phi, kinds):
            return rank
    return 0


# ---------------------------------------------------------------------------
# figure coordinates


def figure_vector(g, xy, frame=(0, 1)):
    """Lattice voltage of the figure offset ``xy`` under ``frame = (k, o)``.

    The frame sends figure direction ``d`` (E, NE, NW, W, SW, SE) to
    rotation slot ``k + o*d``; ``o = -1`` mirrors the figure.
    """
    x, y = xy
    if (x - y) % 2:
        raise ValueError(f"{xy} is not a lattice point")
    p, q = (x - y) // 2, y
    k, o = frame
    e = g.dirs[k % 6]
    ne = g.dirs[(k + o) % 6]
    return (p * e[0] + q * ne[0], p * e[1] + q * ne[1])


def place(g, origin, xy, frame=(0, 1)):
    return int(g.shift(origin, figure_vector(g, xy, frame)))


def place_all(g, origin, coords, frame=(0, 1)):
    """Map each label of ``coords`` (label -> figure point) to a vertex."""
    return {label: place(g, origin, xy, frame) for label, xy in coords.items()}


# the triple sits at W, NE, SE of its center; the fourth vertex takes one of two spots
TRIPLE_AT = ((-2, 0), (1, 1), (1, -1))
FOURTH_AT = ((5, 1), (4, 2))


def _triple_slot(g, triple):
    c = triple.witness[3]
    R = _rot(g, c)
    s = R.index(triple.witness[0])
    return c, s % 2


def triple_templates(g, triple):
    """Good monochromatic 4-templates extending ``triple``.

    The candidates are the two fourth-vertex positions under the six
    symmetries of the triple (rotations by 120 degrees and reflections);
    only good ones are returned, sorted.  On graphs of edge-width at least
    7 there are 12.
    """
    c, s = _triple_slot(g, triple)
    base = set(triple.witness[:3])
    found = set()
    for o in (1, -1):
        for m in (1, 3, 5):
            # W, NE, SE are figure directions 3, 1, 5; k + o*{1,3,5} must hit s + {0,2,4}
            k = (s + m) % 6
            frame = (k, o)
            if {place(g, c, xy, frame) for xy in TRIPLE_AT} != base:
                continue
            for xy in FOURTH_AT:
                w = place(g, c, xy, frame)
                if w in base or any(w in g.neighbor_sets[t] for t in base):
                    continue
                found.add(frozenset(base | {w}))
    out = []
    for vs in sorted(found, key=sorted):
        T = Template([vs])
        if good_order(contract(g, T)) is not None:
            out.append(T)
    return out


def triple_extensions_exhaustive(g, triple, radius=4):
    """Every independent fourth vertex within ``radius`` of the triple giving a good template."""
    base = set(triple.witness[:3])
    blocked = set(base)
    for t in base:
        blocked |= g.neighbor_sets[t]
    near = bfs_distances(g, base, radius)
    out = []
    for w in sorted(set(near) - blocked):
        T = Template([base | {w}])
        if good_order(contract(g, T)) is not None:
            out.append(T)
    return out


def bonus_vertices(g, template, H, radius=2):
    """Vertices ``v`` outside ``H`` such that ``template`` plus ``{v}`` as its own color is good.

    Candidates are the vertices within ``radius`` of ``H`` not already in
    the template.  Returns ``(v, augmented template)`` pairs sorted by ``v``.
    """
    H = {int(v) for v in H}
    used = set(template.vertices)
    out = []
    for v in sorted(set(bfs_distances(g, H, radius)) - H - used):
        T2 = template.with_color({v})
        if is_good(g, T2) is not None:
            out.append((v, T2))
    return out
