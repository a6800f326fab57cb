"""Kempe equivalence: exact classes on small graphs, certified routes on large ones.

The certified route between two 5-colorings has three stages.

1. :func:`normalize` moves each coloring to one containing a good
   monochromatic 4-template, by best-first search over local Kempe swaps
   guided by a ladder of motifs (pair, parallel or crossing pairs, triple,
   good template).
2. :func:`align_on_template` connects two colorings that share a good
   template, by lifting swaps through a 4-degeneracy order of the
   contracted graph.
3. :func:`certify_equivalence` joins the two template colorings through a
   common reference coloring: a 4-coloring with the fifth color free, or,
   on ``C37[1,10,11]``, a rotation of the mod-4 coloring.
"""

import heapq
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels as K
from .coloring import (
    Certificate,
    Coloring,
    KempeMove,
    adjacency,
    coloring_hash,
    is_proper,
    make_certificate,
    permutation_moves,
)
from .degeneracy import Template, bfs_distances, contract, good_order
from .errors import (
    NotFourColorable,
    NotGood,
    PreconditionViolated,
    SearchExhausted,
    StateCapExceeded,
    TemplateNotContained,
)
from .fourcolor import exception_case, solve_4coloring
from .patterns import FOURTH_AT, TRIPLE_AT, figure_vector
from .topology import edge_width
from .torus_graph import canonical_forms

K5 = 5

# ---------------------------------------------------------------------------
# exact classes


@dataclass
class ClassReport:
    """Kempe classes of all proper ``k``-colorings of a small graph.

    ``codes`` holds one row of base-``k`` words per enumerated coloring
    (first-appearance relabelled in quotient mode), in lexicographic order,
    and ``labels`` their class ids; class ``i`` has representative
    ``representatives[i]``, its least coloring.
    """

    k: int
    n_classes: int
    representatives: list
    states: int
    quotient: bool
    codes: np.ndarray = field(repr=False)
    labels: np.ndarray = field(repr=False)
    sizes: list = field(default_factory=list)

    def class_of(self, phi):
        colors = np.asarray(phi.colors if isinstance(phi, Coloring) else phi, dtype=np.int64)
        if self.quotient:
            colors = K.canonical_relabel(colors, self.k)
        row = np.empty(self.codes.shape[1], dtype=np.int64)
        K.encode(colors, self.k, K.digits_per_word(self.k), row)
        pos = int(K.find_code(self.codes, row))
        if pos < 0:
            raise ValueError("coloring is not a proper coloring of this graph")
        return int(self.labels[pos])

    def to_json(self):
        return {
            "k": self.k,
            "classes": self.n_classes,
            "states": self.states,
            "quotient": self.quotient,
            "class_sizes": self.sizes,
            "representatives": [r.colors.tolist() for r in self.representatives],
        }


def kempe_classes(g, k, quotient=False, state_cap=5_000_000):
    """Exact Kempe classes by exhaustive enumeration and flood fill.

    In quotient mode colorings are identified up to color permutation; this
    does not change the class count because a color transposition is a
    sequence of Kempe swaps.

    Raises
    ------
    StateCapExceeded
        If there are more than ``state_cap`` colorings to explore.
    """
    nbrs, deg = adjacency(g)
    h = K.digits_per_word(int(k))
    count, codes = K.enumerate_colorings(nbrs, deg, int(k), bool(quotient), int(state_cap), h)
    if count > state_cap:
        raise StateCapExceeded(f"more than {state_cap} colorings", partial_count=int(count))
    labels, n_classes = K.flood_classes(nbrs, deg, int(k), codes, bool(quotient), h)
    reps = []
    first = np.full(n_classes, -1, dtype=np.int64)
    for i in range(len(codes) - 1, -1, -1):
        first[labels[i]] = i
    buf = np.empty(g.n, dtype=np.int64)
    for c in range(n_classes):
        K.decode(codes[first[c]], g.n, int(k), h, buf)
        reps.append(Coloring(buf.copy(), k))
    sizes = np.bincount(labels, minlength=n_classes).tolist()
    return ClassReport(int(k), int(n_classes), reps, int(len(codes)), bool(quotient), codes, labels, sizes)


# ---------------------------------------------------------------------------
# motif ladder, vectorized


class LadderIndex:
    """Index arrays for scoring colorings on the motif ladder.

    Built once per graph.  Good 4-templates are found at one center and
    carried to every other vertex by translation, which is an automorphism
    of these graphs.
    """

    def __init__(self, g):
        self.g = g
        n = g.n
        rot = np.asarray(g.rotation)
        tri, ext, tri_center = [], [], []
        offsets = {}
        for s in (0, 1):
            offsets[s] = self._good_offsets(g, s)
        for c in range(n):
            for s in (0, 1):
                tri.append([rot[c, s], rot[c, s + 2], rot[c, s + 4]])
                tri_center.append(c)
                ext.append([g.shift(c, off) for off in offsets[s]])
        width = max(len(e) for e in ext)
        self.tri = np.array(tri, dtype=np.int64)
        self.tri_center = np.array(tri_center, dtype=np.int64)
        self.ext = np.array([e + [e[0]] * (width - len(e)) for e in ext], dtype=np.int64)
        self.n_ext = width

        def is_pair(u, w):
            return len(g.neighbor_sets[u] & g.neighbor_sets[w]) == 2

        par, cross, pairs, centers_par, centers_cross = [], [], set(), [], []
        for c in range(n):
            R = [int(x) for x in rot[c]]
            for k in range(3):
                A = (R[(k + 4) % 6], R[(k + 2) % 6])
                B = (R[(k + 5) % 6], R[(k + 1) % 6])
                if is_pair(*A) and is_pair(*B):
                    par.append(A + B)
                    centers_par.append(c)
            for j in range(6):
                p = [R[(j + i) % 6] for i in range(4)]
                if is_pair(p[0], p[2]) and is_pair(p[1], p[3]):
                    cross.append((p[0], p[2], p[1], p[3]))
                    centers_cross.append(c)
            for i in range(6):
                u, w = sorted((R[i], R[(i + 2) % 6]))
                if is_pair(u, w):
                    pairs.add((u, w))
        self.par = np.array(par, dtype=np.int64).reshape(-1, 4)
        self.cross = np.array(cross, dtype=np.int64).reshape(-1, 4)
        self.pairs = np.array(sorted(pairs), dtype=np.int64).reshape(-1, 2)

    @staticmethod
    def _good_offsets(g, s):
        """Voltages of fourth vertices making a good template with the slot-``s`` triple at vertex 0."""
        base = {int(g.rotation[0, s + 2 * i]) for i in range(3)}
        found = []
        for o in (1, -1):
            for m in (1, 3, 5):
                frame = ((s + m) % 6, o)
                if {g.shift(0, figure_vector(g, xy, frame)) for xy in TRIPLE_AT} != base:
                    continue
                for xy in FOURTH_AT:
                    vec = figure_vector(g, xy, frame)
                    w = g.shift(0, vec)
                    if w in base or any(w in g.neighbor_sets[t] for t in base):
                        continue
                    if any(g.shift(0, f) == w for f in found):
                        continue
                    if good_order(contract(g, Template([base | {w}]))) is not None:
                        found.append(vec)
        return found

    def scores(self, col):
        """``(templates, triples, pairs of pairs, pairs)`` counts in ``col``."""
        t = col[self.tri]
        tri_mono = (t[:, 0] == t[:, 1]) & (t[:, 1] == t[:, 2])
        n_tri = int(tri_mono.sum())
        n_tpl = 0
        if n_tri and self.n_ext:
            n_tpl = int((tri_mono[:, None] & (col[self.ext] == t[:, :1])).sum())
        p = col[self.par]
        x = col[self.cross]
        n_pp = int(((p[:, 0] == p[:, 1]) & (p[:, 2] == p[:, 3])).sum())
        n_pp += int(((x[:, 0] == x[:, 1]) & (x[:, 2] == x[:, 3])).sum())
        q = col[self.pairs]
        n_pair = int((q[:, 0] == q[:, 1]).sum())
        return (n_tpl, n_tri, n_pp, n_pair)

    @staticmethod
    def rank(score):
        for r, v in zip((4, 3, 2, 1), score):
            if v:
                return r
        return 0

    def witnesses(self, col, rank):
        """Vertex groups of the motifs at ``rank`` in ``col``, in index order."""
        if rank == 4 or rank == 3:
            t = col[self.tri]
            mono = (t[:, 0] == t[:, 1]) & (t[:, 1] == t[:, 2])
            return [tuple(self.tri[i]) + (int(self.tri_center[i]),) for i in np.flatnonzero(mono)]
        if rank == 2:
            out = []
            for arr in (self.par, self.cross):
                v = col[arr]
                hit = (v[:, 0] == v[:, 1]) & (v[:, 2] == v[:, 3])
                out += [tuple(arr[i]) for i in np.flatnonzero(hit)]
            return out
        if rank == 1:
            q = col[self.pairs]
            return [tuple(self.pairs[i]) for i in np.flatnonzero(q[:, 0] == q[:, 1])]
        return [(v,) for v in range(self.g.n)]

    def template_in(self, col):
        """First good monochromatic 4-template in ``col``, or ``None``."""
        t = col[self.tri]
        mono = (t[:, 0] == t[:, 1]) & (t[:, 1] == t[:, 2])
        for i in np.flatnonzero(mono):
            for w in self.ext[i]:
                if col[w] == t[i, 0]:
                    return Template([set(self.tri[i].tolist()) | {int(w)}])
        return None


@lru_cache(maxsize=16)
def ladder_index(g):
    return LadderIndex(g)


def is_six_grid(g):
    """True for ``T[6 x b]`` with ``b >= 6`` in any parameterization."""
    return any(a == 6 and c == 1 and b >= 6 for a, b, c in canonical_forms(g))


@lru_cache(maxsize=16)
def _edge_width(g):
    return edge_width(g)[0]


def check_hypothesis(g):
    """Raise unless ``g`` has edge-width at least 7 or is some ``T[6 x b]``, ``b >= 6``."""
    if _edge_width(g) >= 7 or is_six_grid(g):
        return
    raise PreconditionViolated(f"{g.params} has edge-width {_edge_width(g)} < 7 and is not T[6 x b]")


def _local_moves(nbrs, deg, col, region, k):
    """Distinct Kempe moves whose component meets ``region``, lowest anchor first."""
    n = col.shape[0]
    seen = set()
    out = []
    mark = np.zeros(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    stamp = 0
    for v in region:
        a = int(col[v])
        for b in range(1, k + 1):
            if b == a:
                continue
            lo, hi = min(a, b), max(a, b)
            stamp += 1
            size = K.component_into(nbrs, deg, col, v, a, b, mark, stamp, stack)
            comp = stack[:size]
            key = (int(comp.min()), lo, hi)
            if key in seen:
                continue
            seen.add(key)
            out.append((key[0], lo, hi, comp.copy()))
    out.sort(key=lambda m: m[:3])
    return out


def _best_first(idx, nbrs, deg, col0, region, rank0, k, max_depth, max_expansions):
    """Kempe moves from ``col0`` to a coloring of higher ladder rank, or ``None``."""
    start = col0.copy()
    counter = 0
    score0 = idx.scores(start)
    heap = [(tuple(-x for x in score0), 0, counter, start, [])]
    seen = {start.tobytes()}
    expansions = 0
    while heap and expansions < max_expansions:
        _, depth, _, col, path = heapq.heappop(heap)
        expansions += 1
        if depth >= max_depth:
            continue
        for anchor, a, b, comp in _local_moves(nbrs, deg, col, region, k):
            child = col.copy()
            sub = child[comp]
            child[comp] = np.where(sub == a, b, a)
            key = child.tobytes()
            if key in seen:
                continue
            seen.add(key)
            score = idx.scores(child)
            step = path + [KempeMove(anchor, a, b)]
            if idx.rank(score) > rank0:
                return step, child
            counter += 1
            heapq.heappush(heap, (tuple(-x for x in score), depth + 1, counter, child, step))
    return None


def normalize(g, phi, seed=0, radius=3, max_depth=12, max_expansions=400, check=True):
    """Certificate from ``phi`` to a 5-coloring containing a good monochromatic 4-template.

    Each step raises the ladder rank by best-first search over Kempe swaps
    whose components meet the radius-``radius`` ball around one motif
    witness; witnesses are tried in an order rotated by ``seed``, then the
    whole graph is searched.

    Returns
    -------
    (Certificate, Template)

    Raises
    ------
    PreconditionViolated
        If the graph is outside the supported family (skip with ``check=False``).
    SearchExhausted
        If no upgrade is found; never expected under the hypothesis.
    """
    cert, template, _ = normalize_full(g, phi, seed, radius, max_depth, max_expansions, check)
    return cert, template


def normalize_full(g, phi, seed=0, radius=3, max_depth=12, max_expansions=400, check=True):
    """:func:`normalize` that also returns the final coloring."""
    if check:
        check_hypothesis(g)
    if not is_proper(g, phi):
        raise PreconditionViolated("coloring is not proper")
    idx = ladder_index(g)
    nbrs, deg = adjacency(g)
    col = phi.colors.copy()
    moves = []
    while True:
        score = idx.scores(col)
        rank = idx.rank(score)
        if rank == 4:
            break
        wits = idx.witnesses(col, rank)
        if wits:
            shift = seed % len(wits)
            wits = wits[shift:] + wits[:shift]
        found = None
        for w in wits[:12]:
            region = sorted(bfs_distances(g, [int(v) for v in w], radius))
            found = _best_first(idx, nbrs, deg, col, region, rank, phi.k, max_depth, max_expansions)
            if found:
                break
        if not found:
            found = _best_first(idx, nbrs, deg, col, list(range(g.n)), rank, phi.k, max_depth, 4 * max_expansions)
        if not found:
            raise SearchExhausted(f"no ladder upgrade from rank {rank} on {g.params}")
        step, col = found
        moves += step
    template = idx.template_in(col)
    cert, end = make_certificate(g, phi, moves)
    assert np.array_equal(end.colors, col)
    return cert, template, end


# ---------------------------------------------------------------------------
# aligning colorings that share a good template


def _contains(template, colors):
    return all(len({int(colors[v]) for v in c}) == 1 for c in template.colors)


class _Lifter:
    """Kempe moves on a contracted graph, realized as swaps in ``G``.

    ``order`` is a 4-degeneracy order of the quotient: each vertex has at
    most four neighbors later in it, so in the suffix ``S_j = order[j:]``
    the vertex ``order[j]`` has at most four neighbors.
    """

    def __init__(self, g, qg, order, colors, k):
        self.g = g
        self.qg = qg
        self.order = order
        self.pos = {q: i for i, q in enumerate(order)}
        self.k = k
        self.nbrs, self.deg = adjacency(g)
        self.col = colors
        self.moves = []

    def qcolor(self, q):
        return int(self.col[self.qg.members[q][0]])

    def component(self, q, a, b, level):
        """The ``a``/``b`` component of ``q`` inside the suffix starting at ``level``."""
        comp = {q}
        stack = [q]
        while stack:
            x = stack.pop()
            for y in self.qg.adj[x]:
                if y not in comp and self.pos[y] >= level and self.qcolor(y) in (a, b):
                    comp.add(y)
                    stack.append(y)
        return comp

    def _swap_full(self, anchor, a, b):
        """Swap the ``a``/``b`` component of ``anchor`` in the whole quotient, one ``G`` swap per piece."""
        comp = self.component(anchor, a, b, 0)
        verts = sorted(v for q in comp for v in self.qg.members[q])
        done = set()
        for v in verts:
            if v in done:
                continue
            piece = K.kempe_component(self.nbrs, self.deg, self.col, v, a, b)
            done.update(piece.tolist())
            self.moves.append(KempeMove(int(v), a, b))
            K.swap_inplace(self.nbrs, self.deg, self.col, v, a, b)

    def perform(self, anchor, a, b, level):
        """Realize the swap of the ``a``/``b`` component of ``anchor`` within the suffix ``level``.

        Lower vertices that would join two parts of that component are first
        moved to a color outside ``{a, b}``, recursively at their own level.
        """
        for j in range(level - 1, -1, -1):
            w = self.order[j]
            cw = self.qcolor(w)
            if cw not in (a, b):
                continue
            inner = self.component(anchor, a, b, j + 1)
            touching = [y for y in self.qg.adj[w] if self.pos[y] > j and self.qcolor(y) in (a, b)]
            # w only matters if it links the component to another one
            if not any(y in inner for y in touching) or all(y in inner for y in touching):
                continue
            used = {self.qcolor(y) for y in self.qg.adj[w] if self.pos[y] > j}
            gamma = next(c for c in range(1, self.k + 1) if c not in used and c not in (a, b, cw))
            self.perform(w, cw, gamma, j)
        self._swap_full(anchor, a, b)


def align_on_template(g, phi1, phi2, template, order=None):
    """Certificate from ``phi1`` to ``phi2``, two colorings that both contain ``template``.

    Raises
    ------
    TemplateNotContained
        If a template color is not monochromatic in either coloring.
    NotGood
        If the contracted graph is not 4-degenerate.
    """
    if not _contains(template, phi1.colors) or not _contains(template, phi2.colors):
        raise TemplateNotContained("both colorings must be constant on every template color")
    qg = contract(g, template)
    if order is None:
        order = good_order(qg)
    if order is None:
        raise NotGood("template is not good")
    lift = _Lifter(g, qg, list(order), phi1.colors.copy(), phi1.k)
    target = {q: int(phi2.colors[qg.members[q][0]]) for q in qg.ids}
    for level in range(len(order) - 1, -1, -1):
        q = order[level]
        cur = lift.qcolor(q)
        if cur != target[q]:
            lift.perform(q, cur, target[q], level)
    cert, end = make_certificate(g, phi1, lift.moves)
    if end != phi2:
        raise AssertionError("alignment did not reach the target coloring")
    return cert


# ---------------------------------------------------------------------------
# routing through a reference coloring


def _recolor_moves(colors, vertices, targets):
    """Singleton recolorings ``v -> targets[v]``; the caller guarantees they are free."""
    moves = []
    for v in sorted(vertices):
        c = int(colors[v])
        if c != targets[v]:
            moves.append(KempeMove(int(v), c, int(targets[v])))
            colors[v] = targets[v]
    return moves


def _route_to(g, phi_t, template, reference, spare):
    """Moves from ``phi_t`` (containing ``template``) to ``reference``.

    ``reference`` must not use color ``spare`` on or next to the template.
    The template is painted ``spare`` over ``reference``, aligned to, and
    then each template vertex is recolored back.
    """
    verts = template.vertices
    mid = reference.colors.copy()
    mid[list(verts)] = spare
    mid = Coloring(mid, reference.k)
    moves = align_on_template(g, phi_t, mid, template).moves
    cur = mid.colors.copy()
    moves += _recolor_moves(cur, verts, {v: int(reference.colors[v]) for v in verts})
    return moves


def rotation_coloring(n, s):
    """The ``s``-rotation: color 5 on ``s``, and ``(i mod 4) + 1`` on vertex ``s + i`` for ``0 < i < n``."""
    i = (np.arange(n) - s) % n
    colors = np.where(i == 0, 5, i % 4 + 1)
    return Coloring(colors, K5)


def _closed_nbhd(g, vertices):
    out = set(vertices)
    for v in vertices:
        out |= g.neighbor_sets[v]
    return out


def is_c37(g):
    # C37[1,26,27] is the same graph with the same labels
    return g.family == "circulant" and tuple(g.params.values) in ((37, 10), (37, 26))


@lru_cache(maxsize=16)
def reference_coloring(g):
    """Deterministic 4-coloring used as the meeting point, or ``None``."""
    if exception_case(g.params) is not None:
        return None
    phi0 = solve_4coloring(g)
    return None if phi0 is None else Coloring(phi0.colors, K5)


def _translates(g, template):
    """All translates of a template by the lattice, as vertex sets."""
    verts = sorted(template.vertices)
    base = verts[0]
    out = []
    for t in range(g.n):
        # a voltage carrying base to t
        vec = _voltage_to(g, base, t)
        out.append(frozenset(g.shift(v, vec) for v in verts))
    return out


def _voltage_to(g, u, w):
    dist = {u: (0, 0)}
    frontier = [u]
    while w not in dist:
        nxt = []
        for x in frontier:
            for k in range(6):
                y = int(g.rotation[x, k])
                if y not in dist:
                    d = g.dirs[k]
                    dist[y] = (dist[x][0] + d[0], dist[x][1] + d[1])
                    nxt.append(y)
        frontier = nxt
    return dist[w]


def _rotation_route(g, phi_t, template, s):
    """Moves from ``phi_t`` (containing ``template``) to the ``s``-rotation, with ``s`` off ``N[template]``."""
    return _route_to(g, phi_t, template, rotation_coloring(g.n, s), 5)


def _connect_rotations(g, s1, s2):
    """Moves from the ``s1``-rotation to the ``s2``-rotation through a shared good template."""
    if s1 == s2:
        return []
    idx = ladder_index(g)
    base = Template([set(idx.tri[0].tolist()) | {int(idx.ext[0][0])}])
    for verts in _translates(g, base):
        nb = _closed_nbhd(g, verts)
        if s1 in nb or s2 in nb:
            continue
        T = Template([verts])
        r1 = rotation_coloring(g.n, s1)
        r2 = rotation_coloring(g.n, s2)
        moves = []
        cur = r1.colors.copy()
        moves += _recolor_moves(cur, verts, {v: 5 for v in verts})
        psi1 = Coloring(cur, K5)
        cur2 = r2.colors.copy()
        back = _recolor_moves(cur2, verts, {v: 5 for v in verts})
        psi2 = Coloring(cur2, K5)
        moves += align_on_template(g, psi1, psi2, T).moves
        moves += list(reversed(back))
        return moves
    raise SearchExhausted(f"no template avoids rotations {s1} and {s2}")


def certify_equivalence(g, phi1, phi2, seed=0, check=True):
    """Certificate that two proper 5-colorings are Kempe equivalent.

    Raises
    ------
    PreconditionViolated
        Outside the supported family, or for improper inputs.
    NotFourColorable
        If no reference coloring is available (would indicate a defect).
    """
    if check:
        check_hypothesis(g)
    for phi in (phi1, phi2):
        if phi.k != K5 or not is_proper(g, phi):
            raise PreconditionViolated("inputs must be proper 5-colorings")
    perm = permutation_moves(g, phi1, phi2)
    if perm is not None:
        return make_certificate(g, phi1, perm)[0]
    c1, t1, n1 = normalize_full(g, phi1, seed=seed, check=False)
    c2, t2, n2 = normalize_full(g, phi2, seed=seed, check=False)
    ref = reference_coloring(g)
    if ref is not None:
        m1 = _route_to(g, n1, t1, ref, 5)
        m2 = _route_to(g, n2, t2, ref, 5)
        middle = []
    elif is_c37(g):
        s1 = min(set(range(g.n)) - _closed_nbhd(g, t1.vertices))
        s2 = min(set(range(g.n)) - _closed_nbhd(g, t2.vertices))
        m1 = _rotation_route(g, n1, t1, s1)
        m2 = _rotation_route(g, n2, t2, s2)
        middle = _connect_rotations(g, s1, s2)
    else:
        raise NotFourColorable(f"{g.params} has no reference coloring")
    moves = c1.moves + m1 + middle + list(reversed(m2)) + list(reversed(c2.moves))
    cert, end = make_certificate(g, phi1, moves)
    if end != phi2:
        raise AssertionError("route did not reach the target coloring")
    return cert
