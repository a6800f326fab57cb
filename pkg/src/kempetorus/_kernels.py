"""Hot inner loops.

Every kernel here is plain Python over numpy arrays, compiled with
``numba.njit`` unless the environment variable ``KEMPETORUS_NO_NUMBA`` is set
to a non-empty value other than ``0`` (or numba is not importable).  The
interpreted path runs the very same source, so both backends produce
bit-identical results; ``benchmarks/bench_kernels.py`` compares their speed.

Graphs are passed as a padded neighbor table ``nbrs`` of shape ``(n, D)`` with
``deg[v]`` valid entries per row.  Colorings are ``int64`` arrays with entries
in ``1..k``; ``0`` means uncolored where that is meaningful.

The WSK random stream is xorshift64* (shifts 12, 25, 27; multiplier
``0x2545F4914F6CDD1D``) whose state is seeded by one round of splitmix64
(increment ``0x9E3779B97F4A7C15``, multipliers ``0xBF58476D1CE4E5B9`` and
``0x94D049BB133111EB``).  A zero state is replaced by the increment constant.
Uniform integers below ``m`` are ``next() % m``.
"""

import os

import numpy as np

_flag = os.environ.get("KEMPETORUS_NO_NUMBA", "")
USE_NUMBA = _flag in ("", "0")

if USE_NUMBA:
    try:
        import numba
    except ImportError:  # pragma: no cover - numba is a hard dependency
        USE_NUMBA = False

BACKEND = "numba" if USE_NUMBA else "python"

MASK64 = (1 << 64) - 1
FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
SM_GAMMA = 0x9E3779B97F4A7C15
SM_MUL1 = 0xBF58476D1CE4E5B9
SM_MUL2 = 0x94D049BB133111EB
XS_MUL = 0x2545F4914F6CDD1D


def _identity(fn):
    return fn


jit = numba.njit(cache=True) if USE_NUMBA else _identity


# ---------------------------------------------------------------------------
# 64-bit arithmetic differs between backends: numba wraps uint64, Python ints
# grow.  These helpers are the only backend-specific code.

if USE_NUMBA:

    @jit
    def fnv1a64(colors):
        h = np.uint64(FNV_OFFSET)
        p = np.uint64(FNV_PRIME)
        for i in range(colors.shape[0]):
            h = h ^ np.uint64(colors[i] & 0xFF)
            h = h * p
        return h

    @jit
    def _seed_state(seed):
        z = np.uint64(seed) + np.uint64(SM_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(SM_MUL1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(SM_MUL2)
        z = z ^ (z >> np.uint64(31))
        if z == np.uint64(0):
            z = np.uint64(SM_GAMMA)
        return z

    @jit
    def _rand_below(state, m):
        x = state
        x = x ^ (x >> np.uint64(12))
        x = x ^ (x << np.uint64(25))
        x = x ^ (x >> np.uint64(27))
        out = x * np.uint64(XS_MUL)
        return x, np.int64(out % np.uint64(m))

else:

    def fnv1a64(colors):
        h = FNV_OFFSET
        for c in colors.tolist():
            h = ((h ^ (c & 0xFF)) * FNV_PRIME) & MASK64
        return np.uint64(h)

    def _seed_state(seed):
        z = (int(seed) + SM_GAMMA) & MASK64
        z = ((z ^ (z >> 30)) * SM_MUL1) & MASK64
        z = ((z ^ (z >> 27)) * SM_MUL2) & MASK64
        z = z ^ (z >> 31)
        return z if z else SM_GAMMA

    def _rand_below(state, m):
        x = state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        out = (x * XS_MUL) & MASK64
        return x, out % int(m)


# ---------------------------------------------------------------------------
# Kempe components


@jit
def component_into(nbrs, deg, colors, v, a, b, mark, stamp, stack):
    """Flood-fill the a/b component of ``v`` into ``stack``; return its size.

    ``mark[u] == stamp`` flags visited vertices, so callers can reuse ``mark``
    across calls by bumping ``stamp``.
    """
    stack[0] = v
    mark[v] = stamp
    size = 1
    head = 0
    while head < size:
        u = stack[head]
        head += 1
        for t in range(deg[u]):
            w = nbrs[u, t]
            if mark[w] != stamp:
                cw = colors[w]
                if cw == a or cw == b:
                    mark[w] = stamp
                    stack[size] = w
                    size += 1
    return size


@jit
def kempe_component(nbrs, deg, colors, v, a, b):
    n = nbrs.shape[0]
    mark = np.zeros(n, np.int64)
    stack = np.empty(n, np.int64)
    size = component_into(nbrs, deg, colors, v, a, b, mark, 1, stack)
    return np.sort(stack[:size])


@jit
def swap_inplace(nbrs, deg, colors, v, a, b):
    """Interchange ``a`` and ``b`` on the component of ``v``; return its size."""
    n = nbrs.shape[0]
    mark = np.zeros(n, np.int64)
    stack = np.empty(n, np.int64)
    size = component_into(nbrs, deg, colors, v, a, b, mark, 1, stack)
    for i in range(size):
        u = stack[i]
        if colors[u] == a:
            colors[u] = b
        else:
            colors[u] = a
    return size


@jit
def is_proper(nbrs, deg, colors):
    for v in range(nbrs.shape[0]):
        cv = colors[v]
        for t in range(deg[v]):
            if colors[nbrs[v, t]] == cv:
                return False
    return True


@jit
def replay(nbrs, deg, colors, k, anchors, alphas, betas):
    """Apply a move list in place.

    Returns the index of the first invalid move, or ``-1`` if all moves are
    valid Kempe swaps.  A move is invalid when its colors are out of range or
    equal, or when the anchor does not carry one of the two colors.
    """
    n = nbrs.shape[0]
    mark = np.zeros(n, np.int64)
    stack = np.empty(n, np.int64)
    for i in range(anchors.shape[0]):
        v = anchors[i]
        a = alphas[i]
        b = betas[i]
        if v < 0 or v >= n or a < 1 or a > k or b < 1 or b > k or a == b:
            return i
        cv = colors[v]
        if cv != a and cv != b:
            return i
        size = component_into(nbrs, deg, colors, v, a, b, mark, i + 1, stack)
        for j in range(size):
            u = stack[j]
            if colors[u] == a:
                colors[u] = b
            else:
                colors[u] = a
    return -1


@jit
def canonical_relabel(colors, k):
    """Relabel colors by order of first appearance (the least permutation image)."""
    perm = np.zeros(k + 1, np.int64)
    nxt = 1
    out = np.empty_like(colors)
    for i in range(colors.shape[0]):
        c = colors[i]
        if perm[c] == 0:
            perm[c] = nxt
            nxt += 1
        out[i] = perm[c]
    return out


# ---------------------------------------------------------------------------
# Exact coloring search


@jit
def dsatur(nbrs, deg, k, prio, pref, node_cap, break_symmetry):
    """Backtracking k-coloring with saturation-first vertex selection.

    ``prio`` ranks vertices for tie-breaking (lower first); ``pref[v]`` lists
    the colors to try at ``v`` in order.  With ``break_symmetry`` a vertex may
    only take a color at most one above the largest color used so far, which
    is sound when every ``pref`` row is ``1..k``.

    Returns ``(status, colors, nodes)`` with status 1 = found, 0 = exhausted
    (no coloring exists), -1 = node cap hit.
    """
    n = nbrs.shape[0]
    colors = np.zeros(n, np.int64)
    forb = np.zeros((n, k + 1), np.int64)
    sat = np.zeros(n, np.int64)
    free_deg = deg.copy()
    order = np.empty(n, np.int64)
    choice = np.zeros(n, np.int64)
    mx = np.zeros(n + 1, np.int64)
    nodes = 0
    if n == 0:
        return 1, colors, nodes

    depth = 0
    order[0] = _select(colors, sat, free_deg, prio)
    while True:
        v = order[depth]
        if colors[v] != 0:
            c0 = colors[v]
            colors[v] = 0
            for t in range(deg[v]):
                u = nbrs[v, t]
                forb[u, c0] -= 1
                if forb[u, c0] == 0:
                    sat[u] -= 1
                free_deg[u] += 1
        found = 0
        while choice[depth] < k:
            c = pref[v, choice[depth]]
            choice[depth] += 1
            if break_symmetry and c > mx[depth] + 1:
                continue
            if forb[v, c] == 0:
                found = c
                break
        if found == 0:
            depth -= 1
            if depth < 0:
                return 0, colors, nodes
            continue
        nodes += 1
        if nodes > node_cap:
            return -1, colors, nodes
        colors[v] = found
        for t in range(deg[v]):
            u = nbrs[v, t]
            forb[u, found] += 1
            if forb[u, found] == 1:
                sat[u] += 1
            free_deg[u] -= 1
        mx[depth + 1] = max(mx[depth], found)
        depth += 1
        if depth == n:
            return 1, colors, nodes
        order[depth] = _select(colors, sat, free_deg, prio)
        choice[depth] = 0


@jit
def _select(colors, sat, free_deg, prio):
    best = -1
    for v in range(colors.shape[0]):
        if colors[v] != 0:
            continue
        if best < 0:
            best = v
            continue
        if sat[v] > sat[best]:
            best = v
        elif sat[v] == sat[best]:
            if free_deg[v] > free_deg[best]:
                best = v
            elif free_deg[v] == free_deg[best] and prio[v] < prio[best]:
                best = v
    return best


# ---------------------------------------------------------------------------
# Exhaustive state space of small instances


def digits_per_word(k):
    """Base-``k`` digits that fit in one non-negative int64 word."""
    h = 0
    cap = 1
    while cap * k < 2**62:
        cap *= k
        h += 1
    return h


@jit
def encode(colors, k, h, out):
    """Write the base-``k`` code of ``colors`` into ``out``, ``h`` vertices per word.

    Word 0 holds the first ``h`` vertices with vertex 0 most significant,
    so lexicographic order on words is lexicographic order on colorings.
    """
    n = colors.shape[0]
    for w in range(out.shape[0]):
        code = 0
        for v in range(w * h, w * h + h):
            code *= k
            if v < n:
                code += colors[v] - 1
        out[w] = code


@jit
def decode(row, n, k, h, out):
    for w in range(row.shape[0]):
        code = row[w]
        for v in range(w * h + h - 1, w * h - 1, -1):
            if v < n:
                out[v] = code % k + 1
            code //= k


@jit
def find_code(codes, row):
    """Index of ``row`` in the lexicographically sorted ``codes``, or ``-1``."""
    lo = 0
    hi = codes.shape[0]
    W = codes.shape[1]
    while lo < hi:
        mid = (lo + hi) // 2
        cmp = 0
        for w in range(W):
            if codes[mid, w] < row[w]:
                cmp = -1
                break
            if codes[mid, w] > row[w]:
                cmp = 1
                break
        if cmp == 0:
            return mid
        if cmp < 0:
            lo = mid + 1
        else:
            hi = mid
    return -1


@jit
def enumerate_colorings(nbrs, deg, k, canonical, cap, h):
    """All proper k-colorings as code rows, in lexicographic order.

    Backtracking assigns vertices ``0..n-1`` in order, so rows come out
    sorted.  With ``canonical`` only first-appearance-labelled colorings are
    produced, one per orbit of the color permutation group.  Returns
    ``(count, codes)``; when the count exceeds ``cap`` enumeration stops and
    ``count == cap + 1``.
    """
    n = nbrs.shape[0]
    W = (n + h - 1) // h
    codes = np.empty((cap + 1, W), np.int64)
    count = 0
    colors = np.zeros(n, np.int64)
    mx = np.zeros(n + 1, np.int64)
    v = 0
    while v >= 0:
        c = colors[v] + 1
        limit = k
        if canonical and mx[v] + 1 < k:
            limit = mx[v] + 1
        placed = False
        while c <= limit:
            ok = True
            for t in range(deg[v]):
                u = nbrs[v, t]
                if u < v and colors[u] == c:
                    ok = False
                    break
            if ok:
                placed = True
                break
            c += 1
        if not placed:
            colors[v] = 0
            v -= 1
            continue
        colors[v] = c
        if v == n - 1:
            encode(colors, k, h, codes[count])
            count += 1
            if count > cap:
                return count, codes
            continue
        mx[v + 1] = max(mx[v], c)
        v += 1
        colors[v] = 0
    return count, codes[:count]


@jit
def flood_classes(nbrs, deg, k, codes, canonical, h):
    """Label each sorted code row with its Kempe class by breadth-first flood fill.

    Class ids are assigned in increasing order of the smallest code in each
    class.  Returns ``(labels, n_classes)``.
    """
    n = nbrs.shape[0]
    m = codes.shape[0]
    labels = np.full(m, -1, np.int64)
    queue = np.empty(m, np.int64)
    colors = np.empty(n, np.int64)
    child = np.empty(n, np.int64)
    row = np.empty(codes.shape[1], np.int64)
    seen = np.zeros(n, np.int64)
    stack = np.empty(n, np.int64)
    stamp = 0
    n_classes = 0
    for start in range(m):
        if labels[start] >= 0:
            continue
        labels[start] = n_classes
        queue[0] = start
        qh = 0
        qt = 1
        while qh < qt:
            idx = queue[qh]
            qh += 1
            decode(codes[idx], n, k, h, colors)
            for a in range(1, k + 1):
                for b in range(a + 1, k + 1):
                    stamp += 1
                    for v in range(n):
                        cv = colors[v]
                        if (cv != a and cv != b) or seen[v] == stamp:
                            continue
                        size = component_into(nbrs, deg, colors, v, a, b, seen, stamp, stack)
                        for i in range(n):
                            child[i] = colors[i]
                        for j in range(size):
                            u = stack[j]
                            if child[u] == a:
                                child[u] = b
                            else:
                                child[u] = a
                        if canonical:
                            encode(canonical_relabel(child, k), k, h, row)
                        else:
                            encode(child, k, h, row)
                        pos = find_code(codes, row)
                        if labels[pos] < 0:
                            labels[pos] = n_classes
                            queue[qt] = pos
                            qt += 1
        n_classes += 1
    return labels, n_classes


# ---------------------------------------------------------------------------
# Zero-temperature WSK dynamics


@jit
def wsk_run(nbrs, deg, colors0, k, steps, seed, record):
    """Run ``steps`` uniform Kempe-swap proposals from ``colors0``.

    Each step draws a vertex ``v`` uniformly, then a color ``beta`` uniformly
    from the ``k - 1`` colors other than ``colors[v]``, and swaps the
    ``colors[v]``/``beta`` component of ``v``.

    Returns ``(final, anchors, betas, hashes, canon_hashes, trajectory)``;
    hash arrays have ``steps + 1`` entries (initial state first), and the
    trajectory is empty unless ``record``.
    """
    n = nbrs.shape[0]
    colors = colors0.copy()
    anchors = np.empty(steps, np.int64)
    betas = np.empty(steps, np.int64)
    hashes = np.empty(steps + 1, np.uint64)
    canon = np.empty(steps + 1, np.uint64)
    rows = steps + 1 if record else 0
    traj = np.empty((rows, n), np.int8)
    mark = np.zeros(n, np.int64)
    stack = np.empty(n, np.int64)
    state = _seed_state(seed)
    hashes[0] = fnv1a64(colors)
    canon[0] = fnv1a64(canonical_relabel(colors, k))
    if record:
        for i in range(n):
            traj[0, i] = colors[i]
    for s in range(steps):
        state, v = _rand_below(state, n)
        state, r = _rand_below(state, k - 1)
        a = colors[v]
        beta = r + 1
        if beta >= a:
            beta += 1
        size = component_into(nbrs, deg, colors, v, a, beta, mark, s + 1, stack)
        for j in range(size):
            u = stack[j]
            if colors[u] == a:
                colors[u] = beta
            else:
                colors[u] = a
        anchors[s] = v
        betas[s] = beta
        hashes[s + 1] = fnv1a64(colors)
        canon[s + 1] = fnv1a64(canonical_relabel(colors, k))
        if record:
            for i in range(n):
                traj[s + 1, i] = colors[i]
    return colors, anchors, betas, hashes, canon, traj
