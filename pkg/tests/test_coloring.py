import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kempetorus import build_circulant, build_shifted_grid
from kempetorus.coloring import (
    Certificate,
    Coloring,
    KempeMove,
    apply_move,
    coloring_hash,
    is_proper,
    kempe_component,
    make_certificate,
    permutation_moves,
    random_proper,
    replay,
    transposition_moves,
    verify_certificate,
)
from kempetorus.errors import AnchorColorMismatch, LengthMismatch, Unsatisfiable
from kempetorus.reconfig import rotation_coloring

import oracles
from helpers import BLUE, PARALLEL, GREEN, colored_fixture

GRAPHS = [
    build_shifted_grid(7, 7, 1),
    build_shifted_grid(6, 6, 1),
    build_shifted_grid(5, 8, 3),
    build_circulant(37, 10),
    build_circulant(29, 7),
]
graph_idx = st.integers(0, len(GRAPHS) - 1)


def test_rotation_coloring_of_c37_is_proper(c37):
    # color i mod 4 on i < 37, a fifth color on 37
    labels = np.array([c37.label(v) for v in range(37)])
    colors = np.where(labels == 37, 5, labels % 4 + 1)
    phi = Coloring(colors, 5)
    assert is_proper(c37, phi)
    # rotations are indexed by the 0-based vertex carrying the fifth color
    assert phi == rotation_coloring(37, 36)
    for s in range(37):
        assert is_proper(c37, rotation_coloring(37, s))


def test_constant_coloring_is_improper(t77):
    assert not is_proper(t77, Coloring(np.ones(t77.n), 5))


def test_length_mismatch(t77):
    with pytest.raises(LengthMismatch):
        is_proper(t77, Coloring(np.ones(5), 5))


def test_color_range_checked():
    with pytest.raises(ValueError):
        Coloring([0, 1, 2], 3)
    with pytest.raises(ValueError):
        Coloring([1, 4], 3)
    with pytest.raises(ValueError):
        KempeMove(0, 2, 2)


@given(graph_idx, st.integers(0, 10**6), st.integers(5, 7))
def test_random_proper_is_proper_and_deterministic(gi, seed, k):
    g = GRAPHS[gi]
    phi = random_proper(g, k, seed)
    assert is_proper(g, phi)
    assert phi == random_proper(g, k, seed)


def test_random_proper_unsatisfiable():
    with pytest.raises(Unsatisfiable):
        random_proper(build_shifted_grid(3, 3, 2), 4, 0)


def test_isolated_component(t77):
    phi = random_proper(t77, 5, 3)
    for v in range(t77.n):
        a = phi[v]
        used = {phi[u] for u in t77.neighbor_sets[v]}
        for b in set(range(1, 6)) - used - {a}:
            assert kempe_component(t77, phi, v, a, b).tolist() == [v]


def test_anchor_color_mismatch(t77):
    phi = random_proper(t77, 5, 0)
    a = phi[0]
    others = [c for c in range(1, 6) if c != a]
    with pytest.raises(AnchorColorMismatch):
        kempe_component(t77, phi, 0, others[0], others[1])
    with pytest.raises(AnchorColorMismatch):
        apply_move(t77, phi, KempeMove(0, others[0], others[1]))


def test_component_is_small():
    # parallel pairs with no other green or blue vertex touching them
    g = build_shifted_grid(9, 9, 1)
    labels, fixed = colored_fixture(g, PARALLEL, origin=40)
    core = {labels[i] for i in (1, 2, 3, 4)}
    ring = set().union(*(g.neighbor_sets[v] for v in core)) - core
    adj = oracles.adjacency_lists(g)
    allowed = {v: {c for c in range(1, 6) if c not in (GREEN, BLUE)} for v in ring}
    order = sorted(ring) + [v for v in range(g.n) if v not in ring]
    phi = Coloring(oracles.greedy_complete(adj, fixed, 5, order=order, allowed=allowed), 5)
    assert is_proper(g, phi)
    for i in (1, 2, 3, 4):
        comp = set(kempe_component(g, phi, labels[i], GREEN, BLUE).tolist())
        assert len(comp) <= 4 and comp <= core


@given(graph_idx, st.integers(0, 10**6), st.integers(0, 10**6))
def test_component_matches_flood_fill(gi, seed, pick):
    g = GRAPHS[gi]
    phi = random_proper(g, 5, seed)
    rng = np.random.default_rng(pick)
    adj = oracles.adjacency_lists(g)
    for _ in range(20):
        v = int(rng.integers(g.n))
        b = int(rng.choice([c for c in range(1, 6) if c != phi[v]]))
        got = set(kempe_component(g, phi, v, phi[v], b).tolist())
        assert got == oracles.flood_component(adj, phi.colors.tolist(), v, phi[v], b)


@given(graph_idx, st.integers(0, 10**6), st.integers(0, 10**6))
def test_move_is_involution_and_preserves_properness(gi, seed, pick):
    g = GRAPHS[gi]
    phi = random_proper(g, 5, seed)
    rng = np.random.default_rng(pick)
    adj = oracles.adjacency_lists(g)
    for _ in range(25):
        v = int(rng.integers(g.n))
        b = int(rng.choice([c for c in range(1, 6) if c != phi[v]]))
        move = KempeMove(v, phi[v], b)
        out = apply_move(g, phi, move)
        assert is_proper(g, out)
        assert tuple(out.colors.tolist()) == oracles.swap(adj, phi.colors.tolist(), v, phi[v], b)
        assert apply_move(g, out, move) == phi
        phi = out


def test_properness_preserved_on_many_triples():
    rng = np.random.default_rng(7)
    count = 0
    for gi, g in enumerate(GRAPHS):
        for seed in range(20):
            phi = random_proper(g, 5, 100 * gi + seed)
            for _ in range(100):
                v = int(rng.integers(g.n))
                b = int(rng.choice([c for c in range(1, 6) if c != phi[v]]))
                phi = apply_move(g, phi, KempeMove(v, phi[v], b))
                assert is_proper(g, phi)
                count += 1
    assert count == 10_000


def test_hash_is_fnv1a_over_color_bytes(t77):
    phi = random_proper(t77, 5, 1)
    assert coloring_hash(phi.colors) == oracles.fnv_hash(phi.colors.tolist()) == phi.hash64
    assert coloring_hash(np.array([], dtype=np.int64)) == 0xCBF29CE484222325


@given(graph_idx, st.integers(0, 10**6), st.integers(1, 5), st.integers(1, 5))
def test_transposition_reachability(gi, seed, a, b):
    if a == b:
        return
    g = GRAPHS[gi]
    phi = random_proper(g, 5, seed)
    moves, out = transposition_moves(g, phi, a, b)
    swapped = phi.colors.copy()
    swapped[phi.colors == a] = b
    swapped[phi.colors == b] = a
    assert np.array_equal(out.colors, swapped)
    cert, end = make_certificate(g, phi, moves)
    assert end == out
    assert verify_certificate(g, phi, cert)


@given(st.integers(0, 10**6), st.permutations([1, 2, 3, 4, 5]))
def test_permutation_moves(seed, perm):
    g = GRAPHS[0]
    phi = random_proper(g, 5, seed)
    target = Coloring(np.array(perm)[phi.colors - 1], 5)
    moves = permutation_moves(g, phi, target)
    assert replay(g, phi, moves) == target
    other = random_proper(g, 5, seed + 1)
    pairs = set(zip(phi.colors.tolist(), other.colors.tolist()))
    is_relabel = len(pairs) == len({a for a, _ in pairs}) == len({b for _, b in pairs})
    got = permutation_moves(g, phi, other)
    assert (got is not None) == is_relabel
    if got is not None:
        assert replay(g, phi, got) == other


def _random_certificate(g, seed, length):
    rng = np.random.default_rng(seed)
    phi = random_proper(g, 5, seed)
    cur = phi
    moves = []
    for _ in range(length):
        v = int(rng.integers(g.n))
        b = int(rng.choice([c for c in range(1, 6) if c != cur[v]]))
        m = KempeMove(v, cur[v], b)
        cur = apply_move(g, cur, m)
        moves.append(m)
    cert, end = make_certificate(g, phi, moves)
    assert end == cur
    return phi, cert


def test_empty_certificate(t77):
    phi = random_proper(t77, 5, 0)
    cert = Certificate(t77.fingerprint, phi.hash64, phi.hash64, [])
    assert verify_certificate(t77, phi, cert)


def test_corrupted_anchor_detected(t77):
    phi, cert = _random_certificate(t77, 5, 30)
    assert verify_certificate(t77, phi, cert)
    i = 12
    m = cert.moves[i]
    # an anchor carrying neither color of the move
    cur = replay(t77, phi, cert.moves[:i])
    bad = next(v for v in range(t77.n) if cur[v] not in (m.alpha, m.beta))
    cert.moves[i] = KempeMove(bad, m.alpha, m.beta)
    verdict = verify_certificate(t77, phi, cert)
    assert not verdict and verdict.failed_at == i and verdict.reason == "invalid move"


def test_tamper_reports(t77):
    phi, cert = _random_certificate(t77, 9, 20)
    wrong_graph = Certificate("0" * 16, cert.start_hash, cert.end_hash, cert.moves)
    assert verify_certificate(t77, phi, wrong_graph).reason == "graph fingerprint mismatch"
    wrong_start = Certificate(cert.graph, cert.start_hash ^ 1, cert.end_hash, cert.moves)
    assert verify_certificate(t77, phi, wrong_start).reason == "start hash mismatch"
    wrong_end = Certificate(cert.graph, cert.start_hash, cert.end_hash ^ 1, cert.moves)
    verdict = verify_certificate(t77, phi, wrong_end)
    assert verdict.reason == "end hash mismatch" and verdict.failed_at == len(cert)
    improper = Coloring(np.ones(t77.n), 5)
    bad = Certificate(cert.graph, improper.hash64, improper.hash64, [])
    assert verify_certificate(t77, improper, bad).reason == "start coloring is not proper"


@given(graph_idx, st.integers(0, 10**6), st.integers(0, 40))
def test_reversed_certificate_verifies(gi, seed, length):
    g = GRAPHS[gi]
    phi, cert = _random_certificate(g, seed, length)
    end = replay(g, phi, cert.moves)
    assert verify_certificate(g, end, cert.reversed())


def test_certificate_json_round_trip(t77):
    phi, cert = _random_certificate(t77, 2, 10)
    obj = json.loads(json.dumps(cert.to_json()))
    back = Certificate.from_json(obj)
    assert back == cert
    assert verify_certificate(t77, phi, back)
    assert Coloring.from_json(json.loads(json.dumps(phi.to_json()))) == phi


def test_certificates_chain(t77):
    phi, c1 = _random_certificate(t77, 4, 10)
    mid = replay(t77, phi, c1.moves)
    c2, _ = make_certificate(t77, mid, [KempeMove(0, mid[0], 1 + mid[0] % 5)])
    both = c1.then(c2)
    assert verify_certificate(t77, phi, both)
    with pytest.raises(ValueError):
        c2.then(c1)
