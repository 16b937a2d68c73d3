"""Signature container, counting, realizability, and the 5-vertex catalog."""

import random
from itertools import combinations, permutations
from math import comb

from hypothesis import given, settings
from hypothesis import strategies as st

from crossnum._catalog5 import REALIZABLE5
from crossnum.geometry import count_crossings, orient, removal_values, sweep_around
from crossnum.signatures import (
    Signature,
    TripleId,
    convex_signature,
    count_crossings_sig,
    count_crossings_sig_brute,
    delete_vertex,
    flip,
    is_realizable,
    realizable_after_flip,
    removal_values_sig,
    rotation,
    signature_of,
)

from conftest import rand_general


def test_counts_agree_with_geometry():
    rng = random.Random(7)
    for _ in range(150):
        S = rand_general(rng, rng.randint(4, 11))
        D = signature_of(S)
        c = count_crossings(S)
        assert count_crossings_sig(D) == c
        assert count_crossings_sig_brute(D) == c


def test_geometric_signatures_realizable():
    rng = random.Random(17)
    for _ in range(60):
        assert is_realizable(signature_of(rand_general(rng, rng.randint(5, 10))))


def test_convex_signature():
    for n in range(3, 12):
        D = convex_signature(n)
        assert all(D.sign(i, j, k) == 1 for i, j, k in combinations(range(n), 3))
        if n >= 4:
            assert count_crossings_sig(D) == comb(n, 4)
        assert is_realizable(D)


def test_delete_commutes_with_points():
    rng = random.Random(27)
    for _ in range(60):
        n = rng.randint(4, 9)
        S = rand_general(rng, n)
        v = rng.randrange(n)
        assert delete_vertex(signature_of(S), v) == signature_of(S.delete(v))


def test_removal_values_match_geometry():
    rng = random.Random(37)
    for _ in range(50):
        n = rng.randint(4, 10)
        S = rand_general(rng, n)
        D = signature_of(S)
        vals = removal_values_sig(D)
        assert vals == removal_values(S)
        for v in range(n):
            assert vals[v] == count_crossings_sig_brute(delete_vertex(D, v))


def test_realizable_after_flip_matches_full_check():
    # precondition: D realizable; generator walks through full-checked flips
    rng = random.Random(47)
    for _ in range(80):
        n = rng.randint(5, 8)
        D = signature_of(rand_general(rng, n))
        for _ in range(rng.randint(0, 6)):
            t = tuple(sorted(rng.sample(range(n), 3)))
            F = D.flip(t)
            if is_realizable(F):
                D = F
        t = tuple(sorted(rng.sample(range(n), 3)))
        before = D.copy()
        assert realizable_after_flip(D, t) == is_realizable(D.flip(t))
        assert D == before  # query must not mutate


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_sign_parity_property(data):
    # parity handling is a property of the container, for arbitrary bits
    n = data.draw(st.integers(4, 8))
    D = Signature(n)
    for t in combinations(range(n), 3):
        D.set_sign(*t, data.draw(st.sampled_from((1, -1))))
    trio = sorted(data.draw(st.sets(st.integers(0, n - 1), min_size=3, max_size=3)))
    i, j, k = data.draw(st.permutations(trio))
    base = D.sign(*trio)
    inversions = sum(
        1 for a, b in combinations((i, j, k), 2) if a > b
    )
    assert D.sign(i, j, k) == (base if inversions % 2 == 0 else -base)


def test_set_sign_round_trip():
    rng = random.Random(57)
    D = signature_of(rand_general(rng, 7))
    E = Signature(7)
    for i, j, k in combinations(range(7), 3):
        E.set_sign(k, i, j, D.sign(k, i, j))
    assert E == D
    for i, j, k in combinations(range(7), 3):
        s = D.sign(i, j, k)
        assert D.sign(j, i, k) == -s
        assert D.sign(i, k, j) == -s
        assert D.sign(k, i, j) == s
        assert D.sign(j, k, i) == s
        assert D.sign(k, j, i) == -s


def test_flip_changes_exactly_one_triple():
    D = convex_signature(6)
    F = flip(D, (1, 3, 5))
    assert D.sign(1, 3, 5) == 1 and F.sign(1, 3, 5) == -1
    diff = sum(
        1
        for t in combinations(range(6), 3)
        if F.sign(*t) != D.sign(*t)
    )
    assert diff == 1
    assert flip(D, TripleId(1, 3, 5)) == F


def test_rotation_matches_geometric_sweep():
    rng = random.Random(67)
    for _ in range(40):
        n = rng.randint(4, 9)
        S = rand_general(rng, n)
        v = rng.randrange(n)
        rot = rotation(signature_of(S), v)
        order, _ = sweep_around(S.points, v)
        m = len(rot)
        i0 = order.index(rot[0])
        assert [order[(i0 + d) % m] for d in range(m)] == rot


# ---------------------------------------------------------------------------
# dual-route re-derivation of the 5-vertex realizability catalog
# ---------------------------------------------------------------------------

TRIPLES5 = list(combinations(range(5), 3))


def _mask_of_points(pts):
    m = 0
    for t, (i, j, k) in enumerate(TRIPLES5):
        o = orient(pts[i], pts[j], pts[k])
        if o == 0:
            return None
        if o > 0:
            m |= 1 << t
    return m


def _sign_from_mask(m, i, j, k):
    s = 1
    if i > j:
        i, j, s = j, i, -s
    if j > k:
        j, k, s = k, j, -s
    if i > j:
        i, j, s = j, i, -s
    return s if (m >> TRIPLES5.index((i, j, k))) & 1 else -s


def _route_geometric():
    """Realizable masks: grid subsets closed under relabeling + mirror."""
    grid = [(x, y) for x in range(5) for y in range(5)]
    base = set()
    for sub in combinations(grid, 5):
        m = _mask_of_points(sub)
        if m is not None:
            base.add(m)

    def relabel(m, perm):
        out = 0
        for t, (i, j, k) in enumerate(TRIPLES5):
            if _sign_from_mask(m, perm[i], perm[j], perm[k]) > 0:
                out |= 1 << t
        return out

    closed = set()
    for m in base:
        for perm in permutations(range(5)):
            closed.add(relabel(m, perm))
            closed.add(relabel(m ^ 0b1111111111, perm))
    return closed


def _route_axiomatic():
    """Realizable masks: three-term sign exchange + acyclicity axioms."""

    def exchange_ok(m):
        for a, b, c, d, e in permutations(range(5)):
            s1 = _sign_from_mask(m, a, b, c) * _sign_from_mask(m, a, d, e)
            s2 = _sign_from_mask(m, a, b, d) * _sign_from_mask(m, a, c, e)
            s3 = _sign_from_mask(m, a, b, e) * _sign_from_mask(m, a, c, d)
            if s1 == s3 == 1 and s2 == -1:
                return False
            if s1 == s3 == -1 and s2 == 1:
                return False
        return True

    def acyclic_ok(m):
        for sub in combinations(range(5), 4):
            signs = [
                (-1) ** i * _sign_from_mask(m, *(sub[j] for j in range(4) if j != i))
                for i in range(4)
            ]
            if all(s == 1 for s in signs) or all(s == -1 for s in signs):
                return False
        return True

    return {m for m in range(1024) if exchange_ok(m) and acyclic_ok(m)}


def test_catalog_dual_route():
    geo = _route_geometric()
    axiom = _route_axiomatic()
    assert geo == axiom
    assert frozenset(geo) == REALIZABLE5
    assert len(geo) == 264
    assert 0b1111111111 in geo  # convex position
