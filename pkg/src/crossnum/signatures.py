"""Triple-orientation signatures of good drawings of complete graphs.

A signature on n vertices assigns + or - to every triple i < j < k.  It is
the combinatorial shadow of a pseudolinear drawing: the sign of a triple says
on which side of the pseudoline through the first two vertices the third one
lies.  Everything downstream of exact coordinates -- counting crossings,
checking realizability, flipping one triple, deleting a vertex -- works on
the packed signs directly, so signatures of a few thousand vertices stay
cheap to copy and mutate.

Signs are stored one bit per lexicographically ranked triple (1 means +),
LSB first inside each byte.
"""

from dataclasses import dataclass
from functools import cmp_to_key
from itertools import combinations
from math import comb

from .geometry import DegenerateError, orient, _points
from .geometry import crossings_involving as _crossings_involving
from ._catalog5 import REALIZABLE5

_TRIPLES5 = tuple(combinations(range(5), 3))


@dataclass(frozen=True)
class TripleId:
    """A vertex triple in canonical increasing order."""

    i: int
    j: int
    k: int

    def __post_init__(self):
        if not 0 <= self.i < self.j < self.k:
            raise ValueError(f"triple must be increasing, got {(self.i, self.j, self.k)}")

    def __iter__(self):
        return iter((self.i, self.j, self.k))


class Signature:
    """Packed triple signs with O(1) rank lookup and parity-aware queries."""

    __slots__ = ("n", "_bits", "_arank", "_psum")

    def __init__(self, n, bits=None):
        if n < 3:
            raise ValueError("signature needs at least 3 vertices")
        self.n = n
        nb = (comb(n, 3) + 7) // 8
        if bits is None:
            self._bits = bytearray(nb)
        else:
            if len(bits) != nb:
                raise ValueError(f"expected {nb} sign bytes, got {len(bits)}")
            self._bits = bytearray(bits)
        # rank(i,j,k) = arank[i] + psum[j] - psum[i+1] + (k - j - 1)
        arank = [0] * (n + 1)
        psum = [0] * (n + 1)
        for v in range(n):
            arank[v + 1] = arank[v] + comb(n - 1 - v, 2)
            psum[v + 1] = psum[v] + (n - 1 - v)
        self._arank = arank
        self._psum = psum

    @property
    def triple_count(self):
        return comb(self.n, 3)

    def rank(self, i, j, k):
        """Lexicographic rank of the increasing triple (i, j, k)."""
        return self._arank[i] + self._psum[j] - self._psum[i + 1] + (k - j - 1)

    def _get(self, r):
        return (self._bits[r >> 3] >> (r & 7)) & 1

    def _put(self, r, bit):
        if bit:
            self._bits[r >> 3] |= 1 << (r & 7)
        else:
            self._bits[r >> 3] &= ~(1 << (r & 7)) & 0xFF

    def sign(self, a, b, c):
        """Orientation sign of any three distinct vertices, +1 or -1.

        Swapping two vertices flips the sign, exactly like the determinant
        orientation of three points.
        """
        s = 1
        if a > b:
            a, b, s = b, a, -s
        if b > c:
            b, c, s = c, b, -s
            if a > b:
                a, b, s = b, a, -s
        if a == b or b == c:
            raise ValueError("vertices of a triple must be distinct")
        return s if self._get(self.rank(a, b, c)) else -s

    def set_sign(self, a, b, c, value):
        """Store the sign (+1/-1) for any distinct triple, parity-adjusted."""
        s = 1 if value > 0 else -1
        if a > b:
            a, b, s = b, a, -s
        if b > c:
            b, c, s = c, b, -s
            if a > b:
                a, b, s = b, a, -s
        if a == b or b == c:
            raise ValueError("vertices of a triple must be distinct")
        self._put(self.rank(a, b, c), 1 if s > 0 else 0)

    def copy(self):
        return Signature(self.n, bytes(self._bits))

    def to_bytes(self):
        return bytes(self._bits)

    def flip(self, t):
        """A new signature with the sign of triple t reversed."""
        i, j, k = t
        out = self.copy()
        out._flip_inplace((i, j, k))
        return out

    def _flip_inplace(self, t):
        i, j, k = sorted(t)
        r = self.rank(i, j, k)
        self._bits[r >> 3] ^= 1 << (r & 7)

    def __eq__(self, other):
        return (
            isinstance(other, Signature)
            and self.n == other.n
            and self._bits == other._bits
        )

    def __hash__(self):
        return hash((self.n, bytes(self._bits)))

    def __repr__(self):
        return f"Signature(n={self.n})"


def convex_signature(n):
    """The signature of n points in convex position, all triples positive."""
    if n < 3:
        raise ValueError("signature needs at least 3 vertices")
    nbits = comb(n, 3)
    bits = bytearray(b"\xff" * ((nbits + 7) // 8))
    if nbits & 7:
        bits[-1] = (1 << (nbits & 7)) - 1
    return Signature(n, bytes(bits))


def signature_of(S):
    """Extract the triple signature of a point set in general position."""
    pts = _points(S)
    n = len(pts)
    if n < 3:
        raise ValueError("signature needs at least 3 points")
    D = Signature(n)
    r = 0
    put = D._put
    for i in range(n):
        pi = pts[i]
        for j in range(i + 1, n):
            pj = pts[j]
            for k in range(j + 1, n):
                o = orient(pi, pj, pts[k])
                if o == 0:
                    raise DegenerateError(f"collinear triple ({i}, {j}, {k})")
                put(r, 1 if o > 0 else 0)
                r += 1
    return D


def _pair_crossing(sign, a, b, c, d):
    """Whether some perfect pairing of {a,b,c,d} yields a crossing.

    Two chords pq and rs of a 4-subset cross exactly when p, q lie on
    opposite sides of rs and r, s lie on opposite sides of pq.
    """
    for (p, q), (r, s) in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
        if sign(p, q, r) != sign(p, q, s) and sign(r, s, p) != sign(r, s, q):
            return True
    return False


def count_crossings_sig_brute(D):
    """Crossing count by checking all C(n,4) subsets against the pairing rule."""
    sign = D.sign
    total = 0
    for a, b, c, d in combinations(range(D.n), 4):
        if _pair_crossing(sign, a, b, c, d):
            total += 1
    return total


def rotation(D, v):
    """Counterclockwise order of the other vertices as seen from v.

    The reference vertex is the lowest index other than v; the remaining
    vertices split into the half-turn after the reference direction and the
    half-turn before it, each sorted by the signature's own orientation.
    """
    n = D.n
    if not 0 <= v < n:
        raise ValueError(f"vertex {v} out of range")
    ref = 1 if v == 0 else 0
    fore = []
    aft = []
    for x in range(n):
        if x == v or x == ref:
            continue
        (fore if D.sign(v, ref, x) > 0 else aft).append(x)

    def before(x, y):
        return -1 if D.sign(v, x, y) > 0 else 1

    fore.sort(key=cmp_to_key(before))
    aft.sort(key=cmp_to_key(before))
    return [ref] + fore + aft


def _rotation_windows(D, v):
    """Rotation around v and, per position, the size of its forward window.

    avals[t] counts the vertices strictly inside the half-turn that starts
    just after direction rot[t].  Valid for signatures of pseudolinear
    drawings, where each window is a contiguous arc of the rotation.
    """
    rot = rotation(D, v)
    m = len(rot)
    sign = D.sign
    avals = []
    j = 1
    for t in range(m):
        if j < t + 1:
            j = t + 1
        while j - t < m and sign(v, rot[t], rot[j % m]) > 0:
            j += 1
        avals.append(j - t - 1)
    return rot, avals


def count_crossings_sig(D):
    """Crossing count of a realizable signature in O(n^2 log n).

    Sums, per vertex, the triples whose interior misses it, via window
    counts in the rotation; same inclusion-exclusion as the point-set
    counter.
    """
    n = D.n
    if n < 4:
        return 0
    total_t = 0
    for v in range(n):
        _, avals = _rotation_windows(D, v)
        total_t += comb(n - 1, 3) - sum(a * (a - 1) // 2 for a in avals)
    return comb(n, 4) - total_t


def removal_values_sig(D):
    """cr(D minus v) for every vertex v, from one pass of rotation sweeps."""
    n = D.n
    if n < 4:
        raise ValueError("need at least 4 vertices")
    cr, involved = _crossings_involving(
        n, (_rotation_windows(D, v) for v in range(n))
    )
    return [cr - involved[v] for v in range(n)]


def _mask5(D, sub):
    """10-bit sign mask of a 5-subset, lex triple order, 1 for +."""
    sign = D.sign
    m = 0
    for r, (a, b, c) in enumerate(_TRIPLES5):
        if sign(sub[a], sub[b], sub[c]) > 0:
            m |= 1 << r
    return m


def is_realizable(D):
    """Whether every 5-subset's sign pattern occurs in some point set.

    Five-vertex consistency characterizes the signatures of pseudolinear
    drawings, so this is a full realizability check.  Signatures on fewer
    than 5 vertices pass vacuously.
    """
    n = D.n
    if n < 5:
        return True
    for sub in combinations(range(n), 5):
        if _mask5(D, sub) not in REALIZABLE5:
            return False
    return True


def flip(D, t):
    """A new signature equal to D with the sign of triple t reversed."""
    return D.flip(t)


def realizable_after_flip(D, t):
    """Whether flipping triple t keeps a realizable signature realizable.

    Only the sign of t changes, so only the C(n-3, 2) 5-subsets containing
    all of t can turn bad; every other subset keeps its mask.  Assumes D is
    realizable (the invariant maintained by flip search); then the result
    equals is_realizable(flip(D, t)) at a fraction of the cost.
    """
    i, j, k = sorted(t)
    D._flip_inplace((i, j, k))
    try:
        rest = [x for x in range(D.n) if x not in (i, j, k)]
        for p, q in combinations(rest, 2):
            sub = tuple(sorted((i, j, k, p, q)))
            if _mask5(D, sub) not in REALIZABLE5:
                return False
        return True
    finally:
        D._flip_inplace((i, j, k))


def delete_vertex(D, v):
    """The signature induced on the other vertices, indices shifted down."""
    n = D.n
    if not 0 <= v < n:
        raise ValueError(f"vertex {v} out of range")
    if n - 1 < 3:
        raise ValueError("deletion would leave fewer than 3 vertices")
    out = Signature(n - 1)
    keep = [x for x in range(n) if x != v]
    r = 0
    get = D._get
    rank = D.rank
    bits = out._bits
    m = n - 1
    for i in range(m):
        ki = keep[i]
        for j in range(i + 1, m):
            kj = keep[j]
            for k in range(j + 1, m):
                if get(rank(ki, kj, keep[k])):
                    bits[r >> 3] |= 1 << (r & 7)
                r += 1
    return out
