"""Exact integer geometry for straight-line drawings of complete graphs.

Every predicate and counter works on unbounded Python integers and never
rounds.  A drawing is a sequence of (x, y) integer pairs in general position
(no three points collinear).  The number of edge crossings of the complete
graph drawn with straight edges equals the number of 4-point subsets in
convex position, which is what the counters compute.

The fast counter uses one angular sweep per point.  Around a sweep center,
directions to the other points are split into two half-turn blocks and sorted
by an exact integer key, so collinear points show up as key collisions and
everything stays in pure integer arithmetic.
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb


class DegenerateError(ValueError):
    """A repeated point or three collinear points where general position is required."""


def orient(a, b, c):
    """Sign of the signed area of triangle abc: +1 ccw, -1 cw, 0 collinear."""
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


def segments_cross(a, b, c, d):
    """True iff the open segments ab and cd properly cross.

    Raises DegenerateError when any three of the four points are collinear
    (which also covers repeated points).
    """
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    if 0 in (o1, o2, o3, o4):
        raise DegenerateError("collinear triple among segment endpoints")
    return o1 != o2 and o3 != o4


@dataclass(frozen=True)
class PointSet:
    """An indexed set of integer points; indices are stable identities."""

    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(tuple(p) for p in self.points))

    @property
    def n(self):
        return len(self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def replace(self, i, q):
        """A copy with point i moved to q."""
        pts = list(self.points)
        pts[i] = tuple(q)
        return PointSet(tuple(pts))

    def delete(self, i):
        """A copy with point i removed (later indices shift down)."""
        pts = list(self.points)
        del pts[i]
        return PointSet(tuple(pts))


@dataclass(frozen=True)
class CandidateBatch:
    """Replacement positions to try for one vertex (the anchor)."""

    anchor_index: int
    candidates: tuple

    def __post_init__(self):
        object.__setattr__(self, "candidates", tuple(tuple(q) for q in self.candidates))


def _points(S):
    return [tuple(p) for p in S]


def _is_upper(v):
    """True for directions with angle in [0, pi): dy > 0, or dy == 0 and dx > 0."""
    return v[1] > 0 or (v[1] == 0 and v[0] > 0)


def sweep_around(pts, center):
    """Angular sweep of all other points around pts[center].

    Returns (order, avals).  order lists the other point indices sorted
    counterclockwise by direction starting from the positive x axis; avals[t]
    is the number of points whose direction lies in the open half turn
    counterclockwise after order[t]'s direction (the "window count" used by
    all triangle-counting formulas).

    Raises DegenerateError when two directions coincide or oppose, i.e. when
    the center lies on a line through two other points or a point repeats.
    """
    cx, cy = pts[center]
    diffs = []
    m = 0
    for idx in range(len(pts)):
        if idx == center:
            continue
        dx = pts[idx][0] - cx
        dy = pts[idx][1] - cy
        if dx == 0 and dy == 0:
            raise DegenerateError("repeated point at index %d" % idx)
        a = dx if dx >= 0 else -dx
        b = dy if dy >= 0 else -dy
        if a > m:
            m = a
        if b > m:
            m = b
        diffs.append((dx, dy, idx))
    # Distinct directions differ in slope by at least 1/m^2, so scaling by
    # m^2 + 1 before flooring keeps distinct directions on distinct keys.
    K = m * m + 1
    up = []
    low = []
    up_axis = low_axis = None
    for dx, dy, idx in diffs:
        if dy > 0:
            up.append(((-dx) * K // dy, idx))
        elif dy < 0:
            low.append((dx * K // (-dy), idx))
        elif dx > 0:
            if up_axis is not None:
                raise DegenerateError("collinear points through sweep center")
            up_axis = idx
        else:
            if low_axis is not None:
                raise DegenerateError("collinear points through sweep center")
            low_axis = idx
    if up_axis is not None and low_axis is not None:
        raise DegenerateError("collinear points through sweep center")
    up.sort()
    low.sort()

    nu = len(up) + (up_axis is not None)
    nl = len(low) + (low_axis is not None)
    order = []
    avals = []

    # Window counts by merging the two sorted blocks.  For an upper element,
    # later upper elements plus the lower elements with a strictly smaller
    # folded key (and the lower axis point, folded to angle 0) fall in its
    # window; symmetrically for lower elements.
    if up_axis is not None:
        order.append(up_axis)
        avals.append(nu - 1)
    j = 0
    prev = None
    for i, (key, idx) in enumerate(up):
        if key == prev:
            raise DegenerateError("collinear points through sweep center")
        prev = key
        while j < len(low) and low[j][0] < key:
            j += 1
        if j < len(low) and low[j][0] == key:
            raise DegenerateError("collinear points through sweep center")
        order.append(idx)
        avals.append((nu - 1 - (i + (up_axis is not None))) + j + (low_axis is not None))
    if low_axis is not None:
        order.append(low_axis)
        avals.append(nl - 1)
    j = 0
    prev = None
    for i, (key, idx) in enumerate(low):
        if key == prev:
            raise DegenerateError("collinear points through sweep center")
        prev = key
        while j < len(up) and up[j][0] < key:
            j += 1
        order.append(idx)
        avals.append((nl - 1 - (i + (low_axis is not None))) + j + (up_axis is not None))
    return order, avals


def count_crossings(S):
    """Exact crossing count of the straight-line K_n drawing on S.

    One angular sweep per point: a 4-subset is non-convex exactly when one
    point lies inside the triangle of the other three, and the triangles
    containing a point p are counted from p's window counts.  O(n^2 log n).
    """
    pts = _points(S)
    n = len(pts)
    if n < 3:
        raise ValueError("need at least 3 points")
    total_t = 0
    base = comb(n - 1, 3)
    for p in range(n):
        _, avals = sweep_around(pts, p)
        total_t += base - sum(a * (a - 1) // 2 for a in avals)
    return comb(n, 4) - total_t


def count_crossings_brute(S):
    """Crossing count straight from the definition: all disjoint segment pairs.

    O(n^4); kept as the oracle for the fast counter.
    """
    pts = _points(S)
    n = len(pts)
    if n < 3:
        raise ValueError("need at least 3 points")
    if n == 3:
        if orient(*pts) == 0:
            raise DegenerateError("collinear triple")
        return 0
    segs = list(combinations(range(n), 2))
    total = 0
    for s in range(len(segs)):
        a, b = segs[s]
        for t in range(s + 1, len(segs)):
            c, d = segs[t]
            if a == c or a == d or b == c or b == d:
                continue
            if segments_cross(pts[a], pts[b], pts[c], pts[d]):
                total += 1
    return total


def _window_prefix(avals):
    pref = [0]
    acc = 0
    for a in avals:
        acc += a
        pref.append(acc)
    return pref


def crossings_involving(n, sweeps):
    """Crossing count plus per-vertex crossing involvements from sweeps.

    sweeps yields, for each center x in index order, its (order, avals).  For
    each p the crossings involving p are C(n-1,3) minus the triangles
    containing p minus, for every other sweep center x, the triangles through
    p that contain x; the last term comes from window counts and an arc sum
    over the positions that see p in their window.  Returns (cr, involved);
    the involvements always satisfy sum(involved) == 4 * cr.
    """
    m = n - 1
    cmm = comb(m - 1, 2)
    involved = [comb(m, 3)] * n
    total_t = 0
    for x, (order, avals) in enumerate(sweeps):
        pref = _window_prefix(avals)
        tot = pref[-1]
        tx = comb(m, 3) - sum(a * (a - 1) // 2 for a in avals)
        total_t += tx
        involved[x] -= tx
        for pos in range(m):
            p = order[pos]
            a = avals[pos]
            ins = (pos + a + 1) % m
            if ins <= pos:
                arcsum = pref[pos] - pref[ins]
            else:
                arcsum = tot - (pref[ins] - pref[pos])
            involved[p] -= cmm - a * (a - 1) // 2 - (arcsum - (m - 1 - a))
    return comb(n, 4) - total_t, involved


def removal_values(S):
    """cr(S minus p) for every vertex p, from one pass of angular sweeps.

    O(n^2 log n) total instead of n separate recounts.
    """
    pts = _points(S)
    n = len(pts)
    if n < 4:
        raise ValueError("need at least 4 points")
    cr, involved = crossings_involving(n, (sweep_around(pts, x) for x in range(n)))
    return [cr - involved[p] for p in range(n)]


class _SweepTable:
    """Stored sweep around one point, queryable by arbitrary exact directions."""

    __slots__ = ("vecs", "avals", "nu", "pref", "tot", "m")

    def __init__(self, pts, center):
        order, avals = sweep_around(pts, center)
        cx, cy = pts[center]
        self.vecs = [(pts[w][0] - cx, pts[w][1] - cy) for w in order]
        self.avals = avals
        self.nu = sum(1 for v in self.vecs if _is_upper(v))
        self.pref = _window_prefix(avals)
        self.tot = self.pref[-1]
        self.m = len(order)

    def _bisect(self, lo, hi, e):
        """Insertion cut for upper-class direction e among vecs[lo:hi] (folded)."""
        fold = lo >= self.nu
        while lo < hi:
            mid = (lo + hi) // 2
            wx, wy = self.vecs[mid]
            if fold:
                wx, wy = -wx, -wy
            c = wx * e[1] - wy * e[0]
            if c == 0:
                raise DegenerateError("candidate collinear with two points")
            if c > 0:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def window_count_and_arcsum(self, d):
        """For direction d from the center: the number of stored points in the
        open half turn after d, and the sum of window counts over the stored
        points in the open half turn before d."""
        e = d if _is_upper(d) else (-d[0], -d[1])
        cut_u = self._bisect(0, self.nu, e)
        cut_l = self._bisect(self.nu, self.m, e)
        if _is_upper(d):
            ins_d, ins_nd = cut_u, cut_l
        else:
            ins_d, ins_nd = cut_l, cut_u
        mv = self.m
        s = ins_d % mv
        t = ins_nd % mv
        if s == t:
            # Either every stored point is in the half turn after d or none is.
            wx, wy = self.vecs[s % mv]
            inside = d[0] * wy - d[1] * wx > 0
            if inside:
                return mv, 0
            return 0, self.tot
        aq = (t - s) % mv
        if t <= s:
            arcsum = self.pref[s] - self.pref[t]
        else:
            arcsum = self.tot - (self.pref[t] - self.pref[s])
        return aq, arcsum


def evaluate_candidates(S, batch):
    """Crossing count of S with the anchor replaced by each candidate.

    The batch shares all sweeps over S minus the anchor; each candidate then
    costs one fresh sweep around itself plus two binary searches per vertex.
    A candidate that breaks general position yields None instead of a count.
    """
    pts = _points(S)
    n = len(pts)
    h = batch.anchor_index
    if not 0 <= h < n:
        raise ValueError("anchor index out of range")
    T = pts[:h] + pts[h + 1:]
    m = n - 1
    if m < 3:
        raise ValueError("need at least 4 points")
    tables = []
    base_t = 0
    for v in range(m):
        tab = _SweepTable(T, v)
        tables.append(tab)
        base_t += comb(m - 1, 3) - sum(a * (a - 1) // 2 for a in tab.avals)
    base = comb(m, 4) - base_t
    cmm = comb(m - 1, 2)
    results = []
    for q in batch.candidates:
        ext = T + [q]
        try:
            _, avals = sweep_around(ext, m)
            t_q = comb(m, 3) - sum(a * (a - 1) // 2 for a in avals)
            u_total = 0
            for v in range(m):
                d = (q[0] - T[v][0], q[1] - T[v][1])
                aq, arcsum = tables[v].window_count_and_arcsum(d)
                u_total += cmm - aq * (aq - 1) // 2 - arcsum
            results.append(base + comb(m, 3) - t_q - u_total)
        except DegenerateError:
            results.append(None)
    return results
