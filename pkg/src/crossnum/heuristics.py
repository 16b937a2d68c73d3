"""Local-search heuristics over point sets and signatures, plus greedy shrinking.

All searches are seeded and deterministic: the same input and the same
``SearchBudget.rng_seed`` produce the same output drawing.  Acceptance is
never worse-than-current (``<=`` only), so the best crossing count is
monotone non-increasing over every run.
"""

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import inf, lcm

from .geometry import (
    CandidateBatch,
    PointSet,
    count_crossings,
    evaluate_candidates,
    orient,
    removal_values,
)
from .signatures import (
    Signature,
    _pair_crossing,
    count_crossings_sig,
    delete_vertex,
    realizable_after_flip,
    removal_values_sig,
    signature_of,
)

_DIRECTION_RANGE = 10**9


@dataclass(frozen=True)
class SearchBudget:
    """Stopping rule for a heuristic run: wall-clock seconds and/or steps."""

    wall_time: float = inf
    max_steps: int | None = None
    rng_seed: int = 0

    def __post_init__(self):
        if self.wall_time < 0:
            raise ValueError("wall_time must be non-negative")
        if self.max_steps is not None and self.max_steps < 0:
            raise ValueError("max_steps must be non-negative")
        if self.wall_time == inf and self.max_steps is None:
            raise ValueError("at least one of wall_time/max_steps must be finite")

    def exhausted(self, steps, start):
        if self.max_steps is not None and steps >= self.max_steps:
            return True
        return self.wall_time != inf and time.monotonic() - start >= self.wall_time


@dataclass
class NeighborhoodState:
    """Shrinking sampling neighborhood for random relocation.

    ``radius`` is a scale relative to the point set's bounding-box diagonal;
    candidates are drawn from the axis-aligned square of side
    2 * radius * diagonal around the vertex being moved.  After
    ``stall_threshold`` consecutive steps without a strict improvement the
    radius is multiplied by ``shrink_factor`` (None means 50 * n steps).
    """

    radius: Fraction = field(default_factory=lambda: Fraction(1))
    shrink_factor: Fraction = field(default_factory=lambda: Fraction(1, 2))
    stall_threshold: int | None = None

    def __post_init__(self):
        self.radius = Fraction(self.radius)
        self.shrink_factor = Fraction(self.shrink_factor)
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if not 0 < self.shrink_factor < 1:
            raise ValueError("shrink_factor must lie strictly between 0 and 1")
        if self.stall_threshold is not None and self.stall_threshold < 1:
            raise ValueError("stall_threshold must be at least 1")


@dataclass
class CellWalkState:
    """Position of the moving vertex inside the arrangement of the others.

    ``current_point`` is an exact rational point lying in an open cell: it is
    never incident to a line through two of the fixed points.
    """

    moving_vertex: int
    current_point: tuple
    step_count: int = 0


def random_relocation(S, budget, nbhd=None, progress=None):
    """Iteratively relocate random vertices to sampled nearby positions.

    Each step picks a vertex uniformly at random, samples n integer candidate
    positions uniformly from the current neighborhood square, and accepts the
    best candidate whenever its crossing count does not exceed the current
    one (ties among candidates break toward the lowest index).  Candidates
    that break general position are skipped.  Returns the best set found.
    """
    n = S.n
    if n < 4:
        return S
    if nbhd is None:
        nbhd = NeighborhoodState()
    rng = random.Random(budget.rng_seed)
    radius = nbhd.radius
    stall_limit = nbhd.stall_threshold or 50 * n
    xs = [p[0] for p in S]
    ys = [p[1] for p in S]
    # Integer proxy for the bounding-box diagonal (within a factor sqrt(2)).
    diag = (max(xs) - min(xs)) + (max(ys) - min(ys)) or 1

    cur, cur_cr = S, count_crossings(S)
    best, best_cr = cur, cur_cr
    stall = 0
    steps = 0
    start = time.monotonic()
    while not budget.exhausted(steps, start):
        p = rng.randrange(n)
        half = max(1, int(radius * diag))
        px, py = cur[p]
        cands = tuple(
            (px + rng.randint(-half, half), py + rng.randint(-half, half))
            for _ in range(n)
        )
        counts = evaluate_candidates(cur, CandidateBatch(p, cands))
        pick, pick_cr = None, None
        for i, c in enumerate(counts):
            if c is not None and (pick_cr is None or c < pick_cr):
                pick, pick_cr = i, c
        steps += 1
        improved = False
        if pick is not None and pick_cr <= cur_cr:
            improved = pick_cr < cur_cr
            cur, cur_cr = cur.replace(p, cands[pick]), pick_cr
            if cur_cr < best_cr:
                best, best_cr = cur, cur_cr
        if improved:
            stall = 0
        else:
            stall += 1
            if stall >= stall_limit:
                radius *= nbhd.shrink_factor
                stall = 0
        if progress is not None:
            progress(steps, cur_cr, best_cr)
    return best


def _quad_crossing(sign, a, b, c, d):
    """Whether the four vertices span a crossing (i.e. lie in convex position)."""
    return (
        _pair_crossing(sign, a, b, c, d)
        or _pair_crossing(sign, a, c, b, d)
        or _pair_crossing(sign, a, d, b, c)
    )


def _flip_delta(D, a, b, v):
    """Change in crossing count when the orientation of (a, b, v) flips.

    Only 4-subsets containing all of a, b, v are affected, so the update
    costs O(n) sign probes.
    """
    t = tuple(sorted((a, b, v)))
    sign = D.sign
    before = after = 0
    for x in range(D.n):
        if x == a or x == b or x == v:
            continue
        if _quad_crossing(sign, a, b, v, x):
            before += 1
    D._flip_inplace(t)
    for x in range(D.n):
        if x == a or x == b or x == v:
            continue
        if _quad_crossing(sign, a, b, v, x):
            after += 1
    D._flip_inplace(t)
    return after - before


def _ray_step(pts, others, cur, d):
    """First line crossed by the ray cur + t*d and a point in the next cell.

    Returns (a, b, midpoint) where (a, b) spans the first line crossed and
    midpoint lies strictly between the first and second crossings (one unit
    past the first when the next cell is unbounded).  Returns None when the
    ray crosses no line forward or hits an arrangement vertex exactly.
    """
    t1 = t2 = None
    line = None
    for i in range(len(others)):
        ai = others[i]
        ax, ay = pts[ai]
        for j in range(i + 1, len(others)):
            bi = others[j]
            ux = pts[bi][0] - ax
            uy = pts[bi][1] - ay
            denom = ux * d[1] - uy * d[0]
            if denom == 0:
                continue
            t = -(ux * (cur[1] - ay) - uy * (cur[0] - ax)) / denom
            if t <= 0:
                continue
            if t1 is None or t < t1:
                t2 = t1
                t1, line = t, (ai, bi)
            elif t == t1:
                return None
            elif t2 is None or t < t2:
                t2 = t
    if t1 is None:
        return None
    mid = t1 + 1 if t2 is None else (t1 + t2) / 2
    return line[0], line[1], (cur[0] + mid * d[0], cur[1] + mid * d[1])


def cell_walk(S, v, budget, mode="random", progress=None, on_state=None):
    """Walk vertex v through the cells of the arrangement of the other points.

    Every step crosses exactly one line of the arrangement spanned by pairs
    of the fixed points, flipping exactly one triple orientation; the
    crossing count is maintained incrementally from that flip.  Positions are
    exact rationals; the best position visited is re-integerized by clearing
    denominators before returning.  ``mode`` is "random" (take the sampled
    direction) or "greedy" (sample several directions, take the best step).
    ``on_state`` receives (state, count) after each step, for replay and
    verification.
    """
    n = S.n
    if not 0 <= v < n:
        raise ValueError(f"vertex {v} out of range")
    if mode not in ("random", "greedy"):
        raise ValueError(f"unknown mode {mode!r}")
    if n < 4:
        return S
    rng = random.Random(budget.rng_seed)
    pts = [tuple(p) for p in S]
    others = [u for u in range(n) if u != v]
    D = signature_of(S)
    cr = count_crossings(S)
    state = CellWalkState(v, (Fraction(pts[v][0]), Fraction(pts[v][1])))
    start_pos = state.current_point
    best_pos, best_cr = start_pos, cr
    start = time.monotonic()
    while not budget.exhausted(state.step_count, start):
        tries = 3 if mode == "greedy" else 1
        found = []
        while not found:
            for _ in range(tries):
                dx = rng.randint(-_DIRECTION_RANGE, _DIRECTION_RANGE)
                dy = rng.randint(-_DIRECTION_RANGE, _DIRECTION_RANGE)
                if dx == 0 and dy == 0:
                    continue
                hit = _ray_step(pts, others, state.current_point, (dx, dy))
                if hit is not None:
                    found.append((_flip_delta(D, hit[0], hit[1], v), len(found), hit))
        delta, _, (a, b, pos) = min(found)
        D._flip_inplace(tuple(sorted((a, b, v))))
        cr += delta
        state.current_point = pos
        state.step_count += 1
        if cr < best_cr:
            best_pos, best_cr = pos, cr
        if on_state is not None:
            on_state(state, cr)
        if progress is not None:
            progress(state.step_count, cr, best_cr)
    if best_pos == start_pos:
        return S
    scale = lcm(best_pos[0].denominator, best_pos[1].denominator)
    out = [(x * scale, y * scale) for x, y in pts]
    out[v] = (
        int(best_pos[0] * scale),
        int(best_pos[1] * scale),
    )
    return PointSet(tuple(out))


def sig_flip_search(D, budget, progress=None):
    """Flip random triple orientations, keeping realizable non-worsening flips.

    Each step flips one uniformly random triple; the flip is kept when the
    new crossing count does not exceed the current one and the flipped
    signature is still realizable, otherwise it is reverted.  The input must
    be realizable; the result then is as well.
    """
    cur = D.copy()
    n = cur.n
    rng = random.Random(budget.rng_seed)
    cr = count_crossings_sig(cur)
    best_cr = cr
    steps = 0
    start = time.monotonic()
    while not budget.exhausted(steps, start):
        i, j, k = sorted(rng.sample(range(n), 3))
        delta = _flip_delta(cur, i, j, k)
        steps += 1
        if delta <= 0 and realizable_after_flip(cur, (i, j, k)):
            cur._flip_inplace((i, j, k))
            cr += delta
            best_cr = min(best_cr, cr)
        if progress is not None:
            progress(steps, cr, best_cr)
    return cur


def _involvements(drawing, want_triples):
    """Crossing count plus per-vertex/pair(/triple) crossing involvements.

    A crossing "involves" a subset when all of the subset's vertices are
    among the crossing's four endpoints, so the count after removing a small
    subset follows by inclusion-exclusion over these tables.
    """
    if isinstance(drawing, Signature):
        n, sign, cr = drawing.n, drawing.sign, count_crossings_sig(drawing)
    else:
        pts = [tuple(p) for p in drawing]
        n = len(pts)

        def sign(a, b, c):
            return 1 if orient(pts[a], pts[b], pts[c]) > 0 else -1

        cr = count_crossings(drawing)
    inv = [0] * n
    inv2 = {}
    inv3 = {}
    for quad in combinations(range(n), 4):
        if _quad_crossing(sign, *quad):
            for x in quad:
                inv[x] += 1
            for pair in combinations(quad, 2):
                inv2[pair] = inv2.get(pair, 0) + 1
            if want_triples:
                for tri in combinations(quad, 3):
                    inv3[tri] = inv3.get(tri, 0) + 1
    return cr, inv, inv2, inv3


def _best_removal_tuple(drawing, k):
    """The size-k vertex subset whose removal leaves the fewest crossings.

    Exhaustive over all subsets, each scored in O(1) from the amortized
    involvement tables; ties break toward the lexicographically least subset.
    """
    cr, inv, inv2, inv3 = _involvements(drawing, k == 3)
    n = drawing.n
    best, best_cr = None, None
    for sub in combinations(range(n), k):
        c = cr - sum(inv[x] for x in sub)
        c += sum(inv2.get(pair, 0) for pair in combinations(sub, 2))
        if k == 3:
            c -= inv3.get(sub, 0)
        if best_cr is None or c < best_cr:
            best, best_cr = sub, c
    return best


def shrink(drawing, target_n, tuple_size=1, emit=None):
    """Greedily remove vertex tuples until the drawing has target_n vertices.

    At each step the size-``tuple_size`` subset minimizing the remaining
    crossing count is removed (lexicographically least among ties, truncated
    on the final step when the remaining descent is smaller).  Size 1 uses
    removal values directly; sizes 2 and 3 evaluate every subset via
    amortized involvement tables.  Works on point sets and signatures alike;
    every intermediate drawing is passed to ``emit`` when given.
    """
    if tuple_size not in (1, 2, 3):
        raise ValueError("tuple_size must be 1, 2 or 3")
    if target_n < 3:
        raise ValueError("target_n must be at least 3")
    is_sig = isinstance(drawing, Signature)
    cur = drawing
    if cur.n <= target_n:
        raise ValueError("drawing already has at most target_n vertices")
    while cur.n > target_n:
        k = min(tuple_size, cur.n - target_n)
        if k == 1:
            vals = removal_values_sig(cur) if is_sig else removal_values(cur)
            sel = (min(range(cur.n), key=lambda x: (vals[x], x)),)
        else:
            sel = _best_removal_tuple(cur, k)
        for x in sorted(sel, reverse=True):
            cur = delete_vertex(cur, x) if is_sig else cur.delete(x)
        if emit is not None:
            emit(cur)
    return cur
