"""Doubling constructions and the crossing-constant bound formulas.

Doubling replaces each vertex with two copies pulled apart along its matched
halving line.  The crossing count of the result obeys an exact recurrence,
so both doubling operations verify their output against the predicted count
-- and, for signatures, against realizability -- before returning; a result
is never handed back unverified.

The bound formulas turn a drawing's size and crossing count into exact
rational upper bounds on the rectilinear and pseudolinear crossing
constants.  Everything here is integer or Fraction arithmetic.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .geometry import DegenerateError, PointSet, _points, count_crossings
from .signatures import Signature, count_crossings_sig, is_realizable
from .halving import HalvingMatching, slot_partner


class VerificationError(RuntimeError):
    """A constructed drawing failed its exactness or realizability gate."""


def normalize_kind(kind):
    """Map 'rect'/'rectilinear' and 'pseudo'/'pseudolinear' to short names."""
    k = str(kind).lower()
    if k in ("rect", "rectilinear"):
        return "rect"
    if k in ("pseudo", "pseudolinear"):
        return "pseudo"
    raise ValueError(f"unknown drawing kind: {kind!r}")


@dataclass(frozen=True)
class BoundValue:
    """An exact rational bound on a crossing constant, in lowest terms."""

    numerator: int
    denominator: int
    kind: str

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        if gcd(self.numerator, self.denominator) != 1:
            raise ValueError("bound must be in lowest terms")
        if self.kind not in ("rect", "pseudo"):
            raise ValueError(f"unknown drawing kind: {self.kind!r}")

    @property
    def value(self):
        return Fraction(self.numerator, self.denominator)

    def __str__(self):
        return f"{self.numerator}/{self.denominator}"

    @classmethod
    def parse(cls, text, kind):
        num, _, den = text.strip().partition("/")
        return cls(int(num), int(den) if den else 1, normalize_kind(kind))


def _as_bound(value, kind):
    f = Fraction(value)
    return BoundValue(f.numerator, f.denominator, kind)


def predicted_double(kind, n, cr):
    """Exact crossing count of the doubled drawing of an n-vertex one.

    Rectilinear: 16*cr + (n/2)(2n^2 - 7n + 5).  Pseudolinear:
    16*cr + 2n(ceil(n/2)^2 + floor(n/2)^2) - 7n^2/2 + 5n/2; the two agree
    for even n.  Always an integer.
    """
    kind = normalize_kind(kind)
    if n < 3:
        raise ValueError("need n >= 3")
    if cr < 0:
        raise ValueError("crossing count must be nonnegative")
    if kind == "rect":
        val = 16 * cr + Fraction(n, 2) * (2 * n * n - 7 * n + 5)
    else:
        h1, h2 = (n + 1) // 2, n // 2
        val = 16 * cr + 2 * n * (h1 * h1 + h2 * h2) - Fraction(7 * n * n - 5 * n, 2)
    if val.denominator != 1:
        raise ValueError(f"non-integral predicted count for n={n}")
    return int(val)


@dataclass(frozen=True)
class DoublingReport:
    """Receipt of a verified doubling step."""

    input_n: int
    input_crossings: int
    output_n: int
    output_crossings: int
    predicted_crossings: int
    scale_used: int
    retries: int

    def __post_init__(self):
        if self.output_crossings != self.predicted_crossings:
            raise ValueError("report requires output == predicted")


def double_points(S, M):
    """The doubled point set of S under halving matching M, verified.

    Each p_i becomes lam*p_i + v_i and lam*p_i - v_i, where v_i is the
    integer direction of i's matched line and lam a magnification standing
    in for 1/epsilon.  lam starts at 4*n*max|v|_inf and doubles until the
    result is in general position and its crossing count equals the
    rectilinear recurrence value exactly.
    """
    pts = _points(S)
    n = len(pts)
    if not isinstance(M, HalvingMatching) or set(M.assignments) != set(range(n)):
        raise ValueError("matching does not cover the point set")
    base = count_crossings(S)
    predicted = predicted_double("rect", n, base)
    dirs = []
    for v in range(n):
        dx, dy = M.assignments[v].direction
        dirs.append((int(dx), int(dy)))
    vmax = max(max(abs(dx), abs(dy)) for dx, dy in dirs)
    lam = 4 * n * vmax
    for attempt in range(65):
        new_pts = []
        for (px, py), (dx, dy) in zip(pts, dirs):
            new_pts.append((lam * px + dx, lam * py + dy))
            new_pts.append((lam * px - dx, lam * py - dy))
        S2 = PointSet(new_pts)
        try:
            c2 = count_crossings(S2)
        except DegenerateError:
            lam *= 2
            continue
        if c2 == predicted:
            return S2, DoublingReport(n, base, 2 * n, c2, predicted, lam, attempt)
        lam *= 2
    raise VerificationError("doubled set failed verification at every scale")


def double_signature(D, M):
    """The doubled signature of D under halving matching M, verified.

    Copies of vertex i are pushed apart along the pseudoline through i and
    its matched partner t(i).  Triples of three distinct originals inherit
    their sign; (i+, i-, x) is signed by x's side of that pseudoline; and
    when x is the partner itself, by the side its own copies move to, which
    is the orientation of (i, t(i), t(t(i))).  The result must be realizable
    and match the pseudolinear recurrence exactly.
    """
    n = D.n
    if not isinstance(M, HalvingMatching) or set(M.assignments) != set(range(n)):
        raise ValueError("matching does not cover the signature")
    t = [slot_partner(D, M.assignments[v]) for v in range(n)]
    for v in range(n):
        if t[v] == v or t[t[v]] == v:
            raise ValueError("matching partners must not be mutual")
    base = count_crossings_sig(D)
    predicted = predicted_double("pseudo", n, base)
    N = 2 * n
    out = Signature(N)
    put = out._put
    get = D._get
    rank = D.rank
    sign = D.sign
    r = 0
    for a in range(N):
        oa = a >> 1
        for b in range(a + 1, N):
            ob = b >> 1
            for c in range(b + 1, N):
                oc = c >> 1
                if oa != ob and ob != oc:
                    s = 1 if get(rank(oa, ob, oc)) else -1
                elif oa == ob:
                    x = oc
                    if x != t[oa]:
                        s = sign(oa, t[oa], x)
                    else:
                        s = sign(oa, t[oa], t[x]) * (-1 if (c & 1) == 0 else 1)
                else:
                    x = oa
                    if x != t[ob]:
                        s = sign(ob, t[ob], x)
                    else:
                        s = sign(ob, t[ob], t[x]) * (-1 if (a & 1) == 0 else 1)
                if s > 0:
                    put(r, 1)
                r += 1
    if not is_realizable(out):
        raise VerificationError("doubled signature is not realizable")
    c2 = count_crossings_sig(out)
    if c2 != predicted:
        raise VerificationError(
            f"doubled signature has {c2} crossings, predicted {predicted}"
        )
    return out, DoublingReport(n, base, N, c2, predicted, 0, 0)


def rect_bound(n, cr):
    """Exact rectilinear-constant bound from an n-point count: the value
    (24*cr + 3n^3 - 7n^2 + (30/7)n) / n^4 as a reduced rational."""
    if n < 3:
        raise ValueError("need n >= 3")
    return _as_bound(
        Fraction(168 * cr + 21 * n**3 - 49 * n**2 + 30 * n, 7 * n**4), "rect"
    )


def pseudo_bound(n, cr):
    """Exact pseudolinear-constant bound; parity picks the formula.

    Even n matches rect_bound; odd n uses the (81/14)n correction term.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    if n % 2 == 0:
        num = Fraction(168 * cr + 21 * n**3 - 49 * n**2 + 30 * n, 7 * n**4)
    else:
        num = Fraction(336 * cr + 42 * n**3 - 98 * n**2 + 81 * n, 14 * n**4)
    return _as_bound(num, "pseudo")


def harary_hill(n):
    """The conjectured minimum crossing number of K_n."""
    if n < 1:
        raise ValueError("need n >= 1")
    p = (n // 2) * ((n - 1) // 2) * ((n - 2) // 2) * ((n - 3) // 2)
    return p // 4
