"""Planar geometry on arbitrary-precision binary floats.

All coordinates are gmpy2 ``mpfr`` values. Callers pick a working precision
(in bits) with the ``bits`` context manager; every operation rounds to the
active context precision. Predicates at region boundaries are strict exactly
as the region definitions require: the lens is the intersection of two open
discs, and the lune excludes a closed disc.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Tuple

import gmpy2
from gmpy2 import mpfr

MIN_PRECISION = 64


@contextmanager
def bits(precision: int) -> Iterator[None]:
    """Run the enclosed block with the given mpfr precision (in bits)."""
    if precision < MIN_PRECISION:
        raise ValueError(f"precision must be >= {MIN_PRECISION} bits, got {precision}")
    ctx = gmpy2.context(gmpy2.get_context())
    ctx.precision = precision
    with ctx:
        yield


def current_bits() -> int:
    return gmpy2.get_context().precision


def default_precision(height: int, parts: int) -> int:
    """Working precision for a recursive construction of the given depth.

    Every recursion level shrinks the coordinate scale by a bounded factor,
    so the number of significant bits needed grows linearly with the height
    of the tree and logarithmically with the number of parts.
    """
    per_level = 16 * max(1, math.ceil(math.log2(parts + 4)))
    return max(128, 64 + per_level * max(0, height))


def mp(value) -> mpfr:
    """Coerce to mpfr at the current precision. Strings parse exactly-rounded."""
    return mpfr(value)


@dataclass(frozen=True)
class Point:
    x: mpfr
    y: mpfr

    def __post_init__(self):
        object.__setattr__(self, "x", mpfr(self.x))
        object.__setattr__(self, "y", mpfr(self.y))
        if not (gmpy2.is_finite(self.x) and gmpy2.is_finite(self.y)):
            raise ValueError(f"non-finite coordinate: ({self.x}, {self.y})")

    def __iter__(self):
        return iter((self.x, self.y))

    def translated(self, dx, dy) -> "Point":
        return Point(self.x + dx, self.y + dy)


Segment = Tuple[Point, Point]


def dist_sq(a: Point, b: Point) -> mpfr:
    dx = a.x - b.x
    dy = a.y - b.y
    return dx * dx + dy * dy


def dist(a: Point, b: Point) -> mpfr:
    return gmpy2.sqrt(dist_sq(a, b))


@dataclass(frozen=True)
class LensRegion:
    """Intersection of the two open discs of radius |ab| centred at a and b."""

    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("lens endpoints must be distinct")


def lens_contains(lens: LensRegion, c: Point) -> bool:
    r2 = dist_sq(lens.a, lens.b)
    return dist_sq(c, lens.a) < r2 and dist_sq(c, lens.b) < r2


@dataclass(frozen=True)
class LuneRegion:
    """(disc(q, delta) - closed disc(p, |pq|)) plus the point q itself."""

    p: Point
    q: Point
    delta: mpfr

    def __post_init__(self):
        object.__setattr__(self, "delta", mpfr(self.delta))
        if not (0 < self.delta < dist(self.p, self.q)):
            raise ValueError("lune requires 0 < delta < |pq|")


def lune_contains(lune: LuneRegion, c: Point) -> bool:
    if c == lune.q:
        return True
    if dist_sq(c, lune.q) >= lune.delta * lune.delta:
        return False
    return dist_sq(c, lune.p) > dist_sq(lune.p, lune.q)


def orientation(a: Point, b: Point, c: Point) -> int:
    """Sign of the signed area of triangle abc: +1 ccw, -1 cw, 0 collinear."""
    det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    if det > 0:
        return 1
    if det < 0:
        return -1
    return 0


def collinear(a: Point, b: Point, c: Point) -> bool:
    return orientation(a, b, c) == 0


def _on_segment(a: Point, b: Point, c: Point) -> bool:
    # assumes a, b, c collinear; is c within the bounding box of ab?
    return (min(a.x, b.x) <= c.x <= max(a.x, b.x)
            and min(a.y, b.y) <= c.y <= max(a.y, b.y))


def segments_cross(s1: Segment, s2: Segment) -> bool:
    """True iff the segments intersect at a point other than a shared endpoint."""
    a, b = s1
    c, d = s2
    shared = {e for e in (a, b)} & {e for e in (c, d)}
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)

    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True  # proper crossing

    # collinear / touching cases
    touches = []
    if o1 == 0 and _on_segment(a, b, c):
        touches.append(c)
    if o2 == 0 and _on_segment(a, b, d):
        touches.append(d)
    if o3 == 0 and _on_segment(c, d, a):
        touches.append(a)
    if o4 == 0 and _on_segment(c, d, b):
        touches.append(b)
    if not touches:
        return False
    if len(shared) == 1:
        pivot = next(iter(shared))
        # any touching point that is not the shared endpoint is a real overlap
        return any(t != pivot for t in touches)
    if len(shared) == 2:
        # identical (or reversed) segments of positive length overlap
        return a != b
    return True


def angle_at(v: Point, a: Point, b: Point) -> mpfr:
    """Angle in [0, pi] between rays v->a and v->b."""
    if a == v or b == v:
        raise ValueError("degenerate angle: ray endpoint equals apex")
    ta = gmpy2.atan2(a.y - v.y, a.x - v.x)
    tb = gmpy2.atan2(b.y - v.y, b.x - v.x)
    diff = abs(ta - tb)
    pi = gmpy2.const_pi()
    if diff > pi:
        diff = 2 * pi - diff
    return diff


# ---------------------------------------------------------------------------
# Construction frames and the safe-epsilon machinery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstructionFrame:
    """Recursion state (p, q, delta): the subtree rooted at the current vertex
    (drawn at q) must stay inside LUNE(p, q, delta)."""

    p: Point
    q: Point
    delta: mpfr

    def __post_init__(self):
        object.__setattr__(self, "delta", mpfr(self.delta))
        if not (0 < self.delta < dist(self.p, self.q)):
            raise ValueError("frame requires 0 < delta < |pq|")

    def lune(self) -> LuneRegion:
        return LuneRegion(self.p, self.q, self.delta)


class InfeasibleArcError(ValueError):
    pass


def arc_angle(frame: ConstructionFrame, delta_prime) -> mpfr:
    """Angular extent of the arc circle(q, delta') - disc(p, |pq|).

    A point of circle(q, delta') at angle theta from the direction q-p
    extended lies outside disc(p, |pq|) iff cos(theta) > -delta'/(2|pq|),
    so the extent is 2*acos(-delta'/(2|pq|)), always greater than pi.
    """
    pq = dist(frame.p, frame.q)
    return 2 * gmpy2.acos(-mpfr(delta_prime) / (2 * pq))


def _arc_point(frame: ConstructionFrame, delta_prime, theta) -> Point:
    pq = dist(frame.p, frame.q)
    ux = (frame.q.x - frame.p.x) / pq
    uy = (frame.q.y - frame.p.y) / pq
    c = gmpy2.cos(theta)
    s = gmpy2.sin(theta)
    # rotate the outward unit vector u by theta, scale by delta'
    return Point(frame.q.x + delta_prime * (c * ux - s * uy),
                 frame.q.y + delta_prime * (c * uy + s * ux))


def arc_points(frame: ConstructionFrame, delta_prime, count: int,
               min_gap_factor: float = 1.0) -> list[Point]:
    """Place ``count`` points on the arc circle(q, delta') - disc(p, |pq|).

    The points are returned in counterclockwise order with uniform angular
    gap (pi + slack)/(count-1) where slack is half the surplus of the arc
    over pi, so consecutive central angles exceed pi/(count-1) with a
    symmetric margin and the whole fan stays strictly interior to the arc.
    For count == 1 the single point is the arc midpoint.
    """
    dp = mpfr(delta_prime)
    if not (0 < dp < frame.delta):
        raise ValueError("need 0 < delta' < delta")
    if count < 1:
        raise ValueError("count must be >= 1")
    if count == 1:
        return [_arc_point(frame, dp, mpfr(0))]
    extent = arc_angle(frame, dp)
    pi = gmpy2.const_pi()
    gap = (pi + (extent - pi) / 2) / (count - 1)
    if gap <= min_gap_factor * pi / (count - 1):
        raise InfeasibleArcError("arc too short for requested gap")
    span = gap * (count - 1)
    if span >= extent:
        raise InfeasibleArcError("points would leave the arc interior")
    start = -span / 2
    return [_arc_point(frame, dp, start + i * gap) for i in range(count)]


def safe_epsilon(frame: ConstructionFrame, delta_prime, s: Sequence[Point],
                 lens_pairs: Optional[Iterable[Tuple[int, int]]] = None) -> mpfr:
    """A radius eps such that discs of radius eps around the arc points keep
    all four separation conditions of the recursive construction:

    (a) disc(s_i, eps) inside LUNE(p, q, delta): every disc point stays
        within delta of q (eps < delta - delta') and outside the closed disc
        around p (eps < |p s_i| - |pq|);
    (b) q in lens(x, y) for x, y in the discs of a designated pair (i, j):
        worst case |qx| <= delta' + eps and |xy| >= |s_i s_j| - 2 eps, so
        eps < (|s_i s_j| - delta') / 3;
    (c) q outside lens(x, y) for x, y in one disc: |xy| <= 2 eps while
        |qx| >= delta' - eps, so eps <= delta'/3;
    (d) lens(x, y) disjoint from every other disc: lens points lie within
        3 eps of s_i while disc(s_j, eps) stays |s_i s_j| - eps away, so
        eps <= |s_i s_j| / 4 over all pairs.

    Each bound is a triangle-inequality worst case; the minimum is halved
    for slack. ``lens_pairs`` limits (b) to the pairs whose central angle
    exceeds pi/3 (all pairs when omitted).
    """
    dp = mpfr(delta_prime)
    pq = dist(frame.p, frame.q)
    n = len(s)
    cands = [frame.delta - dp, dp / 3]
    for si in s:
        cands.append(dist(frame.p, si) - pq)
    if lens_pairs is None:
        lens_pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for i, j in lens_pairs:
        cands.append((dist(s[i], s[j]) - dp) / 3)
    for i in range(n):
        for j in range(i + 1, n):
            cands.append(dist(s[i], s[j]) / 4)
    eps = min(cands) / 2
    assert eps > 0, "construction invariant violated: no positive epsilon"
    assert eps < dp
    return eps


def fragile_margin(a, b, precision: Optional[int] = None) -> bool:
    """True when a strict comparison of a and b rests on fewer than half the
    working bits; such comparisons are flagged, never silently adjudicated."""
    p = precision if precision is not None else current_bits()
    scale = max(abs(mpfr(a)), abs(mpfr(b)), mpfr(1))
    return abs(mpfr(a) - mpfr(b)) < scale * mpfr(2) ** (-(p // 2))
