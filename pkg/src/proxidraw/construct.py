"""The four drawing algorithms.

Each construction places a rooted tree inside a lune-shaped region: the
root sits at the region's tip q, its children go on a short arc around q,
and every child subtree recurses into an exponentially smaller lune of its
own. The arc spacing and the safe-epsilon bounds guarantee that each part
of the given decomposition comes out as the relative neighbourhood graph of
its own points, which is what the verification module re-checks from the
coordinates alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

import gmpy2
from gmpy2 import mpfr

from .geometry import (ConstructionFrame, Point, arc_points, bits,
                       default_precision, dist, lune_contains, safe_epsilon)
from .treemodel import (Decomposition, Embedding, RootedTree, Tree,
                        good_embedding, homomorphism_into_5ary, q_children,
                        q_parent, Q_ROOT, root_at, validate,
                        validate_decomposition)
from . import verify as _verify

DEFAULT_FRAME_P = ("-1", "0")
DEFAULT_FRAME_Q = ("0", "0")
DEFAULT_FRAME_DELTA = "0.5"


class ConstructionError(ValueError):
    pass


class PrecisionExhausted(ConstructionError):
    def __init__(self, needed_bits: int):
        super().__init__(
            f"coordinates became indistinguishable; rerun with at least "
            f"{needed_bits} bits of precision")
        self.needed_bits = needed_bits


@dataclass(frozen=True)
class Drawing:
    tree: Tree
    pos: Dict[str, Point]
    precision_bits: int
    construction: str
    meta: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        missing = [v for v in self.tree.vertices if v not in self.pos]
        if missing:
            raise ValueError(f"missing coordinates for {missing}")
        seen = {}
        for v, p in self.pos.items():
            key = (p.x, p.y)
            if key in seen:
                raise PrecisionExhausted(2 * self.precision_bits)
            seen[key] = v

    def point_set(self, vertices: Optional[Sequence[str]] = None):
        from .proximity import PointSet
        ids = self.tree.vertices if vertices is None else vertices
        return PointSet([(v, self.pos[v]) for v in ids])


def default_frame() -> ConstructionFrame:
    """p=(-1,0), q=(0,0), delta=1/2; the construction is covariant under
    rigid motions and uniform scaling of this frame."""
    return ConstructionFrame(Point(*DEFAULT_FRAME_P), Point(*DEFAULT_FRAME_Q),
                             mpfr(DEFAULT_FRAME_DELTA))


def _rotate_about(q: Point, pt: Point, phi) -> Point:
    c, s = gmpy2.cos(phi), gmpy2.sin(phi)
    dx, dy = pt.x - q.x, pt.y - q.y
    return Point(q.x + c * dx - s * dy, q.y + s * dx + c * dy)


def _edge_part_map(tree: Tree, dec: Decomposition) -> Dict[frozenset, int]:
    out: Dict[frozenset, int] = {}
    for i, part in enumerate(dec.parts):
        for e in part:
            out[frozenset(tree.edges[e])] = i
    return out


ChildOrder = Callable[[str, Optional[str], List[str]], List[str]]


def _sorted_order(v: str, parent: Optional[str], children: List[str]) -> List[str]:
    return sorted(children)


def _embedding_order(emb: Embedding) -> ChildOrder:
    """Ascending-slot child order that realizes the embedding's clockwise
    cyclic order: slots go counterclockwise, so the clockwise sequence after
    the parent edge is assigned in reverse."""
    def order(v: str, parent: Optional[str], children: List[str]) -> List[str]:
        ring = list(emb.at(v))
        if parent is None:
            cw = ring
        else:
            i = ring.index(parent)
            cw = ring[i + 1:] + ring[:i]
        cw = [c for c in cw if c in children]
        return list(reversed(cw)) if parent is not None else cw
    return order


# ---------------------------------------------------------------------------
# The outdegree-4 lune recursion
# ---------------------------------------------------------------------------

def _rec_outdeg4(rooted: RootedTree, part_of: Dict[frozenset, int],
                 r: str, frame: ConstructionFrame, pos: Dict[str, Point],
                 child_order: ChildOrder, depth: int) -> None:
    if depth > len(rooted.tree.vertices):
        raise ConstructionError("recursion depth exceeds |V|")
    pos[r] = frame.q
    kids = rooted.children[r]
    if not kids:
        return
    by_part: Dict[int, List[str]] = {}
    for c in child_order(r, rooted.parent[r], list(kids)):
        by_part.setdefault(part_of[frozenset((r, c))], []).append(c)
    present = sorted(by_part)
    k_r = len(present)
    for i in present:
        if len(by_part[i]) > 4:
            raise ConstructionError(
                f"part {i} has {len(by_part[i])} children at {r!r}; outdegree-4 required")
    delta_prime = frame.delta / 2
    s = arc_points(frame, delta_prime, 4)
    eps = safe_epsilon(frame, delta_prime, s)
    # chord between adjacent same-disc points is exactly 2*eps/k_r, so the
    # eps/k_r discs around them are pairwise disjoint
    beta = 2 * gmpy2.asin(eps / (k_r * delta_prime))
    for rho, i in enumerate(present):
        phi = (mpfr(rho) - mpfr(k_r - 1) / 2) * beta
        for j, child in enumerate(by_part[i]):
            t = _rotate_about(frame.q, s[j], phi)
            assert lune_contains(frame.lune(), t)
            _rec_outdeg4(rooted, part_of, child,
                         ConstructionFrame(frame.q, t, eps / k_r),
                         pos, child_order, depth + 1)


def draw_outdeg4_partition(t: RootedTree, dec: Decomposition,
                           frame: Optional[ConstructionFrame] = None,
                           precision: Optional[int] = None) -> Drawing:
    """Non-crossing drawing of a rooted tree, partitioned into outdegree-4
    subtrees, with every part drawn as the RNG of its vertex set. The whole
    drawing stays inside the frame's lune and the root sits at frame.q."""
    rep = validate_decomposition(t.tree, dec, 4, "outdegree", t.root)
    if not rep.valid:
        raise ConstructionError(f"invalid outdegree-4 partition: {rep.problems}")
    if precision is None:
        precision = default_precision(t.eccentricity(), len(dec.parts))
    with bits(precision):
        fr = frame if frame is not None else default_frame()
        pos: Dict[str, Point] = {}
        part_of = _edge_part_map(t.tree, dec)
        _rec_outdeg4(t, part_of, t.root, fr, pos, _sorted_order, 0)
        return Drawing(t.tree, pos, precision, "part4",
                       {"root": t.root, "parts": len(dec.parts)})


# ---------------------------------------------------------------------------
# The outdegree-3 recursion with large angular resolution
# ---------------------------------------------------------------------------

def _slot_sequence(present: List[int], degs: Dict[int, int]) -> List[Tuple[int, int]]:
    """The total order of (part, child-index) pairs that keeps same-part
    slots at least (d-1)/3 apart: first children of the 3-child parts, then
    of the 2-child parts, then half of the 1-child parts, second children of
    the 3- and 2-child parts, the other 1-child parts, and finally third
    children."""
    x = [i for i in present if degs[i] == 3]
    y = [i for i in present if degs[i] == 2]
    z = [i for i in present if degs[i] == 1]
    half = math.ceil(len(z) / 2)
    z1, z2 = z[:half], z[half:]
    seq = ([(i, 1) for i in x] + [(i, 1) for i in y] + [(i, 1) for i in z1]
           + [(i, 2) for i in x] + [(i, 2) for i in y] + [(i, 1) for i in z2]
           + [(i, 3) for i in x])
    d = sum(degs.values())
    slot = {pair: a for a, pair in enumerate(seq)}
    for i in present:
        slots_i = sorted(slot[(i, j)] for j in range(1, degs[i] + 1))
        for a, b in zip(slots_i, slots_i[1:]):
            assert b - a >= len(x) + len(y) + len(z2)
            assert 3 * (b - a) >= d - 1
    return seq


def _rec_outdeg3(rooted: RootedTree, part_of: Dict[frozenset, int],
                 r: str, frame: ConstructionFrame, pos: Dict[str, Point],
                 depth: int) -> None:
    if depth > len(rooted.tree.vertices):
        raise ConstructionError("recursion depth exceeds |V|")
    pos[r] = frame.q
    kids = rooted.children[r]
    if not kids:
        return
    by_part: Dict[int, List[str]] = {}
    for c in sorted(kids):
        by_part.setdefault(part_of[frozenset((r, c))], []).append(c)
    present = sorted(by_part)
    degs = {i: len(by_part[i]) for i in present}
    for i in present:
        if degs[i] > 3:
            raise ConstructionError(
                f"part {i} has {degs[i]} children at {r!r}; outdegree-3 required")
    d = sum(degs.values())
    seq = _slot_sequence(present, degs)
    slot_of = {pair: a for a, pair in enumerate(seq)}
    delta_prime = frame.delta / 2
    s = arc_points(frame, delta_prime, d)
    lens_pairs = []
    for i in present:
        slots_i = sorted(slot_of[(i, j)] for j in range(1, degs[i] + 1))
        lens_pairs.extend((a, b) for ai, a in enumerate(slots_i)
                          for b in slots_i[ai + 1:])
    eps = safe_epsilon(frame, delta_prime, s, lens_pairs=lens_pairs)
    for i in present:
        for j, child in enumerate(by_part[i], start=1):
            t = s[slot_of[(i, j)]]
            assert lune_contains(frame.lune(), t)
            _rec_outdeg3(rooted, part_of, child,
                         ConstructionFrame(frame.q, t, eps), pos, depth + 1)


def draw_outdeg3_partition(t: RootedTree, dec: Decomposition,
                           frame: Optional[ConstructionFrame] = None,
                           precision: Optional[int] = None) -> Drawing:
    """As draw_outdeg4_partition for outdegree-3 partitions, additionally
    achieving angular resolution greater than pi/max(outdeg(T)-1, 4)."""
    rep = validate_decomposition(t.tree, dec, 3, "outdegree", t.root)
    if not rep.valid:
        raise ConstructionError(f"invalid outdegree-3 partition: {rep.problems}")
    if precision is None:
        precision = default_precision(t.eccentricity(), len(dec.parts))
    with bits(precision):
        fr = frame if frame is not None else default_frame()
        pos: Dict[str, Point] = {}
        part_of = _edge_part_map(t.tree, dec)
        _rec_outdeg3(t, part_of, t.root, fr, pos, 0)
        return Drawing(t.tree, pos, precision, "part3",
                       {"root": t.root, "parts": len(dec.parts)})


# ---------------------------------------------------------------------------
# Degree-5 trees: circle of up to five children at the root, lune recursion
# below
# ---------------------------------------------------------------------------

def _root_circle_slots(q: Point, delta_prime, count: int = 5) -> List[Point]:
    """Five directions at 2*pi/5 spacing, clockwise from straight up; 72
    degrees beats the pi/3 lens threshold, so sibling subtrees cannot see
    each other."""
    pi = gmpy2.const_pi()
    out = []
    for j in range(count):
        a = pi / 2 - j * 2 * pi / 5
        out.append(Point(q.x + delta_prime * gmpy2.cos(a),
                         q.y + delta_prime * gmpy2.sin(a)))
    return out


def _root_circle_epsilon(q: Point, delta_prime, slots: Sequence[Point]) -> mpfr:
    cands = [mpfr(delta_prime) / 3]
    for i in range(len(slots)):
        for j in range(i + 1, len(slots)):
            chord = dist(slots[i], slots[j])
            cands.append((chord - delta_prime) / 3)
            cands.append(chord / 4)
    eps = min(cands) / 2
    assert eps > 0
    return eps


def max_degree_root(tree: Tree) -> str:
    adj = tree.adjacency()
    return sorted(adj, key=lambda v: (-len(adj[v]), v))[0]


def draw_degree5(t: Tree, root: Optional[str] = None,
                 embedding: Optional[Embedding] = None,
                 precision: Optional[int] = None) -> Drawing:
    """Drawing of a degree-5 tree that is the RNG (and hence the MST) of its
    vertex set. Rooted at a maximum-degree vertex by default; when an
    embedding is given, the realized clockwise edge order matches it."""
    rep = validate(t)
    if not rep.valid:
        raise ConstructionError(f"invalid tree: {rep.problems}")
    if t.max_degree() > 5:
        raise ConstructionError(f"maximum degree {t.max_degree()} exceeds 5")
    if root is None:
        root = max_degree_root(t)
    rooted = root_at(t, root)
    if precision is None:
        precision = default_precision(rooted.eccentricity() + 1, 1)
    order: ChildOrder = (_embedding_order(embedding) if embedding is not None
                         else _sorted_order)
    with bits(precision):
        q = Point("0", "0")
        pos: Dict[str, Point] = {root: q}
        kids = order(root, None, list(rooted.children[root]))
        if kids:
            delta_prime = mpfr(1)
            slots = _root_circle_slots(q, delta_prime)
            eps = _root_circle_epsilon(q, delta_prime, slots)
            part_of = {frozenset(e): 0 for e in t.edges}
            for j, child in enumerate(kids):
                frame = ConstructionFrame(q, slots[j], eps)
                _rec_outdeg4(rooted, part_of, child, frame, pos, order, 1)
        return Drawing(t, pos, precision, "deg5", {"root": root})


# ---------------------------------------------------------------------------
# Degree-5 partitions via the complete 5-ary tree
# ---------------------------------------------------------------------------

def _lazy_5ary_positions(height: int, needed: Set[str],
                         ) -> Dict[str, Point]:
    """Positions the degree-5 construction would give the complete 5-ary
    tree of the given height, computed only for the needed vertices (closed
    under taking parents). Identical to drawing the whole tree because every
    slot geometry depends only on the path from the root."""
    q = Point("0", "0")
    pos: Dict[str, Point] = {Q_ROOT: q}
    delta_prime = mpfr(1)
    slots = _root_circle_slots(q, delta_prime)
    eps = _root_circle_epsilon(q, delta_prime, slots)

    def rec(z: str, frame: ConstructionFrame) -> None:
        pos[z] = frame.q
        wanted = [c for c in q_children(z, height) if c in needed]
        if not wanted:
            return
        dp = frame.delta / 2
        s = arc_points(frame, dp, 4)
        e = safe_epsilon(frame, dp, s)
        for c in wanted:
            m = int(c.rsplit(".", 1)[1]) - 1
            rec(c, ConstructionFrame(frame.q, s[m], e))

    for c in q_children(Q_ROOT, height):
        if c in needed:
            m = int(c.rsplit(".", 1)[1]) - 1
            rec(c, ConstructionFrame(q, slots[m], eps))
    return pos


_GOLDEN_ANGLE = None


def _golden_angle() -> mpfr:
    # 2*pi*(1 - 1/phi), irrational fraction of the circle
    pi = gmpy2.const_pi()
    phi = (1 + gmpy2.sqrt(mpfr(5))) / 2
    return 2 * pi * (1 - 1 / phi)


def draw_deg5_partition(t: Tree, dec: Decomposition, start: Optional[str] = None,
                        precision: Optional[int] = None) -> Drawing:
    """Drawing of an arbitrary tree with a degree-5 partition such that each
    part is the RNG of its own vertex set. Vertices mapped to the same
    vertex of the complete 5-ary scaffold share a stability disc; crossings
    are permitted."""
    rep = validate(t)
    if not rep.valid:
        raise ConstructionError(f"invalid tree: {rep.problems}")
    drep = validate_decomposition(t, dec, 5, "degree")
    if not drep.valid:
        raise ConstructionError(f"invalid degree-5 partition: {drep.problems}")
    if start is None:
        start = t.vertices[0]
    if len(t.vertices) == 1:
        precision = precision or default_precision(1, 1)
        with bits(precision):
            return Drawing(t, {t.vertices[0]: Point("0", "0")}, precision,
                           "part5", {"start": start, "height": 0})
    f = homomorphism_into_5ary(t, dec, start)
    height = root_at(t, start).eccentricity()
    needed = set(f.values())
    if precision is None:
        precision = default_precision(height + 1, max(1, len(dec.parts)))
    with bits(precision):
        qpos = _lazy_5ary_positions(height, needed)
        base_vertices = sorted(qpos)
        base_edges = [(q_parent(z), z) for z in base_vertices if z != Q_ROOT]
        base = Drawing(Tree(base_vertices, base_edges), qpos, precision, "deg5-scaffold")
        parts_q = []
        for i in range(len(dec.parts)):
            vs = {f[v] for v in dec.part_vertices(t, i)}
            es = [(f[u], f[v]) for u, v in dec.part_edges(t, i)]
            parts_q.append(_verify.Subtree(vs, es))
        eps = _verify.rng_stability_radius(base, parts_q) / 2

        by_image: Dict[str, List[str]] = {}
        for v in t.vertices:
            by_image.setdefault(f[v], []).append(v)
        golden = _golden_angle()
        shrink = mpfr(1)
        for attempt in range(8):
            pos: Dict[str, Point] = {}
            # one global golden-angle index per vertex: same-rank vertices of
            # different discs get different offset directions, so collinear
            # scaffold chains do not translate into collinear drawings
            k = 0
            for z in sorted(by_image):
                centre = qpos[z]
                vs = sorted(by_image[z])
                load = len(vs)
                for rank, v in enumerate(vs, start=1):
                    k += 1
                    radius = shrink * eps * rank / (load + 1)
                    ang = k * golden
                    pos[v] = Point(centre.x + radius * gmpy2.cos(ang),
                                   centre.y + radius * gmpy2.sin(ang))
            d = Drawing(t, pos, precision, "part5",
                        {"start": start, "height": height, "attempt": attempt})
            gp = _verify.check_general_position(d, tie_scan_limit=0)
            if gp.passed:
                return d
            shrink /= 2
        raise ConstructionError("could not reach general position after 8 rescalings")


# ---------------------------------------------------------------------------
# Two-coverings: a shared root, per-part circle slots, grouped lune recursion
# ---------------------------------------------------------------------------
#
# Rooting at a maximum-degree vertex (necessarily in both subtrees, since a
# degree->=6 vertex has edges of both exclusive classes) gives two structural
# facts that make the lune recursion work unchanged below the root:
#   * for any vertex u of part i, the tree path from the root to u lies
#     entirely inside part i, so u's parent edge is a part-i edge and u has
#     at most 4 part-i children;
#   * a child reached through a part-i-exclusive edge heads a subtree with no
#     vertices of the other part at all.
# At each vertex the children fall into three classes - part-0-only, shared,
# part-1-only - and each part sees at most 4 of them. With few children every
# class gets its own arc slot; at degree->=6 vertices the two exclusive
# classes reuse slots at distinct micro-rotations (the other part never sees
# the reused copy, and parts impose no constraints on each other).

_SHARED = 1


def _edge_class_map(tree: Tree, dec: Decomposition) -> Dict[frozenset, int]:
    """0 = part-0 only, 1 = shared, 2 = part-1 only."""
    in0 = {frozenset(tree.edges[e]) for e in dec.parts[0]}
    in1 = {frozenset(tree.edges[e]) for e in dec.parts[1]}
    out = {}
    for u, v in tree.edges:
        key = frozenset((u, v))
        out[key] = (_SHARED if key in in0 and key in in1
                    else 0 if key in in0 else 2)
    return out


def _rec_cover2(rooted: RootedTree, cls: Dict[frozenset, int], emb: Embedding,
                r: str, frame: ConstructionFrame, pos: Dict[str, Point],
                depth: int) -> None:
    if depth > len(rooted.tree.vertices):
        raise ConstructionError("recursion depth exceeds |V|")
    pos[r] = frame.q
    kids = rooted.children[r]
    if not kids:
        return
    ordered = _embedding_order(emb)(r, rooted.parent[r], list(kids))
    groups: Dict[int, List[str]] = {0: [], 1: [], 2: []}
    for ch in ordered:
        groups[cls[frozenset((r, ch))]].append(ch)
    a, b, c = len(groups[0]), len(groups[1]), len(groups[2])
    if b + max(a, c) > 4:
        raise ConstructionError(
            f"part degree exceeds 5 at {r!r}; not a degree-5 covering")
    delta_prime = frame.delta / 2
    s = arc_points(frame, delta_prime, 4)
    eps = safe_epsilon(frame, delta_prime, s)
    if a + b + c <= 4:
        # every child gets its own arc slot, in the order that realizes the
        # declared clockwise ring at r
        for j, ch in enumerate(ordered):
            _rec_cover2(rooted, cls, emb, ch,
                        ConstructionFrame(frame.q, s[j], eps), pos, depth + 1)
        return
    present = [g for g in (0, 1, 2) if groups[g]]
    k = len(present)
    beta = 2 * gmpy2.asin(eps / (k * delta_prime))
    for rho, g in enumerate(present):
        phi = (mpfr(rho) - mpfr(k - 1) / 2) * beta
        for j, ch in enumerate(groups[g]):
            slot = j if g == _SHARED else b + j
            t = _rotate_about(frame.q, s[slot], phi)
            assert lune_contains(frame.lune(), t)
            _rec_cover2(rooted, cls, emb, ch,
                        ConstructionFrame(frame.q, t, eps / k), pos, depth + 1)


def _cover2_root_layout(ring: Sequence[str], cls_of: Dict[str, int],
                        delta_prime: mpfr) -> Tuple[Dict[str, Point], mpfr]:
    """Positions for the root's children on circle(origin, delta_prime).

    Each part needs its own members pairwise more than 60 degrees apart (so
    the root blocks every same-part sibling pair), while the two exclusive
    classes are unconstrained against each other. Shared and part-0 children
    sit on the 72-degree grid; part-1-exclusive children descend from 294
    degrees in 72-degree steps, which keeps them at least 66 degrees from
    every shared child.
    """
    sh = [u for u in ring if cls_of[u] == _SHARED]
    e0 = [u for u in ring if cls_of[u] == 0]
    e2 = [u for u in ring if cls_of[u] == 2]
    two_pi = 2 * gmpy2.const_pi()
    u72 = two_pi / 5
    u66 = two_pi * mpfr(66) / 360
    ang: Dict[str, mpfr] = {}
    for i, u in enumerate(sh):
        ang[u] = i * u72
    for j, u in enumerate(e0):
        ang[u] = (len(sh) + j) * u72
    for j, u in enumerate(e2):
        ang[u] = two_pi - u66 - j * u72

    def gap(x, y):
        d = abs(x - y) % two_pi
        return min(d, two_pi - d)

    def chord(members) -> mpfr:
        best = None
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                g = gap(ang[members[i]], ang[members[j]])
                if best is None or g < best:
                    best = g
        return 2 * gmpy2.sin(best / 2) if best is not None else mpfr(4)

    min_same = min(chord(sh + e0), chord(sh + e2))
    assert min_same > 1, "same-part root children must exceed 60 degrees apart"
    min_any = chord(list(ang))
    eps = delta_prime * min(mpfr(1) / 3, (min_same - 1) / 3, min_any / 4)
    slots = {u: Point(delta_prime * gmpy2.cos(th), delta_prime * gmpy2.sin(th))
             for u, th in ang.items()}
    return slots, eps


def draw_two_covering(t: Tree, t1: Sequence[int], t2: Sequence[int],
                      precision: Optional[int] = None) -> Drawing:
    """Non-crossing drawing of a tree covered by two degree-5 subtrees with
    both parts drawn as RNGs of their vertex sets. The drawing realizes the
    embedding stored in meta["embedding"], which agrees with the good
    embedding of the covering at every vertex of degree at most 5."""
    rep = validate(t)
    if not rep.valid:
        raise ConstructionError(f"invalid tree: {rep.problems}")
    dec = Decomposition("covering", [tuple(t1), tuple(t2)])
    drep = validate_decomposition(t, dec, 5, "degree")
    if not drep.valid:
        raise ConstructionError(f"invalid degree-5 two-covering: {drep.problems}")
    emb = good_embedding(t, list(t1), list(t2))
    if precision is None:
        precision = default_precision(len(t.vertices), 2)

    adj = t.adjacency()
    if t.max_degree() <= 5:
        base = draw_degree5(t, embedding=emb, precision=precision)
        return Drawing(t, base.pos, precision, "cover2",
                       {"root": base.meta["root"], "embedding": emb})

    root = min((v for v in t.vertices if len(adj[v]) == t.max_degree()))
    rooted = root_at(t, root)
    cls = _edge_class_map(t, dec)
    with bits(precision):
        q = Point("0", "0")
        pos: Dict[str, Point] = {root: q}
        ring = emb.at(root)
        slots, eps = _cover2_root_layout(
            ring, {u: cls[frozenset((root, u))] for u in ring}, mpfr(1))
        for child in ring:
            frame = ConstructionFrame(q, slots[child], eps)
            _rec_cover2(rooted, cls, emb, child, frame, pos, 1)
    d = Drawing(t, pos, precision, "cover2", {"root": root})
    realized = _verify.realized_embedding(d)
    order: Dict[str, Tuple[str, ...]] = {}
    for v in t.vertices:
        if len(adj[v]) <= 5:
            assert _verify.cyclic_equal(realized.at(v), emb.at(v)), (
                f"declared ring not realized at {v!r}")
            order[v] = emb.at(v)
        else:
            order[v] = realized.at(v)
    return Drawing(t, pos, precision, "cover2",
                   {"root": root, "embedding": Embedding(order)})
