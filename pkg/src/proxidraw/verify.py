"""Independent conformance checks for drawings.

Everything here recomputes proximity structure from coordinates alone; no
check reads construction metadata, so a passing report is evidence about the
drawing, not about the code that produced it. Reports are plain records with
machine-readable witnesses and fragility warnings for comparisons whose
margin is below 2^(-P/2) at the drawing's precision P.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import gmpy2
from gmpy2 import mpfr

from . import proximity
from .geometry import (angle_at, bits, collinear, dist, dist_sq,
                       fragile_margin, segments_cross)
from .proximity import PointSet, edge_key
from .treemodel import Embedding, Tree


@dataclass(frozen=True)
class Subtree:
    """A named subgraph of a drawing's host tree: the unit of verification."""

    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str], ...]

    def __init__(self, vertices: Iterable[str], edges: Iterable[Tuple[str, str]]):
        object.__setattr__(self, "vertices", tuple(sorted(set(vertices))))
        object.__setattr__(self, "edges", tuple(sorted(edge_key(u, v) for u, v in edges)))


def subtree_of_part(tree: Tree, part_edge_ids: Sequence[int]) -> Subtree:
    edges = [tree.edges[e] for e in part_edge_ids]
    verts = {v for e in edges for v in e}
    if not edges:  # an empty part still names nothing to check
        return Subtree((), ())
    return Subtree(verts, edges)


def whole_tree(tree: Tree) -> Subtree:
    return Subtree(tree.vertices, tree.edges)


@dataclass(frozen=True)
class RngReport:
    passed: bool
    missing: Tuple[Tuple[str, str], ...]  # part edges absent from the RNG
    extra: Tuple[Tuple[str, str], ...]    # RNG edges the part does not have
    blockers: Dict[Tuple[str, str], str]  # witness point inside the lens of a missing edge
    warnings: Tuple[str, ...] = ()


@dataclass(frozen=True)
class MstReport:
    passed: bool
    drawn_length: str
    mst_length: str
    edge_mismatch: Tuple[Tuple[str, str], ...]
    tie_warnings: Tuple[str, ...] = ()


@dataclass(frozen=True)
class CrossingReport:
    passed: bool
    crossings: Tuple[Tuple[Tuple[str, str], Tuple[str, str]], ...]


@dataclass(frozen=True)
class GeneralPositionReport:
    passed: bool
    collinear_triples: Tuple[Tuple[str, str, str], ...]
    distance_ties: Tuple[Tuple[Tuple[str, str], Tuple[str, str]], ...] = ()


@dataclass(frozen=True)
class ImpossibilityWitness:
    pair: Tuple[str, str]
    angle: str
    part_index: int
    mst_report: MstReport


def _part_pointset(drawing, part: Subtree) -> PointSet:
    pos = drawing.pos
    missing = [v for v in part.vertices if v not in pos]
    if missing:
        raise ValueError(f"part vertices not in drawing: {missing}")
    return PointSet([(v, pos[v]) for v in part.vertices])


def check_rng_drawing(drawing, part: Subtree) -> RngReport:
    """Does the relative neighbourhood graph of the part's points equal the
    part's drawn edges?"""
    if not part.vertices:  # an empty part has nothing to violate
        return RngReport(True, (), (), {}, ())
    with bits(drawing.precision_bits):
        ps = _part_pointset(drawing, part)
        got = proximity.rng(ps).edges
        want = {edge_key(u, v) for u, v in part.edges}
        missing = tuple(sorted(want - got))
        extra = tuple(sorted(got - want))
        blockers: Dict[Tuple[str, str], str] = {}
        pos = drawing.pos
        warnings: List[str] = []
        for u, v in missing:
            r2 = dist_sq(pos[u], pos[v])
            for c in part.vertices:
                if c in (u, v):
                    continue
                a2, b2 = dist_sq(pos[c], pos[u]), dist_sq(pos[c], pos[v])
                if a2 < r2 and b2 < r2:
                    blockers[(u, v)] = c
                    break
        # fragility scan over the decisions that establish the pass
        if not missing and not extra:
            n = len(ps)
            pts = [p for _, p in ps.items]
            ids = ps.ids
            for i in range(n):
                for j in range(i + 1, n):
                    r2 = dist_sq(pts[i], pts[j])
                    for c in range(n):
                        if c in (i, j):
                            continue
                        for side in (dist_sq(pts[c], pts[i]), dist_sq(pts[c], pts[j])):
                            if fragile_margin(side, r2, drawing.precision_bits):
                                warnings.append(
                                    f"fragile lens comparison ({ids[i]},{ids[j]}) vs {ids[c]}")
        return RngReport(not missing and not extra, missing, extra,
                         blockers, tuple(warnings))


def check_mst_drawing(drawing, part: Subtree) -> MstReport:
    """Does the part's drawn edge set have the minimum spanning length of its
    points? Exact length comparison at the drawing's precision; when the MST
    is unique the edge sets must agree as well."""
    if not part.vertices:
        return MstReport(True, "0", "0", ())
    with bits(drawing.precision_bits):
        ps = _part_pointset(drawing, part)
        tree = proximity.emst(ps)
        drawn = proximity.total_length(ps, part.edges)
        minimal = proximity.total_length(ps, tree.edges)
        want = {edge_key(u, v) for u, v in part.edges}
        mismatch: Tuple[Tuple[str, str], ...] = ()
        spanning = _is_spanning_tree(part)
        ok = spanning and drawn == minimal
        if ok and not tree.warnings and want != tree.edges:
            mismatch = tuple(sorted(want.symmetric_difference(tree.edges)))
            ok = False
        return MstReport(ok, str(drawn), str(minimal), mismatch, tree.warnings)


def _is_spanning_tree(part: Subtree) -> bool:
    if not part.vertices:
        return True
    if len(part.edges) != len(part.vertices) - 1:
        return False
    adj: Dict[str, List[str]] = {v: [] for v in part.vertices}
    for u, v in part.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {part.vertices[0]}
    stack = [part.vertices[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(part.vertices)


def check_noncrossing(drawing) -> CrossingReport:
    """Exhaustive segment-pair test over the drawn tree edges."""
    with bits(drawing.precision_bits):
        pos = drawing.pos
        segs = [(edge_key(u, v), (pos[u], pos[v])) for u, v in drawing.tree.edges]
        found: List[Tuple[Tuple[str, str], Tuple[str, str]]] = []
        for i in range(len(segs)):
            for j in range(i + 1, len(segs)):
                if segments_cross(segs[i][1], segs[j][1]):
                    found.append((segs[i][0], segs[j][0]))
        return CrossingReport(not found, tuple(found))


def angular_resolution(drawing) -> mpfr:
    """Minimum angle between consecutive edges around any vertex, measured
    from the realized angular order."""
    with bits(drawing.precision_bits):
        pos = drawing.pos
        adj = drawing.tree.adjacency()
        best: Optional[mpfr] = None
        two_pi = 2 * gmpy2.const_pi()
        for v, ns in adj.items():
            if len(ns) < 2:
                continue
            p = pos[v]
            angles = sorted(gmpy2.atan2(pos[w].y - p.y, pos[w].x - p.x) for w in ns)
            for a, b in zip(angles, angles[1:] + [angles[0] + two_pi]):
                gap = b - a
                if best is None or gap < best:
                    best = gap
        if best is None:
            return two_pi
        return best


def check_general_position(drawing, tie_scan_limit: int = 12) -> GeneralPositionReport:
    """Exhaustive collinearity test; pairwise distance ties are scanned only
    for small drawings (the O(n^4) tie scan is an oracle-scale tool)."""
    with bits(drawing.precision_bits):
        ids = sorted(drawing.pos)
        pos = drawing.pos
        n = len(ids)
        bad: List[Tuple[str, str, str]] = []
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    if collinear(pos[ids[i]], pos[ids[j]], pos[ids[k]]):
                        bad.append((ids[i], ids[j], ids[k]))
        ties: List[Tuple[Tuple[str, str], Tuple[str, str]]] = []
        if n <= tie_scan_limit:
            pairs = [(ids[i], ids[j]) for i in range(n) for j in range(i + 1, n)]
            d2 = {pr: dist_sq(pos[pr[0]], pos[pr[1]]) for pr in pairs}
            for a in range(len(pairs)):
                for b in range(a + 1, len(pairs)):
                    if d2[pairs[a]] == d2[pairs[b]]:
                        ties.append((pairs[a], pairs[b]))
        return GeneralPositionReport(not bad and not ties, tuple(bad), tuple(ties))


# ---------------------------------------------------------------------------
# Stability radius
# ---------------------------------------------------------------------------

def rng_stability_radius(drawing, parts: Sequence[Subtree],
                         focus: Optional[str] = None) -> mpfr:
    """Largest certified single-vertex perturbation radius.

    Returns eps > 0 such that moving ``focus`` (any one vertex when omitted)
    anywhere in its eps-disc preserves every strict inequality behind each
    part's RNG equality. eps is a quarter of the smallest relevant margin:
    for a part edge uv, how far every third part point c stays outside
    lens(u, v); for a non-edge uv, how deep its best witness sits inside.
    A quarter (not a half) so that two points moved together, as in
    unfolding, stay safe. Also capped at a quarter of the focus's distance
    to its nearest neighbour so perturbed points stay distinct.
    """
    with bits(drawing.precision_bits):
        pos = drawing.pos
        margins: List[mpfr] = []
        for part in parts:
            rep = check_rng_drawing(drawing, part)
            if not rep.passed:
                raise ValueError(f"part fails RNG check: missing={rep.missing} extra={rep.extra}")
            verts = part.vertices
            if len(verts) < 2:
                continue
            d = {v: pos[v] for v in verts}
            lens_d = {}
            for i, u in enumerate(verts):
                for v in verts[i + 1:]:
                    lens_d[(u, v)] = dist(d[u], d[v])
            def pair_dist(a, b):
                return lens_d[(a, b)] if (a, b) in lens_d else lens_d[(b, a)]
            edges = {edge_key(u, v) for u, v in part.edges}
            for i, u in enumerate(verts):
                for v in verts[i + 1:]:
                    duv = pair_dist(u, v)
                    endpoint_moves = focus is None or focus in (u, v)
                    if edge_key(u, v) in edges:
                        # every third point must stay outside lens(u, v);
                        # only comparisons a moving point touches matter
                        for c in verts:
                            if c in (u, v):
                                continue
                            if not endpoint_moves and c != focus:
                                continue
                            margins.append(max(pair_dist(c, u), pair_dist(c, v)) - duv)
                    else:
                        # some witness must stay inside lens(u, v)
                        best: Optional[mpfr] = None
                        static_witness = False
                        for c in verts:
                            if c in (u, v):
                                continue
                            m = duv - max(pair_dist(c, u), pair_dist(c, v))
                            if m > 0:
                                if not endpoint_moves and c != focus:
                                    static_witness = True
                                if best is None or m > best:
                                    best = m
                        assert best is not None, "RNG check passed but no witness found"
                        if not static_witness or endpoint_moves or focus is None:
                            margins.append(best)
        # keep perturbed points distinct (and the single-edge convention)
        all_ids = sorted(drawing.pos)
        if focus is not None:
            others = [dist(pos[focus], pos[v]) for v in all_ids if v != focus]
        else:
            others = [dist(pos[all_ids[i]], pos[all_ids[j]])
                      for i in range(len(all_ids)) for j in range(i + 1, len(all_ids))]
        if others:
            margins.append(min(others))
        eps = min(margins) / 4
        assert eps > 0
        return eps


# ---------------------------------------------------------------------------
# Realized embeddings
# ---------------------------------------------------------------------------

def realized_embedding(drawing) -> Embedding:
    """Clockwise cyclic edge order actually realized at each vertex."""
    with bits(drawing.precision_bits):
        pos = drawing.pos
        adj = drawing.tree.adjacency()
        order: Dict[str, Tuple[str, ...]] = {}
        for v, ns in adj.items():
            p = pos[v]
            keyed = sorted(ns, key=lambda w: -gmpy2.atan2(pos[w].y - p.y, pos[w].x - p.x))
            order[v] = tuple(keyed)
        return Embedding(order)


def cyclic_equal(a: Sequence[str], b: Sequence[str]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    la, lb = list(a), list(b)
    if la[0] not in lb:
        return False
    i = lb.index(la[0])
    return la == lb[i:] + lb[:i]


def embedding_matches(drawing, declared: Embedding) -> bool:
    realized = realized_embedding(drawing)
    return all(cyclic_equal(realized.at(v), declared.at(v))
               for v in drawing.tree.vertices)


# ---------------------------------------------------------------------------
# The six-star negative oracle
# ---------------------------------------------------------------------------

def check_impossible_covering(drawing, parts: Sequence[Subtree]) -> ImpossibilityWitness:
    """For a general-position drawing of the 6-star with the three 4-star
    covering, locate a consecutive leaf pair at angle < pi/3, the part
    holding the centre and both leaves, and confirm that part fails the MST
    check. Six angles sum to 2*pi, so such a pair always exists in general
    position."""
    with bits(drawing.precision_bits):
        gp = check_general_position(drawing)
        if not gp.passed:
            raise ValueError(f"drawing is not in general position: {gp}")
        adj = drawing.tree.adjacency()
        centre = max(adj, key=lambda v: len(adj[v]))
        if len(adj[centre]) != 6:
            raise ValueError("expected the 6-star")
        pos = drawing.pos
        c = pos[centre]
        leaves = sorted(adj[centre],
                        key=lambda w: gmpy2.atan2(pos[w].y - c.y, pos[w].x - c.x))
        pi = gmpy2.const_pi()
        witness: Optional[Tuple[str, str, mpfr]] = None
        for a, b in zip(leaves, leaves[1:] + [leaves[0]]):
            ang = angle_at(c, pos[a], pos[b])
            if ang < pi / 3:
                witness = (a, b, ang)
                break
        assert witness is not None, "six angles summing to 2*pi must include one < pi/3"
        a, b, ang = witness
        part_index = None
        for i, part in enumerate(parts):
            vs = set(part.vertices)
            if centre in vs and a in vs and b in vs:
                part_index = i
                break
        assert part_index is not None, "covering leaves every pair in a common part"
        rep = check_mst_drawing(drawing, parts[part_index])
        assert not rep.passed, "an angle below pi/3 at the centre must break the MST"
        return ImpossibilityWitness((a, b), str(ang), part_index, rep)
