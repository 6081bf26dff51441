"""Ground-truth proximity structures over labelled point sets.

These are the oracles the drawing algorithms are checked against, so they
stay deliberately simple: the relative neighbourhood graph is the O(n^3)
triple loop over the definition, and the minimum spanning tree is Prim over
the complete distance graph. Comparisons use squared distances (exact for
the ordering) at the working precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Tuple

from gmpy2 import mpfr

from .geometry import Point, dist, dist_sq


@dataclass(frozen=True)
class PointSet:
    """Ordered list of (identifier, point); identifiers and points injective."""

    items: Tuple[Tuple[str, Point], ...]

    def __init__(self, items: Iterable[Tuple[str, Point]]):
        items = tuple(items)
        ids = [i for i, _ in items]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate identifiers in point set")
        pts = {(p.x, p.y) for _, p in items}
        if len(pts) != len(items):
            raise ValueError("two identifiers share a point")
        object.__setattr__(self, "items", items)

    @property
    def ids(self) -> List[str]:
        return [i for i, _ in self.items]

    def point(self, vid: str) -> Point:
        for i, p in self.items:
            if i == vid:
                return p
        raise KeyError(vid)

    def as_dict(self) -> Dict[str, Point]:
        return dict(self.items)

    def __len__(self) -> int:
        return len(self.items)


def edge_key(u: str, v: str) -> Tuple[str, str]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class GeometricGraph:
    points: PointSet
    edges: FrozenSet[Tuple[str, str]]
    warnings: Tuple[str, ...] = ()

    def __init__(self, points: PointSet, edges: Iterable[Tuple[str, str]],
                 warnings: Iterable[str] = ()):
        ids = set(points.ids)
        norm = set()
        for u, v in edges:
            if u not in ids or v not in ids:
                raise ValueError(f"edge ({u!r},{v!r}) references unknown identifier")
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            norm.add(edge_key(u, v))
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "warnings", tuple(warnings))


def _sq_matrix(ps: PointSet) -> List[List[mpfr]]:
    pts = [p for _, p in ps.items]
    n = len(pts)
    m = [[mpfr(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d2 = dist_sq(pts[i], pts[j])
            m[i][j] = d2
            m[j][i] = d2
    return m


def emst(ps: PointSet) -> GeometricGraph:
    """Euclidean minimum spanning tree via Prim on the complete graph.

    Equal-weight candidates are resolved by identifier pair order and
    flagged: general position generically excludes ties, but user-supplied
    drawings may contain them.
    """
    n = len(ps)
    if n == 0:
        raise ValueError("need at least one point")
    ids = ps.ids
    d2 = _sq_matrix(ps)
    in_tree = [False] * n
    best = [mpfr("inf")] * n
    best_from = [-1] * n
    in_tree[0] = True
    for j in range(1, n):
        best[j] = d2[0][j]
        best_from[j] = 0
    edges: List[Tuple[str, str]] = []
    warnings: List[str] = []
    for _ in range(n - 1):
        pick = -1
        for j in range(n):
            if in_tree[j]:
                continue
            if pick == -1 or best[j] < best[pick] or (
                    best[j] == best[pick] and ids[j] < ids[pick]):
                if pick != -1 and best[j] == best[pick]:
                    warnings.append(
                        f"distance tie while selecting {ids[j]} vs {ids[pick]}")
                pick = j
        edges.append(edge_key(ids[best_from[pick]], ids[pick]))
        in_tree[pick] = True
        for j in range(n):
            if in_tree[j]:
                continue
            if d2[pick][j] < best[j] or (
                    d2[pick][j] == best[j]
                    and ids[pick] < ids[best_from[j]]):
                if d2[pick][j] == best[j]:
                    warnings.append(
                        f"distance tie updating {ids[j]}: {ids[pick]} vs {ids[best_from[j]]}")
                best[j] = d2[pick][j]
                best_from[j] = pick
    return GeometricGraph(ps, edges, warnings)


def rng(ps: PointSet) -> GeometricGraph:
    """Relative neighbourhood graph: u, v adjacent iff no third point lies
    strictly inside both open discs of radius |uv| (the lens)."""
    n = len(ps)
    if n == 0:
        raise ValueError("need at least one point")
    ids = ps.ids
    d2 = _sq_matrix(ps)
    edges: List[Tuple[str, str]] = []
    for i in range(n):
        for j in range(i + 1, n):
            r2 = d2[i][j]
            blocked = False
            for c in range(n):
                if c == i or c == j:
                    continue
                if d2[c][i] < r2 and d2[c][j] < r2:
                    blocked = True
                    break
            if not blocked:
                edges.append(edge_key(ids[i], ids[j]))
    return GeometricGraph(ps, edges)


def is_subgraph(g1: GeometricGraph, g2: GeometricGraph) -> bool:
    """Edge-set containment over the same point set."""
    if g1.points.items != g2.points.items:
        raise ValueError("point sets differ")
    return g1.edges <= g2.edges


def total_length(ps: PointSet, edges: Iterable[Tuple[str, str]]) -> mpfr:
    """Sum of edge lengths in a fixed (sorted) order, so equal edge multisets
    give bit-identical totals at the working precision."""
    pos = ps.as_dict()
    total = mpfr(0)
    for u, v in sorted(edge_key(a, b) for a, b in edges):
        total += dist(pos[u], pos[v])
    return total
