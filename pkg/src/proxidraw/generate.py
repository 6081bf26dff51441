"""Seeded random instances: trees with decompositions that provably satisfy
the preconditions of the four constructions, plus labelled point sets for
the proximity oracles. Everything is a pure function of its seed; all
randomness in the package lives here.
"""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Tuple

from gmpy2 import mpfr

from .formats import Instance
from .geometry import Point, bits
from .proximity import PointSet
from .treemodel import Decomposition, Tree, validate_decomposition

COORD_RANGE = 2 ** 40


def gen_point_set(seed: int, n: int, precision: int = 128) -> PointSet:
    """n distinct labelled points with integer coordinates from a range wide
    enough that collinear triples and distance ties are vanishingly rare."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(f"points:{seed}:{n}")
    with bits(precision):
        items = []
        used = set()
        while len(items) < n:
            xy = (rng.randrange(COORD_RANGE), rng.randrange(COORD_RANGE))
            if xy in used:
                continue
            used.add(xy)
            items.append((f"p{len(items)}", Point(mpfr(xy[0]), mpfr(xy[1]))))
        return PointSet(items)


def _partition_sizes(rng: random.Random, total: int, k: int) -> List[int]:
    """k positive integers summing to total (requires total >= k)."""
    cuts = sorted(rng.sample(range(1, total), k - 1)) if k > 1 else []
    edges = [0] + cuts + [total]
    return [b - a for a, b in zip(edges, edges[1:])]


def gen_partition_instance(seed: int, n: int, bound: int, mode: str,
                           k: Optional[int] = None,
                           max_out: Optional[int] = None) -> Instance:
    """Tree of n vertices with a partition into subtrees respecting ``bound``
    (per-part degree or outdegree). Parts are grown one at a time, each glued
    to the existing tree at a random vertex; ``max_out`` caps the global
    outdegree (degree mode: global degree) of any vertex.
    """
    if mode not in ("degree", "outdegree"):
        raise ValueError(f"unknown mode {mode!r}")
    if n < 2:
        raise ValueError("need at least one edge")
    rng = random.Random(f"partition:{seed}:{n}:{bound}:{mode}:{k}:{max_out}")
    root = "v0"
    vertices = [root]
    edges: List[Tuple[str, str]] = []
    parts: List[List[int]] = []
    glob: Dict[str, int] = {root: 0}  # outdegree (or degree) already used

    total_edges = n - 1
    if k is not None:
        if k > total_edges:
            raise ValueError(f"k={k} parts need at least {k} edges, have {total_edges}")
        sizes = _partition_sizes(rng, total_edges, k)
    else:
        sizes = []
        left = total_edges
        while left:
            s = min(left, rng.randint(1, max(1, 2 * bound)))
            sizes.append(s)
            left -= s

    cap = max_out if max_out is not None else n  # effectively uncapped
    for size in sizes:
        anchors = [v for v in vertices if glob[v] < cap]
        if not anchors:
            raise ValueError("max_out too small for requested n")
        g = rng.choice(anchors)
        part: List[int] = []
        local: Dict[str, int] = {g: 0}  # within-part degree/outdegree
        members = [g]
        grown = 0
        while grown < size:
            cand = [u for u in members if local[u] < bound and glob[u] < cap]
            if not cand:
                break
            u = rng.choice(cand)
            w = f"v{len(vertices)}"
            vertices.append(w)
            edges.append((u, w))
            part.append(len(edges) - 1)
            local[u] += 1
            glob[u] += 1
            # a new vertex has one (parent) edge in degree mode, none outgoing
            local[w] = 1 if mode == "degree" else 0
            glob[w] = 1 if mode == "degree" else 0
            members.append(w)
            grown += 1
        if part:
            parts.append(part)

    tree = Tree(vertices, edges)
    dec = Decomposition("partition", parts)
    rep = validate_decomposition(tree, dec, bound, mode,
                                 root if mode == "outdegree" else None)
    assert rep.valid, f"generator produced an invalid partition: {rep.problems}"
    return Instance(tree, root if mode == "outdegree" else None, dec, mode, bound)


def gen_degree5_tree(seed: int, n: int) -> Instance:
    """Random tree with maximum degree at most 5 by capped weighted attachment."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(f"deg5:{seed}:{n}")
    vertices = ["v0"]
    edges: List[Tuple[str, str]] = []
    deg = {"v0": 0}
    while len(vertices) < n:
        # attachment weight = remaining capacity, favouring fuller spread
        cand = [v for v in vertices for _ in range(5 - deg[v]) if deg[v] < 5]
        u = rng.choice(cand)
        w = f"v{len(vertices)}"
        vertices.append(w)
        edges.append((u, w))
        deg[u] += 1
        deg[w] = 1
    return Instance(Tree(vertices, edges))


def gen_covering_instance(seed: int, n: int, bound: int = 5,
                          max_degree: int = 9) -> Instance:
    """Tree covered by two degree-``bound`` subtrees sharing a nonempty
    subtree; global degree capped at ``max_degree``."""
    if n < 2:
        raise ValueError("need at least one edge")
    rng = random.Random(f"covering:{seed}:{n}:{bound}:{max_degree}")
    vertices = ["v0"]
    edges: List[Tuple[str, str]] = []
    deg_t = {"v0": 0}
    deg = [{"v0": 0}, {"v0": 0}]  # within-part degree; shared edges count in both
    membership: List[List[int]] = [[], []]
    member_of = [{"v0"}, {"v0"}]

    shared = rng.randint(1, max(1, min(n // 3, bound, n - 1)))
    rem = n - 1 - shared
    if rem >= 2:
        quota = [shared] + _partition_sizes(rng, rem, 2)
    else:
        quota = [shared, rem, 0]

    def grow(part_ids: List[int], count: int) -> None:
        for _ in range(count):
            cand = [u for u in vertices
                    if deg_t[u] < max_degree
                    and all(u in member_of[i] and deg[i][u] < bound for i in part_ids)]
            if not cand:
                raise ValueError("parameters leave no room to grow")
            u = rng.choice(cand)
            w = f"v{len(vertices)}"
            vertices.append(w)
            edges.append((u, w))
            e = len(edges) - 1
            deg_t[u] += 1
            deg_t[w] = 1
            for i in (0, 1):
                deg[i].setdefault(w, 0)
            for i in part_ids:
                membership[i].append(e)
                member_of[i].add(w)
                deg[i][u] += 1
                deg[i][w] += 1

    grow([0, 1], quota[0])  # the shared subtree
    grow([0], quota[1])
    grow([1], quota[2])

    tree = Tree(vertices, edges)
    dec = Decomposition("covering", membership)
    rep = validate_decomposition(tree, dec, bound, "degree")
    assert rep.valid, f"generator produced an invalid covering: {rep.problems}"
    return Instance(tree, None, dec, "degree", bound)


# ---------------------------------------------------------------------------
# The six-star and its three-part covering
# ---------------------------------------------------------------------------

def six_star_instance() -> Instance:
    """Star with six leaves, covered by the three 4-stars on leaf pairs
    {1,2}+{3,4}, {1,2}+{5,6}, {3,4}+{5,6}: every leaf pair shares a part
    with the centre, yet no drawing makes all three parts MSTs."""
    vertices = ["c"] + [f"l{i}" for i in range(1, 7)]
    edges = [("c", f"l{i}") for i in range(1, 7)]
    dec = Decomposition("covering", [(0, 1, 2, 3), (0, 1, 4, 5), (2, 3, 4, 5)])
    return Instance(Tree(vertices, edges), None, dec, "degree", 4)


def gen_six_star_drawing(seed: int, precision: int = 128):
    """General-position placement of the six-star: centre at the origin,
    leaves at random angles and radii. Returns a Drawing."""
    import gmpy2
    from .construct import Drawing
    inst = six_star_instance()
    rng = random.Random(f"sixstar:{seed}")
    with bits(precision):
        two_pi = 2 * gmpy2.const_pi()
        pos = {"c": Point("0", "0")}
        for i in range(1, 7):
            ang = mpfr(rng.randrange(COORD_RANGE)) / COORD_RANGE * two_pi
            radius = 1 + mpfr(rng.randrange(COORD_RANGE)) / COORD_RANGE
            pos[f"l{i}"] = Point(radius * gmpy2.cos(ang), radius * gmpy2.sin(ang))
        return Drawing(inst.tree, pos, precision, "external", {"seed": seed})
