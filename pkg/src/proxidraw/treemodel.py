"""Combinatorial trees, rooted orientations, edge decompositions, cyclic
embeddings, folding, and the map into the complete 5-ary tree.

Vertices are opaque strings. Edge decompositions index into the host tree's
edge list, matching the on-disk instance format. All operations return new
values; nothing mutates a validated tree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple


def _norm(u: str, v: str) -> FrozenSet[str]:
    return frozenset((u, v))


@dataclass(frozen=True)
class Tree:
    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str], ...]

    def __init__(self, vertices: Iterable[str], edges: Iterable[Tuple[str, str]]):
        object.__setattr__(self, "vertices", tuple(vertices))
        object.__setattr__(self, "edges", tuple((u, v) for u, v in edges))

    def adjacency(self) -> Dict[str, List[str]]:
        adj: Dict[str, List[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degree(self, v: str) -> int:
        return len(self.adjacency()[v])

    def max_degree(self) -> int:
        adj = self.adjacency()
        return max((len(ns) for ns in adj.values()), default=0)

    def edge_set(self) -> Set[FrozenSet[str]]:
        return {_norm(u, v) for u, v in self.edges}


@dataclass(frozen=True)
class TreeReport:
    valid: bool
    problems: Tuple[str, ...]


def validate(tree: Tree) -> TreeReport:
    """Connectivity, acyclicity and simplicity check; report, never raise."""
    problems: List[str] = []
    if len(set(tree.vertices)) != len(tree.vertices):
        problems.append("duplicate vertex identifiers")
    vset = set(tree.vertices)
    seen: Set[FrozenSet[str]] = set()
    for u, v in tree.edges:
        if u == v:
            problems.append(f"self-loop at {u!r}")
        if u not in vset or v not in vset:
            problems.append(f"edge ({u!r},{v!r}) references unknown vertex")
        key = _norm(u, v)
        if key in seen:
            problems.append(f"duplicate edge ({u!r},{v!r})")
        seen.add(key)
    if len(tree.edges) != max(len(tree.vertices) - 1, 0):
        problems.append(f"|E| = {len(tree.edges)}, expected |V| - 1 = {len(tree.vertices) - 1}")
    if tree.vertices and not problems:
        adj = tree.adjacency()
        reached = {tree.vertices[0]}
        stack = [tree.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in reached:
                    reached.add(w)
                    stack.append(w)
        if len(reached) != len(tree.vertices):
            problems.append("disconnected")
    return TreeReport(not problems, tuple(problems))


@dataclass(frozen=True)
class RootedTree:
    tree: Tree
    root: str
    parent: Dict[str, Optional[str]] = field(compare=False)
    children: Dict[str, List[str]] = field(compare=False)
    order: Tuple[str, ...] = field(compare=False)  # BFS order from the root

    def outdeg(self, v: str) -> int:
        return len(self.children[v])

    def max_outdeg(self) -> int:
        return max((len(c) for c in self.children.values()), default=0)

    def depth(self, v: str) -> int:
        d = 0
        while self.parent[v] is not None:
            v = self.parent[v]  # type: ignore[assignment]
            d += 1
        return d

    def eccentricity(self) -> int:
        return max(self.depth(v) for v in self.order)


def root_at(tree: Tree, root: str) -> RootedTree:
    """Orient every edge away from ``root`` (BFS)."""
    if root not in tree.vertices:
        raise KeyError(f"unknown root vertex {root!r}")
    adj = tree.adjacency()
    parent: Dict[str, Optional[str]] = {root: None}
    children: Dict[str, List[str]] = {v: [] for v in tree.vertices}
    order: List[str] = []
    queue = deque([root])
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in sorted(adj[v]):
            if w not in parent:
                parent[w] = v
                children[v].append(w)
                queue.append(w)
    return RootedTree(tree, root, parent, children, tuple(order))


# ---------------------------------------------------------------------------
# Decompositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """Partition or covering of a host tree's edges into subtrees, stored as
    edge-index lists into the host's edge tuple."""

    kind: str  # "partition" | "covering"
    parts: Tuple[Tuple[int, ...], ...]

    def __init__(self, kind: str, parts: Iterable[Iterable[int]]):
        if kind not in ("partition", "covering"):
            raise ValueError(f"unknown decomposition kind {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "parts", tuple(tuple(p) for p in parts))

    def part_edges(self, tree: Tree, i: int) -> List[Tuple[str, str]]:
        return [tree.edges[e] for e in self.parts[i]]

    def part_vertices(self, tree: Tree, i: int) -> Set[str]:
        vs: Set[str] = set()
        for e in self.parts[i]:
            u, v = tree.edges[e]
            vs.add(u)
            vs.add(v)
        return vs


@dataclass(frozen=True)
class DecompositionReport:
    valid: bool
    problems: Tuple[str, ...]
    part_degrees: Tuple[int, ...]
    overlaps: Tuple[Tuple[int, int, int], ...] = ()  # (i, j, #shared edges), coverings only


def _part_connected(tree: Tree, edge_ids: Sequence[int]) -> bool:
    if not edge_ids:
        return True
    adj: Dict[str, List[str]] = {}
    for e in edge_ids:
        u, v = tree.edges[e]
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    start = tree.edges[edge_ids[0]][0]
    reached = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in reached:
                reached.add(w)
                stack.append(w)
    return len(reached) == len(adj)


def validate_decomposition(tree: Tree, dec: Decomposition, bound: int,
                           mode: str = "degree",
                           root: Optional[str] = None) -> DecompositionReport:
    """Check the decomposition invariants against a degree or outdegree bound."""
    if mode not in ("degree", "outdegree"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "outdegree" and root is None:
        raise ValueError("outdegree mode requires a root")
    problems: List[str] = []
    nedges = len(tree.edges)
    counts = [0] * nedges
    part_degrees: List[int] = []
    rooted = root_at(tree, root) if mode == "outdegree" else None
    for i, part in enumerate(dec.parts):
        for e in part:
            if not 0 <= e < nedges:
                problems.append(f"part {i}: edge index {e} out of range")
            else:
                counts[e] += 1
        if len(set(part)) != len(part):
            problems.append(f"part {i}: repeated edge index")
        if not _part_connected(tree, [e for e in part if 0 <= e < nedges]):
            problems.append(f"part {i}: induced subgraph not connected")
        deg: Dict[str, int] = {}
        for e in part:
            if not 0 <= e < nedges:
                continue
            u, v = tree.edges[e]
            if mode == "degree":
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            else:
                assert rooted is not None
                child = v if rooted.parent.get(v) == u else u
                par = u if child == v else v
                deg[par] = deg.get(par, 0) + 1
                deg.setdefault(child, 0)
        worst = max(deg.values(), default=0)
        part_degrees.append(worst)
        if worst > bound:
            problems.append(f"part {i}: {mode} {worst} exceeds bound {bound}")
    for e, c in enumerate(counts):
        if dec.kind == "partition" and c != 1:
            problems.append(f"edge {e} covered {c} times, partition requires exactly 1")
        elif dec.kind == "covering" and c < 1:
            problems.append(f"edge {e} not covered")
    overlaps: List[Tuple[int, int, int]] = []
    if dec.kind == "covering":
        for i in range(len(dec.parts)):
            for j in range(i + 1, len(dec.parts)):
                shared = len(set(dec.parts[i]) & set(dec.parts[j]))
                if shared:
                    overlaps.append((i, j, shared))
    return DecompositionReport(not problems, tuple(problems),
                               tuple(part_degrees), tuple(overlaps))


# ---------------------------------------------------------------------------
# Embeddings and folding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Embedding:
    """Per-vertex clockwise cyclic order of incident edges, each edge named
    by its far endpoint."""

    order: Dict[str, Tuple[str, ...]]

    def at(self, v: str) -> Tuple[str, ...]:
        return self.order[v]

    def check(self, tree: Tree) -> None:
        adj = tree.adjacency()
        for v in tree.vertices:
            if sorted(self.order.get(v, ())) != sorted(adj[v]):
                raise ValueError(f"embedding at {v!r} is not a permutation of its neighbours")


def _component_sizes(tree: Tree, v: str) -> Dict[str, int]:
    """Size of the component of tree - v containing each neighbour of v."""
    rooted = root_at(tree, v)
    size: Dict[str, int] = {u: 1 for u in tree.vertices}
    for u in reversed(rooted.order):
        for c in rooted.children[u]:
            size[u] += size[c]
    return {w: size[w] for w in rooted.children[v]}


def good_embedding(tree: Tree, t1: Sequence[int], t2: Sequence[int]) -> Embedding:
    """Clockwise order at each vertex: edges only in t1, then shared edges,
    then edges only in t2; within a group, larger child component first,
    identifier as tie-break."""
    e1 = {_norm(*tree.edges[e]) for e in t1}
    e2 = {_norm(*tree.edges[e]) for e in t2}
    if e1 | e2 != tree.edge_set():
        raise ValueError("t1 and t2 do not cover the tree")
    adj = tree.adjacency()
    order: Dict[str, Tuple[str, ...]] = {}
    for v in tree.vertices:
        sizes = _component_sizes(tree, v)
        def group(w: str) -> int:
            key = _norm(v, w)
            if key in e1 and key in e2:
                return 1
            return 0 if key in e1 else 2
        order[v] = tuple(sorted(adj[v], key=lambda w: (group(w), -sizes[w], w)))
    return Embedding(order)


@dataclass(frozen=True)
class FoldRecord:
    """Everything needed to invert a fold."""

    tree: Tree
    dec: Decomposition
    emb: Optional[Embedding]
    v: str
    x: str
    y: str
    w: str


@dataclass(frozen=True)
class FoldResult:
    tree: Tree
    dec: Decomposition
    emb: Optional[Embedding]
    record: FoldRecord


def fold(tree: Tree, v: str, x: str, y: str, dec: Decomposition,
         emb: Optional[Embedding] = None) -> FoldResult:
    """Identify the sibling neighbours x and y of v into a new vertex w.

    Requires vx in part 0 only and vy in part 1 only of a two-part covering;
    the merged edge vw lands in both parts. When an embedding is supplied,
    the new order at w is (x's other edges, wv, y's other edges); at v the
    merged edge takes x's slot and y's slot disappears (when vx and vy are
    cyclically consecutive this is exactly replacing the pair by vw).
    """
    if len(dec.parts) != 2 or dec.kind != "covering":
        raise ValueError("fold requires a two-part covering")
    idx = {_norm(*e): i for i, e in enumerate(tree.edges)}
    evx, evy = idx.get(_norm(v, x)), idx.get(_norm(v, y))
    if evx is None or evy is None:
        raise ValueError("x and y must both be neighbours of v")
    p0, p1 = set(dec.parts[0]), set(dec.parts[1])
    if not (evx in p0 and evx not in p1 and evy in p1 and evy not in p0):
        raise ValueError("need vx in part 0 only and vy in part 1 only")

    w = f"{x}+{y}"
    while w in tree.vertices:
        w += "'"
    rename = {x: w, y: w}
    new_vertices = [w if u == x else u for u in tree.vertices if u != y]

    # old edge index -> new edge index; vx and vy both map to the merged vw
    new_edges: List[Tuple[str, str]] = []
    new_index: Dict[int, int] = {}
    merged: Optional[int] = None
    for i, (a, b) in enumerate(tree.edges):
        if i in (evx, evy):
            if merged is None:
                merged = len(new_edges)
                new_edges.append((v, w))
            new_index[i] = merged
        else:
            new_edges.append((rename.get(a, a), rename.get(b, b)))
            new_index[i] = len(new_edges) - 1
    tree2 = Tree(new_vertices, new_edges)

    dec2 = Decomposition("covering", [
        sorted({new_index[e] for e in dec.parts[0]}),
        sorted({new_index[e] for e in dec.parts[1]}),
    ])

    emb2: Optional[Embedding] = None
    if emb is not None:
        order2: Dict[str, Tuple[str, ...]] = {}
        for u in tree2.vertices:
            if u == w:
                # rotate each ring so v sits at the seam; the restriction of
                # w's ring to x's (resp. y's) neighbours then reproduces the
                # cyclic order at x (resp. y) exactly
                rx = list(emb.at(x))
                rx = rx[rx.index(v) + 1:] + rx[:rx.index(v)]
                ry = list(emb.at(y))
                ry = ry[ry.index(v) + 1:] + ry[:ry.index(v)]
                x_rest = [rename.get(t, t) for t in rx]
                y_rest = [rename.get(t, t) for t in ry]
                order2[w] = tuple(x_rest + [v] + y_rest)
            elif u == v:
                ring = list(emb.at(v))
                ring[ring.index(x)] = w
                ring.remove(y)
                order2[v] = tuple(ring)
            else:
                order2[u] = tuple(rename.get(t, t) for t in emb.at(u))
        emb2 = Embedding(order2)

    return FoldResult(tree2, dec2, emb2, FoldRecord(tree, dec, emb, v, x, y, w))


def unfold(record: FoldRecord) -> Tuple[Tree, Decomposition, Optional[Embedding]]:
    return record.tree, record.dec, record.emb


def find_fold_site(tree: Tree, dec: Decomposition,
                   emb: Embedding) -> Optional[Tuple[str, str, str]]:
    """A vertex v of degree >= 6 with edges vx in part 0 only and vy in part
    1 only; None when the max degree is already <= 5.

    A cyclically consecutive pair is preferred (it lets the drawing realize
    the embedding at v exactly); when a vertex has already been folded its
    merged edges can block every junction, so the fallback is the first
    exclusive part-0 edge and the last exclusive part-1 edge of the ring.
    Both exclusive classes are nonempty at any degree->=6 vertex of a
    covering by two degree-5 subtrees.
    """
    adj = tree.adjacency()
    candidates = sorted(adj, key=lambda u: (-len(adj[u]), u))
    if not candidates or len(adj[candidates[0]]) <= 5:
        return None
    v = candidates[0]
    e1 = {_norm(*tree.edges[e]) for e in dec.parts[0]}
    e2 = {_norm(*tree.edges[e]) for e in dec.parts[1]}

    def only1(u: str) -> bool:
        k = _norm(v, u)
        return k in e1 and k not in e2

    def only2(u: str) -> bool:
        k = _norm(v, u)
        return k in e2 and k not in e1

    ring = emb.at(v)
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        if only2(a) and only1(b):
            return v, b, a
        if only1(a) and only2(b):
            return v, a, b
    xs = [u for u in ring if only1(u)]
    ys = [u for u in ring if only2(u)]
    assert xs and ys, (
        f"degree-{len(adj[v])} vertex {v!r} lacks part-exclusive edges; "
        "covering by two degree-5 subtrees guarantees both")
    return v, xs[0], ys[-1]


# ---------------------------------------------------------------------------
# The complete 5-ary tree and the per-part-injective map into it
# ---------------------------------------------------------------------------

Q_ROOT = "q"


def q_parent(qid: str) -> Optional[str]:
    if qid == Q_ROOT:
        return None
    return qid.rsplit(".", 1)[0]


def q_depth(qid: str) -> int:
    return qid.count(".")


def q_children(qid: str, height: int) -> List[str]:
    """Children of a vertex of the complete 5-ary tree of the given height,
    without materialising the tree: 5 at the root, 4 elsewhere, none at
    depth == height."""
    if q_depth(qid) >= height:
        return []
    fanout = 5 if qid == Q_ROOT else 4
    return [f"{qid}.{i}" for i in range(1, fanout + 1)]


def complete_5ary(height: int) -> Tree:
    """Every non-leaf vertex has degree 5; all leaves at distance ``height``
    from the root."""
    if height < 0:
        raise ValueError("height must be >= 0")
    vertices = [Q_ROOT]
    edges: List[Tuple[str, str]] = []
    frontier = [Q_ROOT]
    while frontier:
        nxt: List[str] = []
        for u in frontier:
            for c in q_children(u, height):
                vertices.append(c)
                edges.append((u, c))
                nxt.append(c)
        frontier = nxt
    return Tree(vertices, edges)


def homomorphism_into_5ary(tree: Tree, dec: Decomposition,
                           start: str) -> Dict[str, str]:
    """Map the tree into the complete 5-ary tree of height ecc(start) so
    that edges of the same part get distinct images at every vertex.

    Because each part is a subtree and its images never backtrack, local
    edge-distinctness makes the map injective on each part's vertices, which
    is exactly what the disc-placement step needs. Assignment is first-fit:
    children of the image in index order, the image's parent slot last;
    different parts reuse slots freely.
    """
    rooted = root_at(tree, start)
    height = rooted.eccentricity()
    idx = {_norm(*e): i for i, e in enumerate(tree.edges)}
    part_of_edge: Dict[int, List[int]] = {}
    for i, part in enumerate(dec.parts):
        for e in part:
            part_of_edge.setdefault(e, []).append(i)

    f: Dict[str, str] = {start: Q_ROOT}
    for v in rooted.order:
        z = f[v]
        slots = q_children(z, height)
        if z != Q_ROOT:
            slots = slots + [q_parent(z)]  # type: ignore[list-item]
        par = rooted.parent[v]
        forbidden: Dict[int, str] = {}
        if par is not None:
            for i in part_of_edge[idx[_norm(par, v)]]:
                forbidden[i] = f[par]
        # child edges at v grouped by part, parts in index order
        by_part: Dict[int, List[str]] = {}
        for c in rooted.children[v]:
            for i in part_of_edge[idx[_norm(v, c)]]:
                by_part.setdefault(i, []).append(c)
        for i in sorted(by_part):
            used: Set[str] = set()
            if i in forbidden:
                used.add(forbidden[i])
            for c in by_part[i]:
                if c in f:
                    continue  # already placed via another part sharing this edge
                slot = next(s for s in slots if s not in used)
                used.add(slot)
                f[c] = slot
    return f
