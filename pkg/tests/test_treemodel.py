"""Tests for trees, rooted orientations, decompositions, embeddings,
folding, and the map into the complete 5-ary tree."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from proxidraw.generate import (gen_covering_instance, gen_partition_instance,
                                six_star_instance)
from proxidraw.treemodel import (Decomposition, Tree, complete_5ary, find_fold_site,
                                 fold, good_embedding, homomorphism_into_5ary,
                                 q_children, q_depth, q_parent, Q_ROOT, root_at,
                                 unfold, validate, validate_decomposition)


def star(n, centre="c", prefix="l"):
    leaves = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Tree([centre] + leaves, [(centre, v) for v in leaves])


# ---------------------------------------------------------------------------
# validate / root_at
# ---------------------------------------------------------------------------

def test_validate_path():
    # [TRIVIAL]
    assert validate(Tree(["a", "b", "c"], [("a", "b"), ("b", "c")])).valid


def test_validate_rejects_cycle():
    # [TRIVIAL] |E| = |V| for a 3-cycle
    rep = validate(Tree(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")]))
    assert not rep.valid


def test_validate_rejects_disconnected():
    # [TRIVIAL] two disjoint edges
    rep = validate(Tree(["a", "b", "c", "d"], [("a", "b"), ("c", "d")]))
    assert not rep.valid


def test_validate_rejects_self_loop_and_duplicate():
    assert not validate(Tree(["a", "b"], [("a", "a")])).valid
    assert not validate(Tree(["a", "b"], [("a", "b"), ("b", "a")])).valid


def test_root_star_at_centre():
    # [TRIVIAL]
    rt = root_at(star(5), "c")
    assert rt.outdeg("c") == 5 and rt.max_outdeg() == 5


def test_root_star_at_leaf():
    # [TRIVIAL] rooting at a leaf drops the centre's outdegree to 4
    rt = root_at(star(5), "l1")
    assert rt.outdeg("l1") == 1 and rt.outdeg("c") == 4


def test_root_path_orientation():
    # [TRIVIAL] a-b-c rooted at a: edges point away from a
    rt = root_at(Tree(["a", "b", "c"], [("a", "b"), ("b", "c")]), "a")
    assert rt.outdeg("a") == 1 and rt.outdeg("b") == 1 and rt.outdeg("c") == 0
    assert rt.depth("c") == 2 and rt.eccentricity() == 2


def test_root_at_unknown_vertex():
    with pytest.raises(Exception):
        root_at(star(3), "nope")


# ---------------------------------------------------------------------------
# validate_decomposition
# ---------------------------------------------------------------------------

def test_partition_of_six_star_into_three_stars():
    # [TRIVIAL] K_{1,6} as two edge-disjoint 3-stars at the centre
    t = star(6)
    dec = Decomposition("partition", [(0, 1, 2), (3, 4, 5)])
    assert validate_decomposition(t, dec, 3, "degree").valid


def test_degree_bound_violation_detected():
    # [TRIVIAL] a degree-7 star is no single degree-5 part
    t = star(7)
    dec = Decomposition("partition", [tuple(range(7))])
    assert not validate_decomposition(t, dec, 5, "degree").valid


def test_six_star_three_covering_is_valid():
    # [PAPER] the three 4-star parts of the 6-star form a degree-4 covering
    inst = six_star_instance()
    rep = validate_decomposition(inst.tree, inst.dec, 4, "degree")
    assert rep.valid
    assert len(inst.dec.parts) == 3
    # every pair of parts shares the centre plus two leaves
    assert all(n > 0 for _, _, n in rep.overlaps)


def test_partition_must_use_each_edge_once():
    t = star(4)
    assert not validate_decomposition(
        t, Decomposition("partition", [(0, 1), (1, 2, 3)]), 5, "degree").valid
    assert not validate_decomposition(
        t, Decomposition("partition", [(0, 1)]), 5, "degree").valid


def test_parts_must_be_connected():
    t = Tree(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")])
    dec = Decomposition("partition", [(0, 2), (1,)])
    assert not validate_decomposition(t, dec, 5, "degree").valid


def test_outdegree_mode_uses_rooting():
    # K_{1,5} is outdegree-4 when rooted at a leaf, not at the centre
    t = star(5)
    dec = Decomposition("partition", [tuple(range(5))])
    assert validate_decomposition(t, dec, 4, "outdegree", "l1").valid
    assert not validate_decomposition(t, dec, 4, "outdegree", "c").valid


# ---------------------------------------------------------------------------
# good_embedding
# ---------------------------------------------------------------------------

def _contiguous(ring, group):
    """Is the subset ``group`` a contiguous arc of the cyclic ``ring``?"""
    n = len(ring)
    marks = [v in group for v in ring]
    if not any(marks) or all(marks):
        return True
    # count rising edges around the cycle
    return sum(1 for i in range(n) if marks[i] and not marks[i - 1]) == 1


def test_good_embedding_groups_in_order():
    # [PAPER] T1-only, then shared, then T2-only around each vertex
    t = star(3)
    dec = Decomposition("covering", [(0, 1), (1, 2)])
    emb = good_embedding(t, [0, 1], [1, 2])
    ring = emb.at("c")
    assert set(ring) == {"l1", "l2", "l3"}
    i1, i2, i3 = ring.index("l1"), ring.index("l2"), ring.index("l3")
    # cyclic order (T1-only, shared, T2-only) = (l1, l2, l3)
    assert (i2 - i1) % 3 == 1 and (i3 - i2) % 3 == 1


def test_good_embedding_all_shared_deterministic():
    # [TRIVIAL] every edge in both parts: the deterministic rule applies
    t = star(4)
    e = tuple(range(4))
    emb1 = good_embedding(t, list(e), list(e))
    emb2 = good_embedding(t, list(e), list(e))
    assert emb1.at("c") == emb2.at("c")
    assert set(emb1.at("c")) == {"l1", "l2", "l3", "l4"}


def test_good_embedding_contiguity_on_coverings():
    # [DERIVED] contiguity predicate on generated two-coverings
    for seed in range(6):
        inst = gen_covering_instance(seed, 24)
        t = inst.tree
        t1, t2 = inst.dec.parts
        emb = good_embedding(t, list(t1), list(t2))
        e1 = {frozenset(t.edges[i]) for i in t1}
        e2 = {frozenset(t.edges[i]) for i in t2}
        for v in t.vertices:
            ring = emb.at(v)
            assert sorted(ring) == sorted(t.adjacency()[v])
            only1 = {u for u in ring if frozenset((u, v)) in e1 - e2}
            shared = {u for u in ring if frozenset((u, v)) in e1 & e2}
            only2 = {u for u in ring if frozenset((u, v)) in e2 - e1}
            for grp in (only1, shared, only2):
                assert _contiguous(ring, grp)


# ---------------------------------------------------------------------------
# fold / unfold / find_fold_site
# ---------------------------------------------------------------------------

def _six_star_two_covering():
    t = star(6)
    dec = Decomposition("covering", [(0, 1, 2, 3, 4), (1, 2, 3, 4, 5)])
    return t, dec


def test_fold_reduces_degree():
    # [PAPER] a degree-6 vertex folds to degree 5; the merged vertex picks
    # up deg(x) + deg(y) - 1 incidences
    t, dec = _six_star_two_covering()
    res = fold(t, "c", "l1", "l6", dec)
    adj = res.tree.adjacency()
    assert len(adj["c"]) == 5
    w = next(v for v in res.tree.vertices if v not in t.vertices)
    assert len(adj[w]) == 1  # both leaves had degree 1
    # the merged edge is in both parts
    widx = next(i for i, e in enumerate(res.tree.edges) if w in e)
    assert widx in res.dec.parts[0] and widx in res.dec.parts[1]
    assert validate(res.tree).valid


def test_fold_unfold_inverse():
    # [TRIVIAL] inverse pair
    t, dec = _six_star_two_covering()
    emb = good_embedding(t, list(dec.parts[0]), list(dec.parts[1]))
    res = fold(t, "c", "l1", "l6", dec, emb)
    t2, dec2, emb2 = unfold(res.record)
    assert t2.edge_set() == t.edge_set()
    assert dec2.parts == dec.parts
    assert all(emb2.at(v) == emb.at(v) for v in t.vertices)


def test_fold_embedding_order_at_merged_vertex():
    # [PAPER] the ring at w is (x's other edges, wv, y's other edges)
    t = Tree(["c", "x", "y", "x1", "x2", "y1"],
             [("c", "x"), ("c", "y"), ("x", "x1"), ("x", "x2"), ("y", "y1")])
    dec = Decomposition("covering", [(0, 2, 3), (1, 4)])
    emb = good_embedding(t, list(dec.parts[0]), list(dec.parts[1]))
    res = fold(t, "c", "x", "y", dec, emb)
    w = next(v for v in res.tree.vertices if v not in t.vertices)
    ring = res.emb.at(w)
    iv = ring.index("c")
    n = len(ring)
    rotated = tuple(ring[(iv + k) % n] for k in range(n))
    # c first, then y's old neighbours, wrapping around to x's
    assert rotated[0] == "c"
    assert set(rotated[1:2]) == {"y1"}
    assert set(rotated[2:]) == {"x1", "x2"}


def test_fold_rejects_bad_classes():
    t, dec = _six_star_two_covering()
    with pytest.raises(Exception):
        fold(t, "c", "l2", "l3", dec)  # both edges shared


def test_find_fold_site_none_at_degree_five():
    # [TRIVIAL]
    t = star(5)
    dec = Decomposition("covering", [(0, 1, 2), (2, 3, 4)])
    emb = good_embedding(t, list(dec.parts[0]), list(dec.parts[1]))
    assert find_fold_site(t, dec, emb) is None


def test_find_fold_site_six_star():
    # [DERIVED] the exclusive leaves of the two 5-stars are returned
    t, dec = _six_star_two_covering()
    emb = good_embedding(t, list(dec.parts[0]), list(dec.parts[1]))
    site = find_fold_site(t, dec, emb)
    assert site is not None
    v, x, y = site
    assert v == "c" and x == "l1" and y == "l6"


def test_find_fold_site_prefers_max_degree():
    # [DERIVED] a degree-8 centre is selected
    t = star(8)
    dec = Decomposition("covering", [(0, 1, 2, 3, 4), (4, 5, 6, 7)])
    emb = good_embedding(t, list(dec.parts[0]), list(dec.parts[1]))
    site = find_fold_site(t, dec, emb)
    assert site is not None and len(t.adjacency()[site[0]]) == 8


# ---------------------------------------------------------------------------
# complete 5-ary tree and the homomorphism into it
# ---------------------------------------------------------------------------

def test_complete_5ary_sizes():
    # [TRIVIAL] height 0; [PAPER] height 1 is K_{1,5}; [DERIVED] 26 at height 2
    assert len(complete_5ary(0).vertices) == 1
    q1 = complete_5ary(1)
    assert len(q1.vertices) == 6 and q1.max_degree() == 5
    q2 = complete_5ary(2)
    assert len(q2.vertices) == 26
    # every non-leaf vertex has degree exactly 5
    adj = q2.adjacency()
    assert all(len(adj[v]) in (1, 5) for v in q2.vertices)


def test_q_identifiers_consistent():
    q = complete_5ary(2)
    assert q_parent(Q_ROOT) is None
    for child in q_children(Q_ROOT, 2):
        assert q_parent(child) == Q_ROOT
        assert q_depth(child) == 1
    assert set(q.vertices) >= set(q_children(Q_ROOT, 2))


def _check_hom(t, dec, start):
    f = homomorphism_into_5ary(t, dec, start)
    height = root_at(t, start).eccentricity()
    q = complete_5ary(max(height, 1))
    qedges = q.edge_set()
    assert f[start] == Q_ROOT
    for u, v in t.edges:
        assert frozenset((f[u], f[v])) in qedges
    for i in range(len(dec.parts)):
        verts = sorted(dec.part_vertices(t, i))
        images = [f[v] for v in verts]
        # injective on each part's vertices
        assert len(set(images)) == len(images)
        part_edge_images = {frozenset((f[u], f[v]))
                            for u, v in dec.part_edges(t, i)}
        assert len(part_edge_images) == len(dec.parts[i])
    return f


def test_homomorphism_trivial_partition_injective():
    # [PAPER] k=1: the whole tree maps injectively
    t = Tree(["a", "b", "c", "d", "e"],
             [("a", "b"), ("b", "c"), ("b", "d"), ("d", "e")])
    dec = Decomposition("partition", [(0, 1, 2, 3)])
    f = _check_hom(t, dec, "a")
    assert len(set(f.values())) == len(t.vertices)


def test_homomorphism_shared_slots_across_parts():
    # [DERIVED] K_{1,10} as two 5-stars: each part's 5 edges map to the 5
    # distinct edges at the scaffold root; parts may share images
    t = star(10)
    dec = Decomposition("partition", [tuple(range(5)), tuple(range(5, 10))])
    f = _check_hom(t, dec, "c")
    images = [f[f"l{i}"] for i in range(1, 11)]
    assert len(set(images)) == 5  # slots reused across the two parts


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_homomorphism_per_part_injectivity_fuzz(seed):
    # [DERIVED] generator sweep: the per-part injectivity invariant holds
    inst = gen_partition_instance(seed, 30, 5, "degree", k=4)
    _check_hom(inst.tree, inst.dec, inst.tree.vertices[0])


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(6, 40))
def test_generator_outputs_validate(seed, n):
    # [DERIVED] every generated decomposition passes validation
    inst = gen_partition_instance(seed, n, 4, "outdegree")
    assert validate(inst.tree).valid
    assert validate_decomposition(inst.tree, inst.dec, 4, "outdegree",
                                  inst.root).valid
    cov = gen_covering_instance(seed, n)
    assert validate_decomposition(cov.tree, cov.dec, 5, "degree").valid
