"""Tests for the five drawing constructions, via the independent verify
oracles (RNG equality, MST equality, non-crossing, angular resolution,
containment and embedding checks)."""

import gmpy2
import pytest
from gmpy2 import mpfr
from hypothesis import given, settings
from hypothesis import strategies as st

from proxidraw.construct import (ConstructionError, Drawing, _slot_sequence,
                                 default_frame, draw_deg5_partition,
                                 draw_degree5, draw_outdeg3_partition,
                                 draw_outdeg4_partition, draw_two_covering)
from proxidraw.formats import emit_drawing
from proxidraw.generate import (gen_covering_instance, gen_degree5_tree,
                                gen_partition_instance)
from proxidraw.geometry import (ConstructionFrame, LensRegion, Point, angle_at,
                                bits, dist, lens_contains, lune_contains)
from proxidraw.proximity import edge_key
from proxidraw.treemodel import Decomposition, Tree, root_at
from proxidraw.verify import (angular_resolution, check_mst_drawing,
                              check_noncrossing, check_rng_drawing,
                              embedding_matches, realized_embedding,
                              subtree_of_part, whole_tree)


def star(n, centre="c", prefix="l"):
    leaves = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Tree([centre] + leaves, [(centre, v) for v in leaves])


def assert_parts_verified(d, tree, dec, mst=True):
    for i in range(len(dec.parts)):
        part = subtree_of_part(tree, dec.parts[i])
        rep = check_rng_drawing(d, part)
        assert rep.passed, f"part {i} RNG mismatch: {rep}"
        if mst:
            mrep = check_mst_drawing(d, part)
            assert mrep.passed, f"part {i} MST mismatch: {mrep}"


# ---------------------------------------------------------------------------
# draw_outdeg4_partition
# ---------------------------------------------------------------------------

def test_part4_single_vertex_at_q():
    # [PAPER] base case: the lone vertex is drawn at the frame's q
    t = root_at(Tree(["a"], []), "a")
    d = draw_outdeg4_partition(t, Decomposition("partition", []))
    fr = default_frame()
    assert d.pos["a"] == fr.q


def test_part4_caterpillar_trivial_partition():
    # [DERIVED] degree-5 caterpillar rooted at a leaf: drawn tree is the
    # RNG and MST of its points, with no crossings
    t = Tree([f"v{i}" for i in range(8)],
             [("v0", "v1"), ("v1", "v2"), ("v2", "v3"), ("v3", "v4"),
              ("v2", "v5"), ("v2", "v6"), ("v3", "v7")])
    rt = root_at(t, "v0")
    dec = Decomposition("partition", [tuple(range(7))])
    d = draw_outdeg4_partition(rt, dec)
    assert_parts_verified(d, t, dec)
    assert check_noncrossing(d).passed


def test_part4_twelve_children_three_parts():
    # [DERIVED] three outdegree-4 stars at the root: 12 children, each part
    # the RNG of its own points
    leaves = [f"u{i}" for i in range(12)]
    t = Tree(["r"] + leaves, [("r", u) for u in leaves])
    rt = root_at(t, "r")
    dec = Decomposition("partition", [tuple(range(0, 4)), tuple(range(4, 8)),
                                      tuple(range(8, 12))])
    d = draw_outdeg4_partition(rt, dec)
    assert_parts_verified(d, t, dec)
    assert check_noncrossing(d).passed


def test_part4_root_in_lens_of_every_vertex_and_anchor():
    # [PAPER] lemma bullet: q lies in lens(x, p) for every non-root vertex x
    inst = gen_partition_instance(5, 30, 4, "outdegree", k=3)
    rt = root_at(inst.tree, inst.root)
    fr = default_frame()
    d = draw_outdeg4_partition(rt, inst.dec, frame=fr)
    with bits(d.precision_bits):
        for v, pt in d.pos.items():
            if v == inst.root:
                continue
            assert lens_contains(LensRegion(pt, fr.p), fr.q)


def test_part4_frame_containment():
    # [DERIVED] the whole drawing stays inside the root frame's lune
    inst = gen_partition_instance(9, 25, 4, "outdegree", k=2)
    rt = root_at(inst.tree, inst.root)
    fr = default_frame()
    d = draw_outdeg4_partition(rt, inst.dec, frame=fr)
    with bits(d.precision_bits):
        lune = fr.lune()
        for v, pt in d.pos.items():
            assert lune_contains(lune, pt)


def test_part4_subtrees_outside_inner_disc():
    # [PAPER] edges at the root end inside disc(q, delta'); everything two or
    # more levels down stays outside it
    inst = gen_partition_instance(11, 25, 4, "outdegree", k=2)
    rt = root_at(inst.tree, inst.root)
    fr = default_frame()
    d = draw_outdeg4_partition(rt, inst.dec, frame=fr)
    with bits(d.precision_bits):
        dp = fr.delta / 2
        for v, pt in d.pos.items():
            dep = rt.depth(v)
            if dep == 1:
                assert dist(pt, fr.q) <= dp
            elif dep >= 2:
                assert dist(pt, fr.q) > dp


def test_part4_rejects_invalid_partition():
    t = root_at(star(5), "c")
    with pytest.raises(ConstructionError):
        draw_outdeg4_partition(t, Decomposition("partition", [tuple(range(5))]))


def test_part4_proof_case_coverage():
    # [DERIVED] on a canonical instance the verifier's pair sweep exercises
    # all four shapes of the correctness argument at least once per shape:
    # root-adjacent, root-nonadjacent, within one child subtree, and across
    # two child subtrees of the same part.
    inst = gen_partition_instance(3, 30, 4, "outdegree", k=3)
    t = inst.tree
    rt = root_at(t, inst.root)
    d = draw_outdeg4_partition(rt, inst.dec)
    counts = {"root-adj": 0, "root-nonadj": 0, "same-subtree": 0,
              "cross-subtree": 0}
    # child-subtree labelling
    top = {}
    for v in t.vertices:
        u = v
        while rt.depth(u) > 1:
            u = next(w for w in t.adjacency()[u] if rt.depth(w) == rt.depth(u) - 1)
        top[v] = u if v != inst.root else None
    for pi in range(len(inst.dec.parts)):
        part = subtree_of_part(t, inst.dec.parts[pi])
        edges = set(part.edges)
        verts = part.vertices
        for i, u in enumerate(verts):
            for w in verts[i + 1:]:
                if inst.root in (u, w):
                    other = w if u == inst.root else u
                    key = "root-adj" if edge_key(u, w) in edges else "root-nonadj"
                    counts[key] += 1
                elif top[u] == top[w]:
                    counts["same-subtree"] += 1
                else:
                    counts["cross-subtree"] += 1
    assert all(c >= 1 for c in counts.values()), counts
    assert_parts_verified(d, t, inst.dec)


# ---------------------------------------------------------------------------
# draw_outdeg3_partition
# ---------------------------------------------------------------------------

def test_part3_slot_sequence_figure_shape():
    # [DERIVED] enumerating the child order for two 3-child parts, two
    # 2-child parts and four 1-child parts gives 14 slots with part 1's
    # children at positions 1, 7 and 13 (1-based)
    degs = {1: 3, 2: 3, 3: 2, 4: 2, 5: 1, 6: 1, 7: 1, 8: 1}
    seq = _slot_sequence(sorted(degs), degs)
    assert len(seq) == 14
    assert [i + 1 for i, (p, _) in enumerate(seq) if p == 1] == [1, 7, 13]
    # first block: every part's first child ordered by part index
    assert [p for p, j in seq[:6]] == [1, 2, 3, 4, 5, 6] and \
        all(j == 1 for _, j in seq[:6])


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=6))
def test_part3_slot_separation_property(part_degs):
    # [PAPER] combinatorial inequality: same-part children are at least
    # (d-1)/3 slots apart in the total order
    degs = {i + 1: dd for i, dd in enumerate(part_degs)}
    seq = _slot_sequence(sorted(degs), degs)
    dtot = len(seq)
    pos = {}
    for idx, (p, j) in enumerate(seq):
        pos.setdefault(p, []).append(idx)
    for p, slots in pos.items():
        for a, b in zip(slots, slots[1:]):
            assert 3 * (b - a) >= dtot - 1


def test_part3_pipeline_with_angular_resolution():
    # [DERIVED] oracles plus the angular-resolution bound on generated inputs
    for seed in (0, 4, 8):
        inst = gen_partition_instance(seed, 28, 3, "outdegree", k=4, max_out=12)
        rt = root_at(inst.tree, inst.root)
        d = draw_outdeg3_partition(rt, inst.dec)
        assert_parts_verified(d, inst.tree, inst.dec)
        assert check_noncrossing(d).passed
        with bits(d.precision_bits):
            bound = gmpy2.const_pi() / max(rt.max_outdeg() - 1, 4)
            assert angular_resolution(d) > bound


def test_part3_rejects_outdeg4_part():
    leaves = [f"u{i}" for i in range(4)]
    t = Tree(["r"] + leaves, [("r", u) for u in leaves])
    rt = root_at(t, "r")
    with pytest.raises(ConstructionError):
        draw_outdeg3_partition(rt, Decomposition("partition", [tuple(range(4))]))


# ---------------------------------------------------------------------------
# draw_degree5
# ---------------------------------------------------------------------------

def test_deg5_five_star_layout():
    # [DERIVED] K_{1,5}: five rays at 72 degrees; 72 > 60 blocks leaf-leaf
    # RNG edges, so the star is exactly the RNG
    t = star(5)
    d = draw_degree5(t)
    assert_parts_verified(d, t, Decomposition("partition", [tuple(range(5))]))
    with bits(d.precision_bits):
        angles = sorted(gmpy2.atan2(d.pos[f"l{i}"].y - d.pos["c"].y,
                                    d.pos[f"l{i}"].x - d.pos["c"].x)
                        for i in range(1, 6))
        two_pi_fifth = 2 * gmpy2.const_pi() / 5
        for a, b in zip(angles, angles[1:]):
            assert abs((b - a) - two_pi_fifth) < mpfr(2) ** -64


def test_deg5_single_edge():
    # [TRIVIAL]
    t = Tree(["a", "b"], [("a", "b")])
    d = draw_degree5(t)
    assert d.pos["a"] != d.pos["b"]
    assert check_rng_drawing(d, whole_tree(t)).passed


def test_deg5_random_trees_rng_and_mst():
    # [DERIVED] rng(drawing) == tree and emst(drawing) == tree
    for seed, n in ((1, 20), (2, 35), (3, 50)):
        inst = gen_degree5_tree(seed, n)
        d = draw_degree5(inst.tree)
        part = whole_tree(inst.tree)
        assert check_rng_drawing(d, part).passed
        assert check_mst_drawing(d, part).passed
        assert check_noncrossing(d).passed


def test_deg5_rejects_degree_six():
    with pytest.raises(ConstructionError):
        draw_degree5(star(6))


def test_deg5_honors_embedding():
    # [DERIVED] when an embedding is supplied the realized clockwise order
    # matches it at every vertex
    from proxidraw.treemodel import good_embedding
    inst = gen_covering_instance(17, 18, max_degree=5)
    t = inst.tree
    if t.max_degree() <= 5:
        emb = good_embedding(t, list(inst.dec.parts[0]), list(inst.dec.parts[1]))
        d = draw_degree5(t, embedding=emb)
        assert embedding_matches(d, emb)


# ---------------------------------------------------------------------------
# draw_deg5_partition
# ---------------------------------------------------------------------------

def test_part5_trivial_partition_is_mst_drawing():
    # [PAPER] k=1 degenerates to a perturbed degree-5 MST drawing of T
    inst = gen_degree5_tree(4, 24)
    n_edges = len(inst.tree.edges)
    dec = Decomposition("partition", [tuple(range(n_edges))])
    d = draw_deg5_partition(inst.tree, dec)
    part = whole_tree(inst.tree)
    assert check_rng_drawing(d, part).passed
    assert check_mst_drawing(d, part).passed


def test_part5_double_five_star():
    # [DERIVED] K_{1,10} as two 5-stars: both parts RNG-verified
    t = star(10)
    dec = Decomposition("partition", [tuple(range(5)), tuple(range(5, 10))])
    d = draw_deg5_partition(t, dec)
    assert_parts_verified(d, t, dec)


def test_part5_generated_instances():
    # [DERIVED] oracle sweep; crossings are permitted and not asserted
    for seed in (0, 1):
        inst = gen_partition_instance(seed, 40, 5, "degree", k=4)
        d = draw_deg5_partition(inst.tree, inst.dec)
        assert_parts_verified(d, inst.tree, inst.dec)


def test_part5_shared_disc_occupancy():
    # [PAPER] vertices of one part never share a scaffold disc: the
    # homomorphism is injective per part, so each part picks at most one
    # point per disc
    from proxidraw.treemodel import homomorphism_into_5ary
    inst = gen_partition_instance(2, 30, 5, "degree", k=3)
    d = draw_deg5_partition(inst.tree, inst.dec)
    f = homomorphism_into_5ary(inst.tree, inst.dec, d.meta["start"])
    for i in range(len(inst.dec.parts)):
        verts = sorted(inst.dec.part_vertices(inst.tree, i))
        assert len({f[v] for v in verts}) == len(verts)


# ---------------------------------------------------------------------------
# draw_two_covering
# ---------------------------------------------------------------------------

def _cover_parts(inst):
    return list(inst.dec.parts[0]), list(inst.dec.parts[1])


def test_cover2_six_star_shape():
    # [DERIVED] degree-6 centre covered by two 5-stars sharing 4 edges
    t = star(6)
    t1, t2 = [0, 1, 2, 3, 4], [1, 2, 3, 4, 5]
    d = draw_two_covering(t, t1, t2)
    for part_ids in (t1, t2):
        part = subtree_of_part(t, part_ids)
        assert check_rng_drawing(d, part).passed
        assert check_mst_drawing(d, part).passed
    assert check_noncrossing(d).passed
    assert embedding_matches(d, d.meta["embedding"])


def test_cover2_degree_nine_centre():
    # [DERIVED] the deepest merge pressure: a degree-9 vertex with exclusive
    # edges of both classes
    t = star(9)
    t1, t2 = [0, 1, 2, 3, 4], [4, 5, 6, 7, 8]
    d = draw_two_covering(t, t1, t2)
    for part_ids in (t1, t2):
        part = subtree_of_part(t, part_ids)
        assert check_rng_drawing(d, part).passed
    assert check_noncrossing(d).passed
    assert embedding_matches(d, d.meta["embedding"])


def test_cover2_two_high_degree_vertices():
    # [DERIVED] two adjacent degree-9 vertices, shared edge between them
    verts = ["a", "b"] + [f"x{i}" for i in range(8)] + [f"y{i}" for i in range(8)]
    edges = [("a", "b")] + [("a", f"x{i}") for i in range(8)] + \
        [("b", f"y{i}") for i in range(8)]
    t = Tree(verts, edges)
    t1 = [0] + list(range(1, 5)) + list(range(9, 13))
    t2 = [0] + list(range(5, 9)) + list(range(13, 17))
    d = draw_two_covering(t, t1, t2)
    for part_ids in (t1, t2):
        part = subtree_of_part(t, part_ids)
        assert check_rng_drawing(d, part).passed
    assert check_noncrossing(d).passed
    assert embedding_matches(d, d.meta["embedding"])


def test_cover2_generated_instances():
    # [DERIVED] pipeline fuzz over the covering generator
    for seed in (0, 1, 2, 3):
        inst = gen_covering_instance(seed, 30)
        t1, t2 = _cover_parts(inst)
        d = draw_two_covering(inst.tree, t1, t2)
        for part_ids in (t1, t2):
            part = subtree_of_part(inst.tree, part_ids)
            assert check_rng_drawing(d, part).passed
            assert check_mst_drawing(d, part).passed
        assert check_noncrossing(d).passed
        assert embedding_matches(d, d.meta["embedding"])


def test_cover2_empty_second_part():
    # [PAPER] T2 empty: identical guarantees to draw_degree5
    t = star(5)
    d = draw_two_covering(t, [0, 1, 2, 3, 4], [])
    assert check_rng_drawing(d, whole_tree(t)).passed
    assert check_mst_drawing(d, whole_tree(t)).passed
    assert check_noncrossing(d).passed


def test_cover2_rejects_degree_six_part():
    t = star(6)
    with pytest.raises(ConstructionError):
        draw_two_covering(t, list(range(6)), [0])


# ---------------------------------------------------------------------------
# determinism and covariance
# ---------------------------------------------------------------------------

def test_byte_identical_reruns():
    # [DERIVED] repeated construction emits byte-identical drawing files
    inst = gen_partition_instance(21, 30, 4, "outdegree", k=3)
    rt = root_at(inst.tree, inst.root)
    b1 = emit_drawing(draw_outdeg4_partition(rt, inst.dec))
    b2 = emit_drawing(draw_outdeg4_partition(rt, inst.dec))
    assert b1 == b2
    cov = gen_covering_instance(21, 25)
    t1, t2 = _cover_parts(cov)
    c1 = emit_drawing(draw_two_covering(cov.tree, t1, t2))
    c2 = emit_drawing(draw_two_covering(cov.tree, t1, t2))
    assert c1 == c2


def test_frame_covariance():
    # [DERIVED] a rigid motion plus uniform scale of the initial frame gives
    # a drawing with the same verification outcome and the same realized
    # cyclic orders (the construction is covariant; reports compare at the
    # edge-set/order level, never coordinates)
    inst = gen_partition_instance(13, 24, 4, "outdegree", k=2)
    rt = root_at(inst.tree, inst.root)
    base = draw_outdeg4_partition(rt, inst.dec)
    with bits(base.precision_bits):
        # rotate by 1 radian, scale by 3, translate by (5, -2)
        c, s = gmpy2.cos(mpfr(1)), gmpy2.sin(mpfr(1))

        def move(pt):
            return Point(3 * (c * pt.x - s * pt.y) + 5,
                         3 * (s * pt.x + c * pt.y) - 2)

        fr0 = default_frame()
        fr = ConstructionFrame(move(fr0.p), move(fr0.q), 3 * fr0.delta)
    moved = draw_outdeg4_partition(rt, inst.dec, frame=fr,
                                   precision=base.precision_bits)
    for i in range(len(inst.dec.parts)):
        part = subtree_of_part(inst.tree, inst.dec.parts[i])
        assert check_rng_drawing(base, part).passed
        assert check_rng_drawing(moved, part).passed
    assert check_noncrossing(base).passed == check_noncrossing(moved).passed
    emb_a = realized_embedding(base)
    emb_b = realized_embedding(moved)
    from proxidraw.verify import cyclic_equal
    for v in inst.tree.vertices:
        assert cyclic_equal(emb_a.at(v), emb_b.at(v))
