"""SVG rendering tests: structural properties of the emitted document."""

import re
import xml.etree.ElementTree as ET

from proxidraw.construct import draw_degree5, draw_outdeg4_partition, draw_two_covering
from proxidraw.formats import Instance
from proxidraw.generate import gen_covering_instance, gen_partition_instance
from proxidraw.render import render_svg
from proxidraw.treemodel import Tree, root_at

SVG_NS = "{http://www.w3.org/2000/svg}"


def _parse(svg_bytes):
    return ET.fromstring(svg_bytes.decode())


def test_two_vertex_drawing():
    # [TRIVIAL] one line, two labelled vertices
    t = Tree(["a", "b"], [("a", "b")])
    d = draw_degree5(t)
    root = _parse(render_svg(d))
    lines = root.findall(f".//{SVG_NS}line")
    assert len(lines) == 1
    verts = [el for el in root.iter() if el.get("data-vertex")]
    assert sorted(el.get("data-vertex") for el in verts) == ["a", "b"]


def test_three_part_colors():
    # [TRIVIAL] a k=3 partition renders with 3 distinct stroke colors
    inst = gen_partition_instance(1, 18, 4, "outdegree", k=3)
    d = draw_outdeg4_partition(root_at(inst.tree, inst.root), inst.dec)
    svg = render_svg(d, inst)
    root = _parse(svg)
    strokes = {el.get("stroke") for el in root.findall(f".//{SVG_NS}line")
               if el.get("stroke")}
    assert len(strokes) >= 3


def test_covering_overlap_styling():
    # [DERIVED] shared edges of a covering are drawn dashed (once per part)
    inst = gen_covering_instance(2, 16)
    d = draw_two_covering(inst.tree, list(inst.dec.parts[0]),
                          list(inst.dec.parts[1]))
    root = _parse(render_svg(d, inst))
    dashed = [el for el in root.findall(f".//{SVG_NS}line")
              if el.get("stroke-dasharray")]
    shared = set(inst.dec.parts[0]) & set(inst.dec.parts[1])
    assert shared and dashed


def test_deep_drawing_has_insets():
    # [DERIVED] a deep recursion shrinks edges by many orders of magnitude,
    # so magnified insets appear
    verts = [f"v{i}" for i in range(12)]
    t = Tree(verts, [(f"v{i}", f"v{i+1}") for i in range(11)])
    d = draw_degree5(t, root="v0")
    root = _parse(render_svg(d))
    insets = [el for el in root.iter() if el.get("data-magnification")]
    assert insets, "expected magnified insets for a deep drawing"
    # magnification labels are powers of ten
    assert all(re.fullmatch(r"1e\d+", el.get("data-magnification"))
               for el in insets)


def test_svg_is_valid_xml_and_covers_vertices_once():
    # [DERIVED] well-formed document referencing every vertex exactly once
    inst = gen_partition_instance(4, 20, 4, "outdegree", k=2)
    d = draw_outdeg4_partition(root_at(inst.tree, inst.root), inst.dec)
    svg = render_svg(d, inst)
    root = _parse(svg)  # raises on malformed XML
    assert root.tag == f"{SVG_NS}svg"
    names = [el.get("data-vertex") for el in root.iter() if el.get("data-vertex")]
    assert sorted(names) == sorted(inst.tree.vertices)
