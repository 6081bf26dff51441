"""SVG 1.1 rendering of drawings.

The main viewport auto-fits the whole drawing. Because the recursive
constructions shrink geometry exponentially, a column of zoom insets is
added when the spread between the drawing's extent and its shortest edge
exceeds two orders of magnitude: inset i magnifies the neighbourhood of the
shortest edge by 100^i, so the number of insets grows logarithmically with
the depth of the recursion.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import Dict, List, Optional, Tuple

from gmpy2 import mpfr

from .construct import Drawing
from .formats import Instance
from .geometry import Point, bits, dist

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd",
           "#ff7f0e", "#17becf", "#8c564b", "#e377c2"]

MAIN_SIZE = 640.0
INSET_SIZE = 150.0
MARGIN = 24.0
MAX_INSETS = 6


def _part_colors(edge_parts: Dict[int, List[int]]) -> Dict[int, str]:
    parts = sorted({p for ps in edge_parts.values() for p in ps})
    return {p: PALETTE[i % len(PALETTE)] for i, p in enumerate(parts)}


def _edge_parts(drawing: Drawing, inst: Optional[Instance]) -> Dict[int, List[int]]:
    out: Dict[int, List[int]] = {i: [] for i in range(len(drawing.tree.edges))}
    if inst is not None and inst.dec is not None:
        for p, part in enumerate(inst.dec.parts):
            for e in part:
                out[e].append(p)
    for e, ps in out.items():
        if not ps:
            ps.append(0)
    return out


class _View:
    """Maps a world window (mpfr) onto a pixel square; the subtraction from
    the window centre happens at full precision, so deeply nested geometry
    survives the conversion to float."""

    def __init__(self, centre: Point, half: mpfr, size: float, ox: float, oy: float):
        self.centre = centre
        self.half = half
        self.size = size
        self.ox = ox
        self.oy = oy

    def to_px(self, p: Point) -> Tuple[float, float]:
        sx = float((p.x - self.centre.x) / self.half)
        sy = float((p.y - self.centre.y) / self.half)
        return (self.ox + self.size / 2 + sx * self.size / 2,
                self.oy + self.size / 2 - sy * self.size / 2)

    def contains(self, p: Point) -> bool:
        return (abs(p.x - self.centre.x) <= self.half
                and abs(p.y - self.centre.y) <= self.half)


def _draw_edges(g: ET.Element, view: _View, drawing: Drawing,
                edge_parts: Dict[int, List[int]], colors: Dict[int, str],
                width: float) -> None:
    pos = drawing.pos
    for e, (u, v) in enumerate(drawing.tree.edges):
        if not (view.contains(pos[u]) or view.contains(pos[v])):
            continue
        x1, y1 = view.to_px(pos[u])
        x2, y2 = view.to_px(pos[v])
        ps = edge_parts[e]
        for j, p in enumerate(ps):
            attrs = {"x1": f"{x1:.3f}", "y1": f"{y1:.3f}",
                     "x2": f"{x2:.3f}", "y2": f"{y2:.3f}",
                     "stroke": colors.get(p, PALETTE[0]),
                     "stroke-width": f"{width:.2f}"}
            if len(ps) > 1:
                # blended dash: each covering part gets an interleaved phase
                dash = 6.0
                attrs["stroke-dasharray"] = f"{dash} {dash * (len(ps) - 1)}"
                attrs["stroke-dashoffset"] = f"{dash * j}"
            ET.SubElement(g, "line", attrs)


def _bounding(drawing: Drawing) -> Tuple[Point, mpfr]:
    xs = [p.x for p in drawing.pos.values()]
    ys = [p.y for p in drawing.pos.values()]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    half = max(max(xs) - min(xs), max(ys) - min(ys), mpfr("1e-30")) / 2
    return Point(cx, cy), half * mpfr("1.05")


def _shortest_edge(drawing: Drawing) -> Optional[Tuple[str, str, mpfr]]:
    best = None
    for u, v in drawing.tree.edges:
        d = dist(drawing.pos[u], drawing.pos[v])
        if best is None or d < best[2]:
            best = (u, v, d)
    return best


def render_svg(drawing: Drawing, inst: Optional[Instance] = None,
               overlay_lens: Optional[Tuple[str, str]] = None) -> bytes:
    """SVG document: one line per edge (stroke per part, covering overlaps
    dashed in alternation), one labelled circle per vertex, optional lens
    overlay for a vertex pair, zoom insets for deep constructions."""
    with bits(drawing.precision_bits):
        centre, half = _bounding(drawing)
        edge_parts = _edge_parts(drawing, inst)
        colors = _part_colors(edge_parts)

        short = _shortest_edge(drawing)
        insets: List[_View] = []
        if short is not None and short[2] > 0:
            ratio = float(2 * half / short[2])
            import math
            levels = min(MAX_INSETS, max(0, int(math.log10(max(ratio, 1.0)) / 2)))
            u, v, _ = short
            mid = Point((drawing.pos[u].x + drawing.pos[v].x) / 2,
                        (drawing.pos[u].y + drawing.pos[v].y) / 2)
            for i in range(1, levels + 1):
                insets.append(_View(mid, half / mpfr(100) ** i, INSET_SIZE,
                                    MAIN_SIZE + 2 * MARGIN,
                                    MARGIN + (i - 1) * (INSET_SIZE + MARGIN)))

        width = MAIN_SIZE + 2 * MARGIN + ((INSET_SIZE + 2 * MARGIN) if insets else 0)
        height = max(MAIN_SIZE + 2 * MARGIN,
                     MARGIN + len(insets) * (INSET_SIZE + MARGIN))
        svg = ET.Element("svg", {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": f"{width:.0f}", "height": f"{height:.0f}",
            "viewBox": f"0 0 {width:.0f} {height:.0f}",
        })
        main = _View(centre, half, MAIN_SIZE, MARGIN, MARGIN)

        if overlay_lens is not None:
            u, v = overlay_lens
            if u not in drawing.pos or v not in drawing.pos:
                raise KeyError(f"overlay pair ({u!r},{v!r}) not in drawing")
            r = dist(drawing.pos[u], drawing.pos[v])
            og = ET.SubElement(svg, "g", {"id": "lens-overlay"})
            for w in (u, v):
                cx, cy = main.to_px(drawing.pos[w])
                rpx = float(r / half) * MAIN_SIZE / 2
                ET.SubElement(og, "circle", {
                    "cx": f"{cx:.3f}", "cy": f"{cy:.3f}", "r": f"{rpx:.3f}",
                    "fill": "#ffd700", "fill-opacity": "0.15",
                    "stroke": "#b8860b", "stroke-width": "0.5"})

        eg = ET.SubElement(svg, "g", {"id": "edges"})
        _draw_edges(eg, main, drawing, edge_parts, colors, 1.5)

        vg = ET.SubElement(svg, "g", {"id": "vertices"})
        for vtx in drawing.tree.vertices:
            cx, cy = main.to_px(drawing.pos[vtx])
            ET.SubElement(vg, "circle", {
                "cx": f"{cx:.3f}", "cy": f"{cy:.3f}", "r": "3",
                "fill": "#ffffff", "stroke": "#333333", "stroke-width": "1",
                "data-vertex": vtx})
            label = ET.SubElement(vg, "text", {
                "x": f"{cx + 4:.3f}", "y": f"{cy - 4:.3f}", "font-size": "9",
                "font-family": "sans-serif", "fill": "#333333"})
            label.text = vtx

        for i, iv in enumerate(insets):
            ig = ET.SubElement(svg, "g", {"id": f"inset-{i + 1}",
                                          "data-magnification": f"1e{2 * (i + 1)}"})
            ET.SubElement(ig, "rect", {
                "x": f"{iv.ox:.1f}", "y": f"{iv.oy:.1f}",
                "width": f"{iv.size:.0f}", "height": f"{iv.size:.0f}",
                "fill": "none", "stroke": "#999999", "stroke-width": "1"})
            _draw_edges(ig, iv, drawing, edge_parts, colors, 1.0)
            for vtx in drawing.tree.vertices:
                if iv.contains(drawing.pos[vtx]):
                    cx, cy = iv.to_px(drawing.pos[vtx])
                    ET.SubElement(ig, "circle", {
                        "cx": f"{cx:.3f}", "cy": f"{cy:.3f}", "r": "2",
                        "fill": "#ffffff", "stroke": "#333333",
                        "stroke-width": "0.8"})

        return ET.tostring(svg, encoding="utf-8", xml_declaration=True)
