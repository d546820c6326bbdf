"""
Minimal SVG writer: rectangles, Bézier bands, lines, circles and labels
"""
from pathlib import Path
from typing import Optional

from lxml import etree

SVG_NS = "http://www.w3.org/2000/svg"


def fmt(value: float) -> str:
    """Fixed two-decimal coordinates for byte-stable output"""
    text = f"{value:.2f}"
    return "0.00" if text == "-0.00" else text


class SvgCanvas:
    """Accumulates shapes and serializes them as one SVG document"""

    def __init__(self, width: float, height: float, title: Optional[str] = None):
        self.root = etree.Element(
            "svg", nsmap={None: SVG_NS},
            width=fmt(width), height=fmt(height), viewBox=f"0 0 {fmt(width)} {fmt(height)}",
        )
        if title:
            etree.SubElement(self.root, "title").text = title
        self.edges = etree.SubElement(self.root, "g", id="edges")
        self.shapes = etree.SubElement(self.root, "g", id="shapes")
        self.labels = etree.SubElement(self.root, "g", id="labels")

    def rect(self, x: float, y: float, width: float, height: float, fill: str, title: Optional[str] = None) -> None:
        node = etree.SubElement(
            self.shapes, "rect", x=fmt(x), y=fmt(y), width=fmt(width), height=fmt(height), fill=fill,
        )
        if title:
            etree.SubElement(node, "title").text = title

    def band(self, x0: float, y0: float, x1: float, y1: float, width: float, fill: str, opacity: float = 0.6) -> None:
        """Vertical spline band of constant width from (x0, y0) to (x1, y1)"""
        ym = (y0 + y1) / 2
        d = (
            f"M{fmt(x0)},{fmt(y0)} C{fmt(x0)},{fmt(ym)} {fmt(x1)},{fmt(ym)} {fmt(x1)},{fmt(y1)} "
            f"L{fmt(x1 + width)},{fmt(y1)} C{fmt(x1 + width)},{fmt(ym)} {fmt(x0 + width)},{fmt(ym)} "
            f"{fmt(x0 + width)},{fmt(y0)} Z"
        )
        etree.SubElement(self.edges, "path", d=d, fill=fill, attrib={"fill-opacity": fmt(opacity)})

    def line(self, x0: float, y0: float, x1: float, y1: float, opacity: float, stroke: str = "#555555") -> None:
        etree.SubElement(
            self.edges, "line", x1=fmt(x0), y1=fmt(y0), x2=fmt(x1), y2=fmt(y1), stroke=stroke,
            attrib={"stroke-opacity": fmt(opacity)},
        )

    def circle(self, x: float, y: float, radius: float, fill: str, title: Optional[str] = None) -> None:
        node = etree.SubElement(self.shapes, "circle", cx=fmt(x), cy=fmt(y), r=fmt(radius), fill=fill)
        if title:
            etree.SubElement(node, "title").text = title

    def text(self, x: float, y: float, content: str, size: int = 10) -> None:
        node = etree.SubElement(
            self.labels, "text", x=fmt(x), y=fmt(y), attrib={"font-size": str(size), "font-family": "sans-serif"},
        )
        node.text = content

    def tostring(self) -> bytes:
        return etree.tostring(self.root, xml_declaration=True, encoding="UTF-8", pretty_print=True)

    def write(self, path: str | Path) -> None:
        Path(path).write_bytes(self.tostring())
