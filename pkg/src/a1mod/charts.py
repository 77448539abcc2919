"""ASCII and SVG chart rendering.

Two chart kinds:

* tower charts — stems on the horizontal axis, homological degree s on the
  vertical axis, infinite h0-towers drawn as vertical runs capped with an
  arrowhead;
* spectral-sequence pages — one marker per class, marker shape keyed to the
  filtration sigma, d2 differentials drawn as arrows of slope
  (stem - 1, s + 1).

ASCII output is line-stable; SVG output is well-formed XML.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple
from xml.etree import ElementTree as ET

__all__ = ["towers_ascii", "towers_svg", "page_ascii", "page_svg"]

_TOWER_HEIGHT = 6
_MARKERS = "o#^*%@"  # ascii marker per sigma/2 (cycled)


def _marker(sigma: int) -> str:
    return _MARKERS[(sigma // 2) % len(_MARKERS)]


# ---------------------------------------------------------------------------
# tower charts


def towers_ascii(counts: Dict[int, int], max_stem: int) -> str:
    """Render h0-tower counts per stem; each tower is a vertical run of '|'
    topped with '^'."""
    width = max_stem + 1
    grid = [[" "] * (3 * width) for _ in range(_TOWER_HEIGHT)]
    for stem in range(width):
        n = counts.get(stem, 0)
        for i in range(n):
            col = 3 * stem + 1 + (i if n > 1 else 0)
            col = min(col, 3 * stem + 2)
            for row in range(1, _TOWER_HEIGHT):
                grid[row][col] = "|"
            grid[0][col] = "^"
    lines = ["".join(row).rstrip() for row in grid]
    lines.append("-" * (3 * width))
    axis = "".join(f"{stem:<3d}" for stem in range(width)).rstrip()
    lines.append(axis)
    lines.append("stem ->")
    return "\n".join(lines) + "\n"


def towers_svg(counts: Dict[int, int], max_stem: int) -> str:
    cell, pad, height = 40, 30, 200
    w = pad * 2 + cell * (max_stem + 1)
    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg",
                     width=str(w), height=str(height + 2 * pad))
    ET.SubElement(svg, "line", x1=str(pad), y1=str(height + pad),
                  x2=str(w - pad), y2=str(height + pad), stroke="black")
    for stem in range(max_stem + 1):
        x = pad + cell * stem + cell // 2
        t = ET.SubElement(svg, "text", x=str(x), y=str(height + pad + 18))
        t.set("text-anchor", "middle")
        t.text = str(stem)
        n = counts.get(stem, 0)
        for i in range(n):
            xi = x + (i - (n - 1) / 2) * 8
            y0, y1 = height + pad - 6, pad + 10
            ET.SubElement(svg, "line", x1=str(xi), y1=str(y0),
                          x2=str(xi), y2=str(y1), stroke="black")
            ET.SubElement(
                svg, "polygon",
                points=f"{xi - 4},{y1 + 8} {xi + 4},{y1 + 8} {xi},{y1}",
                fill="black")
    return ET.tostring(svg, encoding="unicode")


# ---------------------------------------------------------------------------
# spectral-sequence pages

Class = Tuple[int, int, str]          # (stem, sigma, label)
Arrow = Tuple[int, int, int, int]     # (stem, sigma) -> (stem', sigma')


def page_ascii(classes: Sequence[Class], arrows: Sequence[Arrow] = ()) -> str:
    """One marker per class at (stem, sigma); marker shape keyed to sigma.
    Arrows are listed below the grid."""
    if not classes:
        return "(empty page)\n"
    max_stem = max(c[0] for c in classes)
    max_sigma = max(c[1] for c in classes)
    rows: List[List[str]] = [[" "] * (3 * (max_stem + 1))
                             for _ in range(max_sigma + 1)]
    for stem, sigma, _ in classes:
        col = 3 * stem + 1
        cur = rows[sigma][col]
        rows[sigma][col] = _marker(sigma) if cur == " " else "+"
    lines = []
    for sigma in range(max_sigma, -1, -1):
        lines.append(f"{sigma:>3d} |" + "".join(rows[sigma]).rstrip())
    lines.append("    +" + "-" * (3 * (max_stem + 1)))
    axis = "".join(f"{stem:<3d}" for stem in range(max_stem + 1)).rstrip()
    lines.append("     " + axis)
    lines.append("     stem ->   (vertical: sigma)")
    for a, b, c, d in arrows:
        lines.append(f"d2: (stem {a}, sigma {b}) -> (stem {c}, sigma {d})")
    return "\n".join(lines) + "\n"


def page_svg(classes: Sequence[Class], arrows: Sequence[Arrow] = ()) -> str:
    cell, pad = 40, 30
    max_stem = max((c[0] for c in classes), default=0)
    max_sigma = max((c[1] for c in classes), default=0)
    w = 2 * pad + cell * (max_stem + 1)
    h = 2 * pad + cell * (max_sigma + 1)

    def xy(stem: int, sigma: int) -> Tuple[float, float]:
        return (pad + cell * stem + cell / 2,
                h - pad - cell * sigma - cell / 2)

    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg",
                     width=str(w), height=str(h))
    for stem, sigma, label in classes:
        x, y = xy(stem, sigma)
        shape = (sigma // 2) % 3
        if shape == 0:
            el = ET.SubElement(svg, "circle", cx=str(x), cy=str(y), r="5")
        elif shape == 1:
            el = ET.SubElement(svg, "rect", x=str(x - 5), y=str(y - 5),
                               width="10", height="10")
        else:
            el = ET.SubElement(
                svg, "polygon",
                points=f"{x},{y - 6} {x - 6},{y + 5} {x + 6},{y + 5}")
        el.set("fill", "black")
        tt = ET.SubElement(el, "title")
        tt.text = label
    for a, b, c, d in arrows:
        x0, y0 = xy(a, b)
        x1, y1 = xy(c, d)
        ET.SubElement(svg, "line", x1=str(x0), y1=str(y0),
                      x2=str(x1), y2=str(y1), stroke="red")
        ET.SubElement(
            svg, "polygon",
            points=f"{x1},{y1} {x1 + 8},{y1 + 2} {x1 + 4},{y1 + 8}",
            fill="red")
    for stem in range(max_stem + 1):
        t = ET.SubElement(svg, "text", x=str(xy(stem, 0)[0]),
                          y=str(h - pad + 18))
        t.set("text-anchor", "middle")
        t.text = str(stem)
    return ET.tostring(svg, encoding="unicode")
