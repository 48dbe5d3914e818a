"""
SVG lozenge snapshots of particle configurations

Each lattice site (y, m) with the right parity gets one lozenge: the flat
"top" lozenge when it holds a particle, otherwise a left or right lozenge
depending on whether row m has more particles right of y than row m - 1.

Lozenge vertices live on an integer lattice (u, v) with x = u * sqrt(3)/2
and height = v / 2, so the geometry is exact before it reaches matplotlib.
"""
import io
from pathlib import Path
from typing import List, Optional, Tuple

import matplotlib
from matplotlib.collections import PolyCollection
from matplotlib.figure import Figure

from growth.paths import ParticleConfig
from utils.export import ExportError, PathLike, ensure_parent

HALFSQRT3 = 0.5 * 3 ** 0.5
# inches per lattice unit
UNIT = 0.25
LINE_WIDTH = 0.6
HASH_SALT = 'wallgrowth'

TOP = 'top'
LEFT = 'left'
RIGHT = 'right'

COLORS = {
    TOP: '#e31a1c',
    LEFT: '#ff8000',
    RIGHT: '#3580b3',
}
EDGE_COLOR = '#000000'

_SHAPES = {
    TOP: ((0, 0), (1, 1), (0, 2), (-1, 1)),
    LEFT: ((0, 0), (-1, 1), (-1, -1), (0, -2)),
    RIGHT: ((0, 0), (0, -2), (1, -1), (1, 1)),
}

Vertex = Tuple[int, int]
Lozenge = Tuple[str, Tuple[Vertex, ...]]


def _count_right(row: Tuple[int, ...], y: int) -> int:
    return sum(1 for x in row if x > y)


def classify_sites(config: ParticleConfig, width: Optional[int] = None) -> List[Tuple[int, int, str]]:
    """(y, m, lozenge type) for every site of rows 1..M with 0 <= y <= width."""
    if width is None:
        width = max((max(row) for row in config.rows if row), default=0) + 1
    sites = []
    for m in range(1, config.levels + 1):
        row = config.row(m)
        below = config.row(m - 1) if m > 1 else ()
        occupied = set(row)
        for y in range((m + 1) % 2, width + 1, 2):
            if y in occupied:
                kind = TOP
            elif _count_right(row, y) > _count_right(below, y):
                kind = RIGHT
            else:
                kind = LEFT
            sites.append((y, m, kind))
    return sites


def lozenges(config: ParticleConfig, width: Optional[int] = None) -> List[Lozenge]:
    """(type, four lattice vertices) per site; site (y, m) is anchored at (y + 1, 3m)."""
    shapes = []
    for y, m, kind in classify_sites(config, width):
        u, v = y + 1, 3 * m
        shapes.append((kind, tuple((u + du, v + dv) for du, dv in _SHAPES[kind])))
    return shapes


def _figure(config: ParticleConfig, width: Optional[int]) -> Figure:
    shapes = lozenges(config, width)
    max_u = max((u for _, verts in shapes for u, _ in verts), default=1) + 1
    max_v = 3 * config.levels + 3
    fig = Figure(figsize=(max_u * HALFSQRT3 * UNIT, 0.5 * max_v * UNIT))
    ax = fig.add_axes((0.0, 0.0, 1.0, 1.0))
    ax.set_axis_off()
    ax.set_xlim(0.0, max_u * HALFSQRT3)
    ax.set_ylim(0.0, 0.5 * max_v)
    for kind in (TOP, LEFT, RIGHT):
        polygons = [[(u * HALFSQRT3, 0.5 * v) for u, v in verts]
                    for shape_kind, verts in shapes if shape_kind == kind]
        if polygons:
            ax.add_collection(PolyCollection(polygons, facecolors=COLORS[kind],
                                             edgecolors=EDGE_COLOR, linewidths=LINE_WIDTH))
    return fig


def render_svg(config: ParticleConfig, width: Optional[int] = None) -> str:
    """
    Render a configuration as an SVG document

    Args:
        config: Particle configuration
        width: Largest y drawn; defaults to one past the rightmost particle

    Returns:
        SVG text; identical inputs give identical bytes
    """
    buffer = io.StringIO()
    with matplotlib.rc_context({'svg.hashsalt': HASH_SALT}):
        _figure(config, width).savefig(buffer, format='svg', metadata={'Date': None})
    return buffer.getvalue()


def save_svg(config: ParticleConfig, filename: PathLike, width: Optional[int] = None) -> str:
    path = Path(filename)
    ensure_parent(path)
    text = render_svg(config, width)
    try:
        with open(path, 'w', encoding='utf-8', newline='\n') as handle:
            handle.write(text)
    except OSError as e:
        raise ExportError(path, e.strerror or str(e)) from e
    return str(path)
