"""
Certificate figures using Pillow.

Tree edges are drawn bold, complement cycle edges in red, on a circular
layout or, when a plane rotation system is given, on a straight-line
drawing of that embedding.
"""
import logging
import math
from io import BytesIO
from pathlib import Path
from typing import Optional

import networkx as nx
from PIL import Image, ImageDraw, ImageFont

from core.graph import EdgeSet, Graph
from core.types import RotationSystem

_log = logging.getLogger("histlab.render")

# Configuration
CANVAS_SIZE = 800
PADDING = 48
VERTEX_RADIUS = 11
FONT_SIZE = 12
TREE_WIDTH = 5
CYCLE_WIDTH = 3
PLAIN_WIDTH = 2

# Colors (light theme)
BG_COLOR = (255, 255, 255)
TREE_COLOR = (20, 20, 20)
CYCLE_COLOR = (200, 40, 40)
PLAIN_COLOR = (150, 150, 150)
VERTEX_FILL = (240, 240, 240)
LEAF_FILL = (255, 214, 214)
LABEL_COLOR = (20, 20, 20)


def _try_load_font(size: int) -> ImageFont.FreeTypeFont | ImageFont.ImageFont:
    font_paths = [
        "/System/Library/Fonts/Menlo.ttc",
        "/usr/share/fonts/truetype/dejavu/DejaVuSans.ttf",
        "/usr/share/fonts/TTF/DejaVuSans.ttf",
    ]
    for path in font_paths:
        try:
            return ImageFont.truetype(path, size)
        except (IOError, OSError):
            continue
    return ImageFont.load_default()


def _circular_positions(n: int) -> list[tuple[float, float]]:
    if n == 0:
        return []
    return [
        (math.cos(2 * math.pi * v / n - math.pi / 2), math.sin(2 * math.pi * v / n - math.pi / 2))
        for v in range(n)
    ]


def _plane_positions(graph: Graph, rotation: RotationSystem) -> Optional[list[tuple[float, float]]]:
    """Straight-line drawing of the embedding, or None if it is not plane."""
    embedding = nx.PlanarEmbedding()
    embedding.set_data({v: nbrs for v, nbrs in enumerate(rotation.neighbor_orders(graph))})
    try:
        embedding.check_structure()
        pos = nx.combinatorial_embedding_to_pos(embedding)
    except nx.NetworkXException as exc:
        _log.debug("rotation is not a plane embedding, falling back to circle: %s", exc)
        return None
    return [(float(pos[v][0]), float(pos[v][1])) for v in range(graph.n)]


def _to_canvas(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    if not points:
        return []
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    scale = (CANVAS_SIZE - 2 * PADDING) / span
    return [(PADDING + (x - min(xs)) * scale, PADDING + (y - min(ys)) * scale) for x, y in points]


def certificate_to_image(
    graph: Graph,
    tree_edges: Optional[EdgeSet] = None,
    rotation: Optional[RotationSystem] = None,
) -> BytesIO:
    """PNG of the graph with the certificate highlighted, in a buffer."""
    points = _plane_positions(graph, rotation) if rotation is not None else None
    coords = _to_canvas(points or _circular_positions(graph.n))

    img = Image.new("RGB", (CANVAS_SIZE, CANVAS_SIZE), BG_COLOR)
    draw = ImageDraw.Draw(img, "RGBA")
    font = _try_load_font(FONT_SIZE)

    tree_degree = tree_edges.degrees(graph) if tree_edges is not None else [0] * graph.n
    for idx, (u, v) in enumerate(graph.edges):
        if tree_edges is None:
            color, width = PLAIN_COLOR, PLAIN_WIDTH
        elif idx in tree_edges:
            color, width = TREE_COLOR, TREE_WIDTH
        else:
            color, width = CYCLE_COLOR, CYCLE_WIDTH
        draw.line([coords[u], coords[v]], fill=color, width=width)

    for v, (x, y) in enumerate(coords):
        fill = LEAF_FILL if tree_degree[v] == 1 else VERTEX_FILL
        draw.ellipse(
            [x - VERTEX_RADIUS, y - VERTEX_RADIUS, x + VERTEX_RADIUS, y + VERTEX_RADIUS],
            fill=fill, outline=TREE_COLOR, width=1,
        )
        label = str(v)
        draw.text((x - 3.5 * len(label), y - FONT_SIZE / 2), label, fill=LABEL_COLOR, font=font)

    buffer = BytesIO()
    img.save(buffer, format="PNG", optimize=True)
    buffer.seek(0)
    return buffer


def render_certificate(
    graph: Graph,
    tree_edges: Optional[EdgeSet],
    path: Path,
    rotation: Optional[RotationSystem] = None,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(certificate_to_image(graph, tree_edges, rotation).getvalue())
    _log.info("rendered n=%d to %s", graph.n, path)
    return path
