"""
Temporal affiliation matrix (TAM) rendering.

One horizontal band per node, one column per step. A cell takes the colour of the node's
label, grey when the node is present without a defined label, and stays white when the node
is absent.
"""

import colorsys
import hashlib
from dataclasses import dataclass
from html import escape
from typing import Optional

from src.core.errors import FormatError
from src.core.partition import UNDEFINED, LongitudinalPartition
from src.core.types import DynamicGraph, Label
from src.formats.partition_file import with_presence

UNDEFINED_FILL = "#b0b0b0"
BACKGROUND_FILL = "#ffffff"


@dataclass(frozen=True)
class TamStyle:
    """
    Attributes:
        cell_width (int): Width of one step, in pixels.
        row_height (int): Height of one node band, in pixels.
    """

    cell_width: int = 4
    row_height: int = 4

    def __post_init__(self):
        if self.cell_width < 1 or self.row_height < 1:
            raise ValueError(
                f"Cell sizes must be positive, got {self.cell_width}x{self.row_height}."
            )

    @classmethod
    def from_config(cls, cfg: dict) -> "TamStyle":
        """Build from the `tam` section of params.yaml."""
        return cls(
            cell_width=int(cfg.get("cell_width", cls.cell_width)),
            row_height=int(cfg.get("row_height", cls.row_height)),
        )


def label_color(label: Label) -> str:
    """Fixed colour of a label: hue from a hash of its text, saturated mid-light tones."""
    digest = hashlib.sha1(label.encode("utf-8")).digest()
    hue = int.from_bytes(digest[:2], "big") / 65536
    lightness = 0.45 + 0.15 * digest[2] / 255
    saturation = 0.6 + 0.3 * digest[3] / 255
    r, g, b = colorsys.hls_to_rgb(hue, lightness, saturation)
    return f"#{round(r * 255):02x}{round(g * 255):02x}{round(b * 255):02x}"


class _Svg:
    def __init__(self, width: int, height: int):
        self.parts = [
            '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n',
            f'<svg version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}" '
            'xmlns="http://www.w3.org/2000/svg" shape-rendering="crispEdges">\n',
        ]

    def group_start(self, group_id: str, title: Optional[str] = None):
        self.parts.append(f'<g id="{escape(group_id)}">\n')
        if title is not None:
            self.parts.append(f"<title>{escape(title)}</title>\n")

    def group_end(self):
        self.parts.append("</g>\n")

    def filled_rectangle(self, x: int, y: int, width: int, height: int, fill: str, extra: str = ""):
        extra = f" {extra}" if extra else ""
        self.parts.append(
            f'<rect x="{x}" y="{y}" width="{width}" height="{height}" fill="{fill}"{extra}/>\n'
        )

    def get_svg(self) -> str:
        return "".join(self.parts) + "</svg>\n"


def export_tam(
    partition: LongitudinalPartition,
    graph: Optional[DynamicGraph] = None,
    style: TamStyle = TamStyle(),
) -> str:
    """
    Render a longitudinal partition as an SVG TAM.

    Consecutive cells of a band with the same fill are drawn as one rectangle, so equal
    inputs give byte-identical documents.

    Args:
        partition (LongitudinalPartition): Labels to draw; keys mapped to UNDEFINED are grey.
        graph (DynamicGraph, optional): When given, nodes present in it without a label are
            drawn grey rather than white.
        style (TamStyle): Cell sizes.

    Raises:
        FormatError: If there is nothing to draw.
    """
    if graph is not None:
        partition = with_presence(partition, graph)
    if len(partition) == 0:
        raise FormatError("Cannot draw a TAM of an empty partition.")

    nodes = partition.nodes()
    steps = max(partition.num_steps, len(graph) if graph is not None else 0)
    width, height = steps * style.cell_width, len(nodes) * style.row_height
    svg = _Svg(width, height)
    svg.filled_rectangle(0, 0, width, height, BACKGROUND_FILL)

    legend = sorted(partition.labels())
    svg.group_start("labels", " ".join(f"{label}={label_color(label)}" for label in legend))
    svg.group_end()
    for row, node in enumerate(nodes):
        cells = partition.by_node[node]
        svg.group_start(f"node-{node}", f"node {node}")
        run_start, run_fill = 0, None
        for t in range(steps + 1):
            if t == steps or t not in cells:
                fill = None
            elif cells[t] is UNDEFINED:
                fill = UNDEFINED_FILL
            else:
                fill = label_color(cells[t])
            if fill != run_fill:
                if run_fill is not None:
                    svg.filled_rectangle(
                        run_start * style.cell_width,
                        row * style.row_height,
                        (t - run_start) * style.cell_width,
                        style.row_height,
                        run_fill,
                    )
                run_start, run_fill = t, fill
        svg.group_end()
    return svg.get_svg()
