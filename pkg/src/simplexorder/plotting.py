"""Rendering of grid classifications to PNG, for dimension index 2.

Points of the simplex project onto the plane through the usual barycentric
embedding: ``(x0, x1, x2) -> x1 * (1, 0) + x2 * (1/2, sqrt(3)/2)``, scaled
by ``1/u``.  Each lattice point is colored by its relation to the reference
point.
"""

from __future__ import annotations

import math
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .core import OrderRelation, SimplexPoint

_COLORS = {
    OrderRelation.LESS: "#1f77b4",
    OrderRelation.GREATER: "#d62728",
    OrderRelation.EQUAL: "#2ca02c",
    OrderRelation.INCOMPARABLE: "#c7c7c7",
}


def render_classification_png(
    rows: Sequence[tuple[SimplexPoint, OrderRelation]],
    reference: SimplexPoint,
    order_label: str,
    path: str,
) -> None:
    """Write a scatter plot of classified lattice points to ``path``."""
    if reference.n != 2:
        raise ValueError("rendering is only defined for three-coordinate points")
    h = math.sqrt(3.0) / 2.0
    fig, ax = plt.subplots(figsize=(6.0, 5.5))
    for rel in (
        OrderRelation.INCOMPARABLE,
        OrderRelation.LESS,
        OrderRelation.GREATER,
        OrderRelation.EQUAL,
    ):
        xs = []
        ys = []
        for point, r in rows:
            if r is not rel:
                continue
            c = [float(v) / float(point.u) for v in point.coords]
            xs.append(c[1] + 0.5 * c[2])
            ys.append(h * c[2])
        if xs:
            ax.scatter(xs, ys, s=4, c=_COLORS[rel], label=rel.value, linewidths=0)
    rc = [float(v) / float(reference.u) for v in reference.coords]
    ax.scatter(
        [rc[1] + 0.5 * rc[2]],
        [h * rc[2]],
        s=60,
        c="black",
        marker="*",
        label="reference",
    )
    ax.set_aspect("equal")
    ax.set_xlim(-0.05, 1.05)
    ax.set_ylim(-0.05, h + 0.05)
    ax.set_title(f"{order_label} classification against the reference point")
    ax.legend(loc="upper right", fontsize=8)
    ax.set_xticks([])
    ax.set_yticks([])
    for side in ("top", "right", "left", "bottom"):
        ax.spines[side].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
