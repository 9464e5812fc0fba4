"""ASCII PLY export of clustered color points."""

from __future__ import annotations

import numpy as np

from mlscope.isochrome.kmeans import ClusterModel

_HEADER = """ply
format ascii 1.0
element vertex {count}
property float x
property float y
property float z
property uchar red
property uchar green
property uchar blue
end_header
"""


def export_point_cloud(points: np.ndarray, model: ClusterModel) -> str:
    """One vertex per point at its color-cube coordinates, painted with the
    assigned centroid color (rounded to the nearest channel integer)."""
    points = np.asarray(points, dtype=np.float64)
    colors = np.clip(np.rint(model.centroids), 0, 255).astype(int)
    lines = [_HEADER.format(count=len(points))]
    for p, j in zip(points, model.assignments):
        r, g, b = colors[j]
        lines.append(f"{p[0]:g} {p[1]:g} {p[2]:g} {r} {g} {b}\n")
    return "".join(lines)
