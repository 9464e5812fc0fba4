"""Splitting a raster into isochromatic layers using a fitted cluster model."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mlscope.errors import DimensionMismatch
from mlscope.isochrome.kmeans import ClusterModel, assign_points
from mlscope.isochrome.raster import ImageRaster

LUMA_WEIGHTS = np.array([0.299, 0.587, 0.114])


@dataclass(frozen=True)
class IsochromaticLayer:
    """One cluster's slice of the image: a boolean per-pixel mask."""

    cluster_index: int
    centroid_color: tuple[float, float, float]
    mask: np.ndarray            # (width*height,) bool, row-major
    pixel_count: int


def extract_layers(
    raster: ImageRaster, model: ClusterModel, reuse_assignments: bool | None = None
) -> list[IsochromaticLayer]:
    """One layer per cluster, ordered by ascending centroid luminance.

    Masks partition the raster: pairwise disjoint, union covers every pixel.
    With reuse_assignments=True the model's stride-1 assignments are used
    directly (DimensionMismatch if their count differs from the pixel
    count); with None, reuse happens only when the counts already match.
    """
    n_pixels = raster.width * raster.height
    if reuse_assignments is None:
        reuse_assignments = len(model.assignments) == n_pixels
    if reuse_assignments:
        if len(model.assignments) != n_pixels:
            raise DimensionMismatch(
                f"{len(model.assignments)} assignments for {n_pixels} pixels"
            )
        assignments = model.assignments
    else:
        assignments = assign_points(model, raster.pixels.astype(np.float64))

    luminance = model.centroids @ LUMA_WEIGHTS
    order = np.argsort(luminance, kind="stable")

    layers = []
    for j in order:
        mask = assignments == j
        r, g, b = model.centroids[j]
        layers.append(
            IsochromaticLayer(
                cluster_index=int(j),
                centroid_color=(float(r), float(g), float(b)),
                mask=mask,
                pixel_count=int(mask.sum()),
            )
        )
    return layers


def model_summary(model: ClusterModel, layers: list[IsochromaticLayer]) -> dict:
    """JSON-ready summary: k, centroids, inertia, per-layer pixel counts."""
    return {
        "k": model.k,
        "centroids": [[float(c) for c in row] for row in model.centroids],
        "inertia": model.inertia,
        "iterations": model.n_iter,
        "layers": [
            {
                "cluster_index": layer.cluster_index,
                "centroid_color": [round(c) for c in layer.centroid_color],
                "pixel_count": layer.pixel_count,
            }
            for layer in layers
        ],
    }
