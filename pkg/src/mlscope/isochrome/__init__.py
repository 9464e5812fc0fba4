"""Isochromatic image deconstruction via k-means over RGB-as-XYZ points."""

from mlscope.isochrome.raster import ImageRaster, decode_image, pixels_to_points, render_layer_png
from mlscope.isochrome.kmeans import ClusterModel, assign_point, inertia, kmeans_fit
from mlscope.isochrome.layers import IsochromaticLayer, extract_layers, model_summary
from mlscope.isochrome.ply import export_point_cloud

__all__ = [
    "ImageRaster",
    "ClusterModel",
    "IsochromaticLayer",
    "decode_image",
    "pixels_to_points",
    "kmeans_fit",
    "assign_point",
    "inertia",
    "extract_layers",
    "model_summary",
    "export_point_cloud",
    "render_layer_png",
]
