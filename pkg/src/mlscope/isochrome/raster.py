"""Image decoding and pixel-to-point conversion.

A raster's pixels double as a 3D dataset: each (r, g, b) triple is read as
an (x, y, z) coordinate in the [0, 255] color cube.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np
from PIL import Image, UnidentifiedImageError

from mlscope.errors import DecodeError, InvalidStride, UnsupportedFormat

ACCEPTED_FORMATS = ("PNG", "JPEG")


@dataclass(frozen=True)
class ImageRaster:
    """Decoded RGB image: ``pixels`` is (width*height, 3) uint8, row-major."""

    width: int
    height: int
    pixels: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("raster dimensions must be >= 1")
        px = np.asarray(self.pixels, dtype=np.uint8)
        if px.shape != (self.width * self.height, 3):
            raise ValueError(
                f"expected {self.width * self.height} rgb triples, got shape {px.shape}"
            )
        object.__setattr__(self, "pixels", px)

    def pixel_at(self, x: int, y: int) -> tuple[int, int, int]:
        r, g, b = self.pixels[y * self.width + x]
        return int(r), int(g), int(b)


def decode_image(data: bytes) -> ImageRaster:
    """Decode PNG or JPEG bytes into an ImageRaster; alpha is discarded."""
    try:
        img = Image.open(io.BytesIO(data))
        img.load()
    except UnidentifiedImageError as exc:
        raise DecodeError(f"not a decodable image: {exc}") from exc
    except (OSError, ValueError, SyntaxError) as exc:
        raise DecodeError(f"malformed or truncated image: {exc}") from exc
    if img.format not in ACCEPTED_FORMATS:
        raise UnsupportedFormat(f"expected PNG or JPEG, got {img.format}")
    rgb = img.convert("RGB")
    arr = np.asarray(rgb, dtype=np.uint8).reshape(-1, 3)
    return ImageRaster(width=rgb.width, height=rgb.height, pixels=arr)


def pixels_to_points(raster: ImageRaster, stride: int = 1) -> np.ndarray:
    """Sample pixels every `stride` rows/columns as float (n, 3) color points.

    Row-major over the sampled grid; stride 1 yields every pixel.
    """
    if stride < 1:
        raise InvalidStride(f"stride must be >= 1, got {stride}")
    grid = raster.pixels.reshape(raster.height, raster.width, 3)
    sampled = grid[::stride, ::stride, :]
    return sampled.reshape(-1, 3).astype(np.float64)


def stride_for_budget(width: int, height: int, max_points: int = 65536) -> int:
    """Smallest stride whose sampled point count stays within the budget."""
    stride = 1
    while -(-width // stride) * -(-height // stride) > max_points:
        stride += 1
    return stride


def render_layer_png(raster: ImageRaster, mask: np.ndarray) -> bytes:
    """Render one layer as PNG: member pixels keep their color, rest transparent."""
    mask = np.asarray(mask, dtype=bool).reshape(-1)
    rgba = np.zeros((raster.height * raster.width, 4), dtype=np.uint8)
    rgba[mask, :3] = raster.pixels[mask]
    rgba[mask, 3] = 255
    img = Image.fromarray(rgba.reshape(raster.height, raster.width, 4), mode="RGBA")
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()
