"""Image buffer, border policy, window enumeration and pixel distance.

Everything downstream works on ``(height, width, channels)`` float64 arrays
holding samples in ``[0, 1]``. :class:`ImageBuffer` is the immutable carrier
that the public filters accept and return.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "ImageBuffer",
    "PixelIndex",
    "as_image",
    "window_indices",
    "pixel_distance",
    "replicate_border_sample",
    "check_radius",
    "row_blocks",
    "run_rows",
]


class PixelIndex(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True, eq=False)
class ImageBuffer:
    """Immutable raster of 1 (gray) or 3 (color) channels in ``[0, 1]``.

    ``pixels`` always has shape ``(height, width, channels)``. Samples are
    clamped to ``[0, 1]`` on construction; non-finite samples are rejected.
    """

    pixels: np.ndarray

    def __post_init__(self):
        a = np.array(self.pixels, dtype=np.float64, copy=True)
        if a.ndim == 2:
            a = a[:, :, None]
        if a.ndim != 3 or a.shape[2] not in (1, 3):
            raise ValueError(
                f"expected shape (h, w), (h, w, 1) or (h, w, 3), got {np.shape(self.pixels)}"
            )
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        if not np.all(np.isfinite(a)):
            raise ValueError("image samples must be finite")
        np.clip(a, 0.0, 1.0, out=a)
        a.flags.writeable = False
        object.__setattr__(self, "pixels", a)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def channels(self) -> int:
        return self.pixels.shape[2]

    @property
    def shape(self) -> tuple:
        return self.pixels.shape

    @property
    def samples(self) -> np.ndarray:
        """Row-major, channel-interleaved flat view of the samples."""
        return self.pixels.reshape(-1)

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.pixels
        return self.pixels.astype(dtype)

    def __getitem__(self, index):
        return self.pixels[index]

    def __eq__(self, other):
        if not isinstance(other, ImageBuffer):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.pixels, other.pixels))

    def __repr__(self):
        return f"ImageBuffer({self.height}x{self.width}x{self.channels})"

    def to_array(self) -> np.ndarray:
        """Writable copy; gray images come back as 2-D arrays."""
        a = self.pixels.copy()
        return a[:, :, 0] if self.channels == 1 else a


def as_image(img) -> ImageBuffer:
    if isinstance(img, ImageBuffer):
        return img
    return ImageBuffer(np.asarray(img))


def check_radius(r) -> int:
    if isinstance(r, bool) or int(r) != r or r < 1:
        raise ValueError(f"window radius must be an integer >= 1, got {r!r}")
    return int(r)


def window_indices(center, r: int, width: int, height: int) -> list[PixelIndex]:
    """Pixels of the ``(2r+1)**2`` square around ``center``, clipped to the image.

    No padding: only real pixels are returned, in row-major order.
    """
    row, col = center
    r = check_radius(r)
    if not (0 <= row < height and 0 <= col < width):
        raise ValueError(f"center {center} outside {height}x{width} image")
    return [
        PixelIndex(y, x)
        for y in range(max(0, row - r), min(height - 1, row + r) + 1)
        for x in range(max(0, col - r), min(width - 1, col + r) + 1)
    ]


def pixel_distance(a, b, channels: int | None = None) -> float:
    """Squared difference (gray) or summed squared channel difference (color)."""
    a = np.atleast_1d(np.asarray(a, dtype=np.float64))
    b = np.atleast_1d(np.asarray(b, dtype=np.float64))
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"pixel vectors differ in shape: {a.shape} vs {b.shape}")
    if channels is not None and a.shape[0] != channels:
        raise ValueError(f"expected {channels} channels, got {a.shape[0]}")
    d = 0.0
    for x, y in zip(a.tolist(), b.tolist()):
        d += (x - y) * (x - y)
    return d


def replicate_border_sample(img, row: int, col: int) -> np.ndarray:
    img = as_image(img)
    y = min(max(row, 0), img.height - 1)
    x = min(max(col, 0), img.width - 1)
    return img.pixels[y, x].copy()


def row_blocks(height: int, workers: int) -> list[tuple[int, int]]:
    """Split ``range(height)`` into at most ``workers`` contiguous row blocks."""
    n = max(1, min(workers, height))
    edges = np.linspace(0, height, n + 1).round().astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def resolve_workers(workers: int | None) -> int:
    if workers is None or workers == 0:
        return os.cpu_count() or 1
    if workers < 0:
        raise ValueError("workers must be >= 0")
    return workers


def run_rows(
    kernel: Callable[[int, int, np.ndarray], None],
    out: np.ndarray,
    workers: int | None = 1,
) -> np.ndarray:
    """Fill ``out`` by calling ``kernel(y0, y1, out[y0:y1])`` on disjoint row blocks.

    Each block reads shared inputs only and writes its own rows, so the result
    does not depend on the number of workers.
    """
    workers = resolve_workers(workers)
    blocks = row_blocks(out.shape[0], workers)
    if len(blocks) == 1:
        y0, y1 = blocks[0]
        kernel(y0, y1, out[y0:y1])
        return out
    with ThreadPoolExecutor(max_workers=len(blocks)) as pool:
        futures = [pool.submit(kernel, y0, y1, out[y0:y1]) for y0, y1 in blocks]
        for f in futures:
            f.result()
    return out


def same_geometry(a: ImageBuffer, b: ImageBuffer, what: Sequence[str] = ("first", "second")):
    if a.shape != b.shape:
        raise ValueError(f"{what[0]} image {a.shape} and {what[1]} image {b.shape} differ in shape")
