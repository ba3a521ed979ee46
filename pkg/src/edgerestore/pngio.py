"""8-bit PNG reading and writing.

Bytes map to samples as ``v = byte / 255``; samples map back as
``byte = floor(v * 255 + 0.5)`` (round half up).
"""

from __future__ import annotations

import os
import tempfile

import numpy as np
from PIL import Image, UnidentifiedImageError

from .core import ImageBuffer, as_image

__all__ = ["to_bytes", "from_bytes", "read_png", "write_png", "write_all", "ImageReadError"]


class ImageReadError(OSError):
    pass


def to_bytes(img) -> np.ndarray:
    a = as_image(img).pixels
    return np.floor(a * 255.0 + 0.5).astype(np.uint8)


def from_bytes(b: np.ndarray) -> ImageBuffer:
    return ImageBuffer(np.asarray(b, dtype=np.float64) / 255.0)


def read_png(path) -> ImageBuffer:
    try:
        with Image.open(path) as im:
            im.load()
            if im.mode in ("I", "I;16", "I;16B", "F"):
                raise ImageReadError(f"{path}: only 8-bit images are supported (mode {im.mode})")
            if im.mode not in ("L", "RGB"):
                im = im.convert("L" if im.mode in ("1", "LA") else "RGB")
            return from_bytes(np.asarray(im))
    except (UnidentifiedImageError, OSError, SyntaxError, ValueError) as exc:
        if isinstance(exc, ImageReadError):
            raise
        raise ImageReadError(f"cannot read image {path}: {exc}") from exc


def _encode(img, path):
    b = to_bytes(img)
    mode = "L" if b.shape[2] == 1 else "RGB"
    Image.fromarray(b[:, :, 0] if mode == "L" else b, mode=mode).save(path, format="PNG")


def write_png(img, path) -> None:
    write_all({path: img})


def write_all(outputs: dict) -> None:
    """Write several PNGs so that either all of them appear or none do.

    Each file goes to a temporary name in its target directory first and is
    renamed only after every encode succeeded.
    """
    staged = []
    try:
        for path, img in outputs.items():
            path = os.fspath(path)
            fd, tmp = tempfile.mkstemp(suffix=".png", dir=os.path.dirname(os.path.abspath(path)))
            os.close(fd)
            staged.append((tmp, path))
            _encode(img, tmp)
        for tmp, path in staged:
            os.replace(tmp, path)
    finally:
        for tmp, _ in staged:
            if os.path.exists(tmp):
                os.remove(tmp)
