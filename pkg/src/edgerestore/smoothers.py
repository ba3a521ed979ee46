"""Local smoothing filters: box, Gaussian, bilateral, guided and side-window box.

All filters take an image (``ImageBuffer`` or array) and a window radius ``r``
and return a new :class:`~edgerestore.core.ImageBuffer` of the same shape.
Neighbourhoods use replicate padding, except the side-window filter whose
windows are clipped to the image.

Every filter runs on data shifted by the per-channel minimum and adds it back
afterwards. That keeps the summed-area tables well conditioned and makes
constant images exact fixed points.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.ndimage import correlate1d

from .core import ImageBuffer, as_image, check_radius, run_rows

__all__ = [
    "SmootherSpec",
    "SMOOTHER_KINDS",
    "integral_image",
    "box_filter",
    "gaussian_kernel",
    "gaussian_filter",
    "bilateral_filter",
    "guided_filter",
    "side_window_box_filter",
    "SIDE_WINDOWS",
]


def _shifted(img):
    a = as_image(img).pixels
    ref = a.min(axis=(0, 1))
    return a - ref, ref


def _finish(out, ref, source=None):
    # Convex filters: keep the output inside the input's per-channel range.
    out = out + ref
    if source is not None:
        np.clip(out, ref, source.max(axis=(0, 1)) + ref, out=out)
    return ImageBuffer(out)


def integral_image(a: np.ndarray) -> np.ndarray:
    """Summed-area table with a leading zero row and column.

    ``S[y, x]`` is the sum of ``a[:y, :x]``; works on 2-D or ``(h, w, c)`` input.
    """
    s = np.zeros((a.shape[0] + 1, a.shape[1] + 1) + a.shape[2:], dtype=np.float64)
    np.cumsum(a, axis=0, out=s[1:, 1:])
    np.cumsum(s[1:, 1:], axis=1, out=s[1:, 1:])
    return s


def _box_mean(a: np.ndarray, r: int) -> np.ndarray:
    h, w = a.shape[:2]
    pad = [(r, r), (r, r)] + [(0, 0)] * (a.ndim - 2)
    s = integral_image(np.pad(a, pad, mode="edge"))
    k = 2 * r + 1
    total = s[k:k + h, k:k + w] - s[:h, k:k + w] - s[k:k + h, :w] + s[:h, :w]
    return total / (k * k)


def box_filter(img, r: int) -> ImageBuffer:
    """Mean over the replicate-padded ``(2r+1)**2`` window, in O(1) per pixel."""
    r = check_radius(r)
    a, ref = _shifted(img)
    return _finish(_box_mean(a, r), ref, a)


def gaussian_kernel(r: int, sigma: float) -> np.ndarray:
    """Normalised 1-D Gaussian taps on ``-r..r``."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    x = np.arange(-r, r + 1, dtype=np.float64)
    k = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return k / k.sum()


def gaussian_filter(img, r: int, sigma: float) -> ImageBuffer:
    """Separable Gaussian blur truncated at ``+-r`` and renormalised."""
    r = check_radius(r)
    k = gaussian_kernel(r, sigma)
    a, ref = _shifted(img)
    out = correlate1d(a, k, axis=0, mode="nearest")
    out = correlate1d(out, k, axis=1, mode="nearest")
    return _finish(out, ref, a)


def bilateral_filter(img, r: int, sigma_s: float, dos: float, workers: int | None = 1) -> ImageBuffer:
    """Brute-force bilateral filter over the replicate-padded window.

    The weight of neighbour ``j`` for pixel ``i`` is
    ``exp(-|p_i - p_j|^2 / (2 sigma_s^2)) * exp(-d(I_i, I_j) / (2 dos))``
    where ``d`` is the (summed over channels) squared sample difference, so
    ``dos`` plays the role of the range variance.
    """
    r = check_radius(r)
    if not sigma_s > 0 or not dos > 0:
        raise ValueError("sigma_s and dos must be positive")
    a, ref = _shifted(img)
    h, w, c = a.shape
    padded = np.pad(a, [(r, r), (r, r), (0, 0)], mode="edge")
    offsets = [(dy, dx) for dy in range(-r, r + 1) for dx in range(-r, r + 1)]
    spatial = [np.exp(-(dy * dy + dx * dx) / (2.0 * sigma_s * sigma_s)) for dy, dx in offsets]
    range_scale = -1.0 / (2.0 * dos)

    def kernel(y0, y1, out):
        center = a[y0:y1]
        acc = np.zeros_like(center)
        wsum = np.zeros(center.shape[:2])
        for (dy, dx), ws in zip(offsets, spatial):
            nb = padded[y0 + r + dy:y1 + r + dy, r + dx:r + dx + w]
            diff = nb - center
            d = diff[:, :, 0] * diff[:, :, 0]
            for k in range(1, c):
                d = d + diff[:, :, k] * diff[:, :, k]
            wt = ws * np.exp(range_scale * d)
            acc += wt[:, :, None] * nb
            wsum += wt
        out[...] = acc / wsum[:, :, None]

    out = run_rows(kernel, np.empty_like(a), workers)
    return _finish(out, ref, a)


def guided_filter(img, r: int, dos: float) -> ImageBuffer:
    """Self-guided filter, channel by channel, with regulariser ``dos``.

    Per window: ``a = var / (var + dos)``, ``b = (1 - a) * mean``; the output
    is ``mean(a) * I + mean(b)`` with box means from summed-area tables.
    """
    r = check_radius(r)
    if not dos > 0:
        raise ValueError("dos must be positive")
    i, ref = _shifted(img)
    mean = _box_mean(i, r)
    var = np.maximum(_box_mean(i * i, r) - mean * mean, 0.0)
    a = var / (var + dos)
    b = (1.0 - a) * mean
    return _finish(_box_mean(a, r) * i + _box_mean(b, r), ref)


# (name, row span, col span) relative to the pixel, inclusive, in units of r.
SIDE_WINDOWS = (
    ("L", (-1, 1), (-1, 0)),
    ("R", (-1, 1), (0, 1)),
    ("U", (-1, 0), (-1, 1)),
    ("D", (0, 1), (-1, 1)),
    ("NW", (-1, 0), (-1, 0)),
    ("NE", (-1, 0), (0, 1)),
    ("SW", (0, 1), (-1, 0)),
    ("SE", (0, 1), (0, 1)),
)


def side_window_box_filter(img, r: int, workers: int | None = 1) -> ImageBuffer:
    """Box filter over the eight side windows, keeping the mean nearest the pixel.

    Windows are clipped to the image bounds. Ties go to the earliest window in
    :data:`SIDE_WINDOWS` order.
    """
    r = check_radius(r)
    a, ref = _shifted(img)
    h, w, c = a.shape
    s = integral_image(a)
    cols = np.arange(w)

    def kernel(y0, y1, out):
        rows = np.arange(y0, y1)[:, None]
        center = a[y0:y1]
        best_d = np.full((y1 - y0, w), np.inf)
        for _, (ry0, ry1), (cx0, cx1) in SIDE_WINDOWS:
            top = np.clip(rows + ry0 * r, 0, h)
            bot = np.clip(rows + ry1 * r + 1, 0, h)
            left = np.clip(cols + cx0 * r, 0, w)[None, :]
            right = np.clip(cols + cx1 * r + 1, 0, w)[None, :]
            total = s[bot, right] - s[top, right] - s[bot, left] + s[top, left]
            mean = total / ((bot - top) * (right - left))[:, :, None]
            diff = mean - center
            d = diff[:, :, 0] * diff[:, :, 0]
            for k in range(1, c):
                d = d + diff[:, :, k] * diff[:, :, k]
            better = d < best_d
            best_d[better] = d[better]
            out[better] = mean[better]

    out = run_rows(kernel, np.empty_like(a), workers)
    return _finish(out, ref, a)


SMOOTHER_KINDS = ("box", "gaussian", "bilateral", "guided", "swbox")

# Parameter defaults used for the smoothing and denoising experiments.
_DEFAULTS = {
    "box": {},
    "gaussian": {"sigma": 2.0},
    "bilateral": {"sigma_s": 3.0, "dos": 0.3},
    "guided": {"dos": 0.1},
    "swbox": {},
}


@dataclass(frozen=True)
class SmootherSpec:
    """A smoothing filter choice plus its parameters.

    Parameters that do not apply to ``kind`` are dropped; missing ones take
    the defaults ``sigma=2`` (Gaussian), ``sigma_s=3, dos=0.3`` (bilateral)
    and ``dos=0.1`` (guided).
    """

    kind: str
    r: int = 3
    sigma: float | None = None
    sigma_s: float | None = None
    dos: float | None = None

    def __post_init__(self):
        kind = self.kind.lower().replace("-", "").replace("_", "")
        kind = {"gau": "gaussian", "bil": "bilateral", "gui": "guided", "sidewindowbox": "swbox"}.get(kind, kind)
        if kind not in _DEFAULTS:
            raise ValueError(f"unknown smoother {self.kind!r}; expected one of {SMOOTHER_KINDS}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "r", check_radius(self.r))
        for name in ("sigma", "sigma_s", "dos"):
            if name not in _DEFAULTS[kind]:
                object.__setattr__(self, name, None)
                continue
            value = getattr(self, name)
            if value is None:
                value = _DEFAULTS[kind][name]
            if not value > 0:
                raise ValueError(f"{name} must be positive, got {value!r}")
            object.__setattr__(self, name, float(value))

    def with_radius(self, r: int) -> "SmootherSpec":
        return replace(self, r=r)

    @property
    def label(self) -> str:
        return {"box": "Box", "gaussian": "Gau", "bilateral": "Bil", "guided": "Gui", "swbox": "S-Box"}[self.kind]

    def __call__(self, img, workers: int | None = 1) -> ImageBuffer:
        if self.kind == "box":
            return box_filter(img, self.r)
        if self.kind == "gaussian":
            return gaussian_filter(img, self.r, self.sigma)
        if self.kind == "bilateral":
            return bilateral_filter(img, self.r, self.sigma_s, self.dos, workers=workers)
        if self.kind == "guided":
            return guided_filter(img, self.r, self.dos)
        return side_window_box_filter(img, self.r, workers=workers)
