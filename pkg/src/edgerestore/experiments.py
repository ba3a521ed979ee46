"""Synthetic stress charts, noise, detail enhancement and error metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ImageBuffer, as_image, same_geometry

__all__ = [
    "ChartSpec",
    "RegionMasks",
    "NoiseSpec",
    "gen_chart",
    "add_noise",
    "enhance",
    "region_mse",
    "mse",
    "psnr",
    "chart_errors",
]


@dataclass(frozen=True)
class ChartSpec:
    """Geometry of the edge/noise chart.

    The left half holds full-height vertical stripes of ``stripe_width``
    alternating foreground/background (foreground first); only whole stripes
    are drawn. The right half is background with square ``patch_width``
    patches on a grid of pitch ``patch_spacing`` (default three patch widths),
    inset by half the gap between patches.
    """

    width: int = 128
    height: int = 128
    stripe_width: int = 5
    patch_width: int = 4
    patch_spacing: int | None = None
    foreground: float = 1.0
    background: float = 0.0
    noise_patches: bool = True

    def __post_init__(self):
        if self.patch_spacing is None:
            object.__setattr__(self, "patch_spacing", 3 * self.patch_width)
        if self.width < 2 or self.height < 1:
            raise ValueError("chart must be at least 2 pixels wide")
        if self.stripe_width < 1 or self.patch_width < 1:
            raise ValueError("stripe_width and patch_width must be >= 1")
        if self.patch_spacing < 3 * self.patch_width:
            raise ValueError("patch_spacing must be at least 3 * patch_width")
        if self.stripe_width > self.split:
            raise ValueError(f"a {self.stripe_width}-px stripe does not fit in the {self.split}-px left half")
        if self.noise_patches and not self.patch_origins():
            raise ValueError("no noise patch fits in the right half")
        for v in (self.foreground, self.background):
            if not 0.0 <= v <= 1.0:
                raise ValueError("foreground/background must lie in [0, 1]")

    @property
    def split(self) -> int:
        return self.width // 2

    def patch_origins(self) -> list[tuple[int, int]]:
        if not self.noise_patches:
            return []
        inset = (self.patch_spacing - self.patch_width) // 2
        ys = range(inset, self.height - inset - self.patch_width + 1, self.patch_spacing)
        xs = range(self.split + inset, self.width - inset - self.patch_width + 1, self.patch_spacing)
        return [(y, x) for y in ys for x in xs]


@dataclass(frozen=True, eq=False)
class RegionMasks:
    edge: np.ndarray
    noise: np.ndarray
    background: np.ndarray

    def __iter__(self):
        return iter((self.edge, self.noise, self.background))


def gen_chart(spec: ChartSpec = ChartSpec()) -> tuple[ImageBuffer, ImageBuffer, RegionMasks]:
    """Return ``(noisy, clean, masks)`` for ``spec``.

    ``clean`` is ``noisy`` with the patches removed. The edge mask covers the
    whole striped band (both stripe colours), the noise mask the patches and
    the background mask everything else.
    """
    h, w = spec.height, spec.width
    clean = np.full((h, w), spec.background)
    edge = np.zeros((h, w), dtype=bool)
    noise = np.zeros((h, w), dtype=bool)

    n_stripes = spec.split // spec.stripe_width
    band = n_stripes * spec.stripe_width
    edge[:, :band] = True
    stripe_index = np.arange(band) // spec.stripe_width
    clean[:, :band] = np.where(stripe_index % 2 == 0, spec.foreground, spec.background)

    for y, x in spec.patch_origins():
        noise[y:y + spec.patch_width, x:x + spec.patch_width] = True
    noisy = np.where(noise, spec.foreground, clean)

    masks = RegionMasks(edge, noise, ~(edge | noise))
    return ImageBuffer(noisy), ImageBuffer(clean), masks


@dataclass(frozen=True)
class NoiseSpec:
    kind: str = "gaussian"
    sigma: float | None = None
    density: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind == "gaussian":
            if self.sigma is None or self.sigma < 0:
                raise ValueError("gaussian noise needs sigma >= 0")
        elif self.kind == "saltpepper":
            if self.density is None or not 0.0 <= self.density <= 1.0:
                raise ValueError("salt-and-pepper noise needs density in [0, 1]")
        else:
            raise ValueError(f"unknown noise kind {self.kind!r}")


def add_noise(img, spec: NoiseSpec) -> ImageBuffer:
    """Seeded Gaussian (clamped) or salt-and-pepper noise.

    Salt-and-pepper replaces ``round(density * n_pixels)`` distinct pixels,
    all channels at once, by 0 or 1 with equal probability.
    """
    a = as_image(img).to_array()
    rng = np.random.default_rng(spec.seed)
    if spec.kind == "gaussian":
        if spec.sigma == 0:
            return ImageBuffer(a)
        return ImageBuffer(np.clip(a + rng.normal(0.0, spec.sigma, a.shape), 0.0, 1.0))
    flat = a.reshape(a.shape[0] * a.shape[1], -1)
    n = int(round(spec.density * flat.shape[0]))
    picked = rng.choice(flat.shape[0], size=n, replace=False)
    flat[picked] = rng.integers(0, 2, size=n)[:, None].astype(np.float64)
    return ImageBuffer(a)


def enhance(img, base, c: float) -> ImageBuffer:
    """Detail boost ``base + c * (img - base)``, clamped to ``[0, 1]``.

    Evaluated as ``(1 - c) * base + c * img`` so ``c = 0`` and ``c = 1``
    return ``base`` and ``img`` exactly.
    """
    i, b = as_image(img), as_image(base)
    same_geometry(i, b, ("input", "base"))
    return ImageBuffer((1.0 - c) * b.pixels + c * i.pixels)


def region_mse(test, reference, mask) -> float:
    t, ref = as_image(test), as_image(reference)
    same_geometry(t, ref, ("test", "reference"))
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != t.shape[:2]:
        raise ValueError(f"mask shape {mask.shape} does not match image {t.shape[:2]}")
    if not mask.any():
        raise ValueError("mask selects no pixels")
    diff = t.pixels[mask] - ref.pixels[mask]
    return float(np.mean(diff * diff))


def mse(test, reference) -> float:
    t = as_image(test)
    return region_mse(t, reference, np.ones(t.shape[:2], dtype=bool))


def psnr(test, reference) -> float:
    """PSNR in dB for peak 1.0; ``math.inf`` when the images are identical."""
    err = mse(test, reference)
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(1.0 / err)


def chart_errors(result, clean, masks: RegionMasks) -> dict[str, float]:
    """Whole-image and per-region errors of ``result`` against ``clean``."""
    return {
        "mse": mse(result, clean),
        "psnr_db": psnr(result, clean),
        "edge_mse": region_mse(result, clean, masks.edge),
        "noise_mse": region_mse(result, clean, masks.noise),
    }
