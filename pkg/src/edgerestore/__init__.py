"""Edge restoring filter on top of local smoothing filters."""

from .core import ImageBuffer, PixelIndex, as_image, pixel_distance, replicate_border_sample, window_indices
from .erf import PipelineSpec, apply_pipeline, erf, erf_bruteforce
from .experiments import (
    ChartSpec,
    NoiseSpec,
    RegionMasks,
    add_noise,
    chart_errors,
    enhance,
    gen_chart,
    mse,
    psnr,
    region_mse,
)
from .smoothers import (
    SmootherSpec,
    bilateral_filter,
    box_filter,
    gaussian_filter,
    guided_filter,
    side_window_box_filter,
)

__version__ = "0.1.0"
