"""
Smoothing and denoising with and without ERF
============================================

Each of the four local smoothers runs with its default parameters (r=3;
Gaussian sigma=2; bilateral sigma_s=3, dos=0.3; guided dos=0.1), once for
smoothing and five times for denoising, alone and followed by ERF. The input
is the edge/noise chart with seeded Gaussian noise.
"""

from edgerestore import (
    ChartSpec,
    NoiseSpec,
    PipelineSpec,
    SmootherSpec,
    add_noise,
    apply_pipeline,
    chart_errors,
    gen_chart,
)

noisy, clean, masks = gen_chart(ChartSpec())
observed = add_noise(noisy, NoiseSpec("gaussian", sigma=0.05, seed=2024))

for iterations, title in ((1, "smoothing, 1 pass"), (5, "denoising, 5 passes")):
    print(title)
    print(f"  {'filter':<8}{'psnr_db':>9}{'edge_mse':>11}{'noise_mse':>11}")
    for kind in ("box", "gaussian", "bilateral", "guided"):
        for use_erf in (False, True):
            spec = PipelineSpec(SmootherSpec(kind), use_erf, iterations)
            err = chart_errors(apply_pipeline(observed, spec), clean, masks)
            print(f"  {spec.label:<8}{err['psnr_db']:>9.2f}{err['edge_mse']:>11.4f}{err['noise_mse']:>11.4f}")
    print()
