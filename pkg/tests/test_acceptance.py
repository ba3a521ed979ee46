"""Acceptance criteria A1-A7.

Each test records a PASS/FAIL line (see ``conftest.pytest_terminal_summary``)
with the measured quantity next to its threshold.

    pytest tests/test_acceptance.py -v
"""

import time

import numpy as np
import pytest

from edgerestore import (
    ChartSpec,
    ImageBuffer,
    NoiseSpec,
    PipelineSpec,
    SmootherSpec,
    add_noise,
    apply_pipeline,
    box_filter,
    chart_errors,
    enhance,
    erf,
    erf_bruteforce,
    gen_chart,
    guided_filter,
)
from edgerestore.core import window_indices
from edgerestore.pngio import to_bytes
from edgerestore.smoothers import SMOOTHER_KINDS

from oracles import naive_bilateral, naive_box, naive_guided

RESULTS = []


def record(name, ok, detail):
    RESULTS.append((name, bool(ok), detail))
    assert ok, f"{name}: {detail}"


def random_erf_inputs(rng, k):
    """Seeded (smoothed, original, r) triple; every other case is quantised to force ties."""
    h, w = (int(v) for v in rng.integers(8, 65, size=2))
    c = 1 if k % 2 == 0 else 3
    r = (1, 2, 3, 5)[k % 4]
    if k % 4 < 2:
        orig = ImageBuffer(rng.integers(0, 8, size=(h, w, c)) / 7.0)
    else:
        orig = ImageBuffer(rng.random((h, w, c)))
    smooth = box_filter(orig, r) if k % 3 else ImageBuffer(rng.random((h, w, c)))
    return smooth, orig, r


def test_a1_oracle_equivalence():
    rng = np.random.default_rng(1)
    mismatched = 0
    for k in range(100):
        s, o, r = random_erf_inputs(rng, k)
        if not np.array_equal(erf(s, o, r).pixels, erf_bruteforce(s, o, r).pixels):
            mismatched += 1
    record("A1 erf == brute-force oracle, bitwise", mismatched == 0, f"{mismatched}/100 images differ")


def test_a2_selection_and_restoration():
    rng = np.random.default_rng(2)
    violations = 0
    for k in range(100):
        s, o, r = random_erf_inputs(rng, k)
        out, sp, op = erf(s, o, r).pixels, s.pixels, o.pixels
        h, w, _ = sp.shape
        for y in range(h):
            for x in range(w):
                win = window_indices((y, x), r, w, h)
                cands = sp[tuple(np.array(win).T)]
                if not np.any(np.all(cands == out[y, x], axis=-1)):
                    violations += 1
                if np.any(np.all(cands == op[y, x], axis=-1)) and not np.array_equal(out[y, x], op[y, x]):
                    violations += 1
        if not np.array_equal(erf(o, o, r).pixels, op):
            violations += 1
    record("A2 selection/restoration invariants", violations == 0, f"{violations} violations over 100 pairs")


@pytest.fixture(scope="module")
def chart():
    return gen_chart(ChartSpec())


@pytest.fixture(scope="module")
def chart_runs(chart):
    noisy, clean, masks = chart
    runs = {}
    for label, spec in {
        "ER-Box": PipelineSpec(SmootherSpec("box", r=3), True, 10),
        "S-Box": PipelineSpec(SmootherSpec("swbox", r=3), False, 10),
        "Box": PipelineSpec(SmootherSpec("box", r=3), False, 10),
    }.items():
        runs[label] = chart_errors(apply_pipeline(noisy, spec), clean, masks)
    return runs


def test_a3_er_box_edges(chart_runs):
    e = chart_runs["ER-Box"]["edge_mse"]
    record("A3 ER-Box r=3 x10 edge_mse <= 1e-4", e <= 1e-4, f"edge_mse={e:.6g}")


def test_a3_er_box_noise(chart_runs):
    n = chart_runs["ER-Box"]["noise_mse"]
    record("A3 ER-Box r=3 x10 noise_mse <= 1e-4", n <= 1e-4, f"noise_mse={n:.6g}")


def test_a3_sbox_worse_edges(chart_runs):
    s, e = chart_runs["S-Box"]["edge_mse"], chart_runs["ER-Box"]["edge_mse"]
    record("A3 S-Box r=3 edge_mse > ER-Box edge_mse", s > e, f"S-Box={s:.6g} ER-Box={e:.6g}")


def test_a3_box_worse_edges(chart_runs):
    b, e = chart_runs["Box"]["edge_mse"], chart_runs["ER-Box"]["edge_mse"]
    record("A3 Box r=3 edge_mse > ER-Box edge_mse", b > e, f"Box={b:.6g} ER-Box={e:.6g}")


@pytest.mark.parametrize("kind", ["box", "gaussian", "bilateral", "guided"])
def test_a4_denoising_ordering(chart, kind):
    noisy, clean, masks = chart
    x = add_noise(noisy, NoiseSpec("gaussian", sigma=0.05, seed=2024))
    smoother = SmootherSpec(kind)
    plain = chart_errors(apply_pipeline(x, PipelineSpec(smoother, False, 5)), clean, masks)["edge_mse"]
    er = chart_errors(apply_pipeline(x, PipelineSpec(smoother, True, 5)), clean, masks)["edge_mse"]
    record(f"A4 edge_mse(ER-{smoother.label}) < edge_mse({smoother.label})", er < plain,
           f"ER={er:.6g} plain={plain:.6g}")


def test_a5_enhancement():
    rng = np.random.default_rng(5)
    noisy, _, _ = gen_chart(ChartSpec(width=64, height=64))
    color = ImageBuffer(np.stack([noisy.pixels[:, :, 0], rng.random((64, 64)), 0.5 * np.ones((64, 64))], axis=-1))
    worst_c5 = 0.0
    ok = True
    for img in (noisy, color):
        for spec in (SmootherSpec("bilateral", r=5, sigma_s=5.0, dos=0.3), SmootherSpec("guided", r=5, dos=0.1)):
            for use_erf in (False, True):
                base = apply_pipeline(img, PipelineSpec(spec, use_erf, 1))
                ok &= np.array_equal(to_bytes(enhance(img, base, 1.0)), to_bytes(img))
                ok &= np.array_equal(enhance(img, base, 0.0).pixels, base.pixels)
                i, b = np.asarray(img, dtype=float), np.asarray(base, dtype=float)
                expected = np.clip(b + 5.0 * (i - b), 0.0, 1.0)
                worst_c5 = max(worst_c5, float(np.max(np.abs(enhance(img, base, 5.0).pixels - expected))))
    record("A5 enhance: C=1 -> input (8-bit), C=0 -> base, C=5 within 1e-6",
           ok and worst_c5 <= 1e-6, f"identities={'ok' if ok else 'broken'} max|C=5 diff|={worst_c5:.3g}")


def _best_time(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def test_a6_performance():
    rng = np.random.default_rng(6)
    img = ImageBuffer(rng.random((512, 512, 3)))
    ratios = {}
    for name, f in (("box", lambda r: box_filter(img, r)), ("guided", lambda r: guided_filter(img, r, 0.1))):
        f(3)
        ratios[name] = _best_time(lambda: f(15)) / _best_time(lambda: f(3))
    smoothed = box_filter(img, 3)
    t_erf = _best_time(lambda: erf(smoothed, img, 3, workers=1), repeat=3)
    single = erf(smoothed, img, 3, workers=1).pixels
    identical = all(np.array_equal(single, erf(smoothed, img, 3, workers=n).pixels) for n in (2, 4, 7))
    ok = max(ratios.values()) <= 1.5 and t_erf <= 2.0 and identical
    record("A6 r-independence <= 1.5x, ERF 512x512x3 <= 2 s, threads bitwise", ok,
           f"box r15/r3={ratios['box']:.2f} guided r15/r3={ratios['guided']:.2f} "
           f"erf={t_erf:.3f}s identical={identical}")


def test_a7_smoother_correctness():
    rng = np.random.default_rng(7)
    worst = {"box": 0.0, "bilateral": 0.0, "guided": 0.0}
    for k in range(50):
        a = rng.random((16, 16, 3 if k % 5 == 0 else 1))
        r = 1 + k % 3
        worst["box"] = max(worst["box"], np.abs(box_filter(a, r).pixels - naive_box(a, r)).max())
        out = SmootherSpec("bilateral", r=r)(a).pixels
        worst["bilateral"] = max(worst["bilateral"], np.abs(out - naive_bilateral(a, r, 3.0, 0.3)).max())
        out = guided_filter(a, r, 0.1).pixels
        worst["guided"] = max(worst["guided"], np.abs(out - np.clip(naive_guided(a, r, 0.1), 0, 1)).max())

    not_fixed = []
    for kind in SMOOTHER_KINDS:
        for value in (0.0, 0.1, 1 / 3, 0.77, 1.0):
            for c in (1, 3):
                a = np.full((12, 10, c), value)
                for use_erf in (False, True):
                    if not np.array_equal(apply_pipeline(a, PipelineSpec(SmootherSpec(kind), use_erf, 2)).pixels, a):
                        not_fixed.append((kind, value, c, use_erf))
    ok = max(worst.values()) <= 1e-6 and not not_fixed
    record("A7 naive oracles within 1e-6, constant images exact fixed points", ok,
           " ".join(f"{k}={v:.2g}" for k, v in worst.items()) + f" non-fixed={len(not_fixed)}")
