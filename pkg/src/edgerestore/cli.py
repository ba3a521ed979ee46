"""Batch command-line front end.

Exit status: 0 on success, 1 on usage errors, 2 on I/O errors. Outputs are
staged and renamed into place only once everything has been computed, so a
failing command leaves no partial files behind.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

import numpy as np

from .core import ImageBuffer
from .erf import PipelineSpec, apply_pipeline, erf
from .experiments import ChartSpec, NoiseSpec, add_noise, enhance, gen_chart, mse, psnr, region_mse
from .pngio import ImageReadError, read_png, write_all
from .smoothers import SmootherSpec

EXIT_USAGE = 1
EXIT_IO = 2

_FILTER_NAMES = ("box", "gaussian", "bilateral", "guided", "swbox")
_FILTER_PARAMS = {"sigma": {"gaussian"}, "sigma_s": {"bilateral"}, "dos": {"bilateral", "guided"}}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("values must be positive integers")
    return values


def _add_filter_flags(p, *, iters):
    p.add_argument("--input", "-i", required=True, type=Path)
    p.add_argument("--output", "-o", required=True, type=Path)
    p.add_argument("--filter", choices=_FILTER_NAMES, default="box")
    p.add_argument("--r", type=int, default=3, help="window radius for the smoother and ERF")
    p.add_argument("--sigma", type=float, help="Gaussian standard deviation (default 2)")
    p.add_argument("--sigma-s", type=float, help="bilateral spatial sigma (default 3)")
    p.add_argument("--dos", type=float, help="degree of smoothing (bilateral 0.3, guided 0.1)")
    p.add_argument("--erf", action="store_true", help="follow the smoother with the edge restoring filter")
    p.add_argument("--iters", type=int, default=iters)
    p.add_argument(
        "--erf-reference",
        choices=("current", "original"),
        default="current",
        help="ERF reference image on later iterations",
    )
    _add_threads(p)


def _add_threads(p):
    p.add_argument("--threads", type=int, default=1, help="worker threads, 0 = one per CPU")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="edgerestore", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen-chart", help="write the synthetic edge/noise chart")
    p.add_argument("--width", type=int, default=128)
    p.add_argument("--height", type=int, default=128)
    p.add_argument("--stripe-width", type=int, default=5)
    p.add_argument("--patch-width", type=int, default=4)
    p.add_argument("--patch-spacing", type=int)
    p.add_argument("--foreground", type=float, default=1.0)
    p.add_argument("--background", type=float, default=0.0)
    p.add_argument("--outdir", type=Path, default=Path("."))

    p = sub.add_parser("smooth", help="smooth an image, optionally with ERF")
    _add_filter_flags(p, iters=1)
    p = sub.add_parser("denoise", help="like smooth, iterated 5 times by default")
    _add_filter_flags(p, iters=5)

    p = sub.add_parser("add-noise", help="add seeded Gaussian or salt-and-pepper noise")
    p.add_argument("--input", "-i", required=True, type=Path)
    p.add_argument("--output", "-o", required=True, type=Path)
    p.add_argument("--kind", choices=("gaussian", "saltpepper"), default="gaussian")
    p.add_argument("--sigma", type=float)
    p.add_argument("--density", type=float)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("enhance", help="detail enhancement base + c * (I - base)")
    p.add_argument("--input", "-i", required=True, type=Path)
    p.add_argument("--output", "-o", required=True, type=Path)
    p.add_argument("--base-filter", choices=("bilateral", "guided"), default="bilateral")
    p.add_argument("--r", type=int, default=5)
    p.add_argument("--sigma-s", type=float)
    p.add_argument("--dos", type=float)
    p.add_argument("--erf", action="store_true")
    p.add_argument("--iters", type=int, default=1)
    p.add_argument("--c", type=float, default=5.0, help="amplification factor")
    _add_threads(p)

    p = sub.add_parser("metrics", help="print MSE/PSNR and region errors")
    p.add_argument("--ref", required=True, type=Path)
    p.add_argument("--test", required=True, type=Path)
    p.add_argument("--mask", type=Path, help="masks.png from gen-chart")

    p = sub.add_parser("bench", help="time each filter, CSV to stdout")
    p.add_argument("--sizes", type=_int_list, default=[256, 512])
    p.add_argument("--radii", type=_int_list, default=[1, 3, 5])
    p.add_argument("--filters", default="box,gaussian,bilateral,guided,swbox,erf")
    p.add_argument("--channels", type=int, choices=(1, 3), default=3)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    _add_threads(p)
    return parser


def _smoother(args, kind) -> SmootherSpec:
    for name, kinds in _FILTER_PARAMS.items():
        if getattr(args, name, None) is not None and kind not in kinds:
            flag = "--" + name.replace("_", "-")
            raise UsageError(f"{flag} does not apply to the {kind} filter")
    try:
        return SmootherSpec(kind, r=args.r, sigma=getattr(args, "sigma", None), sigma_s=args.sigma_s, dos=args.dos)
    except ValueError as exc:
        raise UsageError(str(exc))


def _pipeline(args, kind) -> PipelineSpec:
    smoother = _smoother(args, kind)
    if args.iters < 1:
        raise UsageError("--iters must be >= 1")
    return PipelineSpec(smoother, args.erf, args.iters, getattr(args, "erf_reference", "current"))


def _check_threads(args):
    if args.threads < 0:
        raise UsageError("--threads must be >= 0")


def cmd_gen_chart(args):
    try:
        spec = ChartSpec(
            width=args.width,
            height=args.height,
            stripe_width=args.stripe_width,
            patch_width=args.patch_width,
            patch_spacing=args.patch_spacing,
            foreground=args.foreground,
            background=args.background,
        )
    except ValueError as exc:
        raise UsageError(str(exc))
    noisy, clean, masks = gen_chart(spec)
    mask_img = ImageBuffer(np.stack([masks.edge, masks.noise, masks.background], axis=-1).astype(float))
    args.outdir.mkdir(parents=True, exist_ok=True)
    write_all({
        args.outdir / "noisy.png": noisy,
        args.outdir / "clean.png": clean,
        args.outdir / "masks.png": mask_img,
    })


def cmd_smooth(args):
    _check_threads(args)
    spec = _pipeline(args, args.filter)
    img = read_png(args.input)
    write_all({args.output: apply_pipeline(img, spec, workers=args.threads)})


def cmd_add_noise(args):
    try:
        spec = NoiseSpec(args.kind, sigma=args.sigma, density=args.density, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.kind == "gaussian" and args.density is not None or args.kind == "saltpepper" and args.sigma is not None:
        raise UsageError(f"flag does not apply to {args.kind} noise")
    img = read_png(args.input)
    write_all({args.output: add_noise(img, spec)})


def cmd_enhance(args):
    _check_threads(args)
    if args.base_filter == "bilateral" and args.sigma_s is None:
        args.sigma_s = 5.0
    spec = _pipeline(args, args.base_filter)
    img = read_png(args.input)
    base = apply_pipeline(img, spec, workers=args.threads)
    write_all({args.output: enhance(img, base, args.c)})


def _fmt(v: float) -> str:
    return "inf" if math.isinf(v) else f"{v:.6g}"


def cmd_metrics(args):
    ref, test = read_png(args.ref), read_png(args.test)
    if ref.shape != test.shape:
        raise UsageError(f"reference {ref.shape} and test {test.shape} differ in shape")
    lines = [f"mse={_fmt(mse(test, ref))}", f"psnr_db={_fmt(psnr(test, ref))}"]
    if args.mask is not None:
        masks = read_png(args.mask)
        if masks.channels != 3 or masks.shape[:2] != ref.shape[:2]:
            raise UsageError("mask must be the 3-channel masks.png matching the images")
        for name, ch in (("edge_mse", 0), ("noise_mse", 1)):
            m = masks.pixels[:, :, ch] > 0.5
            lines.append(f"{name}={_fmt(region_mse(test, ref, m)) if m.any() else 'nan'}")
    print("\n".join(lines))


def cmd_bench(args):
    _check_threads(args)
    names = [f.strip() for f in args.filters.split(",") if f.strip()]
    unknown = set(names) - set(_FILTER_NAMES) - {"erf"}
    if unknown:
        raise UsageError(f"unknown filters: {', '.join(sorted(unknown))}")
    if args.repeat < 1:
        raise UsageError("--repeat must be >= 1")
    rng = np.random.default_rng(args.seed)
    print("filter,size,r,ms_per_frame")
    for size in args.sizes:
        img = ImageBuffer(rng.random((size, size, args.channels)))
        for r in args.radii:
            for name in names:
                if name == "erf":
                    smoothed = SmootherSpec("box", r=r)(img)
                    run = lambda: erf(smoothed, img, r, workers=args.threads)  # noqa: E731
                else:
                    spec = SmootherSpec(name, r=r)
                    run = lambda: spec(img, workers=args.threads)  # noqa: E731
                best = math.inf
                for _ in range(args.repeat):
                    t0 = time.perf_counter()
                    run()
                    best = min(best, time.perf_counter() - t0)
                print(f"{name},{size},{r},{best * 1e3:.3f}", flush=True)


_COMMANDS = {
    "gen-chart": cmd_gen_chart,
    "smooth": cmd_smooth,
    "denoise": cmd_smooth,
    "add-noise": cmd_add_noise,
    "enhance": cmd_enhance,
    "metrics": cmd_metrics,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        _COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"edgerestore {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ImageReadError as exc:
        print(f"edgerestore {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"edgerestore {args.command}: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
