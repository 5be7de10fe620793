"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 I/O or parse error, 3 parameter error.
Data goes to stdout; diagnostics and the resolved parameter set go to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .bench import BenchConfig, run_bench
from .errors import ParameterError, PgmParseError, RangeError, ShapeError
from .filters import BilateralFilter, GaussianFilter, MeanFilter, MedianFilter
from .image import Padding, histogram
from .metrics import QualityReport, SsimParams, full_report
from .noise import GaussianNoise, PoissonNoise, SaltPepperNoise, SpeckleNoise
from .pgm import read_pgm, write_pgm

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_PARAM = 0, 1, 2, 3
SEED_ENV = "SPATIAL_RESTORE_SEED"
DEFAULT_SEED = 42
SEED_HELP = f"random seed (default: ${SEED_ENV} if set, else {DEFAULT_SEED})"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class _HelpFormatter(argparse.ArgumentDefaultsHelpFormatter):
    """Append defaults, except where the help text already explains them."""

    def _get_help_string(self, action):
        if "(default:" in (action.help or "") or action.default is None:
            return action.help
        return super()._get_help_string(action)


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}")


def _add_noise_options(p: argparse.ArgumentParser, prefix: str = "") -> None:
    p.add_argument(f"--{prefix}mean", type=float, default=0.0, help="Gaussian noise mean")
    p.add_argument(f"--{prefix}sigma", type=float, default=0.1, help="Gaussian noise standard deviation")
    p.add_argument(f"--{prefix}peak", type=float, default=255.0,
                   help="Poisson photon count at intensity 1.0")
    p.add_argument(f"--{prefix}amount", type=float, default=0.05,
                   help="salt & pepper corrupted fraction, split evenly between 0 and 1")
    p.add_argument(f"--{prefix}var", type=float, default=0.04, help="speckle multiplier variance")


def _add_filter_options(p: argparse.ArgumentParser, prefix: str = "") -> None:
    p.add_argument(f"--{prefix}window", type=int, default=3, help="mean/median window side (odd)")
    p.add_argument(f"--{prefix}sigma", type=float, default=1.0, help="Gaussian filter sigma")
    p.add_argument(f"--{prefix}radius", type=int, default=None,
                   help="Gaussian/bilateral radius (default: ceil(3 * sigma))")
    p.add_argument("--sigma-s", type=float, default=2.0, help="bilateral spatial sigma")
    p.add_argument("--sigma-r", type=float, default=0.1, help="bilateral range sigma (intensity units)")


def _padding_option(p: argparse.ArgumentParser) -> None:
    p.add_argument("--padding", choices=[m.value for m in Padding], default=Padding.REPLICATE.value,
                   help="border handling")


def build_parser() -> argparse.ArgumentParser:
    fmt = _HelpFormatter
    parser = _Parser(prog="spatial-restore", formatter_class=fmt,
                     description="Grayscale noise injection, spatial filtering and quality scoring.")
    parser.add_argument("--seed", type=int, default=None, help=SEED_HELP)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("noise", help="corrupt a PGM image", formatter_class=fmt)
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--noise", choices=["gaussian", "poisson", "sp", "speckle"], default="gaussian")
    _add_noise_options(p)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help=SEED_HELP)
    p.add_argument("--ascii", action="store_true", help="write P2 instead of P5")

    p = sub.add_parser("filter", help="restore a PGM image", formatter_class=fmt)
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--filter", choices=["mean", "median", "gaussian", "bilateral"], default="median")
    _add_filter_options(p)
    _padding_option(p)
    p.add_argument("--ascii", action="store_true", help="write P2 instead of P5")

    p = sub.add_parser("metrics", help="score a test image against a reference", formatter_class=fmt)
    p.add_argument("reference")
    p.add_argument("test")
    p.add_argument("--peak", type=float, default=1.0, help="PSNR peak intensity")

    p = sub.add_parser("hist", help="print a histogram as CSV", formatter_class=fmt)
    p.add_argument("input")
    p.add_argument("--bins", type=int, default=256)

    p = sub.add_parser("bench", help="run the full filter x noise benchmark", formatter_class=fmt)
    p.add_argument("input", nargs="?", default=None,
                   help="clean PGM image (default: built-in synthetic image)")
    p.add_argument("--out", required=True, help="output directory (required)")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help=SEED_HELP)
    _add_noise_options(p, prefix="noise-")
    _add_filter_options(p, prefix="filter-")
    _padding_option(p)
    p.add_argument("--no-baseline", action="store_true", help="omit unfiltered baseline rows")
    p.add_argument("--images", action="store_true", help="also write corrupted and restored PGMs")
    p.add_argument("--workers", type=int, default=1, help="threads for scoring cells")
    return parser


def _noise_spec(args, prefix=""):
    get = lambda name: getattr(args, prefix + name)  # noqa: E731
    return {
        "gaussian": lambda: GaussianNoise(mean=get("mean"), sigma=get("sigma")),
        "poisson": lambda: PoissonNoise(peak=get("peak")),
        "sp": lambda: SaltPepperNoise.from_amount(get("amount")),
        "speckle": lambda: SpeckleNoise(variance=get("var")),
    }


def _filter_spec(args, prefix=""):
    get = lambda name: getattr(args, prefix + name)  # noqa: E731
    return {
        "mean": lambda: MeanFilter(get("window"), get("window")),
        "median": lambda: MedianFilter(get("window"), get("window")),
        "gaussian": lambda: GaussianFilter(get("sigma"), get("radius")),
        "bilateral": lambda: BilateralFilter(args.sigma_s, args.sigma_r, get("radius")),
    }


def _resolved(**items) -> None:
    print("# resolved: " + " ".join(f"{k}={v}" for k, v in items.items()), file=sys.stderr)


def _cmd_noise(args) -> int:
    spec = _noise_spec(args)[args.noise]()
    _resolved(noise=spec, seed=args.seed)
    img = read_pgm(args.input)
    write_pgm(args.output, spec.apply(img, args.seed), binary=not args.ascii)
    return EXIT_OK


def _cmd_filter(args) -> int:
    spec = _filter_spec(args)[args.filter]()
    _resolved(filter=spec, padding=args.padding)
    img = read_pgm(args.input)
    write_pgm(args.output, spec.apply(img, args.padding), binary=not args.ascii)
    return EXIT_OK


def _cmd_metrics(args) -> int:
    params = SsimParams(peak=args.peak)
    _resolved(peak=args.peak, ssim=params)
    report = full_report(read_pgm(args.reference), read_pgm(args.test), args.peak, params)
    print(",".join(QualityReport.FIELDS))
    print(",".join(report.csv_fields()))
    return EXIT_OK


def _cmd_hist(args) -> int:
    _resolved(bins=args.bins)
    counts = histogram(read_pgm(args.input), args.bins)
    sys.stdout.write("bin,count\n" + "".join(f"{i},{c}\n" for i, c in enumerate(counts)))
    return EXIT_OK


def _cmd_bench(args) -> int:
    noises = [make() for make in _noise_spec(args, "noise_").values()]
    filters = [_filter_spec(args, "filter_")[k]() for k in ("mean", "gaussian", "median", "bilateral")]
    config = BenchConfig(
        image_path=Path(args.input) if args.input else None,
        seed=args.seed,
        noises=noises,
        filters=filters,
        out_dir=Path(args.out),
        policy=Padding(args.padding),
        baseline=not args.no_baseline,
        images=args.images,
        workers=args.workers,
    )
    _resolved(seed=config.seed, input=args.input or "synthetic", padding=config.policy.value,
              noises=noises, filters=filters)
    _, written = run_bench(config)
    for path in written:
        print(path)
    return EXIT_OK


_COMMANDS = {
    "noise": _cmd_noise,
    "filter": _cmd_filter,
    "metrics": _cmd_metrics,
    "hist": _cmd_hist,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.seed is None:
            args.seed = _default_seed()
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (OSError, PgmParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ParameterError, ShapeError, RangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
