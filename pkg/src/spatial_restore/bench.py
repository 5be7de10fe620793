"""Filter x noise benchmark: corrupt one clean image with every noise model,
restore each corruption with every filter, and score the results.

Outputs are plain text (CSV / markdown) and fully determined by the input
image, the configuration and the seed.
"""

from __future__ import annotations

import csv
import hashlib
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__, rng
from .errors import ParameterError, RestoreError
from .filters import FilterSpec, default_filters
from .image import DEFAULT_PADDING, Kernel, Padding, as_image, histogram, identity_kernel
from .metrics import QualityReport, SsimParams, format_number, full_report
from .noise import NoiseSpec, default_noises, degrade
from .pgm import load_pgm, save_pgm

BASELINE = "none"
HIST_BINS = 256
PLOT_GROUPS = {
    "plot_rmse_mse.csv": ("rmse", "mse"),
    "plot_ssim_uqi.csv": ("ssim", "uqi"),
    "plot_psnr.csv": ("psnr",),
}


def synthetic_image(seed: int = 42, size: int = 512) -> np.ndarray:
    """Deterministic stand-in for a natural photograph.

    Quadrants hold smooth gradients with disks, a sinusoidal grating,
    piecewise-constant blocks, and a seed-dependent random texture, on top
    of a diagonal ramp; values stay inside ``[0.05, 0.95]``.
    """
    if size < 16:
        raise ParameterError(f"synthetic image size must be >= 16, got {size}")
    key = rng.derive_key(seed, 0x5EED)
    draws = rng.uniform(key, np.arange(64))
    y, x = np.mgrid[0:size, 0:size] / float(size)
    img = 0.25 + 0.5 * (x + y) / 2.0
    top, left = y < 0.5, x < 0.5

    # top-left: horizontal ramp with a few flat disks
    q = top & left
    img[q] = 0.2 + 0.6 * x[q] * 2.0
    for k in range(4):
        cx, cy = 0.1 + 0.3 * draws[3 * k], 0.1 + 0.3 * draws[3 * k + 1]
        r = 0.03 + 0.05 * draws[3 * k + 2]
        disk = q & ((x - cx) ** 2 + (y - cy) ** 2 < r * r)
        img[disk] = 0.15 + 0.7 * draws[12 + k]

    # top-right: grating whose frequency grows downwards
    q = top & ~left
    freq = 8.0 + 24.0 * y[q] * 2.0
    img[q] = 0.5 + 0.3 * np.sin(2.0 * np.pi * freq * x[q] + 4.0 * draws[16])

    # bottom-left: 32-pixel blocks at random levels
    q = ~top & left
    block = max(1, size // 16)
    levels = 0.1 + 0.8 * rng.uniform(key, np.arange(1000, 1000 + (size // block + 1) ** 2))
    bi = (np.arange(size) // block)
    lvl = levels.reshape(size // block + 1, -1)[bi[:, None], bi[None, :]]
    img[q] = lvl[q]

    # bottom-right: sum of random plane waves
    q = ~top & ~left
    tex = np.zeros(int(q.sum()))
    for k in range(8):
        fx, fy = 2.0 + 30.0 * draws[20 + k], 2.0 + 30.0 * draws[28 + k]
        tex += np.cos(2.0 * np.pi * (fx * x[q] + fy * y[q]) + 6.28 * draws[36 + k])
    img[q] = 0.5 + 0.35 * tex / 8.0 * 2.0

    return np.clip(img, 0.05, 0.95)


def derive_seed(seed: int, label: str) -> int:
    """64-bit sub-seed for one noise model, independent of the other models."""
    digest = hashlib.blake2b(f"{seed}:{label}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


@dataclass
class BenchConfig:
    image_path: Optional[Path] = None  # None: use synthetic_image(seed)
    seed: int = 42
    noises: Sequence[NoiseSpec] = field(default_factory=default_noises)
    filters: Sequence[FilterSpec] = field(default_factory=default_filters)
    out_dir: Optional[Path] = None
    blur: Kernel = field(default_factory=identity_kernel)
    policy: Padding = DEFAULT_PADDING
    peak: float = 1.0
    ssim_params: SsimParams = field(default_factory=SsimParams)
    baseline: bool = True
    table_csv: bool = True
    table_md: bool = True
    hist_csv: bool = True
    plot_csv: bool = True
    images: bool = False
    workers: int = 1

    def __post_init__(self):
        if not self.noises:
            raise ParameterError("at least one noise model is required")
        if not self.filters:
            raise ParameterError("at least one filter is required")
        for kind, specs in (("noise", self.noises), ("filter", self.filters)):
            labels = [s.label for s in specs]
            if len(set(labels)) != len(labels):
                raise ParameterError(f"duplicate {kind} labels: {labels}")
        if BASELINE in [f.label for f in self.filters]:
            raise ParameterError(f"filter label {BASELINE!r} is reserved for baseline rows")
        if self.workers < 1:
            raise ParameterError(f"workers must be >= 1, got {self.workers}")
        self.policy = Padding(self.policy)


@dataclass
class Row:
    filter: str
    noise: str
    report: QualityReport


@dataclass
class BenchResult:
    rows: list[Row]
    provenance: dict[str, str]
    original: np.ndarray
    corrupted: dict[str, np.ndarray]
    restored: dict[tuple[str, str], np.ndarray]
    filter_titles: dict[str, str]
    noise_titles: dict[str, str]

    def scored_rows(self) -> list[Row]:
        """Filter rows only, without the unfiltered baselines."""
        return [r for r in self.rows if r.filter != BASELINE]

    def get(self, filter_label: str, noise_label: str) -> QualityReport:
        for r in self.rows:
            if r.filter == filter_label and r.noise == noise_label:
                return r.report
        raise KeyError((filter_label, noise_label))


def _labelled(label: str, exc: RestoreError) -> RestoreError:
    exc.args = (f"{label}: {exc.args[0]}",) + exc.args[1:]
    return exc


def load_input(config: BenchConfig) -> tuple[np.ndarray, str, str]:
    """Return (image, source description, sha256 of the source)."""
    if config.image_path is None:
        img = synthetic_image(config.seed)
        digest = hashlib.sha256(np.ascontiguousarray(img).tobytes()).hexdigest()
        return img, f"synthetic(seed={config.seed})", digest
    raw = Path(config.image_path).read_bytes()
    return load_pgm(raw), str(config.image_path), hashlib.sha256(raw).hexdigest()


def run_matrix(config: BenchConfig, image: Optional[np.ndarray] = None) -> BenchResult:
    """Score every (filter, noise) pair; ``image`` overrides ``config.image_path``."""
    if image is None:
        original, source, digest = load_input(config)
    else:
        original = as_image(image)
        source = "array"
        digest = hashlib.sha256(np.ascontiguousarray(original).tobytes()).hexdigest()

    corrupted = {}
    sub_seeds = {}
    for nz in config.noises:
        sub_seeds[nz.label] = derive_seed(config.seed, nz.label)
        try:
            corrupted[nz.label] = degrade(original, config.blur, nz, sub_seeds[nz.label], config.policy)
        except RestoreError as exc:
            raise _labelled(f"noise {nz.label}", exc)

    cells = [(f, nz) for f in config.filters for nz in config.noises]

    def score(cell):
        f, nz = cell
        try:
            restored = f.apply(corrupted[nz.label], config.policy)
            return restored, full_report(original, restored, config.peak, config.ssim_params)
        except RestoreError as exc:
            raise _labelled(f"{f.label}/{nz.label}", exc)

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            outcomes = list(pool.map(score, cells))
    else:
        outcomes = [score(c) for c in cells]

    rows = []
    restored = {}
    for (f, nz), (img, report) in zip(cells, outcomes):
        rows.append(Row(f.label, nz.label, report))
        restored[(nz.label, f.label)] = img
    if config.baseline:
        for nz in config.noises:
            report = full_report(original, corrupted[nz.label], config.peak, config.ssim_params)
            rows.append(Row(BASELINE, nz.label, report))

    provenance = {
        "package_version": __version__,
        "input": source,
        "input_sha256": digest,
        "image_size": f"{original.shape[1]}x{original.shape[0]}",
        "seed": str(config.seed),
        "padding": config.policy.value,
        "blur_kernel": " ".join(format_number(w) for w in config.blur.weights.ravel()),
        "psnr_peak": format_number(config.peak),
        "ssim": _describe(config.ssim_params),
        "scored_against": "original (clean) image",
    }
    for nz in config.noises:
        provenance[f"noise.{nz.label}"] = f"{_describe(nz)} sub_seed={sub_seeds[nz.label]}"
    for f in config.filters:
        provenance[f"filter.{f.label}"] = _describe(f)

    return BenchResult(
        rows=rows,
        provenance=provenance,
        original=original,
        corrupted=corrupted,
        restored=restored,
        filter_titles={f.label: f.title for f in config.filters} | {BASELINE: "No Filter"},
        noise_titles={nz.label: nz.title for nz in config.noises},
    )


def _describe(spec) -> str:
    parts = []
    for name, value in vars(spec).items():
        parts.append(f"{name}={format_number(value) if isinstance(value, float) else value}")
    return f"{type(spec).__name__}(" + ", ".join(parts) + ")"


def emit_table(result: BenchResult, fmt: str = "csv") -> bytes:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["filter", "noise", *QualityReport.FIELDS])
        for r in result.rows:
            writer.writerow([r.filter, r.noise, *r.report.csv_fields()])
        return buf.getvalue().encode()
    if fmt in ("md", "markdown"):
        lines = ["| Filter | Noise | RMSE | MSE | UQI | PSNR | SSIM |",
                 "|---|---|---|---|---|---|---|"]
        previous = None
        for r in result.rows:
            name = result.filter_titles.get(r.filter, r.filter) if r.filter != previous else ""
            previous = r.filter
            noise_title = result.noise_titles.get(r.noise, r.noise)
            lines.append("| " + " | ".join([name, noise_title, *r.report.csv_fields()]) + " |")
        return ("\n".join(lines) + "\n").encode()
    raise ParameterError(f"unknown table format {fmt!r}")


def _histogram_csv(img: np.ndarray) -> bytes:
    counts = histogram(img, HIST_BINS)
    return ("bin,count\n" + "".join(f"{i},{c}\n" for i, c in enumerate(counts))).encode()


def emit_histograms(config: BenchConfig, result: BenchResult) -> dict[str, bytes]:
    """256-bin histograms of the clean image and of each corrupted image."""
    files = {"hist_original.csv": _histogram_csv(result.original)}
    for nz in config.noises:
        files[f"hist_{nz.label}.csv"] = _histogram_csv(result.corrupted[nz.label])
    return files


def emit_plot_data(result: BenchResult) -> dict[str, bytes]:
    """Long-format ``filter,noise,metric,value`` files, one per metric group."""
    files = {}
    for name, metrics in PLOT_GROUPS.items():
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["filter", "noise", "metric", "value"])
        for metric in metrics:
            for r in result.scored_rows():
                writer.writerow([r.filter, r.noise, metric, format_number(getattr(r.report, metric))])
        files[name] = buf.getvalue().encode()
    return files


def emit_provenance(result: BenchResult) -> bytes:
    return "".join(f"{k}={v}\n" for k, v in result.provenance.items()).encode()


def collect_outputs(config: BenchConfig, result: BenchResult) -> dict[str, bytes]:
    files = {"provenance.txt": emit_provenance(result)}
    if config.table_csv:
        files["table.csv"] = emit_table(result, "csv")
    if config.table_md:
        files["table.md"] = emit_table(result, "markdown")
    if config.hist_csv:
        files.update(emit_histograms(config, result))
    if config.plot_csv:
        files.update(emit_plot_data(result))
    if config.images:
        files["original.pgm"] = save_pgm(result.original)
        for nz_label, img in result.corrupted.items():
            files[f"{nz_label}_{BASELINE}.pgm"] = save_pgm(img)
        for (nz_label, f_label), img in result.restored.items():
            files[f"{nz_label}_{f_label}.pgm"] = save_pgm(np.clip(img, 0.0, 1.0))
    return files


def write_outputs(config: BenchConfig, result: BenchResult) -> list[Path]:
    if config.out_dir is None:
        raise ParameterError("an output directory is required")
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, data in sorted(collect_outputs(config, result).items()):
        path = out / name
        path.write_bytes(data)
        written.append(path)
    return written


def run_bench(config: BenchConfig) -> tuple[BenchResult, list[Path]]:
    result = run_matrix(config)
    return result, write_outputs(config, result)
