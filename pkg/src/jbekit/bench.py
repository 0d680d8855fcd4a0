"""Corpus generation, the preset-by-type benchmark grid, and report rendering."""

from __future__ import annotations

import io
import os
import time
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from .bwt import DEFAULT_BLOCK_SIZE
from .corpus import GENERATORS
from .pipeline import PipelineSpec, pipeline_compress, pipeline_decompress, ratio

FILE_TYPES = ("bitmap8", "bitmap24", "text", "binary", "audio")
DEFAULT_SIZES = (4096, 8192, 16384, 32768, 65536)
DEFAULT_SAMPLES = 10
MANIFEST_NAME = "manifest.tsv"
_SUFFIX = {"bitmap8": ".raw", "bitmap24": ".raw", "text": ".txt", "binary": ".bin", "audio": ".pcm"}


class BenchmarkError(RuntimeError):
    pass


@dataclass(frozen=True)
class CorpusSpec:
    sizes: tuple[int, ...] = DEFAULT_SIZES
    seed: int = 42
    samples_per_type: int = DEFAULT_SAMPLES
    types: tuple[str, ...] = FILE_TYPES

    def __post_init__(self):
        if not self.sizes:
            raise ValueError("corpus spec needs at least one size")
        if any(s <= 0 for s in self.sizes):
            raise ValueError("sample sizes must be positive")
        if self.samples_per_type < 1:
            raise ValueError("samples_per_type must be >= 1")
        unknown = set(self.types) - set(GENERATORS)
        if unknown:
            raise ValueError(f"unknown file types: {sorted(unknown)}")

    def samples(self):
        """Yield (type, index, size, rng) for every sample, in manifest order."""
        for t_index, ftype in enumerate(self.types):
            for j in range(self.samples_per_type):
                ss = np.random.SeedSequence(self.seed, spawn_key=(FILE_TYPES.index(ftype), j))
                yield ftype, j, self.sizes[j % len(self.sizes)], np.random.default_rng(ss)


@dataclass(frozen=True)
class ManifestEntry:
    path: Path
    ftype: str
    size: int


def generate_corpus(spec: CorpusSpec, output_dir) -> list[ManifestEntry]:
    out = Path(output_dir)
    entries = []
    lines = []
    for ftype, j, size, rng in spec.samples():
        rel = Path(ftype) / f"{ftype}_{j:03d}{_SUFFIX[ftype]}"
        data = GENERATORS[ftype](rng, size)
        assert len(data) == size
        target = out / rel
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_bytes(data)
        except OSError as err:
            raise OSError(f"cannot write corpus file {target}: {err}") from err
        entries.append(ManifestEntry(target, ftype, size))
        lines.append(f"{rel.as_posix()}\t{ftype}\t{size}\n")
    manifest = out / MANIFEST_NAME
    try:
        manifest.write_text("".join(lines))
    except OSError as err:
        raise OSError(f"cannot write manifest {manifest}: {err}") from err
    return entries


def read_manifest(path) -> list[ManifestEntry]:
    path = Path(path)
    base = path.parent
    entries = []
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"{path}:{lineno}: expected 'path<TAB>type<TAB>size'")
        rel, ftype, size = parts
        p = Path(rel)
        entries.append(ManifestEntry(p if p.is_absolute() else base / p, ftype, int(size)))
    return entries


@dataclass(frozen=True)
class RatioRow:
    ftype: str
    preset: str
    mean: float
    min: float
    max: float
    n: int


@dataclass
class RatioReport:
    rows: list[RatioRow]
    runtime: dict[str, float] = field(default_factory=dict)

    def cell(self, ftype: str, preset) -> RatioRow:
        key = str(preset)
        for row in self.rows:
            if row.ftype == ftype and row.preset == key:
                return row
        raise KeyError((ftype, preset))


def _preset_key(spec: PipelineSpec) -> str:
    return str(spec.preset_id) if spec.preset_id is not None else spec.label


def _measure(entry: ManifestEntry, specs: Sequence[PipelineSpec], bwt_block_size: int):
    data = entry.path.read_bytes()
    results = []
    for spec in specs:
        start = time.perf_counter()
        artifact = pipeline_compress(data, spec, bwt_block_size=bwt_block_size)
        try:
            restored = pipeline_decompress(artifact)
        except Exception as err:
            raise BenchmarkError(f"round-trip failed for {entry.path} with preset {_preset_key(spec)}: {err}") from err
        if restored != data:
            raise BenchmarkError(f"round-trip mismatch for {entry.path} with preset {_preset_key(spec)}")
        results.append((ratio(artifact), time.perf_counter() - start))
    return results


def run_benchmark(
    manifest,
    presets: Optional[Sequence[PipelineSpec]] = None,
    *,
    jobs: int = 1,
    bwt_block_size: int = DEFAULT_BLOCK_SIZE,
    progress: Optional[Callable[[int, int], None]] = None,
) -> RatioReport:
    entries = manifest if isinstance(manifest, list) else read_manifest(manifest)
    specs = list(presets) if presets else [PipelineSpec.preset(i) for i in range(1, 6)]
    missing = [e.path for e in entries if not e.path.is_file()]
    if missing:
        raise FileNotFoundError(f"manifest lists missing file {missing[0]}")

    def task(entry):
        return _measure(entry, specs, bwt_block_size)

    results = []
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        for done, res in enumerate(pool.map(task, entries), 1):
            results.append(res)
            if progress:
                progress(done, len(entries))

    ratios: dict[tuple[str, str], list[float]] = defaultdict(list)
    runtime: dict[str, float] = defaultdict(float)
    for entry, res in zip(entries, results):
        for spec, (r, seconds) in zip(specs, res):
            key = _preset_key(spec)
            runtime[key] += seconds
            if r is not None:
                ratios[(entry.ftype, key)].append(r)

    types = [t for t in FILE_TYPES if any(e.ftype == t for e in entries)]
    types += sorted({e.ftype for e in entries} - set(FILE_TYPES))
    rows = []
    for ftype in types:
        for spec in specs:
            vals = ratios.get((ftype, _preset_key(spec)))
            if vals:
                rows.append(RatioRow(ftype, _preset_key(spec), float(np.mean(vals)),
                                     min(vals), max(vals), len(vals)))
    return RatioReport(rows, dict(runtime))


def render_report(report: RatioReport, fmt: str = "csv") -> str:
    if not report.rows:
        raise ValueError("cannot render an empty report")
    buf = io.StringIO()
    if fmt == "csv":
        buf.write("type,preset,mean_ratio,min,max,n\n")
        for r in report.rows:
            buf.write(f"{r.ftype},{r.preset},{r.mean:.4f},{r.min:.4f},{r.max:.4f},{r.n}\n")
    elif fmt == "markdown":
        current = None
        for r in report.rows:
            if r.ftype != current:
                if current is not None:
                    buf.write("\n")
                current = r.ftype
                buf.write(f"### {r.ftype}\n\n")
                buf.write("| preset | stages | mean ratio | min | max | savings % | n |\n")
                buf.write("|---|---|---|---|---|---|---|\n")
            buf.write(f"| {r.preset} | {_stages_label(r.preset)} | {r.mean:.4f} | {r.min:.4f} | "
                      f"{r.max:.4f} | {100 * (1 - r.mean):.4f} | {r.n} |\n")
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    return buf.getvalue()


def _stages_label(preset: str) -> str:
    if preset.isdigit():
        return PipelineSpec.preset(int(preset)).label.replace(",", "+")
    return preset.replace(",", "+")


def default_jobs() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)
