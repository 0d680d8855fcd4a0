"""jbekit command line: compress, decompress, inspect, bench."""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from .bench import (
    DEFAULT_SAMPLES,
    DEFAULT_SIZES,
    MANIFEST_NAME,
    CorpusSpec,
    default_jobs,
    generate_corpus,
    render_report,
    run_benchmark,
)
from .bwt import DEFAULT_BLOCK_SIZE
from .core import CodecError, StageId
from .pipeline import CompressedArtifact, PipelineSpec, pipeline_compress, pipeline_decompress, ratio


def _use_color(stream) -> bool:
    return not os.environ.get("JBEKIT_NO_COLOR") and hasattr(stream, "isatty") and stream.isatty()


def _error(msg: str) -> None:
    prefix = "\033[31merror:\033[0m" if _use_color(sys.stderr) else "error:"
    print(f"{prefix} {msg}", file=sys.stderr)


def _size(text: str) -> int:
    text = text.strip().lower()
    scale = 1
    for suffix, mult in (("kib", 1024), ("mib", 1 << 20), ("k", 1024), ("m", 1 << 20)):
        if text.endswith(suffix):
            text, scale = text[: -len(suffix)], mult
            break
    value = int(text) * scale
    if value <= 0:
        raise argparse.ArgumentTypeError("size must be positive")
    return value


def _size_list(text: str) -> list[int]:
    try:
        return [_size(part) for part in text.split(",") if part.strip()]
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def _stage_list(text: str) -> PipelineSpec:
    try:
        return PipelineSpec.from_names(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"{err} (stages: {', '.join(s.name.lower() for s in StageId)})") from None


def _block(text: str) -> int:
    value = _size(text)
    if value >= 1 << 32:
        raise argparse.ArgumentTypeError("block size must fit in 32 bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jbekit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="compress a file into a .jbk container")
    p.add_argument("input", type=Path)
    p.add_argument("output", type=Path)
    sel = p.add_mutually_exclusive_group()
    sel.add_argument("--pipeline", type=int, choices=range(1, 6), metavar="{1-5}",
                     help="preset combination (default 5: RLE+BWT+MTF+JBE+ARI)")
    sel.add_argument("--stages", type=_stage_list, help="custom chain, e.g. rle,bwt,mtf,jbe,ari")
    p.add_argument("--bwt-block", type=_block, default=DEFAULT_BLOCK_SIZE)

    p = sub.add_parser("decompress", help="restore the original file from a container")
    p.add_argument("input", type=Path)
    p.add_argument("output", type=Path)

    p = sub.add_parser("inspect", help="show a container's header")
    p.add_argument("input", type=Path)

    p = sub.add_parser("bench", help="run all presets over a synthetic corpus")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--sizes", type=_size_list, default=list(DEFAULT_SIZES))
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="samples per file type")
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.add_argument("--out", type=Path, help="report file (default: stdout)")
    p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    p.add_argument("--corpus", type=Path, help="corpus directory; reused if it already has a manifest")
    p.add_argument("--bwt-block", type=_block, default=DEFAULT_BLOCK_SIZE)
    return parser


def cmd_compress(args) -> int:
    spec = args.stages or PipelineSpec.preset(args.pipeline or 5)
    try:
        data = args.input.read_bytes()
        artifact = pipeline_compress(data, spec, bwt_block_size=args.bwt_block)
        args.output.write_bytes(artifact.to_bytes())
    except OSError as err:
        _error(str(err))
        return 1
    r = ratio(artifact)
    print(f"original={artifact.original_length} compressed={len(artifact)} "
          f"ratio={'n/a' if r is None else f'{r:.4f}'} stages={spec.label}")
    return 0


def cmd_decompress(args) -> int:
    try:
        blob = args.input.read_bytes()
        data = pipeline_decompress(CompressedArtifact.from_bytes(blob))
        args.output.write_bytes(data)
    except OSError as err:
        _error(str(err))
        return 1
    except CodecError as err:
        _error(f"{args.input}: {err}")
        return 1
    return 0


def cmd_inspect(args) -> int:
    try:
        artifact = CompressedArtifact.from_bytes(args.input.read_bytes())
    except OSError as err:
        _error(str(err))
        return 1
    except CodecError as err:
        _error(f"{args.input}: {err}")
        return 1
    spec = artifact.spec
    print(f"stages: {spec.label}")
    print(f"preset: {spec.preset_id if spec.preset_id is not None else 'custom'}")
    print(f"original_length: {artifact.original_length}")
    print(f"crc32: {artifact.checksum:08x}")
    print(f"payload_size: {len(artifact.payload)}")
    print(f"container_size: {len(artifact)}")
    return 0


def cmd_bench(args) -> int:
    try:
        spec = CorpusSpec(tuple(args.sizes), args.seed, args.samples)
    except ValueError as err:
        _error(str(err))
        return 2
    progress = None
    if sys.stderr.isatty():
        def progress(done, total):
            end = "\n" if done == total else ""
            print(f"\rbench: {100 * done // total}%", end=end, file=sys.stderr, flush=True)
    try:
        with tempfile.TemporaryDirectory(prefix="jbekit-corpus-") as tmp:
            corpus = args.corpus or Path(tmp)
            manifest = corpus / MANIFEST_NAME
            if args.corpus is None or not manifest.exists():
                generate_corpus(spec, corpus)
            report = run_benchmark(manifest, jobs=args.jobs, bwt_block_size=args.bwt_block, progress=progress)
        doc = render_report(report, args.format)
        if args.out:
            args.out.write_text(doc)
        else:
            sys.stdout.write(doc)
    except (OSError, ValueError, RuntimeError) as err:
        _error(str(err))
        return 1
    for preset, seconds in report.runtime.items():
        print(f"preset {preset}: {seconds:.2f}s", file=sys.stderr)
    return 0


COMMANDS = {
    "compress": cmd_compress,
    "decompress": cmd_decompress,
    "inspect": cmd_inspect,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
