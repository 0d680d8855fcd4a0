"""Stage chains, the five preset combinations, and the JBEK container.

Container layout (integers little-endian)::

    b"JBEK" | version u8 (=1) | stage count u8 | stage ids u8 * count
    | original_length u64 | crc32 u32 | payload

When JBE is followed by more stages, the remaining suffix runs separately on
each JBE sub-stream and the JBE step is framed as::

    original_length u64 | len(coded data I) u64 | coded data I | coded data II
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass
from typing import Optional, Sequence

from .bwt import DEFAULT_BLOCK_SIZE
from .core import CodecError, ErrorKind, StageId, corrupt, pack_u32, pack_u64, read_u32, read_u64, truncated
from .jbe import jbe_encode_split, jbe_join
from .stages import stage_decode, stage_encode

MAGIC = b"JBEK"
VERSION = 1
_FIXED_HEADER = len(MAGIC) + 2

R, B, M, J, A = StageId.RLE, StageId.BWT, StageId.MTF, StageId.JBE, StageId.ARI

PRESETS: dict[int, tuple[StageId, ...]] = {
    1: (R, A),
    2: (B, M, A),
    3: (B, R, A),
    4: (R, B, M, R, A),
    5: (R, B, M, J, A),
}


@dataclass(frozen=True)
class PipelineSpec:
    stages: tuple[StageId, ...]
    preset_id: Optional[int] = None

    def __post_init__(self):
        if not self.stages:
            raise ValueError("a pipeline needs at least one stage")
        if len(self.stages) > 255:
            raise ValueError("at most 255 stages fit in a container header")
        object.__setattr__(self, "stages", tuple(StageId(s) for s in self.stages))
        if self.preset_id is not None and PRESETS.get(self.preset_id) != self.stages:
            raise ValueError(f"stages do not match preset {self.preset_id}")

    @classmethod
    def preset(cls, number: int) -> "PipelineSpec":
        if number not in PRESETS:
            raise ValueError(f"unknown preset {number}; choose 1-5")
        return cls(PRESETS[number], number)

    @classmethod
    def from_names(cls, names: str | Sequence[str]) -> "PipelineSpec":
        if isinstance(names, str):
            names = [n for n in names.split(",") if n.strip()]
        return cls(tuple(StageId.parse(n) for n in names))

    @property
    def label(self) -> str:
        return ",".join(s.name for s in self.stages)


def preset_of(stages: Sequence[StageId]) -> Optional[int]:
    stages = tuple(stages)
    for number, chain in PRESETS.items():
        if chain == stages:
            return number
    return None


@dataclass(frozen=True)
class CompressedArtifact:
    spec: PipelineSpec
    original_length: int
    checksum: int
    payload: bytes

    def header(self) -> bytes:
        ids = bytes(int(s) for s in self.spec.stages)
        return (MAGIC + bytes([VERSION, len(ids)]) + ids
                + pack_u64(self.original_length) + pack_u32(self.checksum))

    def to_bytes(self) -> bytes:
        return self.header() + self.payload

    def __len__(self) -> int:
        return _FIXED_HEADER + len(self.spec.stages) + 12 + len(self.payload)

    @classmethod
    def from_bytes(cls, blob) -> "CompressedArtifact":
        buf = memoryview(blob).cast("B")
        if len(buf) < len(MAGIC) or bytes(buf[:4]) != MAGIC:
            raise corrupt("not a JBEK container (bad magic)")
        if len(buf) < _FIXED_HEADER:
            raise truncated("container header is truncated")
        if buf[4] != VERSION:
            raise corrupt(f"unsupported container version {buf[4]}")
        count = buf[5]
        if count == 0:
            raise corrupt("container lists no stages")
        if len(buf) < _FIXED_HEADER + count:
            raise truncated("container header is truncated inside the stage list")
        stages = []
        for raw in buf[_FIXED_HEADER:_FIXED_HEADER + count]:
            try:
                stages.append(StageId(raw))
            except ValueError:
                raise CodecError(ErrorKind.UNKNOWN_STAGE, f"unknown stage id 0x{raw:02X}") from None
        pos = _FIXED_HEADER + count
        if len(buf) < pos + 12:
            raise truncated("container header is truncated before length/checksum")
        original_length = read_u64(buf, pos, "original length")
        checksum = read_u32(buf, pos + 8, "checksum")
        spec = PipelineSpec(tuple(stages), preset_of(stages))
        return cls(spec, original_length, checksum, bytes(buf[pos + 12:]))


def _encode_chain(stages: Sequence[StageId], data: bytes, bwt_block_size: int) -> bytes:
    for i, stage in enumerate(stages):
        rest = stages[i + 1:]
        if stage is StageId.JBE and rest:
            n, data_i, data_ii = jbe_encode_split(data)
            coded_i = _encode_chain(rest, data_i, bwt_block_size)
            coded_ii = _encode_chain(rest, data_ii, bwt_block_size)
            return pack_u64(n) + pack_u64(len(coded_i)) + coded_i + coded_ii
        data = stage_encode(stage, data, bwt_block_size=bwt_block_size)
    return data


def _decode_chain(stages: Sequence[StageId], data: bytes) -> bytes:
    # find the first split-JBE point; everything after it is decoded per sub-stream
    for i, stage in enumerate(stages):
        if stage is StageId.JBE and i + 1 < len(stages):
            head, rest = stages[:i], stages[i + 1:]
            try:
                n = read_u64(data, 0, "split JBE original length")
                size_i = read_u64(data, 8, "split JBE data I length")
                if len(data) - 16 < size_i:
                    raise truncated(f"split JBE declares {size_i} bytes of data I, {len(data) - 16} remain")
            except CodecError as err:
                raise err.with_stage(StageId.JBE)
            data_i = _decode_chain(rest, data[16:16 + size_i])
            data_ii = _decode_chain(rest, data[16 + size_i:])
            try:
                data = jbe_join(n, data_i, data_ii)
            except CodecError as err:
                raise err.with_stage(StageId.JBE)
            break
    else:
        head = stages
    for stage in reversed(head):
        data = stage_decode(stage, data)
    return data


def pipeline_compress(data, spec: PipelineSpec, *, bwt_block_size: int = DEFAULT_BLOCK_SIZE) -> CompressedArtifact:
    data = bytes(data)
    payload = _encode_chain(spec.stages, data, bwt_block_size)
    return CompressedArtifact(spec, len(data), zlib.crc32(data), payload)


def pipeline_decompress(artifact: CompressedArtifact) -> bytes:
    data = _decode_chain(artifact.spec.stages, artifact.payload)
    if len(data) != artifact.original_length:
        raise CodecError(ErrorKind.LENGTH_MISMATCH,
                         f"decoded {len(data)} bytes but the container records {artifact.original_length}"
                         " (payload truncated or corrupt)")
    if zlib.crc32(data) != artifact.checksum:
        raise CodecError(ErrorKind.CHECKSUM_MISMATCH, "CRC-32 of decoded data does not match the container")
    return data


def compress_bytes(data, spec: PipelineSpec, *, bwt_block_size: int = DEFAULT_BLOCK_SIZE) -> bytes:
    return pipeline_compress(data, spec, bwt_block_size=bwt_block_size).to_bytes()


def decompress_bytes(blob) -> bytes:
    return pipeline_decompress(CompressedArtifact.from_bytes(blob))


def ratio(artifact: CompressedArtifact) -> Optional[float]:
    """Container size over original size (lower is better); None for empty input."""
    if artifact.original_length == 0:
        return None
    return len(artifact) / artifact.original_length


def savings_percent(artifact: CompressedArtifact) -> Optional[float]:
    r = ratio(artifact)
    return None if r is None else 100.0 * (1.0 - r)
