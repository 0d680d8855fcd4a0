"""Shared types for every codec stage: stage ids, errors, bit I/O, integer framing."""

from __future__ import annotations

import enum
import struct

import numpy as np


class StageId(enum.IntEnum):
    # values double as the one-byte ids in the container header
    RLE = 1
    BWT = 2
    MTF = 3
    JBE = 4
    ARI = 5

    @classmethod
    def parse(cls, name: str) -> "StageId":
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown stage name {name!r}") from None


class ErrorKind(enum.Enum):
    TRUNCATED_INPUT = "TruncatedInput"
    CORRUPT_STREAM = "CorruptStream"
    LENGTH_MISMATCH = "LengthMismatch"
    UNKNOWN_STAGE = "UnknownStage"
    CHECKSUM_MISMATCH = "ChecksumMismatch"


class CodecError(Exception):
    """Raised when a stream cannot be decoded.

    ``stage`` is filled in by the pipeline when the failure happened inside a
    particular stage, so diagnostics can name it.
    """

    def __init__(self, kind: ErrorKind, detail: str, stage: StageId | None = None):
        self.kind = kind
        self.detail = detail
        self.stage = stage
        super().__init__(str(self))

    def __str__(self) -> str:
        where = f"[{self.stage.name}] " if self.stage is not None else ""
        return f"{where}{self.kind.value}: {self.detail}"

    def with_stage(self, stage: StageId) -> "CodecError":
        if self.stage is None:
            self.stage = stage
        return self


def truncated(detail: str) -> CodecError:
    return CodecError(ErrorKind.TRUNCATED_INPUT, detail)


def corrupt(detail: str) -> CodecError:
    return CodecError(ErrorKind.CORRUPT_STREAM, detail)


_U64 = struct.Struct("<Q")
_U32 = struct.Struct("<I")


def pack_u64(value: int) -> bytes:
    return _U64.pack(value)


def pack_u32(value: int) -> bytes:
    return _U32.pack(value)


def read_u64(buf, offset: int, what: str) -> int:
    if len(buf) - offset < 8:
        raise truncated(f"{what}: need 8 bytes at offset {offset}, have {max(len(buf) - offset, 0)}")
    return _U64.unpack_from(buf, offset)[0]


def read_u32(buf, offset: int, what: str) -> int:
    if len(buf) - offset < 4:
        raise truncated(f"{what}: need 4 bytes at offset {offset}, have {max(len(buf) - offset, 0)}")
    return _U32.unpack_from(buf, offset)[0]


def as_array(data) -> np.ndarray:
    """Zero-copy uint8 view of any bytes-like object."""
    if isinstance(data, np.ndarray):
        return data.astype(np.uint8, copy=False).reshape(-1)
    return np.frombuffer(memoryview(data).cast("B"), dtype=np.uint8)


class BitWriter:
    """Accumulates bits MSB-first; the first bit written lands in bit 7."""

    def __init__(self):
        self._out = bytearray()
        self._acc = 0
        self._nbits = 0
        self.bits_written = 0

    def write(self, bit: int) -> "BitWriter":
        self._acc = (self._acc << 1) | (1 if bit else 0)
        self._nbits += 1
        self.bits_written += 1
        if self._nbits == 8:
            self._out.append(self._acc)
            self._acc = 0
            self._nbits = 0
        return self

    def write_bits(self, value: int, count: int) -> "BitWriter":
        for shift in range(count - 1, -1, -1):
            self.write((value >> shift) & 1)
        return self

    def flush(self) -> bytes:
        """Return everything written, zero-padding the last partial byte."""
        out = bytes(self._out)
        if self._nbits:
            out += bytes([self._acc << (8 - self._nbits)])
        return out


class BitReader:
    def __init__(self, data):
        self._data = bytes(data)
        self._pos = 0  # absolute bit position

    @property
    def bits_remaining(self) -> int:
        return len(self._data) * 8 - self._pos

    def read(self) -> int:
        if self._pos >= len(self._data) * 8:
            raise truncated("bit reader exhausted")
        byte = self._data[self._pos >> 3]
        bit = (byte >> (7 - (self._pos & 7))) & 1
        self._pos += 1
        return bit

    def read_bits(self, count: int) -> int:
        value = 0
        for _ in range(count):
            value = (value << 1) | self.read()
        return value
