"""J-bit encoding.

The input is split into two streams: ``data_i`` holds every nonzero byte in
order, ``data_ii`` is a bitmap with one bit per input byte (1 = nonzero,
0 = the byte was 0x00), packed MSB-first and zero-padded in the last byte.

Serialized layout::

    original_length (u64 LE) | data_i | data_ii (ceil(original_length / 8) bytes)

The length of ``data_ii`` is implied by ``original_length``, so it is not
stored; ``data_i`` takes whatever lies between the header and the bitmap.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .core import CodecError, ErrorKind, as_array, corrupt, pack_u64, read_u64, truncated

HEADER_SIZE = 8


class JbeParts(NamedTuple):
    original_length: int
    data_i: bytes
    data_ii: bytes


def bitmap_size(original_length: int) -> int:
    return (original_length + 7) // 8


def jbe_encode_split(data) -> JbeParts:
    arr = as_array(data)
    nonzero = arr != 0
    return JbeParts(len(arr), arr[nonzero].tobytes(), np.packbits(nonzero).tobytes())


def jbe_encode(data) -> bytes:
    n, data_i, data_ii = jbe_encode_split(data)
    return pack_u64(n) + data_i + data_ii


def jbe_join(original_length: int, data_i, data_ii) -> bytes:
    """Rebuild the original bytes from the two sub-streams."""
    need = bitmap_size(original_length)
    if len(data_ii) < need:
        raise truncated(f"bitmap has {len(data_ii)} bytes, length {original_length} needs {need}")
    if len(data_ii) > need:
        raise CodecError(ErrorKind.LENGTH_MISMATCH,
                         f"bitmap has {len(data_ii)} bytes, length {original_length} needs {need}")
    bits = np.unpackbits(as_array(data_ii))
    if bits[original_length:].any():
        raise corrupt("nonzero padding bits after the last bitmap position")
    mask = bits[:original_length].astype(bool)
    ones = int(np.count_nonzero(mask))
    values = as_array(data_i)
    if ones != len(values):
        raise CodecError(ErrorKind.LENGTH_MISMATCH,
                         f"bitmap marks {ones} nonzero bytes but data I holds {len(values)}")
    if not values.all():
        raise corrupt("data I contains a zero byte")
    out = np.zeros(original_length, dtype=np.uint8)
    out[mask] = values
    return out.tobytes()


def jbe_decode(data) -> bytes:
    buf = memoryview(data).cast("B")
    n = read_u64(buf, 0, "JBE original length")
    body = len(buf) - HEADER_SIZE
    need = bitmap_size(n)
    if body < need:
        raise truncated(f"JBE stream declares {n} bytes; bitmap needs {need} bytes but only {body} remain")
    split = len(buf) - need
    return jbe_join(n, buf[HEADER_SIZE:split], buf[split:])
