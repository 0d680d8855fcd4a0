"""Block-mode Burrows-Wheeler transform over full cyclic rotations (no sentinel).

Stream layout, all little-endian::

    block_size u32
    repeated: block_length u32 | primary_index u32 | last column (block_length bytes)
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .core import as_array, corrupt, pack_u32, read_u32, truncated

DEFAULT_BLOCK_SIZE = 1 << 20
_BLOCK_HEADER = 8


@njit(cache=True, nogil=True)
def _rotation_order(block):
    n = block.shape[0]
    order = np.empty(n, dtype=np.int64)
    rank = np.empty(n, dtype=np.int64)
    tmp = np.empty(n, dtype=np.int64)
    # classes by first byte; counting sort keeps offsets ascending within a class
    bucket = np.zeros(257, dtype=np.int64)
    for i in range(n):
        bucket[block[i] + 1] += 1
    for c in range(256):
        bucket[c + 1] += bucket[c]
    for i in range(n):
        b = block[i]
        order[bucket[b]] = i
        bucket[b] += 1
    classes = 0
    prev = -1
    for j in range(n):
        b = np.int64(block[order[j]])
        if b != prev:
            classes += 1
            prev = b
        rank[order[j]] = classes - 1
    count = np.zeros(n + 1, dtype=np.int64)
    k = 1
    while classes < n and k < n:
        # order by (rank[i], rank[i + k]): the current order already sorts
        # i + k, so shift it back by k and counting-sort stably on rank[i]
        for j in range(n):
            i = order[j] - k
            if i < 0:
                i += n
            tmp[j] = i
        count[:classes + 1] = 0
        for i in range(n):
            count[rank[i] + 1] += 1
        for c in range(classes):
            count[c + 1] += count[c]
        for j in range(n):
            i = tmp[j]
            order[count[rank[i]]] = i
            count[rank[i]] += 1
        refined = 0
        prev_a = -1
        prev_b = -1
        for j in range(n):
            i = order[j]
            i2 = i + k
            if i2 >= n:
                i2 -= n
            a = rank[i]
            b = rank[i2]
            if a != prev_a or b != prev_b:
                refined += 1
                prev_a = a
                prev_b = b
            tmp[i] = refined - 1
        rank, tmp = tmp, rank
        if refined == classes:
            # no split at 2k means none at any longer prefix either
            break
        classes = refined
        k *= 2
    if classes < n:
        # equal rotations: stable pass over offsets to order them ascending
        count[:classes + 1] = 0
        for i in range(n):
            count[rank[i] + 1] += 1
        for c in range(classes):
            count[c + 1] += count[c]
        for i in range(n):
            order[count[rank[i]]] = i
            count[rank[i]] += 1
    return order


def rotation_order(block: np.ndarray) -> np.ndarray:
    """Start offsets of all cyclic rotations of ``block`` in sorted order.

    Equal rotations (periodic blocks) keep ascending offset order.
    """
    return _rotation_order(np.ascontiguousarray(block, dtype=np.uint8))


def bwt_block(block: np.ndarray) -> tuple[int, np.ndarray]:
    """Return (primary_index, last_column) for one block."""
    order = rotation_order(block)
    last = block[(order - 1) % len(block)]
    primary = int(np.flatnonzero(order == 0)[0])
    return primary, last


@njit(cache=True, nogil=True)
def _walk(last, links, primary):
    n = last.shape[0]
    out = np.empty(n, dtype=np.uint8)
    p = links[primary]
    for i in range(n):
        out[i] = last[p]
        p = links[p]
    return out


def unbwt_block(last: np.ndarray, primary: int) -> np.ndarray:
    links = np.argsort(last, kind="stable")
    return _walk(last, links, primary)


def bwt_encode(data, block_size: int = DEFAULT_BLOCK_SIZE) -> bytes:
    if not 1 <= block_size < 1 << 32:
        raise ValueError(f"block_size must be in [1, 2**32), got {block_size}")
    src = as_array(data)
    parts = [pack_u32(block_size)]
    for start in range(0, len(src), block_size):
        block = src[start:start + block_size]
        primary, last = bwt_block(block)
        parts += [pack_u32(len(block)), pack_u32(primary), last.tobytes()]
    return b"".join(parts)


def bwt_decode(data) -> bytes:
    buf = as_array(data)
    block_size = read_u32(buf, 0, "BWT block size")
    if block_size == 0:
        raise corrupt("BWT block size is zero")
    pos = 4
    out = []
    short_seen = False
    while pos < len(buf):
        length = read_u32(buf, pos, "BWT block length")
        primary = read_u32(buf, pos + 4, "BWT primary index")
        if length == 0 or length > block_size:
            raise corrupt(f"BWT block length {length} outside 1..{block_size}")
        if short_seen:
            raise corrupt("BWT short block is not the last block")
        if primary >= length:
            raise corrupt(f"BWT primary index {primary} >= block length {length}")
        pos += _BLOCK_HEADER
        if len(buf) - pos < length:
            raise truncated(f"BWT block declares {length} bytes, {len(buf) - pos} remain")
        out.append(unbwt_block(buf[pos:pos + length], primary))
        short_seen = length < block_size
        pos += length
    if not out:
        return b""
    return np.concatenate(out).tobytes()
