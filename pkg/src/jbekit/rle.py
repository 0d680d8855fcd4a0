"""Byte run-length coding: two equal bytes switch to run mode, then a count byte.

The count byte holds the repeats *beyond* the pair, so one token covers
2..257 bytes. Singletons are copied through. Long runs are split so that no
lone leftover byte trails a run; a run of n >= 2 bytes therefore costs exactly
3 * ceil(n / 257) bytes.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .core import as_array, truncated

MAX_TOKEN_RUN = 257


@njit(cache=True, nogil=True)
def _encode_kernel(src):
    n = src.shape[0]
    out = np.empty(n + n // 2 + 1, dtype=np.uint8)
    o = 0
    i = 0
    while i < n:
        b = src[i]
        j = i + 1
        while j < n and src[j] == b:
            j += 1
        run = j - i
        while run >= 2:
            t = min(run, MAX_TOKEN_RUN)
            if run - t == 1:
                t -= 1
            out[o] = b
            out[o + 1] = b
            out[o + 2] = t - 2
            o += 3
            run -= t
        if run == 1:
            out[o] = b
            o += 1
        i = j
    return out[:o]


@njit(cache=True, nogil=True)
def _decoded_size(src):
    # -1 signals a pair at the very end with no count byte
    n = src.shape[0]
    size = 0
    i = 0
    while i < n:
        if i + 1 < n and src[i + 1] == src[i]:
            if i + 2 >= n:
                return -1
            size += 2 + src[i + 2]
            i += 3
        else:
            size += 1
            i += 1
    return size


@njit(cache=True, nogil=True)
def _decode_kernel(src, size):
    out = np.empty(size, dtype=np.uint8)
    n = src.shape[0]
    o = 0
    i = 0
    while i < n:
        b = src[i]
        if i + 1 < n and src[i + 1] == b:
            run = 2 + src[i + 2]
            out[o:o + run] = b
            o += run
            i += 3
        else:
            out[o] = b
            o += 1
            i += 1
    return out


def rle_encode(data) -> bytes:
    return _encode_kernel(as_array(data)).tobytes()


def rle_decode(data) -> bytes:
    src = as_array(data)
    size = _decoded_size(src)
    if size < 0:
        raise truncated("RLE stream ends inside a run token (missing count byte)")
    return _decode_kernel(src, size).tobytes()
