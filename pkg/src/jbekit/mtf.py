"""Move-to-front over the byte alphabet, table starting at the identity 0..255."""

from __future__ import annotations

import numpy as np
from numba import njit

from .core import as_array


@njit(cache=True, nogil=True)
def _encode_kernel(src):
    table = np.arange(256).astype(np.uint8)
    out = np.empty(src.shape[0], dtype=np.uint8)
    for k in range(src.shape[0]):
        b = src[k]
        i = 0
        while table[i] != b:
            i += 1
        out[k] = i
        while i > 0:
            table[i] = table[i - 1]
            i -= 1
        table[0] = b
    return out


@njit(cache=True, nogil=True)
def _decode_kernel(src):
    table = np.arange(256).astype(np.uint8)
    out = np.empty(src.shape[0], dtype=np.uint8)
    for k in range(src.shape[0]):
        i = np.int64(src[k])
        b = table[i]
        out[k] = b
        while i > 0:
            table[i] = table[i - 1]
            i -= 1
        table[0] = b
    return out


def mtf_encode(data) -> bytes:
    return _encode_kernel(as_array(data)).tobytes()


def mtf_decode(data) -> bytes:
    return _decode_kernel(as_array(data)).tobytes()
