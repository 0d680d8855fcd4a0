"""Adaptive order-0 arithmetic coder with 32-bit interval registers.

Model: 257 symbols (bytes plus an end-of-stream marker), counts start at 1,
each coded symbol adds 32 to its count, and once the total reaches 2**16
every count is halved (floor, never below 1).

Stream layout: ``original_length (u64 LE) | code bits (MSB-first, zero-padded)``.
The end-of-stream symbol terminates decoding; the length header is only an
integrity check.
"""

from __future__ import annotations

import hashlib

import numpy as np
from numba import njit

from .core import CodecError, ErrorKind, as_array, corrupt, pack_u64, read_u64

NUM_SYMBOLS = 257
EOS = 256
INCREMENT = 32
MAX_TOTAL = 1 << 16

_TOP = (1 << 32) - 1
_HALF = 1 << 31
_QUARTER = 1 << 30

# every valid stream leaves the decoder exactly this many bits past the
# last emitted code bit (32 preloaded bits minus the 2 termination bits)
_LOOKAHEAD = 30

# upper bound on symbols one code bit can carry: the likeliest symbol has
# probability at most 1 - 256/(MAX_TOTAL + INCREMENT), i.e. > 1/180 bit each
_SYMBOLS_PER_BIT = 256

_OK = 0
_RAN_OUT = 1
_BAD_TAIL = 2
_BAD_STATE = 3


@njit(cache=True, nogil=True)
def _build(counts, tree):
    # Fenwick tree over the counts, 1-indexed
    tree[:] = 0
    for i in range(NUM_SYMBOLS):
        j = i + 1
        while j <= NUM_SYMBOLS:
            tree[j] += counts[i]
            j += j & -j


@njit(cache=True, nogil=True)
def _cum_below(tree, s):
    total = 0
    while s > 0:
        total += tree[s]
        s -= s & -s
    return total


@njit(cache=True, nogil=True)
def _find(tree, target):
    # largest s with cum_below(s) <= target, plus that cumulative count
    pos = 0
    rem = target
    step = 256
    while step:
        nxt = pos + step
        if nxt <= NUM_SYMBOLS and tree[nxt] <= rem:
            pos = nxt
            rem -= tree[nxt]
        step >>= 1
    return pos, target - rem


@njit(cache=True, nogil=True)
def _update(counts, tree, total, s):
    counts[s] += INCREMENT
    total += INCREMENT
    j = s + 1
    while j <= NUM_SYMBOLS:
        tree[j] += INCREMENT
        j += j & -j
    if total >= MAX_TOTAL:
        total = 0
        for i in range(NUM_SYMBOLS):
            c = counts[i] >> 1
            if c < 1:
                c = 1
            counts[i] = c
            total += c
        # rebuild the Fenwick tree in place; a nested call here costs ~3x per symbol
        for i in range(1, NUM_SYMBOLS + 1):
            tree[i] = counts[i - 1]
        for i in range(1, NUM_SYMBOLS + 1):
            parent = i + (i & -i)
            if parent <= NUM_SYMBOLS:
                tree[parent] += tree[i]
    return total


@njit(cache=True, nogil=True)
def _encode_kernel(src, snapshot_at):
    n = src.shape[0]
    counts = np.ones(NUM_SYMBOLS, dtype=np.int64)
    tree = np.zeros(NUM_SYMBOLS + 1, dtype=np.int64)
    _build(counts, tree)
    snapshot = counts.copy()
    total = NUM_SYMBOLS
    # < 17 bits per symbol since every count >= 1 and total < 2**17
    out = np.zeros(3 * n + 16, dtype=np.uint8)
    nbits = 0
    low = 0
    high = _TOP
    pending = 0
    for k in range(n + 1):
        if k == snapshot_at:
            snapshot[:] = counts
        s = EOS if k == n else np.int64(src[k])
        cum = _cum_below(tree, s)
        span = high - low + 1
        high = low + span * (cum + counts[s]) // total - 1
        low = low + span * cum // total
        # top bits agree: that bit is settled, emit it plus any deferred opposites
        while ((low ^ high) & _HALF) == 0:
            bit = low >> 31
            out[nbits >> 3] |= bit << (7 - (nbits & 7))
            nbits += 1
            while pending > 0:
                out[nbits >> 3] |= (bit ^ 1) << (7 - (nbits & 7))
                nbits += 1
                pending -= 1
            low = (low << 1) & _TOP
            high = ((high << 1) & _TOP) | 1
        # low = 01..., high = 10...: straddling the midpoint, defer one bit
        while (low & ~high & _QUARTER) != 0:
            pending += 1
            low = (low << 1) & (_TOP >> 1)
            high = ((high << 1) & (_TOP >> 1)) | _HALF | 1
        total = _update(counts, tree, total, s)
    if snapshot_at > n:
        snapshot[:] = counts
    pending += 1
    bit = 0 if low < _QUARTER else 1
    out[nbits >> 3] |= bit << (7 - (nbits & 7))
    nbits += 1
    while pending > 0:
        out[nbits >> 3] |= (bit ^ 1) << (7 - (nbits & 7))
        nbits += 1
        pending -= 1
    return out[:(nbits + 7) >> 3], counts, snapshot


@njit(cache=True, nogil=True)
def _decode_kernel(code, limit, snapshot_at):
    nbits = code.shape[0] * 8
    counts = np.ones(NUM_SYMBOLS, dtype=np.int64)
    tree = np.zeros(NUM_SYMBOLS + 1, dtype=np.int64)
    _build(counts, tree)
    snapshot = counts.copy()
    total = NUM_SYMBOLS
    out = np.empty(limit, dtype=np.uint8)
    produced = 0
    low = 0
    high = _TOP
    value = 0
    pos = 0
    for _ in range(32):
        bit = 0
        if pos < nbits:
            bit = (code[pos >> 3] >> (7 - (pos & 7))) & 1
        pos += 1
        value = (value << 1) | bit
    status = _OK
    while True:
        if produced == snapshot_at:
            snapshot[:] = counts
        span = high - low + 1
        target = ((value - low + 1) * total - 1) // span
        s, cum = _find(tree, target)
        if s > EOS:
            status = _BAD_STATE
            break
        high = low + span * (cum + counts[s]) // total - 1
        low = low + span * cum // total
        while ((low ^ high) & _HALF) == 0:
            bit = 0
            if pos < nbits:
                bit = (code[pos >> 3] >> (7 - (pos & 7))) & 1
            pos += 1
            low = (low << 1) & _TOP
            high = ((high << 1) & _TOP) | 1
            value = ((value << 1) & _TOP) | bit
        while (low & ~high & _QUARTER) != 0:
            bit = 0
            if pos < nbits:
                bit = (code[pos >> 3] >> (7 - (pos & 7))) & 1
            pos += 1
            low = (low << 1) & (_TOP >> 1)
            high = ((high << 1) & (_TOP >> 1)) | _HALF | 1
            value = (value & _HALF) | ((value << 1) & (_TOP >> 1)) | bit
        total = _update(counts, tree, total, s)
        if s == EOS:
            used = pos - _LOOKAHEAD
            if used > nbits:
                status = _RAN_OUT
            elif nbits - used > 7:
                status = _BAD_TAIL
            else:
                # the encoder pads the final byte with zero bits
                for p in range(max(used, 0), nbits):
                    if (code[p >> 3] >> (7 - (p & 7))) & 1:
                        status = _BAD_TAIL
            break
        if pos - nbits > _LOOKAHEAD:
            status = _RAN_OUT
            break
        # past the limit keep decoding without storing, so a truncated
        # stream is still told apart from a wrong length header
        if produced < limit:
            out[produced] = s
        produced += 1
    if snapshot_at > produced:
        snapshot[:] = counts
    return out[:min(produced, limit)], produced, status, counts, snapshot


def ari_encode_model(data, snapshot_at: int = -1):
    """Encode and also return the final model counts and a snapshot.

    The snapshot is taken just before symbol index ``snapshot_at`` is coded
    (any index past the end means after the end-of-stream symbol).
    """
    src = as_array(data)
    code, counts, snapshot = _encode_kernel(src, snapshot_at)
    return pack_u64(len(src)) + code.tobytes(), counts, snapshot


def ari_decode_model(data, snapshot_at: int = -1):
    buf = as_array(data)
    expected = read_u64(buf, 0, "ARI original length")
    code = buf[8:]
    if expected > (len(code) * 8 + 32) * _SYMBOLS_PER_BIT:
        raise corrupt(f"ARI header claims {expected} bytes, far more than {len(code)} code bytes can carry")
    out, produced, status, counts, snapshot = _decode_kernel(code, expected, snapshot_at)
    if status == _RAN_OUT:
        raise corrupt("ARI code stream is truncated: it ends before the end-of-stream symbol")
    if status == _BAD_TAIL:
        raise corrupt("ARI code stream has trailing bytes or nonzero padding after the end-of-stream symbol")
    if status == _BAD_STATE:
        raise corrupt("ARI decoder reached an impossible interval state")
    if produced != expected:
        raise CodecError(ErrorKind.LENGTH_MISMATCH, f"ARI decoded {produced} bytes, header says {expected}")
    return out.tobytes(), counts, snapshot


def ari_encode(data) -> bytes:
    return ari_encode_model(data)[0]


def ari_decode(data) -> bytes:
    return ari_decode_model(data)[0]


def model_digest(counts: np.ndarray) -> str:
    return hashlib.sha256(np.asarray(counts, dtype="<i8").tobytes()).hexdigest()
