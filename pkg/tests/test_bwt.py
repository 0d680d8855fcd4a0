import itertools
import struct
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jbekit import CodecError, ErrorKind, bwt_decode, bwt_encode
from jbekit.bwt import DEFAULT_BLOCK_SIZE, bwt_block, unbwt_block
from oracles import bwt_oracle, unbwt_oracle


def blocks(stream):
    (size,) = struct.unpack_from("<I", stream)
    pos, out = 4, []
    while pos < len(stream):
        length, primary = struct.unpack_from("<II", stream, pos)
        out.append((length, primary, stream[pos + 8:pos + 8 + length]))
        pos += 8 + length
    return size, out


def test_banana():
    assert bwt_oracle(b"banana") == (3, b"nnbaaa")
    size, bl = blocks(bwt_encode(b"banana"))
    assert size == DEFAULT_BLOCK_SIZE
    assert bl == [(6, 3, b"nnbaaa")]
    assert bwt_decode(bwt_encode(b"banana")) == b"banana"


def test_single_byte():
    assert blocks(bwt_encode(b"A"))[1] == [(1, 0, b"A")]


def test_decode_from_parts():
    stream = struct.pack("<III", 16, 6, 3) + b"nnbaaa"
    assert bwt_decode(stream) == b"banana"
    assert bwt_decode(struct.pack("<I", 16)) == b""


@pytest.mark.parametrize("stream, kind", [
    (b"\x00\x00\x10", ErrorKind.TRUNCATED_INPUT),
    (struct.pack("<III", 16, 6, 6) + b"nnbaaa", ErrorKind.CORRUPT_STREAM),
    (struct.pack("<III", 16, 6, 1) + b"nnb", ErrorKind.TRUNCATED_INPUT),
    (struct.pack("<II", 16, 6), ErrorKind.TRUNCATED_INPUT),
    (struct.pack("<III", 4, 6, 1) + b"nnbaaa", ErrorKind.CORRUPT_STREAM),
    (struct.pack("<I", 0), ErrorKind.CORRUPT_STREAM),
    (struct.pack("<III", 4, 0, 0), ErrorKind.CORRUPT_STREAM),
    (struct.pack("<III", 4, 2, 0) + b"ab" + struct.pack("<II", 2, 0) + b"ab", ErrorKind.CORRUPT_STREAM),
])
def test_decode_errors(stream, kind):
    with pytest.raises(CodecError) as e:
        bwt_decode(stream)
    assert e.value.kind is kind


def test_exhaustive_two_symbols():
    for n in range(1, 9):
        for combo in itertools.product(b"ab", repeat=n):
            x = bytes(combo)
            primary, last = bwt_block(np.frombuffer(x, dtype=np.uint8))
            assert (primary, last.tobytes()) == bwt_oracle(x)
            assert unbwt_oracle(primary, last.tobytes()) == x
            assert bwt_decode(bwt_encode(x)) == x


@pytest.mark.parametrize("x", [b"aaaa", b"abab", b"abcabcabc", bytes(100), b"\xff" * 33, b"mississippi"])
def test_periodic_blocks(x):
    primary, last = bwt_block(np.frombuffer(x, dtype=np.uint8))
    assert (primary, last.tobytes()) == bwt_oracle(x)
    assert unbwt_block(last, primary).tobytes() == x


@settings(max_examples=200)
@given(st.binary(min_size=1, max_size=40) | st.lists(st.sampled_from(b"ab"), min_size=1, max_size=40).map(bytes))
def test_matches_oracle_random(x):
    primary, last = bwt_block(np.frombuffer(x, dtype=np.uint8))
    assert (primary, last.tobytes()) == bwt_oracle(x)


@pytest.mark.parametrize("block_size", [1, 2, 7, 4096, DEFAULT_BLOCK_SIZE])
def test_roundtrip_block_sizes(block_size):
    rng = np.random.default_rng(block_size)
    for kind in range(3):
        n = int(rng.integers(0, 4 * min(block_size, 4096) + 1))
        if kind == 0:
            x = rng.integers(0, 256, n, dtype=np.uint8).tobytes()
        elif kind == 1:
            x = rng.integers(0, 3, n, dtype=np.uint8).tobytes()
        else:
            x = (b"abcab" * n)[:n]
        enc = bwt_encode(x, block_size)
        assert bwt_decode(enc) == x
        size, bl = blocks(enc)
        assert size == block_size
        assert all(length == block_size for length, _, _ in bl[:-1])
        for (length, _, payload), start in zip(bl, range(0, n, block_size)):
            assert Counter(payload) == Counter(x[start:start + block_size])


def test_bad_block_size():
    with pytest.raises(ValueError):
        bwt_encode(b"abc", 0)
