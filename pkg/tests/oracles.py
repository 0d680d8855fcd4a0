"""Naive reference implementations, written for clarity rather than speed.

None of these import from jbekit's codec modules.
"""

import struct


def jbe_oracle(data: bytes) -> bytes:
    """J-bit encoding walked one byte at a time with a temporary bit byte."""
    data_i = bytearray()
    data_ii = bytearray()
    temp = 0
    filled = 0
    for byte in data:                      # read input per byte
        if byte != 0:                      # nonzero: data I gets the byte, temp gets a 1
            data_i.append(byte)
            temp = (temp << 1) | 1
        else:                              # zero: temp gets a 0 only
            temp = temp << 1
        filled += 1
        if filled == 8:                    # full temporary byte goes to data II
            data_ii.append(temp)
            temp = 0
            filled = 0
    if filled:                             # end of input: flush a partial byte, low bits zero
        data_ii.append(temp << (8 - filled))
    return struct.pack("<Q", len(data)) + bytes(data_i) + bytes(data_ii)


def jbe_decode_oracle(stream: bytes) -> bytes:
    (n,) = struct.unpack_from("<Q", stream)
    bitmap = stream[len(stream) - (n + 7) // 8:]
    data_i = iter(stream[8:len(stream) - (n + 7) // 8])
    out = bytearray()
    for k in range(n):
        bit = (bitmap[k // 8] >> (7 - k % 8)) & 1
        out.append(next(data_i) if bit else 0)
    return bytes(out)


def bwt_oracle(block: bytes) -> tuple[int, bytes]:
    """Sort every rotation explicitly; ties keep rotation offset order."""
    n = len(block)
    rotations = sorted(range(n), key=lambda i: (block[i:] + block[:i], i))
    return rotations.index(0), bytes(block[(i - 1) % n] for i in rotations)


def unbwt_oracle(primary: int, last: bytes) -> bytes:
    """Rebuild the rotation table column by column (prepend and sort)."""
    table = [b""] * len(last)
    for _ in range(len(last)):
        table = sorted(bytes([c]) + row for c, row in zip(last, table))
    return table[primary]


def mtf_oracle(data: bytes) -> bytes:
    table = list(range(256))
    out = bytearray()
    for b in data:
        i = table.index(b)
        out.append(i)
        table.pop(i)
        table.insert(0, b)
    return bytes(out)


def mtf_decode_oracle(codes: bytes) -> bytes:
    table = list(range(256))
    out = bytearray()
    for c in codes:
        b = table.pop(c)
        out.append(b)
        table.insert(0, b)
    return bytes(out)


def rle_oracle(data: bytes) -> bytes:
    """Scan maximal runs, then cut each into 2..257-byte tokens with no lone leftover."""
    out = bytearray()
    i = 0
    while i < len(data):
        j = i
        while j < len(data) and data[j] == data[i]:
            j += 1
        remaining = j - i
        while remaining >= 2:
            take = min(remaining, 257)
            if remaining - take == 1:
                take -= 1
            out += bytes([data[i], data[i], take - 2])
            remaining -= take
        if remaining:
            out.append(data[i])
        i = j
    return bytes(out)


class ModelOracle:
    """Plain-Python replica of the adaptive frequency model."""

    def __init__(self):
        self.counts = [1] * 257

    def update(self, symbol):
        self.counts[symbol] += 32
        if sum(self.counts) >= 1 << 16:
            self.counts = [max(c // 2, 1) for c in self.counts]
