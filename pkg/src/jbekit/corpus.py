"""Seeded generators for the five sample types.

Every generator is a pure function of (numpy Generator state, size) and
returns exactly ``size`` bytes.
"""

from __future__ import annotations

import numpy as np

SEED_PASSAGE = """\
The harbour town woke slowly on winter mornings. Fishing boats came in before
the light, and the men who worked them carried crates of silver fish up the
stone steps to the market hall. The market opened at seven, and by eight the
hall was loud with voices, with the scrape of crates and the ring of the old
brass bell that marked each sale. Children ran between the stalls on their way
to school, and the baker on the corner sold bread that was still warm from the
oven. In the afternoon the town grew quiet again. The wind came off the sea and
rattled the shutters of the houses along the front, and the gulls settled on
the roofs to wait for the evening boats. Old sailors sat outside the inn and
told the same stories they had told for years, about storms they had survived
and ports they had seen, and the young ones listened because there was little
else to do until the tide turned. When the lamps were lit the harbour looked
like a painting, the water black and still, the boats rocking gently at their
moorings, and the lights of the houses reflected in long yellow lines across
the surface. People said the town had not changed in a hundred years, and in
most of the ways that mattered they were right. The school had a new roof and
the road to the city had been paved, but the rhythm of the days was the same,
set by the tide and the weather and the patient work of the boats. Visitors
who came in summer often said they wished they could stay, and a few of them
did, buying the narrow houses near the church and learning, slowly, to live by
the clock of the sea.
"""


def bitmap8(rng: np.random.Generator, size: int) -> bytes:
    """Indexed-colour raster: zero background with a few flat-filled shapes."""
    width = 256
    height = -(-size // width)
    img = np.zeros((height, width), dtype=np.uint8)
    yy, xx = np.mgrid[0:height, 0:width]
    budget = 0.45 * img.size
    for _ in range(int(rng.integers(3, 9))):
        if np.count_nonzero(img) >= budget:
            break
        colour = int(rng.integers(1, 256))
        if rng.random() < 0.5:
            h = int(rng.integers(1, max(2, height // 2) + 1))
            w = int(rng.integers(8, width // 2))
            y0 = int(rng.integers(0, max(1, height - h + 1)))
            x0 = int(rng.integers(0, width - w))
            img[y0:y0 + h, x0:x0 + w] = colour
        else:
            cy, cx = rng.integers(0, height), rng.integers(0, width)
            r = rng.integers(2, max(3, min(height, width) // 3))
            img[(yy - cy) ** 2 + (xx - cx) ** 2 <= r * r] = colour
    # sparse single-pixel specks, like antialiasing or dithering noise
    specks = rng.random(img.shape) < 0.01
    img[specks] = rng.integers(1, 256, size=int(specks.sum()), dtype=np.uint8)
    return img.reshape(-1)[:size].tobytes()


def bitmap24(rng: np.random.Generator, size: int) -> bytes:
    """RGB raster: smooth colour gradients plus per-pixel noise."""
    width = 128
    pixels = -(-size // 3)
    height = -(-pixels // width)
    y, x = np.mgrid[0:height, 0:width].astype(np.float64)
    phase = rng.random(3) * 2 * np.pi
    r = 255 * x / width
    g = 255 * y / max(height, 1)
    b = 127.5 + 127.5 * np.sin(x / 17 + y / 23 + phase[2])
    img = np.stack([r, g, b], axis=-1) + rng.normal(0, 6, (height, width, 3))
    return np.clip(np.rint(img), 0, 255).astype(np.uint8).reshape(-1)[:size].tobytes()


def _markov_table(words):
    table: dict[tuple[str, str], list[str]] = {}
    for a, b, c in zip(words, words[1:], words[2:]):
        table.setdefault((a, b), []).append(c)
    return table


_WORDS = SEED_PASSAGE.split()
_TABLE = _markov_table(_WORDS + _WORDS[:2])


def text(rng: np.random.Generator, size: int) -> bytes:
    """Word-level order-2 Markov chain over the seed passage."""
    start = int(rng.integers(0, len(_WORDS) - 1))
    a, b = _WORDS[start], _WORDS[start + 1]
    out = [a, b]
    length = len(a) + len(b) + 2
    while length < size:
        choices = _TABLE[(a, b)]
        c = choices[int(rng.integers(0, len(choices)))]
        out.append(c)
        length += len(c) + 1
        a, b = b, c
    lines, line = [], []
    col = 0
    for w in out:
        if col + len(w) > 72 and line:
            lines.append(" ".join(line))
            line, col = [], 0
        line.append(w)
        col += len(w) + 1
    lines.append(" ".join(line))
    return ("\n".join(lines) + "\n").encode("ascii")[:size].ljust(size, b"\n")


# (opcode prefix, immediate width): a toy register-machine instruction set
_OPCODES = [
    (b"\x55", 0), (b"\x5d", 0), (b"\xc3", 0), (b"\x90", 0),
    (b"\x48\x89\xe5", 0), (b"\x48\x83\xec", 1), (b"\x48\x8b\x45", 1),
    (b"\x89\x45", 1), (b"\xe8", 4), (b"\xb8", 4), (b"\x48\xc7\xc0", 4),
    (b"\x0f\x85", 4), (b"\x74", 1), (b"\x31\xc0", 0),
]


def binary(rng: np.random.Generator, size: int) -> bytes:
    """Executable-like image: code runs, zero-padded alignment, small tables."""
    out = bytearray()
    weights = rng.dirichlet(np.ones(len(_OPCODES)) * 0.7)
    while len(out) < size:
        kind = rng.random()
        if kind < 0.6:
            for _ in range(int(rng.integers(16, 200))):
                op, imm = _OPCODES[int(rng.choice(len(_OPCODES), p=weights))]
                out += op
                if imm:
                    # small immediates and near call targets: high bytes are mostly zero
                    value = int(rng.geometric(0.02)) if imm == 4 else int(rng.integers(0, 64))
                    out += (value & ((1 << (8 * imm)) - 1)).to_bytes(imm, "little")
            out += bytes(-len(out) % 16)
        elif kind < 0.8:
            entries = rng.integers(0, 1 << 16, size=int(rng.integers(8, 64)), dtype=np.uint32)
            out += np.sort(entries).astype("<u4").tobytes()
        elif kind < 0.9:
            words = rng.choice(_WORDS, size=int(rng.integers(4, 24)))
            out += b"\x00".join(w.encode("ascii") for w in words) + b"\x00"
        else:
            out += bytes(int(rng.integers(1, 9)) * 64)
    return bytes(out[:size])


def audio(rng: np.random.Generator, size: int) -> bytes:
    """16-bit little-endian mono PCM: sine mixtures, fades, silence, light noise."""
    count = -(-size // 2)
    rate = 8000.0
    t = np.arange(count) / rate
    signal = np.zeros(count)
    for _ in range(int(rng.integers(2, 4))):
        freq = rng.uniform(80, 1200)
        amp = rng.uniform(200, 2500)
        signal += amp * np.sin(2 * np.pi * freq * t + rng.uniform(0, 2 * np.pi))
    envelope = np.clip(np.sin(2 * np.pi * t * rng.uniform(0.5, 2.0)) * 1.5, 0, 1)
    signal *= envelope
    signal += rng.normal(0, 1.5, count)
    samples = np.clip(np.rint(signal), -32768, 32767).astype("<i2")
    return samples.tobytes()[:size]


GENERATORS = {
    "bitmap8": bitmap8,
    "bitmap24": bitmap24,
    "text": text,
    "binary": binary,
    "audio": audio,
}
