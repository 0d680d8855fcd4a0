"""Stage registry: one encode/decode pair per StageId."""

from __future__ import annotations

from typing import Callable

from .ari import ari_decode, ari_encode
from .bwt import DEFAULT_BLOCK_SIZE, bwt_decode, bwt_encode
from .core import CodecError, StageId
from .jbe import jbe_decode, jbe_encode
from .mtf import mtf_decode, mtf_encode
from .rle import rle_decode, rle_encode

Codec = tuple[Callable[[bytes], bytes], Callable[[bytes], bytes]]

REGISTRY: dict[StageId, Codec] = {
    StageId.RLE: (rle_encode, rle_decode),
    StageId.BWT: (bwt_encode, bwt_decode),
    StageId.MTF: (mtf_encode, mtf_decode),
    StageId.JBE: (jbe_encode, jbe_decode),
    StageId.ARI: (ari_encode, ari_decode),
}


def stage_encode(stage: StageId, data, *, bwt_block_size: int = DEFAULT_BLOCK_SIZE) -> bytes:
    stage = StageId(stage)
    if stage is StageId.BWT:
        return bwt_encode(data, bwt_block_size)
    return REGISTRY[stage][0](data)


def stage_decode(stage: StageId, data) -> bytes:
    stage = StageId(stage)
    try:
        return REGISTRY[stage][1](data)
    except CodecError as err:
        raise err.with_stage(stage)
