"""J-bit encoding plus RLE/BWT/MTF/arithmetic stages and a pipeline composer."""

from .ari import ari_decode, ari_encode
from .bwt import DEFAULT_BLOCK_SIZE, bwt_decode, bwt_encode
from .core import BitReader, BitWriter, CodecError, ErrorKind, StageId
from .jbe import jbe_decode, jbe_encode, jbe_encode_split, jbe_join
from .mtf import mtf_decode, mtf_encode
from .pipeline import (
    PRESETS,
    CompressedArtifact,
    PipelineSpec,
    compress_bytes,
    decompress_bytes,
    pipeline_compress,
    pipeline_decompress,
    ratio,
)
from .rle import rle_decode, rle_encode
from .stages import stage_decode, stage_encode

__version__ = "0.1.0"
