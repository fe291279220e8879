from .archive import (
    MAGIC,
    VERSION,
    decode_level,
    deserialize,
    encode_final_text,
    encode_level,
    serialize,
)
from .packed import PackedIntArray, pack_fixed, unpack_fixed
from .simple8b import GROUP_SIZE, ITEM_WIDTH, s8b_decode, s8b_encode

__all__ = [
    "MAGIC", "VERSION", "GROUP_SIZE", "ITEM_WIDTH", "PackedIntArray",
    "decode_level", "deserialize", "encode_final_text", "encode_level",
    "pack_fixed", "s8b_decode", "s8b_encode", "serialize", "unpack_fixed",
]
