"""Gabidulin codes and randomized decoding beyond half the minimum rank distance."""
from rankdec.ffield import FieldTower
from rankdec.gabidulin import DecodeOutcome, GabidulinCode, decode_error_erasure, decode_unique, encode
from rankdec.randdec import RandDecoderConfig, randomized_decode

__all__ = [
    "FieldTower",
    "GabidulinCode",
    "DecodeOutcome",
    "encode",
    "decode_unique",
    "decode_error_erasure",
    "RandDecoderConfig",
    "randomized_decode",
]
__version__ = "0.1.0"
