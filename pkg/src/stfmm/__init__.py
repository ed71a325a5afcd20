"""Hide text in grayscale images using the five modulus method (ST-FMM)."""

from .charset import (
    ASCII128,
    ASCII256,
    CHARSETS,
    LOWER26,
    PRINTABLE95,
    SPACE_SENTINEL,
    Charset,
    IndexEncoding,
    char_to_index,
    decode_index,
    encode_index,
    get_charset,
    window_size_for,
)
from .codec import (
    StegoParams,
    WindowGrid,
    capacity,
    embed,
    embed_then_report,
    extract,
)
from .errors import (
    CapacityExceeded,
    CorruptEncoding,
    CorruptWindow,
    ImageFormatError,
    StegoError,
    UnsupportedCharacter,
)
from .fmm import fmm_image, fmm_pixel
from .image_io import (
    GrayImage,
    load_bmp8,
    load_image,
    load_pgm,
    read_image,
    save_bmp8,
    save_image,
    save_pgm,
    write_image,
)
from .metrics import QualityReport, mse, psnr

__version__ = "0.1.0"

__all__ = [
    "ASCII128",
    "ASCII256",
    "CHARSETS",
    "LOWER26",
    "PRINTABLE95",
    "SPACE_SENTINEL",
    "CapacityExceeded",
    "Charset",
    "CorruptEncoding",
    "CorruptWindow",
    "GrayImage",
    "ImageFormatError",
    "IndexEncoding",
    "QualityReport",
    "StegoError",
    "StegoParams",
    "UnsupportedCharacter",
    "WindowGrid",
    "capacity",
    "char_to_index",
    "decode_index",
    "embed",
    "embed_then_report",
    "encode_index",
    "extract",
    "fmm_image",
    "fmm_pixel",
    "get_charset",
    "load_bmp8",
    "load_image",
    "load_pgm",
    "mse",
    "psnr",
    "read_image",
    "save_bmp8",
    "save_image",
    "save_pgm",
    "window_size_for",
    "write_image",
]
