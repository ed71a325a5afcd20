"""Bit-exact reading and writing of 8-bit grayscale PGM (P2/P5) and BMP files."""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ImageFormatError

PGM_BINARY = "pgm"
PGM_ASCII = "pgm-ascii"
BMP = "bmp"
FORMATS = (PGM_BINARY, PGM_ASCII, BMP)

_WHITESPACE = b" \t\r\n\v\f"

_FILE_HEADER = struct.Struct("<2sIHHI")
_INFO_HEADER = struct.Struct("<IiiHHIIiiII")
# 40-byte BITMAPINFOHEADER prefix shared by the V4 and V5 variants
_INFO_HEADER_SIZES = (40, 52, 56, 108, 124)


@dataclass(frozen=True, eq=False)
class GrayImage:
    """An 8-bit single-channel raster, stored as a ``(height, width)`` uint8 array."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D raster, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"image dimensions must be >= 1, got {arr.shape}")
        if arr.dtype != np.uint8:
            if arr.size and (arr.min() < 0 or arr.max() > 255):
                raise ValueError("pixel values must lie in [0, 255]")
            arr = arr.astype(np.uint8)
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @classmethod
    def from_rows(cls, rows) -> GrayImage:
        return cls(np.array(rows, dtype=np.int64))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.pixels.shape

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    __hash__ = None

    def __repr__(self):
        return f"GrayImage(width={self.width}, height={self.height})"


# -- PGM ---------------------------------------------------------------------


class _Tokenizer:
    """Whitespace/comment aware token reader over a PNM header."""

    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    def _skip(self):
        data, n = self.data, len(self.data)
        while self.pos < n:
            ch = data[self.pos : self.pos + 1]
            if ch not in _WHITESPACE + b"#":
                return
            if ch == b"#":
                end = data.find(b"\n", self.pos)
                self.pos = n if end < 0 else end + 1
            else:
                self.pos += 1

    def next_int(self, what: str) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.data) and self.data[self.pos : self.pos + 1].isdigit():
            self.pos += 1
        if start == self.pos:
            if self.pos >= len(self.data):
                raise ImageFormatError(f"truncated PGM: missing {what}")
            raise ImageFormatError(
                f"malformed PGM: expected integer for {what}, "
                f"got {self.data[self.pos:self.pos + 8]!r}"
            )
        return int(self.data[start : self.pos])


def _pgm_header(data: bytes):
    if len(data) < 2 or data[:2] not in (b"P2", b"P5"):
        raise ImageFormatError(f"not a P2/P5 PGM stream (magic {data[:2]!r})")
    tok = _Tokenizer(data, 2)
    if len(data) > 2 and data[2:3] not in _WHITESPACE + b"#":
        raise ImageFormatError("malformed PGM: magic not followed by whitespace")
    width = tok.next_int("width")
    height = tok.next_int("height")
    maxval = tok.next_int("maxval")
    if width < 1 or height < 1:
        raise ImageFormatError(f"PGM has zero dimension ({width}x{height})")
    if not 1 <= maxval <= 255:
        raise ImageFormatError(f"PGM maxval {maxval} is outside 1..255")
    return data[:2], width, height, maxval, tok


def load_pgm(data: bytes) -> GrayImage:
    """Parse a binary (P5) or plain (P2) PGM stream.

    Pixel values are taken as stored; rasters with ``maxval < 255`` are not
    rescaled, so no intensity information is altered on load.
    """
    data = bytes(data)
    magic, width, height, maxval, tok = _pgm_header(data)
    count = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates maxval from the raster
        if tok.pos >= len(data) or data[tok.pos : tok.pos + 1] not in _WHITESPACE:
            raise ImageFormatError("truncated PGM: no raster after header")
        start = tok.pos + 1
        raw = data[start : start + count]
        if len(raw) < count:
            raise ImageFormatError(
                f"truncated PGM raster: expected {count} bytes, got {len(raw)}"
            )
        pixels = np.frombuffer(raw, dtype=np.uint8).reshape(height, width)
    else:
        values = [tok.next_int("pixel value") for _ in range(count)]
        pixels = np.array(values, dtype=np.int64).reshape(height, width)
    if pixels.max() > maxval:
        raise ImageFormatError(f"PGM pixel value exceeds maxval {maxval}")
    return GrayImage(pixels.astype(np.uint8))


def save_pgm(img: GrayImage, mode: str = "binary") -> bytes:
    """Serialize to PGM with maxval 255; ``mode`` is ``"binary"`` (P5) or ``"ascii"`` (P2)."""
    header = f"{img.width} {img.height}\n255\n"
    if mode == "binary":
        return b"P5\n" + header.encode("ascii") + img.pixels.tobytes()
    if mode == "ascii":
        lines = []
        for row in img.pixels:
            # plain PGM lines should stay under 70 characters
            line = []
            for v in row:
                s = str(int(v))
                if line and sum(len(t) + 1 for t in line) + len(s) > 70:
                    lines.append(" ".join(line))
                    line = []
                line.append(s)
            lines.append(" ".join(line))
        return ("P2\n" + header + "\n".join(lines) + "\n").encode("ascii")
    raise ValueError(f"mode must be 'binary' or 'ascii', not {mode!r}")


# -- BMP ---------------------------------------------------------------------


def _row_stride(width: int) -> int:
    return 4 * ((width + 3) // 4)


def save_bmp8(img: GrayImage) -> bytes:
    """Serialize as an uncompressed 8-bit BMP with an identity grayscale palette."""
    width, height = img.width, img.height
    stride = _row_stride(width)
    palette = bytes(b for i in range(256) for b in (i, i, i, 0))
    offset = _FILE_HEADER.size + _INFO_HEADER.size + len(palette)
    image_size = stride * height

    rows = np.zeros((height, stride), dtype=np.uint8)
    rows[:, :width] = img.pixels[::-1]

    file_header = _FILE_HEADER.pack(b"BM", offset + image_size, 0, 0, offset)
    info_header = _INFO_HEADER.pack(
        _INFO_HEADER.size, width, height, 1, 8, 0, image_size, 2835, 2835, 256, 0
    )
    return file_header + info_header + palette + rows.tobytes()


def load_bmp8(data: bytes) -> GrayImage:
    """Parse an uncompressed 8-bit palettized BMP whose palette is grayscale."""
    data = bytes(data)
    if len(data) < _FILE_HEADER.size + _INFO_HEADER.size:
        raise ImageFormatError("truncated BMP header")
    magic, _, _, _, offset = _FILE_HEADER.unpack_from(data, 0)
    if magic != b"BM":
        raise ImageFormatError(f"not a BMP stream (magic {magic!r})")
    (header_size, width, height, planes, bpp, compression, _, _, _,
     colors_used, _) = _INFO_HEADER.unpack_from(data, _FILE_HEADER.size)
    if header_size not in _INFO_HEADER_SIZES:
        raise ImageFormatError(f"unsupported BMP info header size {header_size}")
    if bpp != 8:
        raise ImageFormatError(f"unsupported BMP bit depth {bpp}; only 8 bpp is handled")
    if compression != 0:
        raise ImageFormatError(f"compressed BMP (compression={compression}) is unsupported")
    if planes != 1:
        raise ImageFormatError(f"BMP planes must be 1, got {planes}")
    if width < 1 or height == 0:
        raise ImageFormatError(f"BMP has zero dimension ({width}x{height})")

    n_colors = colors_used or 256
    if n_colors > 256:
        raise ImageFormatError(f"BMP palette of {n_colors} entries exceeds 256")
    pal_start = _FILE_HEADER.size + header_size
    pal_bytes = data[pal_start : pal_start + 4 * n_colors]
    if len(pal_bytes) < 4 * n_colors:
        raise ImageFormatError("truncated BMP palette")
    palette = np.frombuffer(pal_bytes, dtype=np.uint8).reshape(n_colors, 4)
    if not (np.array_equal(palette[:, 0], palette[:, 1])
            and np.array_equal(palette[:, 1], palette[:, 2])):
        raise ImageFormatError("BMP palette is not grayscale")
    gray = palette[:, 0]

    bottom_up = height > 0
    height = abs(height)
    stride = _row_stride(width)
    raw = data[offset : offset + stride * height]
    if len(raw) < stride * height:
        raise ImageFormatError(
            f"truncated BMP pixel data: expected {stride * height} bytes, got {len(raw)}"
        )
    indices = np.frombuffer(raw, dtype=np.uint8).reshape(height, stride)[:, :width]
    if bottom_up:
        indices = indices[::-1]
    if indices.max() >= n_colors:
        raise ImageFormatError("BMP pixel index outside the palette")
    return GrayImage(gray[indices])


# -- format dispatch ---------------------------------------------------------


def sniff_format(data: bytes) -> str:
    head = bytes(data[:2])
    if head == b"P5":
        return PGM_BINARY
    if head == b"P2":
        return PGM_ASCII
    if head == b"BM":
        return BMP
    raise ImageFormatError(f"unrecognized image magic {head!r}; expected P2, P5 or BM")


def load_image(data: bytes) -> tuple[GrayImage, str]:
    """Decode PGM or BMP bytes, returning the image and the detected format name."""
    fmt = sniff_format(data)
    img = load_bmp8(data) if fmt == BMP else load_pgm(data)
    return img, fmt


def save_image(img: GrayImage, fmt: str) -> bytes:
    if fmt == BMP:
        return save_bmp8(img)
    if fmt == PGM_BINARY:
        return save_pgm(img, "binary")
    if fmt == PGM_ASCII:
        return save_pgm(img, "ascii")
    raise ValueError(f"unknown image format {fmt!r}; choose from {FORMATS}")


def read_image(path) -> tuple[GrayImage, str]:
    return load_image(Path(path).read_bytes())


def write_image(path, img: GrayImage, fmt: str) -> None:
    Path(path).write_bytes(save_image(img, fmt))
