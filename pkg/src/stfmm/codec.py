"""Embedding and extraction of text in FMM-quantized grayscale images.

The image is tiled into complete ``k x k`` windows visited row-major (left to
right, then top to bottom). The n-th message character goes into the n-th
window, which after FMM quantization holds only multiples of five; one pixel
of it is pushed off its multiple so that its column-wise position and its
residue mod 5 spell the character. The first window without a residue pixel
ends the message. Pixels outside complete windows are quantized but never
carry payload.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .charset import (
    SPACE_SENTINEL,
    Charset,
    IndexEncoding,
    char_to_index,
    decode_index,
    encode_index,
    get_charset,
    sentinel_encoding,
)
from .errors import CapacityExceeded, CorruptEncoding, CorruptWindow
from .fmm import fmm_image
from .image_io import GrayImage
from .metrics import QualityReport, psnr


class CorruptWindowWarning(UserWarning):
    """Issued instead of CorruptWindow when extracting in lenient mode."""


@dataclass(frozen=True)
class WindowGrid:
    k: int
    rows: int
    cols: int

    @classmethod
    def for_image(cls, img: GrayImage, k: int) -> WindowGrid:
        if k < 2:
            raise ValueError(f"window edge must be >= 2, got {k}")
        return cls(k=k, rows=img.height // k, cols=img.width // k)

    @property
    def count(self) -> int:
        return self.rows * self.cols

    def window_origin(self, n: int) -> tuple[int, int]:
        """Top-left ``(y, x)`` of the n-th (0-based, row-major) window."""
        wr, wc = divmod(n, self.cols)
        return wr * self.k, wc * self.k

    def pixel_at(self, n: int, position: int) -> tuple[int, int]:
        """Image ``(y, x)`` of the 1-based column-wise ``position`` in window ``n``."""
        y0, x0 = self.window_origin(n)
        local_col, local_row = divmod(position - 1, self.k)
        return y0 + local_row, x0 + local_col

    def windows(self, pixels: np.ndarray) -> np.ndarray:
        """View of ``pixels`` as ``(count, k*k)``, each row in column-wise position order."""
        k = self.k
        crop = pixels[: self.rows * k, : self.cols * k]
        blocks = crop.reshape(self.rows, k, self.cols, k).transpose(0, 2, 3, 1)
        return blocks.reshape(self.count, k * k)


@dataclass(frozen=True)
class StegoParams:
    """The shared secret (window edge ``k``) plus the alphabet in use."""

    k: int
    charset: Charset

    def __post_init__(self):
        if isinstance(self.charset, str):
            object.__setattr__(self, "charset", get_charset(self.charset))
        if self.k < 2:
            raise ValueError(f"window edge must be >= 2, got {self.k}")
        if not self.charset.supports_window(self.k):
            raise ValueError(
                f"a {self.k}x{self.k} window cannot carry the "
                f"{self.charset.size}-character alphabet {self.charset.name}"
            )

    @classmethod
    def default(cls, charset) -> StegoParams:
        if isinstance(charset, str):
            charset = get_charset(charset)
        return cls(k=max(2, charset.window_size), charset=charset)


def capacity(img: GrayImage, k: int) -> int:
    """Number of characters ``img`` can hold: one per complete ``k x k`` window."""
    return WindowGrid.for_image(img, k).count


def _as_text(msg) -> str:
    if isinstance(msg, (bytes, bytearray)):
        return msg.decode("latin-1")
    return msg


def encode_message(msg, p: StegoParams) -> list[IndexEncoding]:
    encodings = []
    for offset, ch in enumerate(_as_text(msg)):
        i = char_to_index(ch, p.charset, offset)
        if i == SPACE_SENTINEL:
            encodings.append(sentinel_encoding(p.k))
        else:
            encodings.append(encode_index(i, p.k))
    return encodings


def embed(cover: GrayImage, msg, p: StegoParams) -> GrayImage:
    """Quantize ``cover`` and hide ``msg`` (str or bytes) one character per window."""
    grid = WindowGrid.for_image(cover, p.k)
    encodings = encode_message(msg, p)
    if len(encodings) > grid.count:
        raise CapacityExceeded(len(encodings), grid.count)

    out = fmm_image(cover).pixels.astype(np.int16)
    for n, e in enumerate(encodings):
        y, x = grid.pixel_at(n, e.position)
        value = out[y, x] + e.remainder
        if value > 255:
            value -= 5
        out[y, x] = value
    return GrayImage(out.astype(np.uint8))


def extract(stego: GrayImage, p: StegoParams, strict: bool = True) -> str:
    """Recover the hidden text.

    In strict mode a window holding more than one residue pixel, or a residue
    pixel that maps outside the alphabet, raises CorruptWindow. With
    ``strict=False`` the first residue pixel of a crowded window is used,
    undecodable windows are skipped, and a CorruptWindowWarning is issued for
    each.
    """
    grid = WindowGrid.for_image(stego, p.k)
    if grid.count == 0:
        return ""
    residues = grid.windows(stego.pixels) % 5
    nonzero = np.count_nonzero(residues, axis=1)
    empty = np.flatnonzero(nonzero == 0)
    length = int(empty[0]) if empty.size else grid.count

    chars = []
    for n in range(length):
        wr, wc = divmod(n, grid.cols)
        hits = np.flatnonzero(residues[n])
        if hits.size > 1:
            problem = CorruptWindow(
                wr, wc, f"{hits.size} pixels are not multiples of five"
            )
            if strict:
                raise problem
            warnings.warn(str(problem), CorruptWindowWarning, stacklevel=2)
        pos = int(hits[0])
        e = IndexEncoding(position=pos + 1, remainder=int(residues[n, pos]))
        try:
            chars.append(chr(decode_index(e, p.k, p.charset)))
        except CorruptEncoding as exc:
            problem = CorruptWindow(wr, wc, str(exc))
            if strict:
                raise problem from exc
            warnings.warn(str(problem), CorruptWindowWarning, stacklevel=2)
    return "".join(chars)


def embed_then_report(cover: GrayImage, msg, p: StegoParams) -> tuple[GrayImage, QualityReport]:
    stego = embed(cover, msg, p)
    return stego, psnr(cover, stego)
