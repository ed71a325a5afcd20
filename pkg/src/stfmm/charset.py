"""Alphabets, window-size derivation and the character <-> (position, remainder) map.

A character with 1-based alphabet index ``i`` hidden in a ``k x k`` window is
carried by a single pixel: its column-wise position inside the window is
``((i - 1) mod k^2) + 1`` and its residue modulo five is ``((i - 1) div k^2) + 1``.
Decoding reverses that::

    code = position + (remainder - 1) * k**2 + (start_code - 1)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CorruptEncoding, UnsupportedCharacter

SPACE = 32
# returned by char_to_index for a space in a sentinel alphabet; never a real index
SPACE_SENTINEL = 0
SENTINEL_REMAINDER = 4


@dataclass(frozen=True)
class Charset:
    """A contiguous range of character codes ``[start_code, start_code + size - 1]``.

    When ``space_sentinel`` is set, the space character (outside the range) is
    additionally representable, carried by residue 4 alone. ``fold_case``
    maps uppercase ASCII letters to lowercase before lookup.
    """

    name: str
    start_code: int
    size: int
    space_sentinel: bool = False
    fold_case: bool = False

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("charset size must be >= 1")
        if self.start_code < 0 or self.start_code + self.size > 256:
            raise ValueError("charset codes must lie within 0..255")

    @property
    def end_code(self) -> int:
        return self.start_code + self.size - 1

    @property
    def window_size(self) -> int:
        return window_size_for(self.size)

    def max_index_for(self, k: int) -> int:
        """Largest alphabet index a ``k x k`` window can carry for this charset."""
        bands = 3 if self.space_sentinel else 4
        return bands * k * k

    def supports_window(self, k: int) -> bool:
        return k >= 1 and self.size <= self.max_index_for(k)

    def __contains__(self, char) -> bool:
        try:
            char_to_index(char, self)
        except UnsupportedCharacter:
            return False
        return True


PRINTABLE95 = Charset("printable95", start_code=32, size=95)
LOWER26 = Charset("lower26", start_code=97, size=26, space_sentinel=True, fold_case=True)
ASCII128 = Charset("ascii128", start_code=0, size=128)
ASCII256 = Charset("ascii256", start_code=0, size=256)

CHARSETS = {cs.name: cs for cs in (PRINTABLE95, LOWER26, ASCII128, ASCII256)}


def get_charset(name: str) -> Charset:
    try:
        return CHARSETS[name]
    except KeyError:
        raise ValueError(
            f"unknown charset {name!r}; choose from {', '.join(CHARSETS)}"
        ) from None


@dataclass(frozen=True)
class IndexEncoding:
    position: int
    remainder: int

    def __post_init__(self):
        if self.position < 1:
            raise ValueError(f"position must be >= 1, got {self.position}")
        if self.remainder not in (1, 2, 3, 4):
            raise ValueError(f"remainder must be in 1..4, got {self.remainder}")

    def index(self, k: int) -> int:
        return self.position + (self.remainder - 1) * k * k


def window_size_for(n: int) -> int:
    """Smallest window edge ``k`` with ``4 k^2 >= n``, i.e. ``ceil(sqrt(n / 4))``."""
    if n < 1:
        raise ValueError("alphabet size must be >= 1")
    # integer form of the ceiling: k^2 >= n/4  <=>  k^2 >= ceil(n/4)
    quarter = -(-n // 4)
    k = math.isqrt(quarter)
    return k if k * k >= quarter else k + 1


def _code_of(char) -> int:
    if isinstance(char, int):
        return char
    if isinstance(char, (bytes, bytearray)):
        if len(char) != 1:
            raise ValueError("expected a single byte")
        return char[0]
    if len(char) != 1:
        raise ValueError("expected a single character")
    return ord(char)


def char_to_index(char, cs: Charset, offset: int = 0) -> int:
    """1-based alphabet index of ``char``, or SPACE_SENTINEL for a sentinel space.

    ``char`` may be a one-character string, a single byte or an integer code.
    ``offset`` is only used to report where an unsupported character sits.
    """
    code = _code_of(char)
    if cs.fold_case and 65 <= code <= 90:
        code += 32
    if cs.start_code <= code <= cs.end_code:
        return code - (cs.start_code - 1)
    if cs.space_sentinel and code == SPACE:
        return SPACE_SENTINEL
    raise UnsupportedCharacter(chr(code) if 0 <= code < 0x110000 else "?", offset, cs.name)


def encode_index(i: int, k: int) -> IndexEncoding:
    if k < 1:
        raise ValueError("window edge must be >= 1")
    area = k * k
    if not 1 <= i <= 4 * area:
        raise ValueError(f"index {i} exceeds the capacity 4*{k}^2 = {4 * area}")
    return IndexEncoding(position=(i - 1) % area + 1, remainder=(i - 1) // area + 1)


def sentinel_encoding(k: int) -> IndexEncoding:
    """Encoding written for a space in a sentinel alphabet: residue 4 at the window centre."""
    return IndexEncoding(position=(k * k + 1) // 2, remainder=SENTINEL_REMAINDER)


def decode_index(e: IndexEncoding, k: int, cs: Charset) -> int:
    """Character code carried by ``e`` in a ``k x k`` window."""
    if e.position > k * k:
        raise CorruptEncoding(f"position {e.position} outside a {k}x{k} window")
    if cs.space_sentinel and e.remainder == SENTINEL_REMAINDER:
        return SPACE
    i = e.index(k)
    if i > cs.size:
        raise CorruptEncoding(
            f"index {i} (position {e.position}, remainder {e.remainder}) "
            f"exceeds the {cs.size}-character alphabet {cs.name}"
        )
    return i + cs.start_code - 1
