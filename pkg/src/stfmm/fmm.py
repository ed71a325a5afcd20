"""Five modulus method: snap every intensity to its nearest multiple of five."""

import numpy as np

from .image_io import GrayImage

# residue -> correction; 4 and 3 round up, 2 and 1 round down
_SHIFT = (0, -1, -2, +2, +1)

# 253 and 254 round up to 255, which is itself a multiple of five
_TABLE = np.array([v + _SHIFT[v % 5] for v in range(256)], dtype=np.uint8)


def fmm_pixel(v: int) -> int:
    if not 0 <= v <= 255:
        raise ValueError(f"intensity {v} outside [0, 255]")
    return v + _SHIFT[v % 5]


def fmm_image(img: GrayImage) -> GrayImage:
    return GrayImage(_TABLE[img.pixels])
