import math
from dataclasses import dataclass

import numpy as np

from .image_io import GrayImage

PEAK = 255


@dataclass(frozen=True)
class QualityReport:
    """MSE and PSNR of an image pair. ``psnr`` is ``math.inf`` when the images match."""

    mse: float
    psnr: float

    @property
    def identical(self) -> bool:
        return self.mse == 0

    def format(self) -> str:
        p = "inf" if math.isinf(self.psnr) else f"{self.psnr:.4f}"
        return f"mse={self.mse:.4f} psnr={p}"


def _check_shapes(a: GrayImage, b: GrayImage):
    if a.shape != b.shape:
        raise ValueError(
            f"dimension mismatch: {a.width}x{a.height} vs {b.width}x{b.height}"
        )


def squared_error_sum(a: GrayImage, b: GrayImage) -> int:
    _check_shapes(a, b)
    diff = a.pixels.astype(np.int64) - b.pixels.astype(np.int64)
    return int(np.sum(diff * diff))


def mse(a: GrayImage, b: GrayImage) -> float:
    # integer accumulation, single final division
    return squared_error_sum(a, b) / (a.width * a.height)


def psnr(a: GrayImage, b: GrayImage) -> QualityReport:
    sse = squared_error_sum(a, b)
    n = a.width * a.height
    if sse == 0:
        return QualityReport(mse=0.0, psnr=math.inf)
    # 10 log10(255^2 N / SSE) avoids rounding the MSE before the log
    return QualityReport(mse=sse / n, psnr=10 * math.log10(PEAK * PEAK * n / sse))
