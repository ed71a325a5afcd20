"""Exit criteria for the package; one PASS/FAIL line per criterion is printed
in the pytest terminal summary.

The Table 6 reproduction needs a natural 512x512 grayscale cover. Point
``STFMM_COVER`` at one (PGM or BMP, e.g. Lena or peppers); otherwise the
scikit-image ``camera`` sample is used, and the check is skipped if neither
is available.
"""

import math
import os
import time

import numpy as np
import pytest

from stfmm import (
    CHARSETS,
    LOWER26,
    PRINTABLE95,
    GrayImage,
    StegoParams,
    capacity,
    embed,
    embed_then_report,
    extract,
    fmm_image,
    fmm_pixel,
    load_bmp8,
    load_pgm,
    psnr,
    read_image,
    save_bmp8,
    save_pgm,
    window_size_for,
)
from stfmm.cli import sweep_text

from golden import TABLE4, TABLE5, random_image

FMM_FLOOR_DB = 42.11
STEGO_FLOOR_DB = 40.90

# 10 KB stego PSNR reported for Lena / Saif / Peppers
PAPER_10KB_DB = (44.0073, 44.1803, 43.6396)
PAPER_SWEEP_KB = (1, 2, 4, 6, 8, 10)


def test_table4_golden_vector(criterion):
    t0 = time.perf_counter()
    stego = GrayImage.from_rows(TABLE4)
    params = StegoParams(5, PRINTABLE95)
    text = extract(stego, params)
    base = GrayImage(stego.pixels - stego.pixels % 5)
    again = embed(base, "A St", params)
    ys, xs = np.nonzero(again.pixels % 5)
    hidden = sorted(int(again.pixels[y, x]) for y, x in zip(ys, xs))
    elapsed = time.perf_counter() - t0
    ok = text == "A St" and again == stego and hidden == [61, 113, 117, 124] and elapsed < 1
    criterion(ok, f"text={text!r} residue pixels={hidden} {elapsed * 1e3:.1f} ms")
    assert ok


def test_table5_golden_vector(criterion):
    t0 = time.perf_counter()
    text = extract(GrayImage.from_rows(TABLE5), StegoParams(3, LOWER26))
    elapsed = time.perf_counter() - t0
    ok = text == "to be or" and elapsed < 1
    criterion(ok, f"text={text!r} (12 read as 120) {elapsed * 1e3:.1f} ms")
    assert ok


def test_window_size_table(criterion):
    paper = {95: 5, 26: 3, 128: 6, 256: 8}
    table_ok = all(window_size_for(n) == k for n, k in paper.items())
    failures = []
    for n in range(1, 1025):
        k = window_size_for(n)
        if 4 * k * k < n or (k >= 2 and 4 * (k - 1) ** 2 >= n):
            failures.append(n)
    ok = table_ok and not failures
    criterion(ok, f"paper values {'match' if table_ok else 'MISMATCH'}; minimality failures n=1..1024: {len(failures)}")
    assert ok


def test_fmm_exhaustive(criterion):
    rule = {0: 0, 1: -1, 2: -2, 3: 2, 4: 1}
    bad = [
        v for v in range(256)
        if not (fmm_pixel(v) == v + rule[v % 5] and fmm_pixel(v) % 5 == 0
                and abs(fmm_pixel(v) - v) <= 2 and fmm_pixel(fmm_pixel(v)) == fmm_pixel(v)
                and 0 <= fmm_pixel(v) <= 255)
    ]
    criterion(not bad, f"violations over 0..255: {bad}")
    assert not bad


def test_round_trip_property(criterion):
    rng = np.random.default_rng(1000)
    names = sorted(CHARSETS)
    trials, failures = 1200, []
    t0 = time.perf_counter()
    for t in range(trials):
        cs = CHARSETS[names[t % len(names)]]
        params = StegoParams.default(cs)
        h, w = rng.integers(1, 129, size=2)
        cover = random_image(rng, h, w)
        cap = capacity(cover, params.k)
        # exercise both ends of the length range regularly
        length = {0: 0, 1: cap}.get(t % 10, int(rng.integers(0, cap + 1)))
        if cs is LOWER26:
            pool = np.frombuffer(b"abcdefghijklmnopqrstuvwxyz ", np.uint8)
            codes = rng.choice(pool, size=length)
        else:
            codes = rng.integers(cs.start_code, cs.end_code + 1, size=length)
        msg = "".join(map(chr, codes))
        if extract(embed(cover, msg, params), params) != msg:
            failures.append((t, cs.name, h, w, length))
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 30
    criterion(ok, f"{trials} triples, {len(failures)} failures, {elapsed:.1f} s")
    assert ok, failures[:5]


def _worst_case_stego_mse():
    # brute force every intensity and remainder for the worst squared error
    # of a quantized pixel and of a payload pixel, then fill one k=5 window
    worst_q = worst_p = 0
    for v in range(256):
        base = min(range(0, 256, 5), key=lambda m: abs(m - v))
        worst_q = max(worst_q, (base - v) ** 2)
        for rem in range(1, 5):
            s = base + rem if base + rem <= 255 else base - (5 - rem)
            worst_p = max(worst_p, (s - v) ** 2)
    return (24 * worst_q + worst_p) / 25


def test_analytic_psnr_floors(criterion):
    worst = _worst_case_stego_mse()
    bound = 10 * math.log10(255 ** 2 / worst)
    rng = np.random.default_rng(42)
    params = StegoParams(5, PRINTABLE95)
    min_fmm = min_stego = math.inf
    for _ in range(200):
        cover = random_image(rng, 64, 64)
        min_fmm = min(min_fmm, psnr(cover, fmm_image(cover)).psnr)
        msg = "".join(map(chr, rng.integers(32, 127, size=capacity(cover, 5))))
        _, report = embed_then_report(cover, msg, params)
        min_stego = min(min_stego, report.psnr)
    ok = (bound >= STEGO_FLOOR_DB and min_fmm >= FMM_FLOOR_DB
          and min_stego >= STEGO_FLOOR_DB)
    criterion(ok, f"brute-force bound {bound:.4f} dB (MSE {worst:.2f}); "
                  f"min fmm {min_fmm:.4f} dB; min full-capacity stego {min_stego:.4f} dB")
    assert ok


def _natural_cover():
    path = os.environ.get("STFMM_COVER")
    if path:
        return read_image(path)[0], os.path.basename(path)
    data = pytest.importorskip("skimage.data")
    return GrayImage(data.camera()), "skimage camera"


@pytest.mark.soft
def test_table6_soft_reproduction(criterion):
    cover, name = _natural_cover()
    if cover.shape != (512, 512):
        pytest.skip(f"{name} is not 512x512")
    params = StegoParams(5, PRINTABLE95)
    values = [embed_then_report(cover, sweep_text(kb * 1024, PRINTABLE95), params)[1].psnr
              for kb in PAPER_SWEEP_KB]
    lo, hi = min(PAPER_10KB_DB), max(PAPER_10KB_DB)
    in_band = all(42 <= v <= 48 for v in values)
    near_paper = lo - 1.5 <= values[-1] <= hi + 1.5
    ok = in_band and near_paper
    criterion(ok, f"[{name}] " + " ".join(f"{kb}KB={v:.4f}" for kb, v in zip(PAPER_SWEEP_KB, values)))
    assert ok


def test_capacity_512(criterion):
    cap = capacity(GrayImage(np.zeros((512, 512), np.uint8)), 5)
    ok = cap == 10404 and cap >= 10 * 1024
    criterion(ok, f"capacity={cap}")
    assert ok


def test_format_round_trips(criterion):
    rng = np.random.default_rng(7)
    failures = 0
    count = 0
    for w in range(1, 65):
        h = int(rng.integers(1, 65))
        img = random_image(rng, h, w)
        count += 1
        failures += load_pgm(save_pgm(img, "binary")) != img
        failures += load_pgm(save_pgm(img, "ascii")) != img
        failures += load_bmp8(save_bmp8(img)) != img
    criterion(not failures, f"{count} images (widths 1..64), {failures} failures")
    assert not failures
