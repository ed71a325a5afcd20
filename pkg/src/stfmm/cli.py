"""Command-line front end: ``stfmm {fmm,embed,extract,capacity,psnr,sweep}``.

The window size is the shared secret. When ``--window`` is omitted the
smallest window able to carry the chosen charset is used and echoed on
standard error.

Exit codes: 0 success, 1 usage error, 2 I/O or image format error,
3 capacity exceeded, 4 unsupported character, 5 corrupt stego image.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from .charset import CHARSETS, get_charset
from .codec import StegoParams, capacity, embed_then_report, extract
from .errors import (
    CapacityExceeded,
    CorruptWindow,
    ImageFormatError,
    UnsupportedCharacter,
)
from .fmm import fmm_image
from .image_io import read_image, write_image
from .metrics import psnr

EXIT_USAGE = 1
EXIT_IO = 2
EXIT_CAPACITY = 3
EXIT_UNSUPPORTED = 4
EXIT_CORRUPT = 5

DEFAULT_SIZES = "1K,2K,4K,6K,8K,10K"

PANGRAM = "The quick brown fox jumps over the lazy dog. "


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_key_args(p, lenient=False):
    p.add_argument("--window", "-k", type=int, default=None,
                   help="window edge k (the stego key); default derived from the charset")
    p.add_argument("--charset", default="printable95", choices=sorted(CHARSETS),
                   help="alphabet of the hidden text (default: printable95)")
    if lenient:
        p.add_argument("--lenient", action="store_true",
                       help="warn about corrupt windows instead of failing")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stfmm", description="Hide text in grayscale PGM/BMP images "
                     "with the five modulus method.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("fmm", help="quantize every pixel to a multiple of five")
    p.add_argument("input")
    p.add_argument("output")

    p = sub.add_parser("embed", help="hide text in a cover image")
    p.add_argument("cover")
    p.add_argument("output")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--text", help="text to hide")
    src.add_argument("--text-file", help="file whose bytes are hidden")
    _add_key_args(p)

    p = sub.add_parser("extract", help="print the text hidden in a stego image")
    p.add_argument("stego")
    _add_key_args(p, lenient=True)

    p = sub.add_parser("capacity", help="number of characters an image can hold")
    p.add_argument("image")
    _add_key_args(p)

    p = sub.add_parser("psnr", help="compare two images")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("sweep", help="PSNR of the stego image for a range of payload sizes")
    p.add_argument("cover")
    p.add_argument("--sizes", default=DEFAULT_SIZES,
                   help="comma list of payload sizes in bytes; K suffix = x1024 "
                        f"(default: {DEFAULT_SIZES})")
    _add_key_args(p)
    return parser


def resolve_params(args) -> StegoParams:
    cs = get_charset(args.charset)
    if args.window is None:
        params = StegoParams.default(cs)
        print(f"window: {params.k} (default for {cs.name})", file=sys.stderr)
        return params
    try:
        return StegoParams(k=args.window, charset=cs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def parse_sizes(spec: str) -> list[int]:
    sizes = []
    for item in spec.split(","):
        item = item.strip().upper()
        if not item:
            continue
        scale = 1
        for suffix in ("KB", "K"):
            if item.endswith(suffix):
                item, scale = item[: -len(suffix)], 1024
                break
        try:
            value = int(item) * scale
        except ValueError:
            raise UsageError(f"bad payload size {item!r}") from None
        if value < 0:
            raise UsageError(f"payload size must be >= 0, got {value}")
        sizes.append(value)
    if not sizes:
        raise UsageError("no payload sizes given")
    return sizes


def sweep_text(size: int, charset) -> str:
    """Deterministic payload of ``size`` characters drawn from ``charset``."""
    cs = get_charset(charset) if isinstance(charset, str) else charset
    base = PANGRAM
    if cs.name == "lower26":
        base = "".join(c for c in PANGRAM.lower() if c.isalpha() or c == " ")
    reps = size // len(base) + 1
    return (base * reps)[:size]


def _write_text(text: str):
    out = sys.stdout.buffer
    out.write(text.encode("latin-1"))
    if sys.stdout.isatty():
        out.write(b"\n")
    out.flush()


def cmd_fmm(args):
    img, fmt = read_image(args.input)
    write_image(args.output, fmm_image(img), fmt)


def cmd_embed(args):
    params = resolve_params(args)
    if args.text is not None:
        text = args.text
    else:
        text = Path(args.text_file).read_bytes().decode("latin-1")
    cover, fmt = read_image(args.cover)
    stego, report = embed_then_report(cover, text, params)
    write_image(args.output, stego, fmt)
    print(f"embedded {len(text)} characters; {report.format()}", file=sys.stderr)


def cmd_extract(args):
    params = resolve_params(args)
    stego, _ = read_image(args.stego)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        text = extract(stego, params, strict=not args.lenient)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _write_text(text)


def cmd_capacity(args):
    params = resolve_params(args)
    img, _ = read_image(args.image)
    print(capacity(img, params.k))


def cmd_psnr(args):
    a, _ = read_image(args.a)
    b, _ = read_image(args.b)
    if a.shape != b.shape:
        raise ImageFormatError(
            f"dimension mismatch: {a.width}x{a.height} vs {b.width}x{b.height}"
        )
    print(psnr(a, b).format())


def cmd_sweep(args):
    sizes = parse_sizes(args.sizes)
    params = resolve_params(args)
    cover, _ = read_image(args.cover)
    cap = capacity(cover, params.k)
    too_big = [s for s in sizes if s > cap]
    if too_big:
        raise CapacityExceeded(max(too_big), cap)
    lines = ["size_bytes,psnr_db"]
    for size in sizes:
        _, report = embed_then_report(cover, sweep_text(size, params.charset), params)
        value = "inf" if report.identical else f"{report.psnr:.4f}"
        lines.append(f"{size},{value}")
    print("\n".join(lines))


COMMANDS = {
    "fmm": cmd_fmm,
    "embed": cmd_embed,
    "extract": cmd_extract,
    "capacity": cmd_capacity,
    "psnr": cmd_psnr,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"stfmm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityExceeded as exc:
        print(f"stfmm: capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except UnsupportedCharacter as exc:
        print(f"stfmm: unsupported character: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except CorruptWindow as exc:
        print(f"stfmm: corrupt stego image: {exc}", file=sys.stderr)
        return EXIT_CORRUPT
    except (OSError, ImageFormatError) as exc:
        print(f"stfmm: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
