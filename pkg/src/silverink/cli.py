"""Command-line front end.

    silverink hide --cover C.ppm --silver S.pgm --out M.ppm [--channel R|G|B] [--matrix bayer|clustered]
    silverink reveal --marked M.ppm --out-cover C.ppm --out-silver S.pbm [--channel R|G|B]
    silverink halftone --in S.pgm --out S.pbm [--matrix bayer|clustered]
    silverink compress --in S.pbm --out S.bgr
    silverink decompress --in S.bgr --out S.pbm
    silverink metrics --a C.ppm --b M.ppm

Exit status is 0 on success, 1 on a pipeline error and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import peehs, pipeline, quality
from .bilevel import CodedRegion, decode_region, encode_region
from .errors import BadMagic, MalformedMap, SilverInkError
from .halftone import MatrixId, dither, matrix_by_name
from .imagery import load_pnm, save_pnm

_MATRIX_NAMES = {MatrixId.BAYER8: "bayer", MatrixId.CLUSTERED8: "clustered"}


def _kind(image, want, path):
    ok = {
        "gray": image.ndim == 2 and image.dtype != bool,
        "rgb": image.ndim == 3,
        "bits": image.dtype == bool,
    }[want]
    if not ok:
        names = {"gray": "a P5 graymap", "rgb": "a P6 pixmap", "bits": "a P4 bitmap"}
        raise SilverInkError(f"{path}: expected {names[want]}")
    return image


def _cmd_hide(args):
    cover = _kind(load_pnm(args.cover), "rgb", args.cover)
    silver = _kind(load_pnm(args.silver), "gray", args.silver)
    config = pipeline.HideConfig(args.channel, matrix_by_name(args.matrix).id)
    result = pipeline.hide_detailed(cover, silver, config)
    save_pnm(args.out, result.marked)
    print(json.dumps({
        "channel": result.channel,
        "threshold": result.threshold,
        "payload_bits": result.payload_bits,
        "payload_bpp": result.payload_bpp,
    }))


def _cmd_reveal(args):
    marked = _kind(load_pnm(args.marked), "rgb", args.marked)
    result = pipeline.reveal_detailed(marked, args.channel)
    save_pnm(args.out_cover, result.cover)
    save_pnm(args.out_silver, result.silver_bits)
    print(json.dumps({
        "channel": result.channel,
        "matrix": _MATRIX_NAMES[result.matrix_id],
        "payload_bits": result.payload_bits,
    }))


def _cmd_halftone(args):
    layer = _kind(load_pnm(args.input), "gray", args.input)
    save_pnm(args.out, dither(layer, matrix_by_name(args.matrix)))


def _cmd_compress(args):
    bitmap = _kind(load_pnm(args.input), "bits", args.input)
    with open(args.out, "wb") as fh:
        fh.write(encode_region(bitmap).to_bytes())


def _cmd_decompress(args):
    with open(args.input, "rb") as fh:
        region = CodedRegion.from_bytes(fh.read())
    save_pnm(args.out, decode_region(region))


def _payload_bits(marked) -> int:
    planes = [marked] if marked.ndim == 2 else [marked[..., pipeline.CHANNELS[c]] for c in pipeline.REVEAL_ORDER]
    for plane in planes:
        try:
            return peehs.read_header(np.ascontiguousarray(plane)).payload_bits
        except (BadMagic, MalformedMap):
            continue
    return 0


def _cmd_metrics(args):
    a = load_pnm(args.a)
    b = load_pnm(args.b)
    if a.dtype == bool or b.dtype == bool:
        raise SilverInkError("metrics expects P5 or P6 inputs")
    rep = quality.report(a, b, _payload_bits(b))
    print(json.dumps(rep.as_dict()))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="silverink", description="Hide a silver ink layer in an RGB image.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("hide", help="embed a silver layer into a cover image")
    p.add_argument("--cover", required=True)
    p.add_argument("--silver", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--channel", choices=("R", "G", "B"), default="B")
    p.add_argument("--matrix", choices=("bayer", "clustered"), default="bayer")
    p.set_defaults(func=_cmd_hide)

    p = sub.add_parser("reveal", help="restore the cover and the binarized silver layer")
    p.add_argument("--marked", required=True)
    p.add_argument("--out-cover", required=True)
    p.add_argument("--out-silver", required=True)
    p.add_argument("--channel", choices=("R", "G", "B"), default=None)
    p.set_defaults(func=_cmd_reveal)

    p = sub.add_parser("halftone", help="dither a P5 layer into a P4 bitmap")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--matrix", choices=("bayer", "clustered"), default="bayer")
    p.set_defaults(func=_cmd_halftone)

    p = sub.add_parser("compress", help="code a P4 bitmap as a BGR1 region")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_compress)

    p = sub.add_parser("decompress", help="decode a BGR1 region to a P4 bitmap")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_decompress)

    p = sub.add_parser("metrics", help="PSNR / MSSIM / payload density as one JSON line")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=_cmd_metrics)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except SilverInkError as exc:
        print(f"silverink: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"silverink: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"silverink: error: ValueError: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
