"""Command-line front end.

Exit codes: 0 on success, 1 for usage errors (unknown flags or
commands), 2 for processing failures (unreadable files, malformed PGM,
degenerate inputs). Diagnostics go to stderr and name the failing
stage; machine-readable results (xi, level, CSV) go to stdout or to the
requested output files. Output files are written to a temp file and
renamed into place, so a failure never leaves a partial file behind.
"""

import argparse
import os
import sys
import tempfile

import numpy as np

from .equalize import ghe, lhe
from .image import metrics
from .pgm import read_pgm, write_pgm
from .pipeline import (CompareConfig, QUALITY_TIERS, XiMode, compare,
                       comparison_csv, enhance, generate_corpus)
from .threshold import (DEFAULT_RANGE_TRIGGER, DEFAULT_RMS_TRIGGER,
                        FuzzyMembershipParams, binarize, fuzzy_threshold,
                        histogram, otsu)


class _StageError(Exception):
    """Processing failure tagged with the pipeline stage that caused it."""

    def __init__(self, stage, cause):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the contract wants 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except Exception as exc:
        raise _StageError(name, exc) from exc


def _read_image(path):
    def load():
        with open(path, "rb") as fh:
            return read_pgm(fh.read())
    return _stage(f"read {path}", load)


def _write_atomic(path, data):
    def store():
        directory = os.path.dirname(os.path.abspath(path))
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ridgekit-")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
            os.replace(tmp, path)
        except BaseException:
            os.unlink(tmp)
            raise
    return _stage(f"write {path}", store)


def _write_image(path, image):
    if not path.lower().endswith(".pgm"):
        raise _StageError(f"write {path}", "only .pgm output is supported")
    _write_atomic(path, write_pgm(image))


def _parse_xi_mode(text, seed):
    if text == "seeded":
        return XiMode.seeded(seed)
    if text == "deterministic":
        return XiMode.deterministic()
    if text.startswith("fixed="):
        return XiMode.fixed(float(text.split("=", 1)[1]))
    raise ValueError(f"expected seeded, deterministic or fixed=<v>, got {text!r}")


def _cmd_enhance(args):
    img = _read_image(args.input)
    mode = _stage("parse xi mode", _parse_xi_mode, args.xi_mode, args.seed)
    result = _stage("enhance", enhance, img, mode, args.post)
    _write_image(args.output, result.enhanced)
    if args.ridge_map:
        _write_image(args.ridge_map, result.ridge_map)
    print(f"xi={result.xi:.6f} threshold={result.threshold}")
    return 0


def _cmd_equalize(args):
    img = _read_image(args.input)
    if args.method == "global":
        out = _stage("equalize", ghe, img)
    else:
        out = _stage("equalize", lhe, img, args.tile)
    _write_image(args.output, out)
    return 0


def _curve_csv(result):
    lines = ["level,criterion,valid"]
    for lvl in range(256):
        lines.append(f"{lvl},{result.criterion_curve[lvl]:.6f},"
                     f"{int(result.valid[lvl])}")
    return ("\n".join(lines) + "\n").encode("ascii")


def _cmd_threshold(args):
    img = _read_image(args.input)
    hist = histogram(img)
    if args.method == "otsu":
        result = _stage("threshold", otsu, hist)
    else:
        params = _stage("parse fuzzy params", FuzzyMembershipParams, args.fuzzy_c)
        result = _stage("threshold", fuzzy_threshold, hist, img, params,
                        args.pre_he, args.pre_he_rms, args.pre_he_range)
    _write_image(args.output, binarize(img, result.level))
    if args.print_curve:
        _write_atomic(args.print_curve, _curve_csv(result))
    print(f"level={result.level}")
    return 0


def _cmd_compare(args):
    cfg = CompareConfig(xi_seed=args.seed, tile=args.tile)
    rows = []
    for path in args.inputs:
        img = _read_image(path)
        rows.extend(_stage(f"compare {path}", compare, img, path, cfg))
    text = comparison_csv(rows)
    if args.csv:
        _write_atomic(args.csv, text.encode("ascii"))
    else:
        sys.stdout.write(text)
    return 0


def _cmd_generate(args):
    images = _stage("generate", generate_corpus, args.quality, args.count,
                    args.seed, args.size, args.size)
    _stage(f"create {args.out}", os.makedirs, args.out, exist_ok=True)
    for i, img in enumerate(images):
        path = os.path.join(args.out, f"{args.quality}_{i + 1:02d}.pgm")
        _write_image(path, img)
        print(path)
    return 0


def _cmd_metrics(args):
    first = _read_image(args.input)
    stats = _stage("metrics", metrics, first)
    print(f"file={args.input} mean={stats.mean:.6f} "
          f"rms_contrast={stats.rms_contrast:.6f} "
          f"dynamic_range={stats.dynamic_range} entropy={stats.entropy:.6f}")
    if args.second:
        second = _read_image(args.second)
        stats2 = _stage("metrics", metrics, second)
        print(f"file={args.second} mean={stats2.mean:.6f} "
              f"rms_contrast={stats2.rms_contrast:.6f} "
              f"dynamic_range={stats2.dynamic_range} entropy={stats2.entropy:.6f}")
        if first.shape != second.shape:
            raise _StageError("metrics", "images must share dimensions for mse")
        diff = first.astype(np.float64) - second.astype(np.float64)
        print(f"mse={np.mean(diff * diff):.6f}")
    return 0


def _build_parser():
    parser = _Parser(prog="ridgekit",
                     description="Fingerprint-style contrast enhancement toolkit")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("enhance", help="run the enhancement pipeline")
    p.add_argument("input", help="input PGM image")
    p.add_argument("-o", "--output", required=True, help="enhanced output PGM")
    p.add_argument("--ridge-map", default=None,
                   help="also write the binary ridge/valley map here (default: skip)")
    p.add_argument("--xi-mode", default="seeded",
                   help="seeded | deterministic | fixed=<v> (default: seeded)")
    p.add_argument("--seed", type=int, default=42,
                   help="seed for the seeded xi mode (default: 42)")
    p.add_argument("--post", choices=("clamp", "rescale"), default="clamp",
                   help="requantization of the reconstructed plane (default: clamp)")
    p.set_defaults(run=_cmd_enhance)

    p = sub.add_parser("equalize", help="histogram equalization")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--method", choices=("global", "local"), default="global",
                   help="global or tile-local equalization (default: global)")
    p.add_argument("--tile", type=int, default=16,
                   help="tile size for --method local (default: 16)")
    p.set_defaults(run=_cmd_equalize)

    p = sub.add_parser("threshold", help="binarize at an automatic threshold")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True, help="binary output PGM")
    p.add_argument("--method", choices=("otsu", "fuzzy"), default="fuzzy",
                   help="threshold selector (default: fuzzy)")
    p.add_argument("--pre-he", choices=("auto", "on", "off"), default="auto",
                   help="pre-equalize before the fuzzy selector (default: auto)")
    p.add_argument("--fuzzy-c", type=float, default=255.0,
                   help="membership bandwidth constant (default: 255)")
    p.add_argument("--pre-he-rms", type=float, default=DEFAULT_RMS_TRIGGER,
                   help="auto trigger: RMS contrast below this (default: 20)")
    p.add_argument("--pre-he-range", type=int, default=DEFAULT_RANGE_TRIGGER,
                   help="auto trigger: dynamic range below this (default: 128)")
    p.add_argument("--print-curve", default=None,
                   help="write the criterion curve as CSV here (default: skip)")
    p.set_defaults(run=_cmd_threshold)

    p = sub.add_parser("compare", help="run all four methods, emit a CSV")
    p.add_argument("inputs", nargs="+", help="input PGM images")
    p.add_argument("--csv", default=None,
                   help="write the CSV here instead of stdout (default: stdout)")
    p.add_argument("--seed", type=int, default=42,
                   help="xi seed for the proposed method (default: 42)")
    p.add_argument("--tile", type=int, default=16,
                   help="tile size for the local-equalization row (default: 16)")
    p.set_defaults(run=_cmd_compare)

    p = sub.add_parser("generate", help="emit a synthetic test corpus")
    p.add_argument("--quality", choices=sorted(QUALITY_TIERS), required=True,
                   help="contrast tier of the generated prints")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--count", type=int, required=True, help="number of images")
    p.add_argument("--seed", type=int, default=42,
                   help="base seed; image i uses seed+i (default: 42)")
    p.add_argument("--size", type=int, default=128,
                   help="width and height of each image (default: 128)")
    p.set_defaults(run=_cmd_generate)

    p = sub.add_parser("metrics", help="print image quality metrics")
    p.add_argument("input")
    p.add_argument("second", nargs="?", default=None,
                   help="optional second image; adds their mean squared difference")
    p.set_defaults(run=_cmd_metrics)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "run", None):
        parser.print_usage(sys.stderr)
        return 1
    try:
        return args.run(args)
    except _StageError as exc:
        print(f"ridgekit: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"ridgekit: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
