"""Command line entry point: ``dcrecover {strip,recover,metrics,bench}``."""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

import numpy as np

from .bench import METHODS, fmt, run_bench, write_plots, write_report, write_summary, write_timings
from .blockdct import DEFAULT_N, PixelRange, block_dcs, finalize, strip_dc
from .errors import DcRecoverError
from .frm import BRACKET, EXHAUSTIVE, SearchConfig, recover_frm_detailed
from .io import (FLAG_DC_STRIPPED, coefficients_to_plane, load_coefficients, load_pgm,
                 plane_to_coefficients, save_coefficients, save_pgm)
from .iqa import quality
from .uso import recover_uso_detailed

log = logging.getLogger("dcrecover")

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_EMPTY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _range(text: str) -> PixelRange:
    try:
        lo, hi = (float(v) for v in text.split(","))
        return PixelRange(lo, hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'min,max' with min < max, got {text!r}") from None


def _positive(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def cmd_strip(args) -> int:
    img = load_pgm(args.input, args.block_size)
    plane = strip_dc(img, args.block_size, args.range)
    save_coefficients(args.output, plane_to_coefficients(plane), dc_stripped=True)
    if args.preview:
        save_pgm(args.preview, finalize(plane.data + 128, PixelRange(0, 255)))
    if args.dc_sidecar:
        np.save(args.dc_sidecar, block_dcs(img, args.block_size))
    return EXIT_OK


def _write_trace(path: Path, trace) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["dc0", "rate"])
        for x, r in zip(trace.candidates, trace.rates):
            w.writerow([fmt(x), fmt(r)])


def cmd_recover(args) -> int:
    coeffs, flags = load_coefficients(args.input)
    if not flags & FLAG_DC_STRIPPED:
        raise DcRecoverError("input coefficient file is not flagged as DC-stripped")
    if args.block_size is not None and args.block_size != coeffs.shape[-1]:
        raise UsageError(f"--block-size {args.block_size} disagrees with file block size {coeffs.shape[-1]}")
    plane = coefficients_to_plane(coeffs, args.range)
    traces = {}
    if args.method == "uso":
        res = recover_uso_detailed(plane)
    else:
        mode = EXHAUSTIVE if args.search == "exhaustive" else BRACKET
        res = recover_frm_detailed(plane, SearchConfig(delta=args.delta, mode=mode))
        traces = res.traces
    save_pgm(args.output, finalize(res.image, PixelRange(0, 255)))

    if args.dump_scans:
        out = Path(args.dump_scans)
        out.mkdir(parents=True, exist_ok=True)
        pr = plane.prange
        with open(out / "scans.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["corner", "min", "max", "out_of_range", "dc0", "rate"])
            for corner, img in res.scans.items():
                bad = int(np.count_nonzero((img < pr.t_min - 1e-6) | (img > pr.t_max + 1e-6)))
                tr = traces.get(corner)
                w.writerow([corner.value, fmt(img.min()), fmt(img.max()), bad,
                            fmt(tr.chosen) if tr else "", fmt(tr.chosen_rate) if tr else ""])
                save_pgm(out / f"scan_{corner.value}.pgm", finalize(img, PixelRange(0, 255)))
                if tr:
                    _write_trace(out / f"trace_{corner.value}.csv", tr)
    return EXIT_OK


def cmd_metrics(args) -> int:
    ref = load_pgm(args.reference, None)
    test = load_pgm(args.test, None)
    print(quality(ref, test, args.range).csv())
    return EXIT_OK


def cmd_bench(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    unknown = set(methods) - set(METHODS)
    if unknown or not methods:
        raise UsageError(f"unknown methods {sorted(unknown)}; choose from {', '.join(METHODS)}")
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise UsageError(f"corpus {corpus} is not a directory")
    paths = sorted(p for p in corpus.iterdir() if p.suffix.lower() == ".pgm")
    result = run_bench(paths, methods, args.delta, args.block_size, args.range, args.jobs)
    if not result.records:
        log.error("no images processed from %s", corpus)
        return EXIT_EMPTY
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_report(result, out)
    write_summary(result, out.with_name(out.stem + "_summary.csv"))
    write_timings(result, out.with_name(out.stem + "_timings.csv"))
    if args.plots:
        write_plots(result, args.plots)
    print(f"processed {len(result.images)} images, skipped {len(result.skipped)}")
    for s in result.summary():
        print(f"{s['method']:>15s} {s['metric']:>8s}  mean {s['mean']:+.6f}  median {s['median']:+.6f}"
              f"  frm>=uso {s['frac_ge']:.3f}  frm>uso {s['frac_gt']:.3f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--range", type=_range, default=PixelRange(0, 255), metavar="MIN,MAX",
                        help="valid pixel range (default 0,255)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="dcrecover", description="Recover block DC coefficients from AC coefficients.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("strip", parents=[common], help="write the DC-free coefficients of a PGM image")
    s.add_argument("input")
    s.add_argument("output")
    s.add_argument("--block-size", type=int, default=DEFAULT_N)
    s.add_argument("--preview", help="also write the DC-free plane (+128) as PGM")
    s.add_argument("--dc-sidecar", help="also write the true DC grid as .npy")
    s.set_defaults(func=cmd_strip)

    r = sub.add_parser("recover", parents=[common], help="recover an image from a DC-free coefficient file")
    r.add_argument("input")
    r.add_argument("output")
    r.add_argument("--method", choices=("uso", "frm"), default="frm")
    r.add_argument("--search", choices=("exhaustive", "bracket"), default="exhaustive")
    r.add_argument("--delta", type=_positive, default=1.0, help="DC search step (default 1.0)")
    r.add_argument("--block-size", type=int, default=None, help="must match the file if given")
    r.add_argument("--dump-scans", metavar="DIR", help="write per-corner scans and search traces")
    r.set_defaults(func=cmd_recover)

    m = sub.add_parser("metrics", parents=[common], help="print psnr,ssim,ms_ssim for two PGM images")
    m.add_argument("reference")
    m.add_argument("test")
    m.set_defaults(func=cmd_metrics)

    b = sub.add_parser("bench", parents=[common], help="compare methods over a corpus of PGM images")
    b.add_argument("--corpus", required=True)
    b.add_argument("--out", required=True, help="CSV report path")
    b.add_argument("--plots", help="directory for SVG difference plots")
    b.add_argument("--methods", default="uso,frm-exhaustive", help=f"comma list from {','.join(METHODS)}")
    b.add_argument("--delta", type=_positive, default=1.0)
    b.add_argument("--block-size", type=int, default=DEFAULT_N)
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"dcrecover: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, DcRecoverError) as exc:
        print(f"dcrecover: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
