"""``qimg`` command: image in, minimized NEQR circuit (QASM) and report out.

Exit codes: 0 ok, 1 I/O error, 2 verification failure, 3 bad arguments.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
import time

from .circuit import EmitError, emit_qasm
from .esop import ENGINES
from .neqr import ImageFormatError, load_image
from .pipeline import compile_image, random_image
from .report import build_report, report_emit
from .verify import verify_image

EXIT_OK, EXIT_IO, EXIT_VERIFY, EXIT_ARGS = 0, 1, 2, 3

logger = logging.getLogger("qimg")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ARGS, f"{self.prog}: error: {message}\n")


def _size(text):
    try:
        rows, cols = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected ROWSxCOLS, got {text!r}") from None
    if rows < 1 or cols < 1:
        raise argparse.ArgumentTypeError("image size must be positive")
    return rows, cols


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qimg", description=__doc__.splitlines()[0])
    p.add_argument("input", nargs="?", help="PGM/PPM/PNG image (omit with --seed)")
    p.add_argument("--out", metavar="FILE", help="write OpenQASM 2.0 circuit here")
    p.add_argument("--report", metavar="FILE", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--verify", action="store_true",
                   help="simulate every position and compare with the image")
    p.add_argument("--no-decompose", action="store_true",
                   help="keep multi-control Toffolis (no ancillas)")
    p.add_argument("--threads", type=int, default=None,
                   help="minimization workers (default: $QIMG_THREADS or 1)")
    p.add_argument("--seed", type=int, default=None,
                   help="self-test on a random image instead of reading INPUT")
    p.add_argument("--size", type=_size, default=(16, 16), metavar="ROWSxCOLS",
                   help="random image size for --seed (default 16x16)")
    p.add_argument("--channels", type=int, choices=(1, 3), default=1,
                   help="random image channels for --seed")
    p.add_argument("--engine", choices=ENGINES, default="auto", help=argparse.SUPPRESS)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _threads(args, parser):
    if args.threads is not None:
        n = args.threads
    else:
        env = os.environ.get("QIMG_THREADS")
        if not env:
            return 1
        try:
            n = int(env)
        except ValueError:
            parser.error(f"QIMG_THREADS must be an integer, got {env!r}")
    if n < 1:
        parser.error("thread count must be >= 1")
    return n


def run_pipeline(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if (args.input is None) == (args.seed is None):
        parser.error("give exactly one of INPUT or --seed")
    threads = _threads(args, parser)

    if args.seed is not None:
        rows, cols = args.size
        image = random_image(args.seed, rows, cols, args.channels)
        source = f"random(seed={args.seed},{rows}x{cols}x{args.channels})"
        verify = True
    else:
        try:
            image = load_image(args.input)
        except (OSError, ImageFormatError) as exc:
            print(f"qimg: {exc}", file=sys.stderr)
            return EXIT_IO
        source = os.path.basename(args.input)
        verify = args.verify

    result = compile_image(image, decompose=not args.no_decompose, threads=threads,
                           engine=args.engine)
    verification = None
    if verify:
        start = time.perf_counter()
        verification = verify_image(image, result.circuit)
        logger.info("verification: %.3fs", time.perf_counter() - start)
    report = build_report(result, source,
                          verification.to_dict() if verification is not None else None)

    qasm = None
    if args.out:
        start = time.perf_counter()
        try:
            qasm = emit_qasm(result.circuit)
        except EmitError as exc:
            print(f"qimg: {exc} (drop --no-decompose to emit QASM)", file=sys.stderr)
            return EXIT_ARGS
        logger.info("emission: %.3fs", time.perf_counter() - start)

    try:
        if qasm is not None:
            with open(args.out, "w", encoding="ascii") as fh:
                fh.write(qasm)
        text = report_emit(report, args.format)
        if args.report:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"qimg: {exc}", file=sys.stderr)
        return EXIT_IO

    if verification is not None and not verification.ok:
        print(f"qimg: verification failed ({len(verification.mismatches)} mismatches shown)",
              file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def main(argv=None):
    sys.exit(run_pipeline(argv))


if __name__ == "__main__":
    main()
