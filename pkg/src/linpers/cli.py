"""Command-line entry point: ``linpers diagram|image|bench``."""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .bench import DEFAULT_SEED, GENERATORS, run_bench
from .circle import circle_diagram
from .core import FunctionPair, FunctionSample, InputError, InvariantError, Topology
from .fileio import CSV, FORMATS, RAW, InputSpec, raw_chunks, read_values, write_diagram
from .image import image_diagram
from .line import line_diagram, line_diagram_stream
from .oracle import oracle_circle, oracle_image, oracle_line
from .parallel import parallel_line_diagram

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INVARIANT = 2


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS, default=CSV,
                   help="csv: one value per line; raw: little-endian float64")
    p.add_argument("--output", "-o", metavar="PATH", default=None,
                   help="write the diagram here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linpers",
        description="0-dimensional sublevel-set persistence of sampled functions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("diagram", help="diagram of one function on a segment or circle")
    d.add_argument("input", nargs="?", default="-", help="input file, '-' for stdin")
    _add_common(d)
    d.add_argument("--circle", action="store_true", help="treat the samples as a closed loop")
    d.add_argument("--oracle", action="store_true", help="use the sort + union-find reference")
    d.add_argument("--threads", type=int, default=None, metavar="N",
                   help="split into segments reduced by N workers (0 = one per CPU); line only")

    im = sub.add_parser("image", help="image persistence of g inside f, for f <= g")
    im.add_argument("f", help="file with the lower function")
    im.add_argument("g", help="file with the upper function")
    _add_common(im)
    im.add_argument("--oracle", action="store_true", help="use the sort + union-find reference")

    b = sub.add_parser("bench", help="time the reducer against the sort + union-find baseline")
    b.add_argument("generator", nargs="?", default="random", type=str.lower, choices=GENERATORS)
    b.add_argument("-n", type=int, default=10**7, help="array length (default 1e7)")
    b.add_argument("--repetitions", "-r", type=int, default=5)
    b.add_argument("--seed", type=int, default=DEFAULT_SEED)
    b.add_argument("--no-oracle", action="store_true", help="skip the baseline (slow for large n)")
    b.add_argument("--output", "-o", metavar="PATH", default=None)
    return parser


def _cmd_diagram(args) -> int:
    topology = Topology.CIRCLE if args.circle else Topology.LINE
    spec = InputSpec(args.input, args.format, topology)
    if args.threads is not None and args.threads < 0:
        raise InputError("--threads must be >= 0")
    streaming = spec.format == RAW and topology is Topology.LINE and not args.oracle and args.threads is None
    if streaming:
        with raw_chunks(spec) as chunks:
            dgm = line_diagram_stream(chunks)
    else:
        sample = FunctionSample(read_values(spec), topology)
        if args.oracle:
            dgm = oracle_circle(sample) if args.circle else oracle_line(sample)
        elif args.circle:
            dgm = circle_diagram(sample)
        elif args.threads is not None:
            workers = args.threads or os.cpu_count() or 1
            dgm = parallel_line_diagram(sample, segments=workers, threads=workers)
        else:
            dgm = line_diagram(sample)
    write_diagram(dgm, args.output)
    return EXIT_OK


def _cmd_image(args) -> int:
    f = read_values(InputSpec(args.f, args.format))
    g = read_values(InputSpec(args.g, args.format))
    pair = FunctionPair(f, g)
    dgm = oracle_image(pair) if args.oracle else image_diagram(pair)
    write_diagram(dgm, args.output)
    return EXIT_OK


def _cmd_bench(args) -> int:
    if args.n < 1:
        raise InputError("n must be >= 1")
    if args.repetitions < 1:
        raise InputError("repetitions must be >= 1")
    stages = ("generation", "reducer", "copy") if args.no_oracle else ("generation", "reducer", "oracle", "copy")
    try:
        report = run_bench(args.n, args.generator, args.repetitions, args.seed, stages)
    except MemoryError:
        raise InputError(f"cannot allocate {args.n} samples") from None
    text = report.format()
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    return EXIT_OK


COMMANDS = {"diagram": _cmd_diagram, "image": _cmd_image, "bench": _cmd_bench}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"linpers: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as exc:
        print(f"linpers: internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
