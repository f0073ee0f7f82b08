"""``simulate`` command: evaluate or sweep a circuit document, emit CSV."""
import argparse
import sys

from .dsl import CircuitParseError, parse_circuit
from .presets import PRESETS, preset
from .sweep import SweepConfig, run_sweep, single_point


def build_parser():
    parser = argparse.ArgumentParser(
        prog="simulate",
        description="Exact Gaussian simulation of (nested SU(1,1)) Sagnac interferometers.")
    parser.add_argument("file", nargs="?", help="circuit document (.circ)")
    parser.add_argument("--sweep", metavar="PARAM=START:STOP:COUNT[:log]",
                        help="sweep one of omega, G, area_lp2q, area_lp1c, alpha")
    parser.add_argument("--out", metavar="FILE", help="write CSV here instead of stdout")
    parser.add_argument("--preset", metavar="NAME", help="use a built-in circuit instead of a file")
    parser.add_argument("--list-presets", action="store_true", help="print preset names and exit")
    parser.add_argument("--workers", type=int, default=1, help="threads for sweep evaluation")
    return parser


def _load(args):
    if args.preset and args.file:
        raise ValueError("give either a circuit file or --preset, not both")
    if args.preset:
        return preset(args.preset)
    if not args.file:
        raise ValueError("no circuit given (pass a .circ file or --preset NAME)")
    with open(args.file, "rb") as fh:
        return parse_circuit(fh.read())


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.list_presets:
        for name, text in PRESETS.items():
            title = text.splitlines()[0].lstrip("# ")
            print(f"{name}\t{title}")
        return 0
    try:
        doc = _load(args)
        if args.sweep:
            table = run_sweep(doc, SweepConfig.parse(args.sweep), workers=args.workers)
        else:
            table = single_point(doc)
        text = table.to_csv()
        if args.out:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except CircuitParseError as exc:
        where = args.file or args.preset
        print(f"simulate: {where}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"simulate: error: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
