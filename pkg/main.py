#!/usr/bin/env python3
"""
Entry point for histlab.

Usage:
    python main.py solve --input k4 --mode count --json
    python main.py check --input cube
    python main.py gen honeycomb 3 3 --out torus.emb
    python main.py cec --input petersen --json
    python main.py batch --dir fullerenes/ --budget 100000000
"""
import argparse
import sys
from typing import Optional

from core.types import SolveMode

FORMATS = ["graph6", "edgelist", "embedded"]
MODES = [mode.value for mode in SolveMode]


def _add_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, metavar="SRC",
                        help="Graph file, or a catalog name such as k4, petersen, prism:5")
    parser.add_argument("--format", choices=FORMATS, default=None,
                        help="Input format (default: inferred from the suffix)")
    parser.add_argument("--json", action="store_true", help="Print the JSON report on stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="histlab",
        description="Homeomorphically irreducible spanning trees in cubic graphs",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    solve_parser = subparsers.add_parser("solve", help="Decide, count or enumerate Hists")
    _add_input(solve_parser)
    solve_parser.add_argument("--mode", choices=MODES, default=SolveMode.DECIDE.value)
    solve_parser.add_argument("--budget", type=int, default=None, help="Search node budget")
    solve_parser.add_argument("--use-embedding", action="store_true",
                              help="Search facial cycles only (needs a plane embedding)")
    solve_parser.add_argument("--cert-out", metavar="FILE", help="Write the first certificate here")
    solve_parser.add_argument("--dot", metavar="FILE", help="Write a DOT drawing with the tree highlighted")
    solve_parser.add_argument("--png", metavar="FILE", help="Render the certificate to a PNG")

    check_parser = subparsers.add_parser("check", help="Cheap NoHist filters, no search")
    _add_input(check_parser)

    gen_parser = subparsers.add_parser("gen", help="Generate graphs")
    gen_parser.add_argument("--out", metavar="FILE", help="Write here instead of stdout")
    gen_parser.add_argument("--json", action="store_true", help="Print provenance JSON on stderr")
    families = gen_parser.add_subparsers(dest="family", required=True)

    catalog_parser = families.add_parser("catalog", help="A named graph")
    catalog_parser.add_argument("name")

    honeycomb_parser = families.add_parser("honeycomb", help="Honeycomb hexangulation of the torus")
    honeycomb_parser.add_argument("m", type=int)
    honeycomb_parser.add_argument("n", type=int)

    inflate_parser = families.add_parser("inflate", help="Inflation of a base graph")
    inflate_parser.add_argument("base", metavar="FILE", help="Base graph file or catalog name")
    inflate_parser.add_argument("--bipartite", type=int, metavar="K", default=None,
                                help="Bipartite inflation of a 2K-regular base")
    inflate_parser.add_argument("--seed", type=int, default=None,
                                help="Shuffle each cycle's port order with this seed")

    random_parser = families.add_parser("random-regular", help="Uniform-ish random d-regular graph")
    random_parser.add_argument("n", type=int)
    random_parser.add_argument("d", type=int)
    random_parser.add_argument("seed", type=int)

    ring_parser = families.add_parser("insert-ring", help="Insert a hexagon ring along a 6-cycle")
    ring_parser.add_argument("graph", metavar="FILE", help="Embedded graph file")
    ring_parser.add_argument("cycle", metavar="CYCLE", help="Six vertices, comma-separated")

    witness_parser = families.add_parser("witness", help="Cyclically k-edge-connected bipartite cubic graph")
    witness_parser.add_argument("k", type=int)
    witness_parser.add_argument("seed", type=int)
    witness_parser.add_argument("--max-len", type=int, default=None, help="Cycle length cap for cec")

    cec_parser = subparsers.add_parser("cec", help="Cyclic edge-connectivity")
    _add_input(cec_parser)
    cec_parser.add_argument("--verify-inflation", metavar="BASEFILE", default=None,
                            help="Check the inflation bound against this base graph")
    cec_parser.add_argument("--max-len", type=int, default=None, help="Cycle length cap")

    batch_parser = subparsers.add_parser("batch", help="Solve every graph in a corpus")
    source = batch_parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--dir", help="Directory of .g6 files")
    source.add_argument("--file", help="One multi-line .g6 file")
    batch_parser.add_argument("--embedding-dir", default=None,
                              help="Directory of <stem>-<index>.emb embeddings")
    batch_parser.add_argument("--budget", type=int, default=None)
    batch_parser.add_argument("--mode", choices=MODES, default=SolveMode.DECIDE.value)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    from logger import setup_logging
    from commands import run_command

    setup_logging()
    return run_command(args)


if __name__ == "__main__":
    sys.exit(main())
