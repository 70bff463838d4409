"""
Command-line front end.

    hedgemap rho --model basic --x 0,0,0
    hedgemap optset --model twisted --x 0,16,0 --pre-rotated
    hedgemap probe-lsc --model basic --n 100 --out reports/lsc
    hedgemap probe-selection --model twisted --n 18 --spacing geometric
    hedgemap verify --seed 0 --out reports/verify.json
    hedgemap mesh --model basic --r 2 --resolution 64 --out meshes/basic.csv

Negative coordinates need the `--x=-1,0,0` form. Results go to stdout, logs
to stderr. Exit status: 0 ok, 1 failed verification, 2 bad input or
unwritable output, 3 solver infeasibility or a non-singleton optimal set
where one is required.
"""

import argparse
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np
from loguru import logger
from pydantic import ValidationError

from ..config import load_settings
from ..diagnostics.export import format_float, to_json, write_report
from ..diagnostics.probes import lsc_probe, selection_oscillation
from ..diagnostics.sequences import SequenceSpec
from ..errors import ModelDescriptorError, NonSingletonError, SolverInfeasibleError
from ..geometry.boat import BoatSet
from ..geometry.rotation import rotate
from ..model.descriptor import load_descriptor
from ..model.triple import AdmissibleTriple, triple_by_name
from ..solver.config import SolverConfig
from ..solver.rho import optimal_set, rho_with_path
from ..verify.report import summary_lines, write_report as write_verify_report
from ..verify.runner import all_passed, run_all
from .mesh import MIN_RESOLUTION, write_mesh

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3

DEFAULT_SEQUENCE = {"basic": "basic_lsc", "twisted": "twisted_alternating"}


def parse_point(text: str) -> np.ndarray:
    """'a,b,c' → array of three finite reals."""
    try:
        values = [float(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not three comma-separated reals: {text!r}") from None
    if len(values) != 3 or not np.all(np.isfinite(values)):
        raise argparse.ArgumentTypeError(f"not three finite reals: {text!r}")
    return np.array(values)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


# ==================== Shared arguments ====================

def _add_model_args(parser: argparse.ArgumentParser):
    parser.add_argument("--model", choices=["basic", "twisted"], default="basic",
                        help="Canonical triple (default: basic).")
    parser.add_argument("--model-file", type=Path, default=None,
                        help="JSON model descriptor; overrides --model.")


def _add_solver_args(parser: argparse.ArgumentParser):
    parser.add_argument("--search-tol", type=float, default=None, help="Golden-section tolerance on w1.")
    parser.add_argument("--flat-tol", type=float, default=None, help="Price slack defining the optimal face.")


def _add_point_args(parser: argparse.ArgumentParser, required: bool = True):
    parser.add_argument("--x", type=parse_point, required=required, default=None,
                        help="Position as x1,x2,x3.")
    parser.add_argument("--pre-rotated", action="store_true",
                        help="Read --x as rotated coordinates w and use Φ(w).")


def _triple(args: argparse.Namespace) -> AdmissibleTriple:
    if args.model_file is not None:
        return load_descriptor(args.model_file).to_triple()
    return triple_by_name(args.model)


def _config(args: argparse.Namespace) -> SolverConfig:
    overrides = {}
    if getattr(args, "search_tol", None) is not None:
        overrides["search_tol"] = args.search_tol
    if getattr(args, "flat_tol", None) is not None:
        overrides["flat_tol"] = args.flat_tol
    return SolverConfig(**overrides)


def _point(args: argparse.Namespace, default: Optional[np.ndarray] = None) -> np.ndarray:
    x = args.x if args.x is not None else default
    return rotate(x) if args.pre_rotated else x


def _report_paths(out: Path):
    return Path(f"{out}.json"), Path(f"{out}.csv")


# ==================== Commands ====================

def cmd_rho(args: argparse.Namespace) -> int:
    value, path = rho_with_path(_point(args), _triple(args), _config(args))
    print(format_float(value))
    print(f"path: {path}")
    return EXIT_OK


def cmd_optset(args: argparse.Namespace) -> int:
    triple = _triple(args)
    result = optimal_set(_point(args), triple, _config(args))
    data = result.to_dict()
    data["model"] = triple.name
    data["price"] = [triple.price(z) for z in result.endpoints]
    print(to_json(data), end="")
    return EXIT_OK


def _sequence(args: argparse.Namespace, triple: AdmissibleTriple) -> SequenceSpec:
    kind = args.sequence or DEFAULT_SEQUENCE.get(triple.name, "basic_lsc")
    return SequenceSpec(kind=kind, n_max=args.n, r=triple.r, spacing=args.spacing, ratio=args.ratio)


def cmd_probe_lsc(args: argparse.Namespace) -> int:
    triple = _triple(args)
    x = _point(args, default=np.zeros(3))
    seq = _sequence(args, triple)
    if np.any(x != 0.0):
        seq = seq.model_copy(update={"shift": tuple(float(v) for v in x)})
    report = lsc_probe(x, seq, triple, _config(args))
    if args.out is not None:
        write_report(report, *_report_paths(args.out))
    print(f"gap: {format_float(report.gap)}")
    print(f"witness: {','.join(format_float(v) for v in report.witness)}")
    return EXIT_OK


def cmd_probe_selection(args: argparse.Namespace) -> int:
    triple = _triple(args)
    report = selection_oscillation(_sequence(args, triple), triple, _config(args))
    if args.out is not None:
        write_report(report, *_report_paths(args.out))
    print(f"oscillation: {format_float(report.oscillation)}")
    print(f"odd_limit: {','.join(format_float(v) for v in report.odd_limit)}")
    print(f"even_limit: {','.join(format_float(v) for v in report.even_limit)}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else load_settings().seed
    results = run_all(seed, only=args.claim)
    if args.out is not None:
        write_verify_report(results, seed, args.out)
    for line in summary_lines(results):
        print(line)
    return EXIT_OK if all_passed(results) else EXIT_VERIFY_FAILED


def cmd_mesh(args: argparse.Namespace) -> int:
    triple = _triple(args)
    boat = BoatSet(r=args.r, profile=triple.boat.profile) if args.r is not None else triple.boat
    for path in write_mesh(boat, args.resolution, args.out):
        print(path)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "rho": cmd_rho,
    "optset": cmd_optset,
    "probe-lsc": cmd_probe_lsc,
    "probe-selection": cmd_probe_selection,
    "verify": cmd_verify,
    "mesh": cmd_mesh,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hedgemap",
        description="Risk measures and optimal payoff sets for boat-shaped acceptance sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rho_parser = sub.add_parser("rho", help="Evaluate ρ(x).")
    _add_model_args(rho_parser)
    _add_point_args(rho_parser)
    _add_solver_args(rho_parser)

    optset_parser = sub.add_parser("optset", help="Compute the optimal set R(x) as JSON.")
    _add_model_args(optset_parser)
    _add_point_args(optset_parser)
    _add_solver_args(optset_parser)

    for name, default_n, help_text in (
        ("probe-lsc", 100, "Lower-semicontinuity probe of R along a sequence."),
        ("probe-selection", 200, "Oscillation of the forced selection along a sequence."),
    ):
        probe = sub.add_parser(name, help=help_text)
        _add_model_args(probe)
        _add_solver_args(probe)
        probe.add_argument("--n", type=_positive_int, default=default_n, help="Number of sequence terms.")
        probe.add_argument("--sequence", choices=["basic_lsc", "twisted_alternating"], default=None,
                           help="Sequence kind (default: the model's own).")
        probe.add_argument("--spacing", choices=["linear", "geometric"], default="linear")
        probe.add_argument("--ratio", type=int, default=4, help="Ratio of the geometric spacing.")
        probe.add_argument("--out", type=Path, default=None,
                           help="Write <out>.json and <out>.csv.")
        if name == "probe-lsc":
            _add_point_args(probe, required=False)

    verify_parser = sub.add_parser("verify", help="Run the certification suite.")
    verify_parser.add_argument("--seed", type=int, default=None, help="Seed (default: HEDGEMAP_SEED or 0).")
    verify_parser.add_argument("--claim", action="append", default=None, help="Run only this claim (repeatable).")
    verify_parser.add_argument("--out", type=Path, default=None, help="JSON report path.")

    mesh_parser = sub.add_parser("mesh", help="Export the boundary mesh and profile outline as CSV.")
    _add_model_args(mesh_parser)
    mesh_parser.add_argument("--r", type=float, default=None, help="Override the shape parameter r.")
    mesh_parser.add_argument("--resolution", type=int, default=64, help=f"Rings and ring points (>= {MIN_RESOLUTION}).")
    mesh_parser.add_argument("--out", type=Path, required=True, help="Vertex CSV path.")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "mesh" and args.resolution < MIN_RESOLUTION:
        parser.error(f"--resolution must be at least {MIN_RESOLUTION}")
    if getattr(args, "r", None) is not None and not args.r > 0:
        parser.error("--r must be positive")

    logger.debug(f"[CLI] {args.command}")
    try:
        return COMMANDS[args.command](args)
    except (ModelDescriptorError, ValidationError, ValueError) as e:
        logger.error(f"[CLI] invalid input: {e}")
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"[CLI] cannot write output: {e}")
        return EXIT_USAGE
    except (SolverInfeasibleError, NonSingletonError) as e:
        logger.error(f"[CLI] {type(e).__name__}: {e}")
        return EXIT_INFEASIBLE
