"""
Command-line driver.

Exit codes: 0 success, 1 solve (or property) failure, 2 invalid input.
"""
import argparse
import logging
import os
import sys
import typing

from pydantic import ValidationError

from .densities import expand_density
from .densities import parse_density
from .io import read_body
from .io import read_density_spec
from .io import report_document
from .io import write_body
from .io import write_density
from .io import write_report
from .io import write_trace_csv
from gmink.background import BackgroundTask
from gmink.constants import BRANCH_COLLAPSE_DISTANCE
from gmink.exceptions import ErrorDispatcher
from gmink.exceptions import GminkException
from gmink.exceptions import GridError
from gmink.exceptions import SolveFailure
from gmink.geometry import build_grid
from gmink.geometry import default_grid
from gmink.isotropic import isotropic_report
from gmink.isotropic import isotropic_threshold
from gmink.isotropic import linearized_spectrum
from gmink.measures import gaussian_volume
from gmink.measures import gaussian_volume_mc
from gmink.measures import large_branch_mass_threshold
from gmink.measures import small_branch_mass_threshold
from gmink.measures import surface_measure_density
from gmink.measures import surface_measure_total
from gmink.measures import surface_measure_total_radial
from gmink.solver import branch_ordering
from gmink.solver import homotopy_solve
from gmink.types import Branch
from gmink.types import SolveConfig
from gmink.utils import configure_logging
from gmink.verification import check_isoperimetric
from gmink.verification import check_weak_convergence
from gmink.verification import probe_isotropic_constancy
from gmink.verification import random_even_body

logger = logging.getLogger(__name__)

SUITES = ("isoperimetric", "weak_convergence", "isotropic_constancy")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def parse_grid(text: str) -> typing.Tuple[int, ...]:
    """
    "256" for S^1, "32x64" for S^2.
    """
    try:
        return tuple(int(part) for part in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid grid {text!r}")


def _grid_for(dim: int, resolution):
    if resolution is None:
        return default_grid(dim)
    if len(resolution) != dim - 1:
        raise GridError(
            f"--grid {'x'.join(map(str, resolution))} does not fit S^{dim - 1}"
        )
    return build_grid(dim, resolution)


def _out_path(args, name: str) -> typing.Optional[str]:
    if not args.out:
        return None
    os.makedirs(args.out, exist_ok=True)
    return os.path.join(args.out, name)


def _echo(text: str = "") -> None:
    print(text, file=sys.stdout)


def _echo_error(text: str) -> None:
    print(text, file=sys.stderr)


def cmd_threshold(args) -> int:
    _echo(f"isotropic threshold: {isotropic_threshold(args.n, args.p):.6f}")
    _echo(
        f"L1 mass threshold (small branch): "
        f"{small_branch_mass_threshold(args.n, args.p):.6f}"
    )
    _echo(
        f"L1 mass threshold (large-branch uniqueness): "
        f"{large_branch_mass_threshold(args.n, args.p):.6f}"
    )
    return 0


def cmd_isotropic(args) -> int:
    report = isotropic_report(args.n, args.p, args.C)
    _echo(f"threshold: {report.threshold:.12g}")
    _echo(f"constant solutions: {report.root_count}")
    spectra = []
    for r0 in report.roots:
        spectrum = linearized_spectrum(args.n, args.p, r0, args.k_max)
        spectra.append(spectrum)
        state = "invertible" if spectrum.invertible else "singular"
        _echo(f"  r0 = {r0:.12g} (linearization {state})")
    path = _out_path(args, "isotropic.json")
    if path:
        write_report(
            path,
            {
                "report": report_document(report),
                "spectra": [report_document(s) for s in spectra],
            },
        )
    return 0


def cmd_volume(args) -> int:
    h = read_body(args.body)
    gamma = gaussian_volume(h)
    estimate = gaussian_volume_mc(h, args.samples, args.seed, args.workers)
    z = abs(estimate.value - gamma) / max(estimate.standard_error, 1e-300)
    _echo(f"gaussian volume (quadrature): {gamma:.12g}")
    _echo(
        f"gaussian volume (monte carlo): {estimate.value:.6g} "
        f"+- {estimate.standard_error:.2g} ({z:.2f} standard errors)"
    )
    path = _out_path(args, "volume.json")
    if path:
        write_report(
            path,
            {
                "gamma_n": gamma,
                "monte_carlo": estimate.model_dump(),
            },
        )
    return 0


def cmd_measure(args) -> int:
    h = read_body(args.body)
    density = surface_measure_density(h)
    total = surface_measure_total(density)
    radial = surface_measure_total_radial(h)
    _echo(f"total measure: {total:.12g}")
    _echo(f"total measure (radial formula): {radial:.12g}")
    path = _out_path(args, "density.json")
    if path:
        write_density(path, density)
    return 0


def _solve_config(args) -> SolveConfig:
    return SolveConfig(
        newton_tol=args.newton_tol,
        max_newton_iters=args.max_newton_iters,
        initial_dt=args.initial_dt,
        min_dt=args.min_dt,
    )


def _density_for(args, grid):
    if args.density_file:
        spec = read_density_spec(args.density_file)
    else:
        spec = parse_density(args.density)
    return expand_density(spec, grid)


def _write_solution(args, branch: str, report) -> None:
    _echo(
        f"{branch}: gamma_n = {report.gamma_n:.6g}, "
        f"|F| = {report.residual_sup:.3e}, "
        f"h in [{report.apriori.h_min:.6g}, {report.apriori.h_max:.6g}]"
    )
    if report.gamma_crossing:
        _echo(f"{branch}: the continuation path crossed gamma_n = 1/2")
    body_path = _out_path(args, f"solution_{branch}.json")
    if body_path:
        write_body(body_path, report.solution)
        write_report(_out_path(args, f"report_{branch}.json"), report)
        write_trace_csv(
            _out_path(args, f"trace_{branch}.csv"), report.homotopy_trace
        )


def cmd_solve(args) -> int:
    grid = _grid_for(args.n, args.grid)
    f = _density_for(args, grid)
    cfg = _solve_config(args)
    branches = (
        [Branch.SMALL, Branch.LARGE]
        if args.branch == "both"
        else [Branch(args.branch)]
    )
    _echo(f"|f|_1 = {f.l1_norm:.6g}")

    tasks = [
        BackgroundTask(homotopy_solve, f, branch, cfg, args.p)
        for branch in branches
    ]
    for task in tasks:
        task()
    reports, failure = {}, None
    for branch, task in zip(branches, tasks):
        try:
            reports[branch.value] = task.result()
        except SolveFailure as e:
            _echo(f"{branch.value}: solve failed ({e.reason})")
            failure = failure or e

    if len(reports) == 2:
        ordering = branch_ordering(reports["small"], reports["large"])
        distance = ordering.hausdorff_distance
        _echo(f"hausdorff distance between branches: {distance:.6g}")
        if distance < BRANCH_COLLAPSE_DISTANCE:
            logger.warning("Both branches converged to the same body")
            _echo("branches collapsed: a single solution was found")
            reports = {"single": reports["small"]}
        else:
            _echo(
                f"gamma_n(small) < gamma_n(large): {ordering.gamma_ordered}; "
                f"h_small < h_large at every node: "
                f"{ordering.pointwise_ordered} "
                f"(min gap {ordering.min_gap:.6g})"
            )
            path = _out_path(args, "ordering.json")
            if path:
                write_report(path, ordering)
    for branch, report in reports.items():
        _write_solution(args, branch, report)
    if failure is not None:
        raise failure
    return 0


def cmd_verify(args) -> int:
    if args.suite == "isoperimetric":
        record = check_isoperimetric(
            args.trials, args.n, args.p, args.seed, workers=args.workers
        )
    elif args.suite == "weak_convergence":
        target = random_even_body(args.n, args.seed, 0.1, p=args.p)
        record = check_weak_convergence(target, seed=args.seed)
    else:
        record = probe_isotropic_constancy(args.n, args.p, args.C, args.trials)
    _echo(
        f"{record.name}: {record.trials} trials, {record.failures} failures, "
        f"worst margin {record.worst_margin}"
    )
    if record.non_converged:
        _echo(f"  {record.non_converged} runs did not converge")
    path = _out_path(args, f"verify_{args.suite}.json")
    if path:
        write_report(path, record)
    return 0 if record.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="gmink",
        description="Gaussian Minkowski problem toolkit.",
    )
    parser.add_argument("--out", help="directory for machine artifacts")
    commands = parser.add_subparsers(
        dest="command", parser_class=_Parser, required=True
    )

    def problem(sub, with_c=False):
        sub.add_argument("--n", type=int, required=True)
        sub.add_argument("--p", type=float, default=1.0)
        if with_c:
            sub.add_argument("--C", type=float, required=True)

    sub = commands.add_parser(
        "threshold", help="mass and isotropic thresholds"
    )
    problem(sub)
    sub.set_defaults(handler=cmd_threshold)

    sub = commands.add_parser("isotropic", help="constant solutions")
    problem(sub, with_c=True)
    sub.add_argument("--k-max", type=int, default=4)
    sub.set_defaults(handler=cmd_isotropic)

    sub = commands.add_parser("volume", help="Gaussian volume of a body")
    sub.add_argument("body")
    sub.add_argument("--samples", type=int, default=10 ** 6)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--workers", type=int, default=1)
    sub.set_defaults(handler=cmd_volume)

    sub = commands.add_parser("measure", help="surface measure of a body")
    sub.add_argument("body")
    sub.set_defaults(handler=cmd_measure)

    sub = commands.add_parser("solve", help="solve the Minkowski problem")
    problem(sub)
    density = sub.add_mutually_exclusive_group(required=True)
    density.add_argument("--density", help="e.g. cosine_even:c=0.04,a1=0.1")
    density.add_argument("--density-file")
    sub.add_argument(
        "--branch", choices=("small", "large", "both"), default="small"
    )
    sub.add_argument("--grid", type=parse_grid, help="N or NLATxNLON")
    sub.add_argument("--newton-tol", type=float, default=1e-10)
    sub.add_argument("--max-newton-iters", type=int, default=50)
    sub.add_argument("--initial-dt", type=float, default=0.1)
    sub.add_argument("--min-dt", type=float, default=1e-4)
    sub.set_defaults(handler=cmd_solve)

    sub = commands.add_parser("verify", help="run a property suite")
    sub.add_argument("suite", choices=SUITES)
    sub.add_argument("--n", type=int, default=2)
    sub.add_argument("--p", type=float, default=1.0)
    sub.add_argument("--C", type=float, default=0.251327)
    sub.add_argument("--trials", type=int, default=20)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--workers", type=int, default=1)
    sub.set_defaults(handler=cmd_verify)

    for sub in commands.choices.values():
        sub.add_argument("--out", default=argparse.SUPPRESS)
    return parser


def main(argv: typing.Sequence[str] = None) -> int:
    configure_logging()
    dispatcher = ErrorDispatcher(stream=_echo_error)

    @dispatcher.error_handler(ValidationError)
    def _invalid_options(error: ValidationError) -> int:
        _echo_error(f"error: invalid options ({error.error_count()} errors)")
        return 2

    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        _echo_error(str(e))
        return 2
    try:
        return args.handler(args)
    except (GminkException, ValidationError) as e:
        return dispatcher.error_handle(e)
