"""Command-line front end.

    python -m residuum winding --contour circle:0,0,1 --point 0,0
    python -m residuum improper --F "log(z)" --a -1 --b 1 --sing 0
    python -m residuum verify --suite all --history-db residuum_history.db

Reports go to stdout (or --out), logs and error objects to stderr. Exit codes:
0 success, 1 invalid input, 2 numerical failure, 3 a verification check failed.
"""

import argparse
import logging
import os
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd
from pydantic import ValidationError

from .defaults import AREA_TOL, LOG_FORMAT, QUAD_TOL
from .errors import ConfigError, ResiduumError
from .expr import parse
from .formatting import convergence_csv, dumps, format_complex, format_extended, summary_table, table_csv, table_text
from .identities import CATALOG_VERSION, SUITES, run_checks
from .improper import vt_1d
from .models.config import JobConfig
from .models.results import ExcisionSpec, ResiduePair, reports_to_dataframe
from .potential import potential_2d
from .quad import integrate_area, integrate_path, vp_integrate_area, vp_integrate_path
from .residue import (default_schedule, default_sector_schedule, residue_at_infinity, residue_from_sectors,
                      residue_small_circle, sector_limits)
from .storage import ReportStore

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2
EXIT_CHECK_FAILED = 3

# argparse bookkeeping that is not part of JobConfig
_NON_CONFIG_ARGS = ("command", "config", "log_file", "verbose")


@dataclass
class Rendered:
    """One command's result in each output format"""

    document: Any
    csv: str
    text: str
    exit_code: int = EXIT_OK

    def select(self, output_format: str) -> str:
        if output_format == "csv":
            return self.csv
        if output_format == "text":
            return self.text
        return dumps(self.document) + "\n"


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors become validation errors instead of argparse's exit status 2"""

    def error(self, message: str):
        raise ConfigError(message, field="arguments")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="residuum", description="Residues, potentials and total values of complex integrals.")

    common = ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override its fields")
    common.add_argument("--tol", type=float, help="quadrature tolerance (boundary tolerance for winding)")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--format", choices=["json", "csv", "text"], help="report format (default json)")
    common.add_argument("--log-file", help="also write logs to this file")
    common.add_argument("--verbose", action="store_true", help="debug logging")

    subparsers = parser.add_subparsers(dest="command", required=True)

    winding = subparsers.add_parser("winding", parents=[common], help="potential of points against a contour")
    winding.add_argument("--contour", help="circle:cx,cy,r | square:cx,cy,side | polygon:... | keyhole:...")
    winding.add_argument("--point", dest="points", action="append", help="re,im (repeatable)")
    winding.add_argument("--convention", choices=["interior", "exterior"])

    integrate = subparsers.add_parser("integrate", parents=[common], help="path or area integral of an expression")
    integrate.add_argument("--expression", "-e", help="f(z, conj(z))")
    integrate.add_argument("--contour")
    integrate.add_argument("--domain", help="disc:cx,cy,R | annulus:cx,cy,r,R | sector:... | rect:...")
    integrate.add_argument("--measure", choices=["dz", "dzbar"])
    integrate.add_argument("--sing", action="append", help="singular point re,im for a principal value")
    integrate.add_argument("--schedule", help="eps0,q,steps")

    residue = subparsers.add_parser("residue", parents=[common], help="residue pair at points or at infinity")
    residue.add_argument("--expression", "-e")
    residue.add_argument("--point", dest="points", action="append",
                         help="re,im (repeatable); the finite singular points for --method infinity")
    residue.add_argument("--method", choices=["small_circle", "sectors", "infinity"])
    residue.add_argument("--sectors", help="angles:a1,a2,...")
    residue.add_argument("--schedule", help="eps0,q,steps")

    improper = subparsers.add_parser("improper", parents=[common], help="vp, vs and vt of F' over [a, b]")
    improper.add_argument("--F", "--expression", dest="expression", help="antiderivative F(z)")
    improper.add_argument("--a", type=float)
    improper.add_argument("--b", type=float)
    improper.add_argument("--sing", action="append", help="real singular point (repeatable)")
    improper.add_argument("--schedule", help="delta0,q,steps")

    verify = subparsers.add_parser("verify", parents=[common], help="run the identity checks")
    verify.add_argument("--suite", choices=list(SUITES))
    verify.add_argument("--check", dest="checks", action="append", help="run only this named check (repeatable)")
    verify.add_argument("--history-db", help="store the run in this SQLite file")
    return parser


def configure_logging(verbose: bool = False, log_file: Optional[str] = None):
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(level=logging.DEBUG if verbose else logging.INFO, format=LOG_FORMAT, handlers=handlers,
                        force=True)


def _one_or_many(items: List[Any]) -> Any:
    return items[0] if len(items) == 1 else items


def run_winding(config: JobConfig) -> Rendered:
    potentials = [potential_2d(config.contour, p, config.tol, config.convention) for p in config.points]
    table = pd.DataFrame(
        [{"point": p, "value": pot.value, "kind": pot.kind, "winding": pot.winding}
         for p, pot in zip(config.points, potentials)],
        columns=["point", "value", "kind", "winding"],
    )
    document = _one_or_many([pot.model_dump(exclude_defaults=True) for pot in potentials])
    return Rendered(document, table_csv(table), table_text(table))


def run_integrate(config: JobConfig) -> Rendered:
    f = parse(config.expression)
    if config.contour is not None:
        tol = config.tol or QUAD_TOL
        if config.sing:
            result = vp_integrate_path(f, config.contour, config.sing, config.measure, tol, config.schedule)
        else:
            result = integrate_path(f, config.contour, config.measure, tol)
    else:
        tol = config.tol or AREA_TOL
        if config.sing:
            exc = (config.schedule or ExcisionSpec()).with_points(config.sing)
            result = vp_integrate_area(f, config.domain, exc, tol)
        else:
            result = integrate_area(f, config.domain, tol)
    if not result.converged:
        log.warning(f"integral of {config.expression} did not reach tol {tol:.1e}")

    summary = pd.DataFrame([{"value": result.value, "abs_error_estimate": result.abs_error_estimate,
                             "evaluations": result.evaluations, "converged": result.converged}])
    return Rendered(result.model_dump(), convergence_csv(result.table), table_text(summary))


def _residue_at(config: JobConfig, f, point: complex) -> Tuple[ResiduePair, Dict[str, Any]]:
    tol = config.tol or QUAD_TOL
    others = [p for p in config.points if p != point]
    if config.method == "sectors":
        schedule = config.schedule or default_sector_schedule(point, others)
        limits = sector_limits(f, config.sectors.translated(point - config.sectors.center), radii=schedule)
        pair = residue_from_sectors(limits)
        per_sector = [limit.model_dump() for limit in limits.limits]
        return pair, {"point": point, **pair.model_dump(), "per_sector": per_sector}
    schedule = config.schedule or default_schedule(point, others)
    pair = residue_small_circle(f, point, schedule, tol)
    return pair, {"point": point, **pair.model_dump()}


def run_residue(config: JobConfig) -> Rendered:
    f = parse(config.expression)
    if config.method == "infinity":
        pair = residue_at_infinity(f, config.points, tol=config.tol or QUAD_TOL)
        summary = pd.DataFrame([{"res": pair.res, "res_star": pair.res_star,
                                 "large_circle_res": pair.large_circle_res, "discrepancy": pair.discrepancy}])
        return Rendered(pair.model_dump(), convergence_csv(pair.table), table_text(summary))

    results = [_residue_at(config, f, p) for p in config.points]
    summary = pd.DataFrame(
        [{"point": p, "res": pair.res, "res_star": pair.res_star, "method": pair.method,
          "error_estimate": pair.error_estimate} for p, (pair, _) in zip(config.points, results)],
        columns=["point", "res", "res_star", "method", "error_estimate"],
    )
    # one convergence table per point, in point order
    rows = [row for pair, _ in results for row in pair.table]
    return Rendered(_one_or_many([document for _, document in results]), convergence_csv(rows), table_text(summary))


def run_improper(config: JobConfig) -> Rendered:
    F = parse(config.expression)
    result = vt_1d(F, config.a, config.b, [s.real for s in config.sing], config.schedule, config.tol or QUAD_TOL)
    table = pd.DataFrame(
        [{"step": row.step, "delta": row.delta, "excised": row.excised, "jumps": row.jumps, "total": row.total,
          "residual": row.residual} for row in result.table],
        columns=["step", "delta", "excised", "jumps", "total", "residual"],
    )
    text = (f"vt = {format_complex(result.vt)}\n"
            f"vp = {format_extended(result.vp)}\nvs = {format_extended(result.vs)}\n"
            f"vt_check = {format_complex(result.vt_check)}\n" + table_text(table))
    return Rendered(result.model_dump(), table_csv(table), text)


def run_verify(config: JobConfig) -> Rendered:
    reports = run_checks(config.suite, config.checks or None)
    if config.history_db:
        run_id = ReportStore(config.history_db).save_run(reports, config.suite, CATALOG_VERSION)
        log.info(f"stored verification run {run_id} in {config.history_db}")
    failed = [r.name for r in reports if r.status == "fail"]
    if failed:
        log.error(f"{len(failed)} check(s) failed: {', '.join(failed)}")
    exit_code = EXIT_CHECK_FAILED if failed else EXIT_OK
    return Rendered([r.model_dump(by_alias=True) for r in reports], table_csv(reports_to_dataframe(reports)),
                    summary_table(reports), exit_code)


COMMANDS = {
    "winding": run_winding,
    "integrate": run_integrate,
    "residue": run_residue,
    "improper": run_improper,
    "verify": run_verify,
}


def run(config: JobConfig) -> int:
    """Run one validated job, write its report and return the exit code"""
    rendered = COMMANDS[config.command](config)
    output = rendered.select(config.format)
    if config.out:
        directory = os.path.dirname(config.out)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(config.out, "w", newline="\n") as f:
            f.write(output)
        log.info(f"wrote {config.command} report to {config.out}")
    else:
        sys.stdout.write(output)
        sys.stdout.flush()
    return rendered.exit_code


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {key: value for key, value in vars(args).items() if key not in _NON_CONFIG_ARGS}


def _emit_error(code: str, message: str, field: Optional[str]):
    sys.stderr.write(dumps({"error": {"code": code, "message": message, "field": field}}) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except ConfigError as e:
        _emit_error(e.code, e.message, e.field)
        return EXIT_VALIDATION

    configure_logging(args.verbose, args.log_file)
    try:
        config = JobConfig.load(args.command, args.config, _overrides(args))
        return run(config)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or None
        log.error(f"invalid configuration: {first['msg']}")
        _emit_error("validation_error", first["msg"], field)
        return EXIT_VALIDATION
    except ResiduumError as e:
        log.error(f"{args.command} failed: {e.message}")
        _emit_error(e.code, e.message, e.field)
        return e.exit_code
    except (OSError, ValueError) as e:
        log.error(f"{args.command} failed: {e}")
        _emit_error("validation_error", str(e), None)
        return EXIT_VALIDATION
    except Exception as e:
        log.error(f"{args.command} failed: {e}", exc_info=True)
        _emit_error("internal_error", str(e), None)
        return EXIT_NUMERICAL
