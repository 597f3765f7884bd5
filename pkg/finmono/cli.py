"""``finmono`` command line: bounds, scans and cross-check suites.

Exit codes: 0 success (``Finite`` for scans), 1 failed suite, 2 usage error
or a family the engines cannot scan, 3 malformed or incomplete trace table,
10 ``Infinite``, 11 ``Inconclusive``.
"""

from __future__ import annotations

import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

import click
from pydantic import ValidationError

from finmono.arith import ParameterError, parse_fraction
from finmono.bounds import (
    BoundName,
    Criterion,
    CurveParams,
    GeneralParams,
    curve_report,
    example_bounds_artin_schreier,
    example_bounds_hypergeometric,
    general_report,
)
from finmono.canonicalization import canonicalize_model, sha256_hex_for_model
from finmono.config import ConfigError, RuntimeLimits
from finmono.pipeline import (
    ScanBudget,
    ScanRefusedError,
    VerdictKind,
    decide,
    scan,
    write_point_csv,
)
from finmono.sheaftrace import (
    ArtinSchreierFamily,
    HypergeometricFamily,
    IncompleteTableError,
    TableFormatError,
    UnsupportedFamilyError,
    load_trace_table,
)
from finmono.suites import SUITES, run_suites, selftest

logger = logging.getLogger(__name__)

EXIT_SUITE_FAILED = 1
EXIT_USAGE = 2
EXIT_TABLE = 3
EXIT_CODES = {
    VerdictKind.FINITE: 0,
    VerdictKind.INFINITE: 10,
    VerdictKind.INCONCLUSIVE: 11,
}
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


class RationalType(click.ParamType):
    """``num/den`` or an integer."""

    name = "rational"

    def convert(self, value: Any, param: Any, ctx: Any) -> Fraction:
        if isinstance(value, Fraction):
            return value
        try:
            return parse_fraction(str(value))
        except ParameterError as exc:
            self.fail(str(exc), param, ctx)


RATIONAL = RationalType()


# ==============================================================================
# Configuration file and logging
# ==============================================================================


def read_config_file(path: Path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment.

    Keys may use dashes or underscores and map onto option names.

    Raises:
        ConfigError: On a line without ``=``.
    """
    values: dict[str, str] = {}
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            msg = f"{path}:{line_no}: expected 'key = value'"
            raise ConfigError(msg)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _load_config(
    ctx: click.Context, _param: click.Parameter, value: Path | None
) -> None:
    if value is None:
        return
    try:
        values = read_config_file(value)
    except ConfigError as exc:
        raise click.BadParameter(str(exc)) from exc
    group = ctx.command
    assert isinstance(group, click.Group)
    ctx.default_map = {name: dict(values) for name in group.commands}
    logger.debug("loaded %d settings from %s", len(values), value)


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format=LOG_FORMAT, force=True)


def _limits() -> RuntimeLimits:
    try:
        return RuntimeLimits.from_env()
    except ConfigError as exc:
        raise click.UsageError(str(exc)) from exc


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option(
    "--config",
    type=click.Path(path_type=Path, exists=True, dir_okay=False),
    callback=_load_config,
    is_eager=True,
    expose_value=False,
    help="File of 'key = value' defaults; command-line flags win.",
)
@click.option("-v", "--verbose", count=True, help="-v for info, -vv for debug logs.")
def main(verbose: int) -> None:
    """Effective bounds and Frobenius scans for finite monodromy."""
    _configure_logging(verbose)


# ==============================================================================
# Shared family options
# ==============================================================================


def _family_options(func: Any) -> Any:
    options = [
        click.option("--family", type=click.Choice(["as", "hyp"]), default=None),
        click.option("--p", "p", type=int, default=None, help="Characteristic."),
        click.option("--nvar", type=int, default=None, help="n of x**n + t x."),
        click.option("--f-deg", type=int, default=1, show_default=True),
        click.option("--m", "m", type=int, default=None, help="Character order."),
        click.option("--a", "a", type=int, default=None),
        click.option("--b", "b", type=int, default=None),
        click.option("--e-breaks", type=RATIONAL, default=None, help="Break sum e."),
        click.option(
            "--classical-breaks",
            is_flag=True,
            help="Use e = n/(n-1) for the Artin-Schreier family.",
        ),
        click.option(
            "--criterion",
            type=click.Choice([c.value for c in Criterion]),
            default=Criterion.EIGEN.value,
            show_default=True,
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _require(flags: dict[str, Any], names: list[str], context: str) -> None:
    for name in names:
        if flags.get(name) is None:
            msg = f"--{name.replace('_', '-')} is required {context}"
            raise click.UsageError(msg)


def _artin_schreier_break(flags: dict[str, Any]) -> Fraction | None:
    if flags["classical_breaks"]:
        if flags["e_breaks"] is not None:
            msg = "--e-breaks and --classical-breaks are mutually exclusive"
            raise click.UsageError(msg)
        return Fraction(flags["nvar"], flags["nvar"] - 1)
    return flags["e_breaks"]


def _build_family(flags: dict[str, Any]) -> ArtinSchreierFamily | HypergeometricFamily:
    try:
        if flags["family"] == "as":
            _require(flags, ["p", "nvar"], "with --family as")
            return ArtinSchreierFamily(
                p=flags["p"],
                n=flags["nvar"],
                e_override=_artin_schreier_break(flags),
            )
        _require(flags, ["p", "m", "a", "b"], "with --family hyp")
        return HypergeometricFamily(
            p=flags["p"], f_deg=flags["f_deg"], m=flags["m"], a=flags["a"], b=flags["b"]
        )
    except ValidationError as exc:
        raise click.UsageError(str(exc)) from exc


def _echo_model(model: Any) -> None:
    click.echo(model.model_dump_json(indent=2))


# ==============================================================================
# bound
# ==============================================================================


@main.command()
@_family_options
@click.option("--curve", "shape", flag_value="curve", help="Raw curve parameters.")
@click.option(
    "--general", "shape", flag_value="general", help="Raw general parameters."
)
@click.option("--r", "r", type=int, default=None, help="Rank.")
@click.option("--q", "q", type=int, default=None, help="Base field size.")
@click.option("--cond-e", type=int, default=1, show_default=True)
@click.option("--f-ram", type=int, default=1, show_default=True)
@click.option("--b1", type=int, default=None, help="First Betti number of the curve.")
@click.option("--ambient-n", type=int, default=None)
@click.option("--complexity", "-C", "complexity", type=int, default=None)
@click.option("--c-x", type=int, default=None, help="Complexity of the base scheme.")
@click.option("--d-ext", type=int, default=None)
def bound(**flags: Any) -> None:
    """Print every bound for a family or raw parameters as JSON."""
    criterion = Criterion(flags["criterion"])
    shape = flags["shape"]
    if (shape is None) == (flags["family"] is None):
        msg = "give exactly one of --family, --curve or --general"
        raise click.UsageError(msg)
    limits = _limits()
    try:
        if flags["family"] == "as":
            _require(flags, ["p", "nvar"], "with --family as")
            report = example_bounds_artin_schreier(
                flags["p"],
                flags["nvar"],
                criterion,
                e_override=_artin_schreier_break(flags),
            )
        elif flags["family"] == "hyp":
            _require(flags, ["p", "m", "a", "b"], "with --family hyp")
            report = example_bounds_hypergeometric(
                flags["p"],
                flags["f_deg"],
                flags["m"],
                flags["a"],
                flags["b"],
                criterion,
            )
        elif shape == "curve":
            _require(flags, ["r", "q", "b1", "e_breaks"], "with --curve")
            params = CurveParams(
                r=flags["r"],
                q=flags["q"],
                p=flags["p"],
                cond_e=flags["cond_e"],
                f_ram=flags["f_ram"],
                b1=flags["b1"],
                e_breaks=flags["e_breaks"],
            )
            report = curve_report(params, criterion)
        else:
            required = ["r", "q", "ambient_n", "complexity", "c_x"]
            _require(flags, required, "with --general")
            params = GeneralParams(
                r=flags["r"],
                q=flags["q"],
                p=flags["p"],
                cond_e=flags["cond_e"],
                f_ram=flags["f_ram"],
                ambient_n=flags["ambient_n"],
                complexity=flags["complexity"],
                c_x=flags["c_x"],
                d_ext=flags["d_ext"],
            )
            report = general_report(params, criterion, max_digits=limits.max_digits)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    _echo_model(report)


# ==============================================================================
# scan
# ==============================================================================


@main.command("scan")
@_family_options
@click.option(
    "--table",
    type=click.Path(path_type=Path, dir_okay=False),
    default=None,
    help="Trace-table file instead of a built-in family.",
)
@click.option("--max-degree", type=int, default=3, show_default=True)
@click.option("--max-field-size", type=int, default=2**20, show_default=True)
@click.option("--max-points", type=int, default=10**6, show_default=True)
@click.option("--max-cost", type=int, default=None)
@click.option(
    "--jobs", type=int, default=1, show_default=True, help="Worker processes."
)
@click.option(
    "--bound-choice",
    type=click.Choice([b.value for b in BoundName]),
    default=None,
    help="Measure against this bound instead of the criterion's headline bound.",
)
@click.option(
    "--decide",
    "use_decide",
    is_flag=True,
    help="Target the theorem bound, limited to what the budget can reach.",
)
@click.option("--out", type=click.Path(path_type=Path, dir_okay=False), default=None)
@click.option(
    "--canonical",
    is_flag=True,
    help="Write --out as canonical JSON without timing, for byte comparison.",
)
@click.option(
    "--csv",
    "csv_path",
    type=click.Path(path_type=Path, dir_okay=False),
    default=None,
    help="Also write per-point traces as CSV.",
)
@click.pass_context
def scan_command(ctx: click.Context, **flags: Any) -> None:
    """Scan points of every extension degree and report a verdict.

    Exit 0 for Finite, 10 for Infinite, 11 for Inconclusive.
    """
    criterion = Criterion(flags["criterion"])
    if criterion is Criterion.TRACES:
        msg = "--criterion must be eigen or trace for a scan"
        raise click.UsageError(msg)
    if (flags["table"] is None) == (flags["family"] is None):
        msg = "give exactly one of --family or --table"
        raise click.UsageError(msg)
    try:
        budget = ScanBudget(
            max_degree=flags["max_degree"],
            max_field_size=flags["max_field_size"],
            max_points=flags["max_points"],
            max_cost=flags["max_cost"],
            worker_count=flags["jobs"],
        )
    except ValidationError as exc:
        raise click.UsageError(str(exc)) from exc
    limits = _limits()

    try:
        fam = (
            load_trace_table(flags["table"])
            if flags["table"] is not None
            else _build_family(flags)
        )
        if flags["use_decide"]:
            report = decide(fam, criterion, budget, limits=limits)
        else:
            report = scan(
                fam,
                criterion,
                budget,
                bound_choice=BoundName(flags["bound_choice"])
                if flags["bound_choice"]
                else None,
                limits=limits,
                record_points=flags["csv_path"] is not None,
            )
    except (TableFormatError, IncompleteTableError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(EXIT_TABLE)
    except ScanRefusedError as exc:
        if exc.bounds is not None:
            _echo_model(exc.bounds)
        click.echo(f"error: {exc}", err=True)
        ctx.exit(EXIT_USAGE)
    except UnsupportedFamilyError as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(EXIT_USAGE)

    if flags["out"] is not None:
        if flags["canonical"]:
            flags["out"].write_bytes(canonicalize_model(report))
        else:
            text = report.model_dump_json(indent=2) + "\n"
            flags["out"].write_text(text, encoding="utf-8")
        logger.info(
            "wrote scan report to %s (sha256 %s)",
            flags["out"],
            sha256_hex_for_model(report),
        )
    else:
        _echo_model(report)
    if flags["csv_path"] is not None:
        write_point_csv(report, flags["csv_path"])
    verdict = report.verdict
    click.echo(
        f"verdict: {verdict.kind.value} "
        f"(degrees covered through {verdict.checked_up_to})",
        err=True,
    )
    ctx.exit(EXIT_CODES[verdict.kind])


# ==============================================================================
# oracle and selftest
# ==============================================================================


@main.command()
@click.option(
    "--suite",
    "suites",
    type=click.Choice(list(SUITES)),
    multiple=True,
    help="Suite to run; repeat for several (default: all).",
)
@click.option("--rmax", type=int, default=None)
@click.option("--mmax", type=int, default=None)
@click.option("--pmax", type=int, default=None)
@click.option("--trials", type=int, default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_context
def oracle(ctx: click.Context, suites: tuple[str, ...], **sizes: Any) -> None:
    """Run the cross-check suites; exit 1 at the first failing identity."""
    kwargs = {key: value for key, value in sizes.items() if value is not None}
    failed = False
    for result in run_suites(list(suites), **kwargs):
        status = "PASS" if result.passed else "FAIL"
        click.echo(f"{result.name}: {status} ({result.checks} checks)")
        if not result.passed:
            click.echo(f"  failing identity: {result.failure}")
            failed = True
            break
    ctx.exit(EXIT_SUITE_FAILED if failed else 0)


@main.command("selftest")
@click.pass_context
def selftest_command(ctx: click.Context) -> None:
    """Reproduce the published example bounds."""
    result = selftest()
    status = "PASS" if result.passed else "FAIL"
    click.echo(f"selftest: {status} ({result.checks} checks)")
    if not result.passed:
        click.echo(f"  failing identity: {result.failure}")
        ctx.exit(EXIT_SUITE_FAILED)


if __name__ == "__main__":
    main()
