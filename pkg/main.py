import functools
import json
import logging
import sys

import click
from rich.console import Console

from config.run_config import FORMATS, RunConfig, load_run_config
from config.settings import SETTINGS_FILE
from curve.classify import classify
from curve.invariants import INVARIANT_NAMES, partner_point, roundtrip_distance
from curve.lift import eval_jet
from divisor.chern import chern_degree
from divisor.zeros import divisor_report
from models.curve_expr import Explicit, Fiber, Partner, Weierstrass, curve_to_dict, load_curve
from models.errors import InvalidConfig, OrderExhausted, TwistorError
from models.reports import Verdict
from ratfun.expr import evaluate, is_constant
from ratfun.parser import parse_expr
from s4.surface import MESH_COLUMNS, antipodal_check, surface_mesh
from sampling.grid import Chart
from twistor.frames import Flag
from twistor.projective import ProjPoint
from utils.formatting import format_report, write_report, write_rows_csv
from utils.log import setup_logging

log = logging.getLogger("twistorcurves")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

ZERO_COLUMNS = ("chart", "z_re", "z_im", "order", "residual")

stderr = Console(stderr=True)


def reports_errors(command):
    """Turn library errors into a JSON error object on stdout and their exit code."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return command(*args, **kwargs)
        except TwistorError as e:
            log.debug("%s failed: %s", ctx.command.name, e)
            click.echo(json.dumps(e.to_dict()))
            ctx.exit(e.exit_code)

    return wrapper


def run_config(ctx: click.Context) -> RunConfig:
    options = ctx.find_root().obj
    charts = options["charts"]
    return load_run_config(
        options["settings"],
        tol=options["tol"],
        grid_n=options["grid_n"],
        grid_width=options["grid_width"],
        charts=tuple(Chart.parse(c) for c in charts.split(",")) if charts else None,
        fd_step=options["fd_step"],
        format=options["format"],
        jobs=options["jobs"],
    )


def parse_constant(text: str) -> complex:
    expr = parse_expr(text)
    if not is_constant(expr):
        raise InvalidConfig(f"{text!r} is not a constant")
    return evaluate(expr, 0j)


@click.group()
@click.option("--tol", type=float, default=None, help="Residual tolerance for verdicts (default 1e-7)")
@click.option("--grid-n", type=int, default=None, help="Samples per side of the grid")
@click.option("--grid-width", type=float, default=None, help="Half-width of the square grid")
@click.option("--fd-step", type=float, default=None, help="Finite-difference step for surfaces")
@click.option("--charts", type=str, default=None, help="Comma-separated charts, e.g. 0,inf")
@click.option("--jobs", type=int, default=None, help="Worker threads for grid sweeps")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default=None, help="Output format")
@click.option("--verbose", is_flag=True, help="Debug logging on stderr")
@click.option("--settings", type=click.Path(dir_okay=False), default=SETTINGS_FILE,
              help="YAML settings file")
@click.pass_context
def cli(ctx, tol, grid_n, grid_width, fd_step, charts, jobs, fmt, verbose, settings):
    """Pseudoholomorphic curves in nearly Kähler CP^3: generate, check and measure them."""
    setup_logging(verbose)
    ctx.obj = {
        "tol": tol, "grid_n": grid_n, "grid_width": grid_width, "fd_step": fd_step,
        "charts": charts, "jobs": jobs, "format": fmt, "settings": settings,
    }


@cli.command()
@click.option("--f", "f_text", type=str, default=None, help="Weierstrass f(z)")
@click.option("--g", "g_text", type=str, default=None, help="Weierstrass g(z), nonconstant")
@click.option("--fiber", type=str, default=None, help="Fiber base as c1,c2,c3,c4")
@click.option("--components", type=str, nargs=4, default=None, help="Four component expressions")
@click.option("--partner-of", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Curve file to wrap as a partner")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Write the curve here instead of stdout")
@reports_errors
def generate(f_text, g_text, fiber, components, partner_of, output):
    """Write a curve file."""
    modes = [f_text is not None or g_text is not None, fiber is not None,
             components is not None, partner_of is not None]
    if sum(modes) != 1:
        raise click.UsageError("give exactly one of --f/--g, --fiber, --components or --partner-of")
    if modes[0]:
        if f_text is None or g_text is None:
            raise click.UsageError("Weierstrass data needs both --f and --g")
        curve = Weierstrass.from_texts(f_text, g_text)
    elif fiber is not None:
        parts = fiber.split(",")
        if len(parts) != 4:
            raise click.UsageError("--fiber takes four comma-separated constants")
        curve = Fiber(tuple(parse_constant(p) for p in parts))
    elif components is not None:
        curve = Explicit.from_texts(components)
    else:
        curve = Partner(load_curve(partner_of))
    text = json.dumps(curve_to_dict(curve))
    if output:
        with open(output, "w", encoding="utf-8") as f:
            f.write(text + "\n")
        log.info("generate: wrote %s curve to %s", curve_to_dict(curve)["kind"], output)
    else:
        click.echo(text)


@cli.command()
@click.argument("curve_file", type=click.Path(dir_okay=False))
@click.pass_context
@reports_errors
def check(ctx, curve_file):
    """Classify a curve; exits 1 when it is not pseudoholomorphic."""
    cfg = run_config(ctx)
    curve = load_curve(curve_file)
    result = classify(curve, cfg.grid, cfg.tol, cfg.jobs)
    write_report({**result.to_dict(), "config": cfg.to_dict()}, sys.stdout)
    stderr.print(f"{curve_file}: {result.verdict.display_value}")
    if result.verdict is Verdict.NOT_PSEUDOHOLOMORPHIC:
        ctx.exit(EXIT_CHECK_FAILED)


cli.add_command(check, name="classify")


@cli.command()
@click.argument("curve_file", type=click.Path(dir_okay=False))
@click.option("--invariant", type=click.Choice(INVARIANT_NAMES, case_sensitive=False), default="I2",
              show_default=True)
@click.pass_context
@reports_errors
def divisors(ctx, curve_file, invariant):
    """Zeros and orders of an invariant over both charts."""
    cfg = run_config(ctx)
    report = divisor_report(load_curve(curve_file), invariant, cfg.grid, jobs=cfg.jobs)
    if cfg.format == "csv":
        rows = [{"chart": z.chart.to_json(), "z_re": z.location.real, "z_im": z.location.imag,
                 "order": z.order, "residual": z.residual} for z in report.zeros]
        write_rows_csv(rows, ZERO_COLUMNS, sys.stdout)
    else:
        write_report({**report.to_dict(), "config": cfg.to_dict()}, sys.stdout)


@cli.command()
@click.argument("curve_file", type=click.Path(dir_okay=False))
@click.pass_context
@reports_errors
def chern(ctx, curve_file):
    """Degree of the pulled-back dual tautological bundle."""
    cfg = run_config(ctx)
    degree, drift = chern_degree(load_curve(curve_file), grid=cfg.grid, jobs=cfg.jobs)
    write_report({
        "degree": degree,
        "drift": drift,
        "tautological_degree": -degree,
        "config": cfg.to_dict(),
    }, sys.stdout)


@cli.command()
@click.argument("curve_file", type=click.Path(dir_okay=False))
@click.pass_context
@reports_errors
def project(ctx, curve_file):
    """S^4 mesh of the twistor projection; CSV unless --format json is given."""
    cfg = run_config(ctx)
    rows = surface_mesh(load_curve(curve_file), cfg.grid, cfg.fd_step, cfg.jobs)
    if ctx.find_root().obj["format"] == "json":
        write_report({"rows": rows, "config": cfg.to_dict()}, sys.stdout)
    else:
        write_rows_csv(rows, MESH_COLUMNS, sys.stdout)


@cli.command()
@click.argument("curve_file", type=click.Path(dir_okay=False))
@click.option("--at", "at", type=str, required=True, help="Point z, e.g. 0.3+0.1i")
@click.option("--chart", type=click.Choice([c.value for c in Chart]), default=Chart.ZERO.value)
@click.pass_context
@reports_errors
def partner(ctx, curve_file, at, chart):
    """Partner point, flag pairing and round-trip distance at one point."""
    curve = load_curve(curve_file)
    z = parse_constant(at)
    chart = Chart.parse(chart)
    point = partner_point(curve, z, chart)
    try:
        roundtrip = roundtrip_distance(curve, z, chart)
    except OrderExhausted as e:
        log.info("partner: no round trip for this curve (%s)", e.detail)
        roundtrip = None
    flag = Flag(ProjPoint(eval_jet(curve, z, 0, chart).value), point)
    click.echo(format_report({
        "z": z,
        "chart": chart.to_json(),
        "partner": point.to_list(),
        "flag_pairing": flag.pairing(),
        "roundtrip_distance": roundtrip,
        "antipodal": antipodal_check(curve, z, chart),
    }))


def main(argv=None):
    try:
        code = cli.main(args=argv, prog_name="twistorcurves", standalone_mode=False)
    except click.exceptions.Abort:
        code = EXIT_USAGE
    except click.ClickException as e:
        click.echo(json.dumps({"error": {"kind": "usage_error", "detail": e.format_message()}}))
        code = EXIT_USAGE
    sys.exit(code or EXIT_OK)


if __name__ == "__main__":
    main()
