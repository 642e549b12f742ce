"""
JCEntangle command line

Entanglement of formation between two excited atoms that cross a lossless
single-mode cavity one after the other, for Fock and thermal cavity fields.

Quick Start:
1. Install dependencies: pip install -r requirements.txt
2. One sweep: python run.py sweep --field fock --param 0 --gt-min 0 --gt-max 6.283 --steps 200 --out out/fock0.csv
3. Figures: python run.py reproduce fig2 --out out && python run.py reproduce fig3 --out out
4. Field statistics: python run.py stats --field thermal --temperature-ratio 0.7
5. Defaults: python run.py --show-config
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Dict, Optional

import click

from config import Config, load_settings
from models import FieldKind, PhotonDistribution, SweepConfig, TWO_ATOM_BASIS
from services.field_service import field_statistics, nbar_from_temperature
from services.oracle_service import verify_density
from services.sweep_service import (
    build_distribution,
    evaluate_point,
    format_value,
    reproduce_fig2,
    reproduce_fig3,
    run_sweep,
    summarize_sweep,
)

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


def configure_logging(level: str) -> None:
    logging.basicConfig(format=Config.LOG_FORMAT)
    logging.getLogger().setLevel(level.upper())


def field_options(func):
    """--field / --param / --temperature-ratio / --tail-eps, shared by the field commands."""
    options = [
        click.option(
            "--field",
            "field_kind",
            type=click.Choice([k.value for k in FieldKind]),
            required=True,
            help="Cavity field statistics.",
        ),
        click.option("--param", type=float, default=None, help="Photon number m (fock) or mean photon number (thermal)."),
        click.option(
            "--temperature-ratio",
            type=float,
            default=None,
            help="hbar*omega/kT; thermal only, alternative to --param.",
        ),
        click.option("--tail-eps", type=float, default=None, help="Thermal truncation tail mass."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def resolve_field_param(field_kind: str, param: Optional[float], temperature_ratio: Optional[float]) -> float:
    kind = FieldKind(field_kind)
    if temperature_ratio is not None:
        if kind is not FieldKind.THERMAL:
            raise click.UsageError("--temperature-ratio only applies to --field thermal")
        if param is not None:
            raise click.UsageError("give either --param or --temperature-ratio, not both")
        return nbar_from_temperature(temperature_ratio)
    if param is None:
        raise click.UsageError(f"--param is required for --field {kind.value}")
    if kind is FieldKind.FOCK and not float(param).is_integer():
        raise click.UsageError(f"Fock photon number must be an integer, got {param:g}")
    return param


def resolve_distribution(settings: Dict[str, Any], field_kind, param, temperature_ratio, tail_eps) -> PhotonDistribution:
    value = resolve_field_param(field_kind, param, temperature_ratio)
    tail = settings["TAIL_EPSILON"] if tail_eps is None else tail_eps
    return build_distribution(FieldKind(field_kind), value, tail)


def _pick(value, settings: Dict[str, Any], key: str):
    return settings[key] if value is None else value


@click.group(invoke_without_command=True, context_settings={"help_option_names": ["-h", "--help"]})
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="KEY=VALUE settings file; command-line flags take precedence.",
)
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None)
@click.option("--show-config", is_flag=True, help="Print the resolved settings and exit.")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[str], log_level: Optional[str], show_config: bool) -> None:
    """Two-atom entanglement mediated by a Jaynes-Cummings cavity field."""
    settings = load_settings(config_path)
    configure_logging(log_level or settings["LOG_LEVEL"])
    ctx.obj = settings

    if show_config:
        for key in sorted(settings):
            value = settings[key]
            if isinstance(value, tuple):
                value = ",".join(f"{v:g}" for v in value)
            click.echo(f"{key}={value}")
        ctx.exit(0)
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


@cli.command()
@field_options
@click.option("--gt-min", type=float, default=None)
@click.option("--gt-max", type=float, default=None)
@click.option("--steps", type=int, default=None)
@click.option("--verify", is_flag=True, help="Cross-check every VERIFY_STRIDE-th point against the oracle.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False, path_type=Path), required=True)
@click.pass_obj
def sweep(settings, field_kind, param, temperature_ratio, tail_eps, gt_min, gt_max, steps, verify, out_path):
    """Concurrence and E_F over a uniform gt grid, written as CSV."""
    cfg = SweepConfig(
        field_kind=FieldKind(field_kind),
        field_param=resolve_field_param(field_kind, param, temperature_ratio),
        gt_min=_pick(gt_min, settings, "GT_MIN"),
        gt_max=_pick(gt_max, settings, "GT_MAX"),
        steps=_pick(steps, settings, "STEPS"),
        tail_epsilon=_pick(tail_eps, settings, "TAIL_EPSILON"),
        verify=verify,
        output_path=out_path,
    )
    rows = run_sweep(cfg, verify_stride=settings["VERIFY_STRIDE"])
    summary = summarize_sweep(rows)
    click.echo(f"wrote {len(rows)} rows to {out_path}")
    click.echo(
        f"peak E_F {summary.peak_eof:.6f} at gt={summary.peak_gt:.6f}; "
        f"mean E_F {summary.mean_eof:.6f}; entangled at {summary.entangled_fraction:.1%} of points"
    )


@cli.command()
@click.argument("figure", type=click.Choice(["fig2", "fig3"]))
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), required=True)
@click.option("--steps", type=int, default=None)
@click.option("--gt-min", type=float, default=None)
@click.option("--gt-max", type=float, default=None)
@click.option("--nbar", "mean_photons", type=float, multiple=True, help="Thermal mean photon numbers (fig3).")
@click.option("--verify", is_flag=True, help="Spot-check each curve against the oracle.")
@click.pass_obj
def reproduce(settings, figure, out_dir, steps, gt_min, gt_max, mean_photons, verify):
    """Regenerate the Fock (fig2) or thermal (fig3) E_F curves with a plot script."""
    if figure == "fig2" and mean_photons:
        raise click.UsageError("--nbar only applies to fig3")
    common = dict(
        out_dir=out_dir,
        steps=_pick(steps, settings, "STEPS"),
        gt_min=_pick(gt_min, settings, "GT_MIN"),
        gt_max=_pick(gt_max, settings, "GT_MAX"),
        verify=verify,
        spot_checks=settings["FIG3_SPOT_CHECKS"],
        digits=settings["CSV_SIGNIFICANT_DIGITS"],
    )
    if figure == "fig2":
        series = reproduce_fig2(fock_numbers=settings["FIG2_FOCK_NUMBERS"], **common)
    else:
        series = reproduce_fig3(
            mean_photons=mean_photons or settings["FIG3_MEAN_PHOTONS"],
            tail_epsilon=settings["TAIL_EPSILON"],
            **common,
        )
    click.echo(f"wrote {series.csv_path} and {series.script_path}")
    for label in series.columns:
        click.echo(f"  {label}: peak E_F {series.peak(label):.6f}")


@cli.command()
@field_options
@click.pass_obj
def stats(settings, field_kind, param, temperature_ratio, tail_eps):
    """Mean photon number and variance metric V = (<n^2> - <n>) / <n^2> of a field."""
    d = resolve_distribution(settings, field_kind, param, temperature_ratio, tail_eps)
    s = field_statistics(d)
    click.echo(f"field={s.kind.value}")
    click.echo(f"nominal_mean={s.nominal_mean:.12g}")
    click.echo(f"mean_photon={s.mean_photon:.12g}")
    click.echo("variance_metric=" + ("undefined" if s.variance_metric is None else f"{s.variance_metric:.12g}"))
    click.echo(f"nonclassical={'n/a' if s.nonclassical is None else s.nonclassical}")
    click.echo(f"support_size={s.support_size}")
    click.echo(f"tail_mass={s.tail_mass:.3e}")


@cli.command()
@field_options
@click.option("--gt", type=float, required=True, help="Rabi angle.")
@click.option("--verify", is_flag=True, help="Compare the density with the oracle.")
@click.pass_obj
def point(settings, field_kind, param, temperature_ratio, tail_eps, gt, verify):
    """Two-atom density, lambda spectrum, concurrence and E_F at one Rabi angle."""
    d = resolve_distribution(settings, field_kind, param, temperature_ratio, tail_eps)
    report = evaluate_point(d, gt)
    if verify:
        deviation = verify_density(d, gt, report.density)
        click.echo(f"oracle max deviation {deviation:.3e}")

    click.echo(f"gt={format_value(report.gt)}")
    if report.coefficients is not None:
        alphas = ", ".join(format_value(a) for a in report.coefficients.as_tuple())
        click.echo(f"alphas=({alphas})")
    click.echo("density (basis " + " ".join(TWO_ATOM_BASIS) + "):")
    # the model's densities are real
    for row in report.density.matrix.real:
        click.echo("  " + "  ".join(f"{v: .8f}" for v in row))
    click.echo("lambdas=" + ", ".join(format_value(x) for x in report.result.lambdas))
    click.echo(f"concurrence={format_value(report.result.concurrence)}")
    click.echo(f"concurrence_xstate={format_value(report.xstate_concurrence)}")
    click.echo(f"eof={format_value(report.result.eof)}")
