"""
Rabi-angle sweeps, figure reproduction and their CSV / plot-script output.

Every grid point goes two_atom_density -> entanglement_of_formation. Output is
ordered by gt ascending and formatted with a fixed number of significant
digits, so identical inputs give byte-identical files.
"""
from __future__ import annotations

import csv
import logging
import math
from pathlib import Path
from string import Template
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from config import Config
from errors import SweepConfigError
from models import (
    FieldKind,
    FigureSeries,
    PhotonDistribution,
    PointReport,
    SweepConfig,
    SweepRow,
    SweepSummary,
)
from services.dynamics_service import two_atom_coefficients, two_atom_density
from services.entanglement_service import concurrence_xstate, entanglement_of_formation
from services.field_service import fock_distribution, thermal_distribution
from services.oracle_service import verify_density

logger = logging.getLogger(__name__)

PLOT_SCRIPT = Template('''"""Plot $title from $csv_name (generated by jcent)."""
import csv
from pathlib import Path

import matplotlib.pyplot as plt

here = Path(__file__).resolve().parent
with open(here / "$csv_name", newline="") as fh:
    reader = csv.reader(fh)
    header = next(reader)
    columns = list(zip(*[[float(v) for v in row] for row in reader]))

fig, ax = plt.subplots(figsize=(6, 4))
for label, values, style in zip(header[1:], columns[1:], ["-", ":", "--", "-."]):
    ax.plot(columns[0], values, style, color="k", label=label)
ax.set_xlabel("gt")
ax.set_ylabel("$ylabel")
ax.set_title("$title")
ax.legend()
fig.tight_layout()
fig.savefig(here / "$png_name", dpi=150)
''')

# Sweep Service


def build_distribution(
    kind: FieldKind, param: float, tail_epsilon: float = Config.TAIL_EPSILON
) -> PhotonDistribution:
    """Fock state |param> or thermal field with mean photon number param."""
    if FieldKind(kind) is FieldKind.FOCK:
        return fock_distribution(param)
    return thermal_distribution(param, tail_epsilon)


def gt_grid(gt_min: float, gt_max: float, steps: int) -> np.ndarray:
    """Uniform grid including both endpoints."""
    return np.linspace(gt_min, gt_max, steps)


def spot_check_indices(steps: int, count: int) -> List[int]:
    """``count`` evenly spaced grid indices, endpoints included."""
    return sorted(set(np.linspace(0, steps - 1, min(count, steps)).round().astype(int).tolist()))


def evaluate_point(d: PhotonDistribution, gt: float) -> PointReport:
    """Density, entanglement and both concurrence routes at one Rabi angle."""
    density = two_atom_density(d, gt)
    coefficients = None
    if d.kind is FieldKind.FOCK:
        coefficients = two_atom_coefficients(d.n_max, gt)
    return PointReport(
        gt=float(gt),
        density=density,
        result=entanglement_of_formation(density),
        xstate_concurrence=concurrence_xstate(density),
        coefficients=coefficients,
    )


def eof_curve(
    d: PhotonDistribution, grid: np.ndarray, verify_at: Iterable[int] = ()
) -> np.ndarray:
    """E_F on every grid point; indices in ``verify_at`` are cross-checked with the oracle."""
    verify_at = set(verify_at)
    values = np.empty(grid.size)
    for i, gt in enumerate(grid):
        density = two_atom_density(d, gt)
        if i in verify_at:
            verify_density(d, gt, density)
        values[i] = entanglement_of_formation(density).eof
    return values


def run_sweep(cfg: SweepConfig, verify_stride: int = Config.VERIFY_STRIDE) -> List[SweepRow]:
    """
    Concurrence and E_F over a uniform gt grid.

    With ``cfg.verify`` every ``verify_stride``-th point is recomputed by the
    oracle; a disagreement raises OracleMismatchError.
    """
    cfg.validate()
    d = build_distribution(cfg.field_kind, cfg.field_param, cfg.tail_epsilon)
    grid = gt_grid(cfg.gt_min, cfg.gt_max, cfg.steps)
    logger.info("sweep %r over gt in [%g, %g], %d steps", d, cfg.gt_min, cfg.gt_max, cfg.steps)

    rows = []
    checked = 0
    for i, gt in enumerate(grid):
        density = two_atom_density(d, gt)
        if cfg.verify and i % verify_stride == 0:
            verify_density(d, gt, density)
            checked += 1
        result = entanglement_of_formation(density)
        rows.append(SweepRow(gt=float(gt), concurrence=result.concurrence, eof=result.eof))

    if cfg.verify:
        logger.info("oracle agreed at %d of %d grid points", checked, len(rows))
    summary = summarize_sweep(rows)
    logger.info("peak E_F %.6f at gt=%.6f", summary.peak_eof, summary.peak_gt)

    if cfg.output_path is not None:
        write_csv(cfg.output_path, ["gt", "concurrence", "eof"], [(r.gt, r.concurrence, r.eof) for r in rows])
        write_plot_script(
            cfg.output_path,
            title=f"{d.kind.value} field, parameter {cfg.field_param:g}",
            ylabel="concurrence / E_F",
        )
    return rows


def summarize_sweep(rows: Sequence[SweepRow]) -> SweepSummary:
    """Peak E_F (first occurrence), its gt, the mean E_F and the fraction of entangled points."""
    eof = np.array([r.eof for r in rows])
    peak = int(np.argmax(eof))
    return SweepSummary(
        peak_eof=float(eof[peak]),
        peak_gt=rows[peak].gt,
        mean_eof=float(eof.mean()),
        entangled_fraction=float(np.count_nonzero(eof > 0) / eof.size),
    )


def format_value(value: float, digits: int = Config.CSV_SIGNIFICANT_DIGITS) -> str:
    """Fixed-point decimal rounded to ``digits`` significant digits, trailing zeros dropped."""
    return np.format_float_positional(
        float(value), precision=digits, unique=False, fractional=False, trim="-"
    )


def write_csv(
    path: Path,
    header: Sequence[str],
    rows: Iterable[Sequence[float]],
    digits: int = Config.CSV_SIGNIFICANT_DIGITS,
) -> Path:
    """Header plus numeric rows, '.' decimals, '\\n' line endings."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(v, digits) for v in row])
    logger.info("wrote %s", path)
    return path


def write_plot_script(csv_path: Path, title: str, ylabel: str = "E_F") -> Path:
    """matplotlib script next to ``csv_path`` that renders its columns against gt."""
    csv_path = Path(csv_path)
    script = csv_path.with_name(f"{csv_path.stem}_plot.py")
    script.write_text(
        PLOT_SCRIPT.substitute(
            title=title,
            csv_name=csv_path.name,
            png_name=f"{csv_path.stem}.png",
            ylabel=ylabel,
        ),
        encoding="utf-8",
    )
    logger.info("wrote %s", script)
    return script


def _reproduce(
    name: str,
    title: str,
    fields: Sequence[Tuple[str, PhotonDistribution]],
    out_dir: Optional[Path],
    steps: int,
    gt_min: float,
    gt_max: float,
    verify: bool,
    spot_checks: int,
    digits: int,
) -> FigureSeries:
    if not (math.isfinite(gt_min) and math.isfinite(gt_max)) or not 0 <= gt_min < gt_max:
        raise SweepConfigError(f"gt range must satisfy 0 <= gt_min < gt_max, got [{gt_min}, {gt_max}]")
    if steps < 2:
        raise SweepConfigError(f"steps must be >= 2, got {steps}")
    grid = gt_grid(gt_min, gt_max, steps)
    verify_at = spot_check_indices(steps, spot_checks) if verify else ()
    columns = {}
    for label, d in fields:
        logger.info("%s: computing %s (%r)", name, label, d)
        columns[label] = eof_curve(d, grid, verify_at)

    csv_path = script_path = None
    if out_dir is not None:
        csv_path = write_csv(
            Path(out_dir) / f"{name}.csv",
            ["gt", *columns],
            zip(grid, *columns.values()),
            digits,
        )
        script_path = write_plot_script(csv_path, title=title)
    return FigureSeries(name=name, gt=grid, columns=columns, csv_path=csv_path, script_path=script_path)


def reproduce_fig2(
    out_dir: Optional[Path] = None,
    steps: int = Config.STEPS,
    fock_numbers: Sequence[int] = Config.FIG2_FOCK_NUMBERS,
    gt_min: float = Config.GT_MIN,
    gt_max: float = Config.GT_MAX,
    verify: bool = False,
    spot_checks: int = Config.FIG3_SPOT_CHECKS,
    digits: int = Config.CSV_SIGNIFICANT_DIGITS,
) -> FigureSeries:
    """E_F versus gt for number-state fields; columns eof_n<m>."""
    fields = [(f"eof_n{int(m)}", fock_distribution(int(m))) for m in fock_numbers]
    return _reproduce(
        "fig2", "Atom-atom E_F, Fock field", fields, out_dir, steps, gt_min, gt_max, verify, spot_checks, digits
    )


def reproduce_fig3(
    out_dir: Optional[Path] = None,
    steps: int = Config.STEPS,
    mean_photons: Sequence[float] = Config.FIG3_MEAN_PHOTONS,
    gt_min: float = Config.GT_MIN,
    gt_max: float = Config.GT_MAX,
    tail_epsilon: float = Config.TAIL_EPSILON,
    verify: bool = False,
    spot_checks: int = Config.FIG3_SPOT_CHECKS,
    digits: int = Config.CSV_SIGNIFICANT_DIGITS,
) -> FigureSeries:
    """E_F versus gt for thermal fields; columns eof_nbar<mean>."""
    fields = [(f"eof_nbar{nbar:g}", thermal_distribution(nbar, tail_epsilon)) for nbar in mean_photons]
    return _reproduce(
        "fig3", "Atom-atom E_F, thermal field", fields, out_dir, steps, gt_min, gt_max, verify, spot_checks, digits
    )
