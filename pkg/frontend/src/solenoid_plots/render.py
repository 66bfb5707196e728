"""Render one raster figure per scenario CSV.

Consumes only the documented CSV contract of the solenoid-oam CLI: a
``#`` preamble with ``cfg.*``/``derived.*`` echo lines, a header row,
then records.  Rendering is deterministic: fixed styles, no timestamps,
and stripped PNG metadata, so re-running on the same input reproduces
identical image bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


class SchemaError(Exception):
    """A scenario CSV is missing a column the renderer relies on."""


@dataclass
class ResultTable:
    scenario: str
    derived: dict
    columns: list
    rows: list

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise SchemaError(
                f"{self.scenario}: required column {name!r} not found "
                f"(have {self.columns})")
        idx = self.columns.index(name)
        return np.array([row[idx] for row in self.rows])

    def numeric(self, name: str) -> np.ndarray:
        return self.column(name).astype(float)


@dataclass
class RenderReport:
    written: list = field(default_factory=list)
    warnings: list = field(default_factory=list)


def read_result_csv(path: Path) -> ResultTable:
    scenario = path.stem
    derived = {}
    body = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                payload = line[1:].strip()
                if payload.startswith("derived."):
                    key, _, value = payload[len("derived."):].partition("=")
                    try:
                        derived[key] = float(value)
                    except ValueError:
                        derived[key] = value
                elif payload.startswith("scenario="):
                    scenario = payload.split("=", 1)[1]
            elif line:
                body.append(line)
    if not body:
        return ResultTable(scenario, derived, [], [])
    reader = csv.reader(io.StringIO("\n".join(body)))
    rows = list(reader)
    return ResultTable(scenario, derived, rows[0], rows[1:])


LEDGER_STYLE = {
    "L_mech": dict(color="tab:blue", label="L_mech"),
    "L_pot": dict(color="tab:orange", label="L_pot"),
    "L_gic": dict(color="tab:green", label="L_gic (canonical)"),
}


def _ledger_axes(ax, table: ResultTable, x_name: str):
    x = table.numeric(x_name)
    for col, style in LEDGER_STYLE.items():
        ax.plot(x, table.numeric(col), **style)
    ax.set_xlabel(f"{x_name}  [natural units]")
    ax.set_ylabel("orbital angular momentum")
    ax.legend()
    ax.grid(alpha=0.3)


def plot_field(table, fig):
    ax1, ax2 = fig.subplots(2, 1, sharex=True)
    models = sorted(set(table.column("model")))
    model_col = table.column("model")
    r = table.numeric("r")
    for model in models:
        sel = model_col == model
        ax1.plot(r[sel], table.numeric("A_phi")[sel], label=model)
        ax2.plot(r[sel], table.numeric("B_z")[sel], label=model)
    ax1.set_ylabel("A_phi  [natural units]")
    ax2.set_ylabel("B_z  [natural units]")
    ax2.set_xlabel("r  [natural units]")
    for ax in (ax1, ax2):
        ax.legend()
        ax.grid(alpha=0.3)
    fig.suptitle("Azimuthal potential and axial field profiles")


def plot_ramp(table, fig):
    ax = fig.subplots()
    _ledger_axes(ax, table, "t")
    ax.plot(table.numeric("t"), table.numeric("B"), color="0.5",
            linestyle="--", label="B(t)")
    ax.legend()
    ax.set_title("Flux ramp: induced-field torque moves L_mech, "
                 "canonical OAM stays flat")


def plot_approach(table, fig):
    ax = fig.subplots()
    _ledger_axes(ax, table, "r")
    ax.set_xscale("log")
    ax.set_title("Radial approach past a finite solenoid (m0 conserved)")


def plot_sweep(table, fig):
    ax = fig.subplots()
    L = table.numeric("L")
    ax.plot(L, table.numeric("L_pot"), "o-", color="tab:orange", label="L_pot")
    ax.plot(L, table.numeric("L_mech"), "s-", color="tab:blue", label="L_mech")
    if "beta" in table.derived:
        beta = table.derived["beta"]
        ax.axhline(beta, color="tab:orange", linestyle=":",
                   label="beta = e Phi / 2 pi")
        if "m0" in table.derived:
            ax.axhline(table.derived["m0"] - beta, color="tab:blue",
                       linestyle=":", label="m0 - beta")
    ax.set_xlabel("solenoid half-length L")
    ax.set_ylabel("ledger at probe radius")
    ax.set_xscale("log")
    ax.legend()
    ax.grid(alpha=0.3)
    ax.set_title("Infinite-length limit of the OAM ledger")


def plot_surface(table, fig):
    ax = fig.subplots()
    r_inf = table.numeric("r_inf")
    ax.semilogy(r_inf, np.abs(table.numeric("S1_plus_Lpot")) + 1e-18,
                "o-", label="|S1 + L_pot|")
    ax.semilogy(r_inf, np.abs(table.numeric("S2_plus_S3")) + 1e-18,
                "s-", label="|S2 + S3|")
    ax.set_xlabel("outer boundary radius")
    ax.set_ylabel("cancellation residual")
    ax.legend()
    ax.grid(alpha=0.3, which="both")
    ax.set_title("Boundary terms cancel the potential OAM")


def plot_quantum_alpha(table, fig):
    ax = fig.subplots()
    L = table.numeric("L")
    ax.plot(L, table.numeric("alpha"), "o-", label="alpha(L)")
    limit = table.numeric("m_minus_beta")
    ax.axhline(limit[0], color="0.4", linestyle=":", label="m - beta")
    ax.set_xlabel("solenoid half-length L")
    ax.set_ylabel("effective radial order")
    ax.set_xscale("log")
    ax.legend()
    ax.grid(alpha=0.3)
    ax.set_title("Flux-shifted Bessel order vs solenoid length")


def plot_phase(table, fig):
    ax = fig.subplots()
    labels = [f"{l}/{g}" for l, g in
              zip(table.column("loop"), table.column("gauge"))]
    errs = np.abs(table.numeric("abs_err")) + 1e-18
    ax.bar(range(len(labels)), errs)
    ax.set_yscale("log")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("|phase - reference|")
    ax.grid(alpha=0.3, axis="y")
    ax.set_title("Loop phase vs enclosed flux, all loops and gauges")


def _residual_bars(table, fig, label_cols, title):
    ax = fig.subplots()
    labels = ["/".join(str(table.column(c)[i]) for c in label_cols)
              for i in range(len(table.rows))]
    vals = np.abs(table.numeric("residual")) + 1e-18
    ax.bar(range(len(labels)), vals)
    ax.set_yscale("log")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=6)
    ax.set_ylabel("residual")
    ax.grid(alpha=0.3, axis="y")
    ax.set_title(title)


def plot_helmholtz(table, fig):
    _residual_bars(table, fig, ("check", "gauge"),
                   "Transverse/longitudinal splitting residuals")


def plot_dewitt(table, fig):
    _residual_bars(table, fig, ("check", "gauge"),
                   "Path-family potentials vs gauge counterparts")


def plot_oam_ledger(table, fig):
    ax = fig.subplots()
    ax.semilogy(np.abs(table.numeric("independent_residual")) + 1e-18, ".",
                markersize=3)
    ax.set_xlabel("sample index")
    ax.set_ylabel("|canonical route mismatch|")
    ax.grid(alpha=0.3, which="both")
    ax.set_title("Ledger identity over random phase-space samples")


def plot_oam_relation(table, fig):
    ax = fig.subplots()
    r = table.numeric("r")
    ax.plot(r, table.numeric("phase"), "o-", label="loop phase")
    ax.plot(r, table.numeric("two_pi_L_pot"), "x--", label="2 pi L_pot")
    ax.set_xlabel("loop radius")
    ax.set_ylabel("phase  [rad]")
    ax.legend()
    ax.grid(alpha=0.3)
    ax.set_title("Loop phase equals 2 pi times the potential OAM")


def plot_quantum_modes(table, fig):
    ax = fig.subplots()
    m_col = table.numeric("m").astype(int)
    r = table.numeric("r")
    mod = table.numeric("modulus")
    for m in sorted(set(m_col)):
        sel = m_col == m
        order = table.numeric("order")[sel][0]
        ax.plot(r[sel], mod[sel], "o-", label=f"m={m}, order={order:g}")
    ax.set_xlabel("r")
    ax.set_ylabel("|mode|")
    ax.legend()
    ax.grid(alpha=0.3)
    ax.set_title("Radial mode amplitudes with flux-shifted orders")


def plot_generic(table, fig):
    """Fallback: every numeric column against the first numeric column."""
    ax = fig.subplots()
    numeric = []
    for name in table.columns:
        try:
            vals = table.numeric(name)
        except ValueError:
            continue
        numeric.append((name, vals))
    if len(numeric) < 2:
        raise SchemaError(f"{table.scenario}: no numeric columns to plot")
    x_name, x = numeric[0]
    for name, vals in numeric[1:]:
        ax.plot(x, vals, label=name)
    ax.set_xlabel(x_name)
    ax.legend(fontsize=7)
    ax.grid(alpha=0.3)
    ax.set_title(table.scenario)


RENDERERS = {
    "field": plot_field,
    "phase": plot_phase,
    "helmholtz": plot_helmholtz,
    "dewitt": plot_dewitt,
    "oam_ledger": plot_oam_ledger,
    "oam_relation": plot_oam_relation,
    "surface": plot_surface,
    "ramp": plot_ramp,
    "approach": plot_approach,
    "sweep": plot_sweep,
    "quantum_alpha": plot_quantum_alpha,
    "quantum_modes": plot_quantum_modes,
}


def render_one(csv_path: Path, out_dir: Path, dpi: int) -> Path | None:
    table = read_result_csv(csv_path)
    if not table.rows:
        return None
    plt.rcdefaults()
    fig = plt.figure(figsize=(7.0, 4.5))
    try:
        RENDERERS.get(table.scenario, plot_generic)(table, fig)
        fig.tight_layout()
        out_path = out_dir / f"{csv_path.stem}.png"
        # strip the default Software tag so bytes depend on data only
        fig.savefig(out_path, dpi=dpi, metadata={"Software": None})
    finally:
        plt.close(fig)
    return out_path


def render(csv_dir, out_dir, dpi: int = 150) -> RenderReport:
    """Render every known scenario CSV found in ``csv_dir``.

    Missing scenarios are skipped with a warning; empty tables are
    skipped with a warning; a present file with unexpected columns
    raises :class:`SchemaError` naming the column.
    """
    csv_dir = Path(csv_dir)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report = RenderReport()
    seen = {p.stem: p for p in sorted(csv_dir.glob("*.csv"))}
    for name in RENDERERS:
        if name not in seen:
            report.warnings.append(f"scenario {name}: no CSV found, skipped")
    for stem, path in seen.items():
        out = render_one(path, out_dir, dpi)
        if out is None:
            report.warnings.append(f"scenario {stem}: empty table, skipped")
        else:
            report.written.append(out)
    return report


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render figures from solenoid-oam scenario CSV files.")
    parser.add_argument("--in", dest="csv_dir", required=True,
                        help="directory of scenario CSV files")
    parser.add_argument("--out", dest="out_dir", required=True,
                        help="directory for rendered images")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    try:
        report = render(args.csv_dir, args.out_dir, args.dpi)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    for path in report.written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
