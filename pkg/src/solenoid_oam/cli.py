"""Scenario runner: every verification as a subcommand with CSV/JSON output.

Configuration is a flat ``key=value`` file with dotted section prefixes
(``solenoid.R=1.0``); unknown keys are rejected.  Output is deterministic:
identical config and seed produce byte-identical CSV.

Exit codes: 0 all assertions pass, 1 an assertion failed, 2 config
error, 3 numerical failure (the failing scenario is named on stderr).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from . import dewitt, dynamics, helmholtz, observables, quantum, sources
from .errors import ConfigError, ToolkitError
from .geometry import Path
from .sources import SolenoidSpec

# -- configuration ---------------------------------------------------------


def _parse_float(s: str) -> float:
    v = float(s)
    if not math.isfinite(v):
        raise ValueError("must be finite")
    return v


def _parse_half_length(s: str) -> float:
    if s.strip().lower() in ("infinite", "inf"):
        return math.inf
    v = float(s)
    if not (v > 0):
        raise ValueError("half_length must be positive or 'infinite'")
    return v


def _parse_int(s: str) -> int:
    return int(s)


def _parse_float_list(s: str) -> tuple:
    return tuple(float(v) for v in s.split(",") if v.strip())


def _parse_point(s: str) -> tuple:
    parts = [float(v) for v in s.split(",")]
    if len(parts) != 2:
        raise ValueError("expected 'x,y'")
    return tuple(parts)


def _parse_format(s: str) -> str:
    if s not in ("csv", "json"):
        raise ValueError("format must be csv or json")
    return s


def _parse_ramp_shape(s: str) -> str:
    if s not in ("smoothstep", "linear"):
        raise ValueError("ramp shape must be smoothstep or linear")
    return s


# key -> (parser, default)
CONFIG_SCHEMA = {
    "solenoid.R": (_parse_float, 1.0),
    "solenoid.B0": (_parse_float, 1.0),
    "solenoid.half_length": (_parse_half_length, math.inf),
    "charge.e": (_parse_float, -1.0),
    "tol.analytic": (_parse_float, 1e-10),
    "tol.quadrature": (_parse_float, 1e-6),
    "tol.ode": (_parse_float, 1e-6),
    "phase.radius": (_parse_float, 2.0),
    "phase.windings": (_parse_int, 3),
    "field.r_max": (_parse_float, 6.0),
    "field.n": (_parse_int, 60),
    "field.L": (_parse_float, 5.0),
    "helmholtz.radii": (_parse_float_list, (0.5, 2.0, 5.0)),
    "dewitt.n_points": (_parse_int, 20),
    "dewitt.loop_counts": (lambda s: tuple(int(v) for v in s.split(",")), (2, 8, 32)),
    "oam.n_samples": (_parse_int, 100),
    "oam.relation_radii": (_parse_float_list, (2.0, 5.0, 10.0)),
    "surface.x_e": (_parse_point, (3.0, 0.0)),
    "surface.r_inf_list": (_parse_float_list, (20.0, 50.0, 100.0)),
    "ramp.shape": (_parse_ramp_shape, "smoothstep"),
    "ramp.t_f": (_parse_float, 10.0),
    "ramp.r_e": (_parse_float, 3.0),
    "approach.L": (_parse_float, 5.0),
    "approach.z": (_parse_float, 0.0),
    "approach.m0": (_parse_float, 2.0),
    "approach.r_start": (_parse_float, 500.0),
    "approach.r_end": (_parse_float, 1.5),
    "sweep.L_list": (_parse_float_list, (5.0, 20.0, 80.0)),
    "sweep.r_probe": (_parse_float, 2.0),
    "sweep.m0": (_parse_float, 1.0),
    "quantum.L_list": (_parse_float_list, (5.0, 20.0, 100.0)),
    "quantum.m": (_parse_int, 1),
    "quantum.r": (_parse_float, 2.0),
    "quantum.k": (_parse_float, 1.0),
    "quantum.mass": (_parse_float, 1.0),
    "output.format": (_parse_format, "csv"),
    "output.precision": (_parse_int, 17),
}


def default_config() -> dict:
    return {key: default for key, (_, default) in CONFIG_SCHEMA.items()}


def parse_config(text: str) -> dict:
    """Strict parse of the line-oriented config format."""
    cfg = default_config()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in CONFIG_SCHEMA:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        parser, _ = CONFIG_SCHEMA[key]
        try:
            cfg[key] = parser(value)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from exc
    if not (6 <= cfg["output.precision"] <= 17):
        raise ConfigError("output.precision must be within [6, 17]")
    if cfg["solenoid.R"] <= 0:
        raise ConfigError("solenoid.R must be positive")
    return cfg


def load_config(path: str | None) -> dict:
    if path is None:
        return default_config()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


# -- results ---------------------------------------------------------------


@dataclass
class Assertion:
    name: str
    value: float
    reference: float
    tolerance: float
    passed: bool


@dataclass
class ScenarioResult:
    scenario: str
    config: dict
    columns: list
    rows: list
    derived: dict = field(default_factory=dict)
    assertions: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    wall_time_s: float = 0.0

    def check(self, name: str, value: float, reference: float, tolerance: float):
        ok = abs(value - reference) <= tolerance
        self.assertions.append(Assertion(name, float(value), float(reference),
                                         float(tolerance), bool(ok)))
        return ok

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)


def _fmt(value, precision: int) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), f".{precision}g")
    return str(value)


def _config_echo(cfg: dict) -> dict:
    return {k: ("infinite" if isinstance(v, float) and math.isinf(v) else v)
            for k, v in sorted(cfg.items())}


def write_csv(path: str, result: ScenarioResult, cfg: dict):
    precision = cfg["output.precision"]
    lines = [f"# scenario={result.scenario}", f"# version={__version__}"]
    for k, v in _config_echo(cfg).items():
        lines.append(f"# cfg.{k}={_fmt(v, precision)}")
    for k in sorted(result.derived):
        lines.append(f"# derived.{k}={_fmt(result.derived[k], precision)}")
    lines.append(",".join(result.columns))
    for row in result.rows:
        lines.append(",".join(_fmt(v, precision) for v in row))
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def write_json(path: str, result: ScenarioResult, cfg: dict):
    doc = {
        "scenario": result.scenario,
        "config": _config_echo(cfg),
        "columns": result.columns,
        "rows": [list(r) for r in result.rows],
        "derived": result.derived,
        "assertions": [asdict(a) for a in result.assertions],
        "warnings": result.warnings,
        "wall_time_s": result.wall_time_s,
    }
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, default=float)
        fh.write("\n")
    os.replace(tmp, path)


# -- scenarios -------------------------------------------------------------


def _spec_infinite(cfg) -> SolenoidSpec:
    return SolenoidSpec(R=cfg["solenoid.R"], B0=cfg["solenoid.B0"])


def scenario_field(cfg, seed) -> ScenarioResult:
    res = ScenarioResult("field", cfg, ["model", "r", "A_phi", "B_z"], [])
    spec = _spec_infinite(cfg)
    spec_fin = SolenoidSpec(R=cfg["solenoid.R"], B0=cfg["solenoid.B0"],
                            half_length=cfg["field.L"])
    rs = np.linspace(cfg["field.r_max"] / cfg["field.n"], cfg["field.r_max"],
                     cfg["field.n"])
    for r in rs:
        a = sources.eval_A_symmetric(np.array([[r, 0.0]]), spec)[0]
        b = sources.eval_B_infinite(np.array([[r, 0.0]]), spec)[0]
        res.rows.append(("infinite", float(r), float(a[1]), float(b)))
    for r in rs:
        if abs(r - spec_fin.R) < 2e-3 * spec_fin.R:
            continue  # skip the sheet itself
        a_phi, _, b_z = sources.sheet_profile(float(r), 0.0, spec_fin,
                                              cfg["tol.quadrature"] * 1e-2)
        res.rows.append(("finite", float(r), a_phi, b_z))

    # far-field behaviour and flux cancellation of a short solenoid
    spec1 = SolenoidSpec(R=cfg["solenoid.R"], B0=cfg["solenoid.B0"],
                         half_length=cfg["solenoid.R"])
    r_far = 100.0 * max(spec1.R, spec1.half_length)
    a_phi, _, b_z = sources.sheet_profile(r_far, 0.0, spec1, 1e-12)
    a_ref, b_ref = sources.far_field_asymptote(spec1, r_far)
    res.check("far_field_A_phi", a_phi, a_ref, 0.05 * abs(a_ref))
    res.check("far_field_B_z", b_z, b_ref, 0.05 * abs(b_ref))
    net = sources.net_flux_z0(spec1, 200.0, tol=0.05 * spec1.flux)
    res.check("net_flux_z0_r200", net.integral, 0.0, 1e-2 * spec1.flux)
    res.check("net_flux_z0_tail_corrected", net.total, 0.0, 1e-3 * spec1.flux)
    res.derived["far_field_radius"] = r_far
    res.derived["net_flux_integral"] = net.integral
    res.derived["net_flux_tail"] = net.tail
    return res


def scenario_phase(cfg, seed) -> ScenarioResult:
    res = ScenarioResult("phase", cfg,
                         ["loop", "gauge", "winding", "phase", "reference",
                          "abs_err", "passed"], [])
    spec = _spec_infinite(cfg)
    e = cfg["charge.e"]
    reference = e * spec.flux
    r_loop = cfg["phase.radius"]
    tol_an = cfg["tol.analytic"]
    gauges = {"symmetric": sources.symmetric_gauge(spec),
              "landau2": sources.landau2_gauge(spec)}

    def add(loop_name, gauge_name, path, winding, tol, quad_tol):
        phase = observables.ab_phase(gauges[gauge_name], path, e, quad_tol)
        ref = winding * reference
        ok = res.check(f"phase_{loop_name}_{gauge_name}", phase, ref, tol)
        res.rows.append((loop_name, gauge_name, winding, phase, ref,
                         abs(phase - ref), ok))

    for name, gf in gauges.items():
        add("circle", name, Path.circle(r_loop), 1, 1e-8, tol_an)

    half = 2.0 * spec.R
    square = Path.polyline([(half, -half), (half, half), (-half, half),
                            (-half, -half), (half, -half)], closed=True)
    ellipse_pts = [(3.0 * spec.R * math.cos(t), 1.5 * spec.R * math.sin(t))
                   for t in np.linspace(0.0, 2.0 * math.pi, 257)]
    ellipse = Path.polyline(ellipse_pts, closed=True)
    add("square", "symmetric", square, 1, 1e-6, tol_an)
    add("ellipse", "symmetric", ellipse, 1, 1e-6, tol_an)
    add("non_enclosing", "symmetric",
        Path.circle(0.5 * spec.R, center=(5.0 * spec.R, 0.0)), 0, 1e-8, tol_an)
    k = cfg["phase.windings"]
    add(f"circle_x{k}", "symmetric", Path.repeat(Path.circle(r_loop), k), k,
        1e-8 * k, tol_an)
    res.derived["flux"] = spec.flux
    return res


def scenario_helmholtz(cfg, seed) -> ScenarioResult:
    res = ScenarioResult("helmholtz", cfg,
                         ["check", "gauge", "x", "y", "value_x", "value_y",
                          "reference_x", "reference_y", "residual"], [])
    spec = _spec_infinite(cfg)
    tol = cfg["tol.quadrature"]
    sym = sources.symmetric_gauge(spec)
    lan = sources.landau2_gauge(spec)
    bz = helmholtz.curl_field(sym)

    for r in cfg["helmholtz.radii"]:
        for phi in (0.0, 1.1):
            x = np.array([r * math.cos(phi), r * math.sin(phi)])
            got = helmholtz.transverse_from_B_2d(bz, x, tol)
            want = sym.at(x)
            rel = float(np.max(np.abs(got - want))) / max(float(np.max(np.abs(want))), 1e-30)
            res.rows.append(("transverse_recovery", "symmetric", x[0], x[1],
                             got[0], got[1], want[0], want[1], rel))
            res.check(f"transverse_recovery_r{r}_phi{phi}", rel, 0.0, 1e-3)

    for x in ((1.5, 0.8), (2.5, -1.2), (0.6, 0.3)):
        xa = np.asarray(x)
        got = helmholtz.longitudinal_part(lan, xa, tol)
        want = 0.5 * spec.B0 * np.array([xa[1], xa[0]])
        resid = float(np.max(np.abs(got - want)))
        res.rows.append(("longitudinal_gradient", "landau2", xa[0], xa[1],
                         got[0], got[1], want[0], want[1], resid))
        res.check(f"longitudinal_landau2_{x[0]}_{x[1]}", resid, 0.0, 2e-3)

    for name, gf in (("symmetric", sym), ("landau2", lan)):
        rep = helmholtz.static_reduction_check(gf, tol=tol)
        res.rows.append(("static_reduction", name, math.nan, math.nan,
                         rep.time_term, rep.closure, rep.div_transverse,
                         rep.curl_longitudinal, rep.max_residual))
        res.check(f"static_reduction_{name}", rep.max_residual, 0.0, 2e-3)
    return res


def scenario_dewitt(cfg, seed) -> ScenarioResult:
    res = ScenarioResult("dewitt", cfg,
                         ["check", "family", "gauge", "x", "y", "residual",
                          "tolerance", "passed"], [])
    spec = _spec_infinite(cfg)
    sym = sources.symmetric_gauge(spec)
    lan = sources.landau2_gauge(spec)
    n_pts = cfg["dewitt.n_points"]

    # radial rays applied to the landau2 potential recover symmetric values
    radii = np.linspace(0.5, 3.5, 4) * spec.R
    angles = np.linspace(0.0, 2.0 * math.pi, n_pts // 4, endpoint=False) + 0.17
    worst = 0.0
    for r in radii:
        for phi in angles:
            x = np.array([r * math.cos(phi), r * math.sin(phi)])
            got = dewitt.dewitt_potential(lan, dewitt.RadialStraight(), x, 1e-4)
            resid = float(np.max(np.abs(got - sym.at(x))))
            worst = max(worst, resid)
            ok = resid <= 1e-4
            res.rows.append(("radial_recovers_symmetric", "radial_straight",
                             "landau2", x[0], x[1], resid, 1e-4, ok))
    res.check("radial_recovers_symmetric_worst", worst, 0.0, 1e-4)

    worst = 0.0
    for x in ((0.3, 0.1), (0.5, -0.4), (-0.35, 0.55)):
        xa = np.asarray(x) * spec.R
        got = dewitt.dewitt_potential(sym, dewitt.PolygonalXY(), xa, 1e-4)
        resid = float(np.max(np.abs(got - lan.at(xa))))
        worst = max(worst, resid)
        res.rows.append(("polygonal_recovers_landau2", "polygonal_xy",
                         "symmetric", xa[0], xa[1], resid, 1e-4, resid <= 1e-4))
    res.check("polygonal_recovers_landau2_worst", worst, 0.0, 1e-4)

    x_loop = (1.2 * spec.R, 0.75 * spec.R)
    diffs = []
    for n in cfg["dewitt.loop_counts"]:
        rep = dewitt.loop_gauge_correspondence(sym, n, x_loop, 1e-4)
        diffs.append(np.asarray(rep.difference))
        res.rows.append((f"loop_correspondence_n{n}", f"looped_radial_{n}",
                         "symmetric", x_loop[0], x_loop[1], rep.residual,
                         1e-4, rep.residual <= 1e-4))
        res.check(f"loop_correspondence_n{n}", rep.residual, 0.0, 1e-4)
    spread = float(max(np.max(np.abs(a - b)) for a in diffs for b in diffs))
    res.check("loop_n_independence", spread, 0.0, 1e-6)
    return res


def scenario_oam(cfg, seed) -> ScenarioResult:
    res = ScenarioResult("oam_ledger", cfg,
                         ["gauge", "x", "y", "p_x", "p_y", "L_mech", "L_pot",
                          "L_gic", "independent_residual"], [])
    spec = _spec_infinite(cfg)
    e = cfg["charge.e"]
    tol = cfg["tol.quadrature"]
    rng = np.random.default_rng(seed)
    n = cfg["oam.n_samples"]
    radii = rng.uniform(1.05 * spec.R, 4.0 * spec.R, n)
    angles = rng.uniform(0.0, 2.0 * math.pi, n)
    moms = rng.uniform(-2.0, 2.0, (n, 2))
    gauges = {"symmetric": sources.symmetric_gauge(spec),
              "landau2": sources.landau2_gauge(spec)}
    worst = 0.0
    for gname, gf in gauges.items():
        bz = helmholtz.curl_field(gf)
        for r, phi, p in zip(radii, angles, moms):
            x = np.array([r * math.cos(phi), r * math.sin(phi)])
            led = observables.ledger(x, p, gf, e, tol)
            a_par = helmholtz.longitudinal_part(gf, x, 0.5 * tol)
            indep = observables.cross_z(x, p - e * a_par)
            resid = abs(indep - led.L_gic)
            worst = max(worst, resid)
            res.rows.append((gname, x[0], x[1], p[0], p[1],
                             led.L_mech, led.L_pot, led.L_gic, resid))
        del bz
    res.check("ledger_identity_worst", worst, 0.0, 2e-3)
    res.derived["n_samples"] = n
    return res


def scenario_oam_relation(cfg, seed) -> ScenarioResult:
    res = ScenarioResult("oam_relation", cfg,
                         ["r", "phase", "L_pot", "two_pi_L_pot", "residual"], [])
    spec = _spec_infinite(cfg)
    e = cfg["charge.e"]
    sym = sources.symmetric_gauge(spec)
    for r in cfg["oam.relation_radii"]:
        rep = observables.phase_oam_relation(sym, r, e, 1e-8)
        res.rows.append((r, rep.phase, rep.l_pot, 2.0 * math.pi * rep.l_pot,
                         rep.residual))
        res.check(f"phase_equals_2pi_Lpot_r{r}", rep.residual, 0.0, 1e-8)
    res.derived["beta"] = quantum.beta_parameter(spec, e)
    return res


def scenario_surface(cfg, seed) -> ScenarioResult:
    res = ScenarioResult("surface", cfg,
                         ["r_inf", "S1", "S2", "S3", "L_pot", "S1_plus_Lpot",
                          "S2_plus_S3", "gauss_outer", "gauss_inner"], [])
    spec = _spec_infinite(cfg)
    e = cfg["charge.e"]
    x_e = cfg["surface.x_e"]
    last = None
    for r_inf in cfg["surface.r_inf_list"]:
        st = observables.surface_terms(x_e, spec, r_inf, 1e-9, e)
        res.rows.append((r_inf, st.S1, st.S2, st.S3, st.L_pot,
                         st.S1 + st.L_pot, st.S2 + st.S3,
                         st.gauss_outer, st.gauss_inner))
        last = st
    res.check("S1_cancels_Lpot", last.S1 + last.L_pot, 0.0,
              0.01 * abs(last.L_pot))
    res.check("S2_plus_S3", last.S2 + last.S3, 0.0, 0.01 * abs(last.S2))
    res.check("gauss_outer", last.gauss_outer, e, 1e-8)
    res.check("gauss_inner", last.gauss_inner, 0.0, 1e-8)
    res.check("identity_residual", last.lhs_residual, 0.0,
              0.02 * abs(last.L_pot))
    return res


def scenario_ramp(cfg, seed) -> ScenarioResult:
    res = ScenarioResult("ramp", cfg,
                         ["t", "B", "L_mech", "L_pot", "L_gic"], [])
    spec = _spec_infinite(cfg)
    e = cfg["charge.e"]
    beta = quantum.beta_parameter(spec, e)
    main_run = dynamics.ramp_scenario(
        cfg["ramp.r_e"], spec,
        dynamics.RampProfile(cfg["ramp.shape"], cfg["ramp.t_f"]), e, 1e-9)
    for i in range(len(main_run.var)):
        res.rows.append((main_run.var[i], main_run.extras["B"][i],
                         main_run.L_mech[i], main_run.L_pot[i],
                         main_run.L_gic[i]))
    res.check("delta_L_mech", main_run.delta_L_mech, -beta, 1e-8)
    res.check("delta_L_pot", main_run.delta_L_pot, beta, 1e-8)
    res.check("L_gic_drift", main_run.gic_drift, 0.0, 1e-8)
    for shape in ("smoothstep", "linear"):
        for t_f in (1.0, 10.0, 100.0):
            tr = dynamics.ramp_scenario(cfg["ramp.r_e"], spec,
                                        dynamics.RampProfile(shape, t_f), e, 1e-9)
            res.check(f"delta_shape_independent_{shape}_{t_f:g}",
                      tr.delta_L_mech, -beta, 1e-8)
    res.derived["beta"] = beta
    return res


def scenario_approach(cfg, seed) -> ScenarioResult:
    res = ScenarioResult("approach", cfg,
                         ["r", "L_mech", "L_pot", "L_gic", "residual"], [])
    spec = SolenoidSpec(R=cfg["solenoid.R"], B0=cfg["solenoid.B0"],
                        half_length=cfg["approach.L"])
    e = cfg["charge.e"]
    traj = dynamics.approach_scenario(
        spec, cfg["approach.z"], cfg["approach.m0"],
        cfg["approach.r_start"], cfg["approach.r_end"], e, cfg["tol.ode"])
    resid = traj.extras["residual"]
    for i in range(len(traj.var)):
        res.rows.append((traj.var[i], traj.L_mech[i], traj.L_pot[i],
                         traj.L_gic[i], resid[i]))
    res.check("m0_conservation_worst", float(np.max(np.abs(resid))), 0.0, 1e-3)
    # far-start ledger: the potential tail e*r*A_phi ~ 1/r is what keeps
    # L_mech(r_start) off m0; it must be a small fraction of the budget
    res.check("start_potential_tail_small", float(traj.L_pot[0]), 0.0,
              0.01 * max(1.0, abs(cfg["approach.m0"])))
    res.derived["m0"] = cfg["approach.m0"]
    res.derived["start_L_mech_minus_m0"] = float(traj.L_mech[0]) - cfg["approach.m0"]
    return res


def scenario_sweep(cfg, seed) -> ScenarioResult:
    res = ScenarioResult("sweep", cfg,
                         ["L", "L_mech", "L_pot", "L_gic", "max_residual",
                          "return_flux_mag"], [])
    e = cfg["charge.e"]
    sw = dynamics.infinite_length_sweep(
        cfg["solenoid.R"], cfg["solenoid.B0"], 0.0, cfg["sweep.m0"], e,
        cfg["sweep.L_list"], cfg["sweep.r_probe"], cfg["tol.ode"])
    for row in sw.rows:
        res.rows.append((row.half_length, row.L_mech, row.L_pot, row.L_gic,
                         row.max_residual, row.return_flux_mag))
    big = sw.rows[-1]
    res.check("L_pot_limit", big.L_pot, sw.beta, 0.02 * abs(sw.beta))
    res.check("L_mech_limit", big.L_mech, sw.m0 - sw.beta,
              0.02 * abs(sw.m0 - sw.beta))
    res.check("monotone_convergence", 1.0 if sw.converged_monotonically else 0.0,
              1.0, 0.0)
    res.check("return_flux_pushed_out",
              1.0 if sw.rows[-1].return_flux_mag < sw.rows[0].return_flux_mag else 0.0,
              1.0, 0.0)
    res.derived["beta"] = sw.beta
    res.derived["m0"] = sw.m0
    return res


def scenario_quantum(cfg, seed) -> ScenarioResult:
    res = ScenarioResult("quantum_alpha", cfg,
                         ["L", "m", "r", "z", "alpha", "m_minus_beta"], [])
    e = cfg["charge.e"]
    m = cfg["quantum.m"]
    r = cfg["quantum.r"]
    beta = quantum.beta_parameter(_spec_infinite(cfg), e)
    for L in cfg["quantum.L_list"]:
        spec = SolenoidSpec(R=cfg["solenoid.R"], B0=cfg["solenoid.B0"],
                            half_length=L)
        alpha = quantum.alpha_exponent(m, r, 0.0, spec, e, 1e-6)
        res.rows.append((L, m, r, 0.0, alpha, m - beta))
    res.check("alpha_long_solenoid", res.rows[-1][4], m - beta,
              0.02 * abs(m - beta))

    # independent special-value anchors for the Bessel backend
    x = 1.3
    res.check("bessel_half_order",
              quantum.bessel_j(0.5, x),
              math.sqrt(2.0 / (math.pi * x)) * math.sin(x), 1e-10)
    res.check("bessel_three_half_order",
              quantum.bessel_j(1.5, x),
              math.sqrt(2.0 / (math.pi * x)) * (math.sin(x) / x - math.cos(x)),
              1e-10)
    worst = 0.0
    for nu in (1.0, 1.5, 2.7):
        for xv in (0.8, 3.0, 9.5, 14.0):
            lhs = quantum.bessel_j(nu - 1, xv) + quantum.bessel_j(nu + 1, xv)
            rhs = 2.0 * nu / xv * quantum.bessel_j(nu, xv)
            worst = max(worst, abs(lhs - rhs))
    res.check("bessel_recurrence_worst", worst, 0.0, 1e-9)

    # integer flux shifts permute the order set
    shift = 2
    window = range(-5, 6)
    shifted = sorted(abs(mm - shift) for mm in range(-5 + shift, 6 + shift))
    free = sorted(abs(mm) for mm in window)
    res.check("integer_beta_degeneracy",
              0.0 if shifted == free else 1.0, 0.0, 0.0)
    res.derived["beta"] = beta
    return res


def scenario_quantum_modes(cfg, seed) -> ScenarioResult:
    res = ScenarioResult("quantum_modes", cfg,
                         ["m", "beta", "order", "k", "r", "phi", "t",
                          "re", "im", "modulus"], [])
    e = cfg["charge.e"]
    spec = _spec_infinite(cfg)
    beta = quantum.beta_parameter(spec, e)
    k = cfg["quantum.k"]
    for m in (0, 1, 2):
        mode = quantum.EigenMode(m=m, k=k, mass=cfg["quantum.mass"], beta=beta)
        for r in (0.5, 1.5, 2.5, 4.0):
            v = quantum.eigenmode_value(mode, r, 0.4, 1.0)
            res.rows.append((m, beta, mode.order, k, r, 0.4, 1.0,
                             v.real, v.imag, abs(v)))
    # modulus must not depend on angle or time
    mode = quantum.EigenMode(m=1, k=k, mass=cfg["quantum.mass"], beta=beta)
    mods = {abs(quantum.eigenmode_value(mode, 2.0, phi, t))
            for phi in (0.0, 1.0, 2.5) for t in (0.0, 3.0)}
    res.check("modulus_phi_t_independent", max(mods) - min(mods), 0.0, 1e-14)
    return res


SCENARIOS = {
    "field": [scenario_field],
    "phase": [scenario_phase],
    "helmholtz": [scenario_helmholtz],
    "dewitt": [scenario_dewitt],
    "oam": [scenario_oam, scenario_oam_relation],
    "surface": [scenario_surface],
    "ramp": [scenario_ramp],
    "approach": [scenario_approach],
    "sweep": [scenario_sweep],
    "quantum": [scenario_quantum, scenario_quantum_modes],
}


def run(subcommand: str, cfg: dict, out_dir: str, fmt: str, seed: int,
        strict: bool = False) -> int:
    """Run one subcommand (or ``all``) and write its artifacts."""
    if subcommand == "all":
        names = list(SCENARIOS)
    elif subcommand in SCENARIOS:
        names = [subcommand]
    else:
        raise ConfigError(f"unknown subcommand {subcommand!r}")

    os.makedirs(out_dir, exist_ok=True)
    all_ok = True
    for name in names:
        for fn in SCENARIOS[name]:
            t0 = time.perf_counter()
            try:
                result = fn(cfg, seed)
            except ToolkitError as exc:
                print(f"numerical failure in scenario {name} "
                      f"({fn.__name__}): {exc}", file=sys.stderr)
                return 3
            result.wall_time_s = time.perf_counter() - t0
            path = os.path.join(out_dir, f"{result.scenario}.{fmt}")
            if fmt == "csv":
                write_csv(path, result, cfg)
            else:
                write_json(path, result, cfg)
            status = "pass" if result.passed else "FAIL"
            if strict and result.warnings:
                status = "FAIL"
                all_ok = False
            print(f"[{status}] {result.scenario}: "
                  f"{sum(a.passed for a in result.assertions)}/"
                  f"{len(result.assertions)} assertions, "
                  f"{len(result.rows)} rows -> {path}")
            for a in result.assertions:
                if not a.passed:
                    print(f"    FAILED {a.name}: value={a.value!r} "
                          f"reference={a.reference!r} tol={a.tolerance!r}")
            all_ok = all_ok and result.passed
    return 0 if all_ok else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="solenoid-oam",
        description="Verification scenarios for solenoid gauge fields and OAM ledgers.")
    parser.add_argument("subcommand", nargs="?", default="all",
                        choices=sorted(SCENARIOS) + ["all"])
    parser.add_argument("--config", default=None, help="key=value config file")
    parser.add_argument("--out", default="results", help="output directory")
    parser.add_argument("--format", default=None, choices=["csv", "json"],
                        help="artifact format (default from config)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized property sampling")
    parser.add_argument("--strict", action="store_true",
                        help="treat warnings as failures")
    args = parser.parse_args(argv)

    try:
        cfg = load_config(args.config)
        fmt = args.format or cfg["output.format"]
        return run(args.subcommand, cfg, args.out, fmt, args.seed, args.strict)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
