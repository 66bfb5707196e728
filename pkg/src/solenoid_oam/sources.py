"""Solenoid field sources: analytic infinite-solenoid gauges and the
finite solenoid evaluated as an ideal cylindrical current sheet.

Natural units throughout: hbar = c = eps0 = mu0 = 1, so the sheet
current density equals the interior field strength B0.  The signed
electron charge enters downstream operations as a runtime parameter
(default -1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NearSheetError, QuadratureConvergenceError
from .quadrature import adaptive_quad

DEFAULT_CHARGE = -1.0


@dataclass(frozen=True)
class SolenoidSpec:
    """Geometry and strength of the source.

    ``half_length`` is ``math.inf`` for the idealized infinite solenoid,
    otherwise the solenoid spans z in [-half_length, +half_length].
    """

    R: float = 1.0
    B0: float = 1.0
    half_length: float = math.inf

    def __post_init__(self):
        if self.R <= 0:
            raise ValueError("solenoid radius must be positive")
        if not (self.half_length > 0):
            raise ValueError("half_length must be positive (possibly inf)")

    @property
    def infinite(self) -> bool:
        return math.isinf(self.half_length)

    @property
    def flux(self) -> float:
        """Interior flux pi * R^2 * B0 of the infinite solenoid."""
        return math.pi * self.R ** 2 * self.B0


@dataclass(frozen=True)
class GaugeField:
    """An evaluable planar vector potential tagged by gauge choice.

    ``evaluate`` maps an (n, 2) array of points to (n, 2) values.
    ``curl``, when present, is the analytic curl_z on (n, 2) -> (n,).
    ``wall_radius`` marks the circle where the potential kinks, so line
    integrals can split panels there.
    """

    gauge: str
    evaluate: Callable[[np.ndarray], np.ndarray]
    curl: Callable[[np.ndarray], np.ndarray] | None = None
    spec: SolenoidSpec | None = None
    wall_radius: float | None = None
    curl_support_radius: float | None = None

    def __call__(self, pts) -> np.ndarray:
        return self.evaluate(np.atleast_2d(np.asarray(pts, dtype=float)))

    def at(self, p) -> np.ndarray:
        """Value at a single point, shape (2,)."""
        return self(np.asarray(tuple(p), dtype=float))[0]


def _require_infinite(spec: SolenoidSpec):
    if not spec.infinite:
        raise ValueError("this gauge is defined for the infinite solenoid only")


def eval_A_symmetric(pts, spec: SolenoidSpec) -> np.ndarray:
    """Symmetric-gauge potential: (B0 r / 2) e_phi inside, (B0 R^2 / 2r) e_phi outside."""
    _require_infinite(spec)
    p = np.atleast_2d(np.asarray(pts, dtype=float))
    r2 = p[:, 0] ** 2 + p[:, 1] ** 2
    perp = np.stack([-p[:, 1], p[:, 0]], axis=-1)  # r * e_phi
    with np.errstate(divide="ignore", invalid="ignore"):
        scale = np.where(r2 < spec.R ** 2, 0.5 * spec.B0,
                         0.5 * spec.B0 * spec.R ** 2 / np.where(r2 > 0, r2, 1.0))
    return perp * scale[:, None]


def eval_A_landau2(pts, spec: SolenoidSpec) -> np.ndarray:
    """Generalized 2nd-Landau potential: symmetric gauge plus grad(B0 x y / 2)."""
    _require_infinite(spec)
    p = np.atleast_2d(np.asarray(pts, dtype=float))
    grad_chi = 0.5 * spec.B0 * np.stack([p[:, 1], p[:, 0]], axis=-1)
    return eval_A_symmetric(p, spec) + grad_chi


def eval_B_infinite(pts, spec: SolenoidSpec) -> np.ndarray:
    """Confined field B0 inside radius R (wall included), zero outside."""
    _require_infinite(spec)
    p = np.atleast_2d(np.asarray(pts, dtype=float))
    r2 = p[:, 0] ** 2 + p[:, 1] ** 2
    return np.where(r2 <= spec.R ** 2, spec.B0, 0.0)


def symmetric_gauge(spec: SolenoidSpec) -> GaugeField:
    return GaugeField(
        gauge="symmetric",
        evaluate=lambda pts: eval_A_symmetric(pts, spec),
        curl=lambda pts: eval_B_infinite(pts, spec),
        spec=spec,
        wall_radius=spec.R,
        curl_support_radius=spec.R,
    )


def landau2_gauge(spec: SolenoidSpec) -> GaugeField:
    return GaugeField(
        gauge="landau2",
        evaluate=lambda pts: eval_A_landau2(pts, spec),
        curl=lambda pts: eval_B_infinite(pts, spec),
        spec=spec,
        wall_radius=spec.R,
        curl_support_radius=spec.R,
    )


# -- finite solenoid ------------------------------------------------------
#
# The sheet integral over z' has elementary antiderivatives, so only the
# azimuthal integral is done numerically.  With rho^2(phi') the in-plane
# squared distance to a sheet element and z+- = z -+ half_length:
#
#   A_phi ~ int cos(phi') [ asinh(z+/rho) - asinh(z-/rho) ] dphi'
#   B_z   ~ int (R - r cos(phi')) / rho^2 [ z+/sqrt(rho^2+z+^2) - z-/... ] dphi'
#   B_r   ~ int cos(phi') [ 1/sqrt(rho^2+z-^2) - 1/sqrt(rho^2+z+^2) ] dphi'
#
# all even in phi', hence integrated over [0, pi] and doubled.


def sheet_distance(r: float, z: float, spec: SolenoidSpec) -> float:
    """Distance from (r, z) to the current sheet r'=R, |z'| <= L."""
    L = spec.half_length
    if abs(z) <= L:
        return abs(r - spec.R)
    return math.hypot(r - spec.R, abs(z) - L)


def sheet_profile(r: float, z: float, spec: SolenoidSpec, tol: float = 1e-8):
    """(A_phi, B_r, B_z) of the current sheet at cylindrical (r, z)."""
    R, L = spec.R, spec.half_length
    zp, zm = z + L, z - L
    pref = spec.B0 * R / (4.0 * math.pi)

    def integrand(phis):
        c = np.cos(phis)
        rho2 = r * r + R * R - 2.0 * r * R * c
        rho2 = np.maximum(rho2, 1e-300)
        rho = np.sqrt(rho2)
        sp = np.sqrt(rho2 + zp * zp)
        sm = np.sqrt(rho2 + zm * zm)
        a_phi = c * (np.arcsinh(zp / rho) - np.arcsinh(zm / rho))
        b_z = (R - r * c) / rho2 * (zp / sp - zm / sm)
        b_r = c * (1.0 / sm - 1.0 / sp)
        return np.stack([a_phi, b_r, b_z], axis=-1)

    scale = 2.0 * pref
    value, _ = adaptive_quad(integrand, 0.0, math.pi,
                             tol / max(abs(scale), 1e-300))
    a_phi, b_r, b_z = (scale * value).tolist()
    return a_phi, b_r, b_z


def eval_finite_solenoid(x, spec: SolenoidSpec, tol: float = 1e-8,
                         eps_surf: float | None = None):
    """Vector potential and magnetic field of the finite solenoid at ``x``.

    ``x`` is a 3-vector; returns ``(A, B)`` as length-3 arrays with
    absolute component error <= tol.  Points closer than ``eps_surf``
    (default 1e-3 R) to the current sheet are rejected; pass
    ``eps_surf=0`` to integrate arbitrarily close (off-sheet values
    remain finite).
    """
    if spec.infinite:
        raise ValueError("eval_finite_solenoid requires a finite half_length")
    xa = np.asarray(tuple(x) if hasattr(x, "__iter__") else x, dtype=float)
    if xa.shape != (3,):
        raise ValueError("expected a 3-D point")
    r = math.hypot(xa[0], xa[1])
    z = float(xa[2])
    if eps_surf is None:
        eps_surf = 1e-3 * spec.R
    if eps_surf > 0 and sheet_distance(r, z, spec) < eps_surf:
        raise NearSheetError(
            f"point (r={r:.6g}, z={z:.6g}) lies within {eps_surf:.3g} of the current sheet")

    a_phi, b_r, b_z = sheet_profile(r, z, spec, tol)
    if r > 0:
        e_r = np.array([xa[0] / r, xa[1] / r, 0.0])
        e_phi = np.array([-xa[1] / r, xa[0] / r, 0.0])
    else:
        e_r = np.array([1.0, 0.0, 0.0])
        e_phi = np.array([0.0, 1.0, 0.0])
    A = a_phi * e_phi
    B = b_r * e_r + np.array([0.0, 0.0, b_z])
    return A, B


@dataclass(frozen=True)
class NetFluxResult:
    """z=0 plane flux: quadrature over r <= r_max plus the r^-3 tail."""

    total: float
    integral: float
    tail: float


def flux_z0(spec: SolenoidSpec, r_lo: float, r_hi: float,
            tol: float = 1e-4, field_tol: float = 1e-9) -> float:
    """Flux of B_z through the z=0 annulus r_lo < r < r_hi."""
    if spec.infinite:
        def integrand(rs):
            inside = rs <= spec.R
            return 2.0 * math.pi * rs * np.where(inside, spec.B0, 0.0)

        value, _ = adaptive_quad(integrand, r_lo, r_hi, tol,
                                 points=[spec.R] if r_lo < spec.R < r_hi else ())
        return float(value)

    def integrand(rs):
        out = np.empty_like(rs)
        for i, r in enumerate(rs):
            out[i] = sheet_profile(float(r), 0.0, spec, field_tol)[2]
        return 2.0 * math.pi * rs * out

    value, _ = adaptive_quad(integrand, r_lo, r_hi, tol,
                             points=[spec.R] if r_lo < spec.R < r_hi else ())
    return float(value)


def net_flux_z0(spec: SolenoidSpec, r_max: float, tol: float = 1e-2) -> NetFluxResult:
    """Net flux through the z=0 plane out to r_max, tail-corrected.

    For the finite solenoid the return flux cancels the core, so the
    total tends to zero; the tail beyond r_max is estimated from the
    B_z ~ -B0 R^2 L / (2 r^3) asymptote.  A finite tail estimate larger
    than ``tol`` raises a convergence error.
    """
    if r_max <= spec.R:
        raise ValueError("r_max must exceed the solenoid radius")
    quad_tol = min(tol, 1e-3 * abs(spec.flux) + 1e-12)
    integral = flux_z0(spec, 0.0, r_max, tol=quad_tol)
    if spec.infinite:
        tail = 0.0
    else:
        tail = -math.pi * spec.B0 * spec.R ** 2 * spec.half_length / r_max
        if abs(tail) > tol:
            raise QuadratureConvergenceError(
                f"tail estimate {tail:.3e} exceeds tol {tol:.3e}; increase r_max",
                best_estimate=integral + tail,
                error_estimate=abs(tail),
            )
    return NetFluxResult(total=integral + tail, integral=integral, tail=tail)


def far_field_asymptote(spec: SolenoidSpec, r: float) -> tuple[float, float]:
    """Leading (A_phi, B_z) far from a finite solenoid, r >> max(R, L)."""
    if spec.infinite:
        raise ValueError("asymptote applies to the finite solenoid")
    L = spec.half_length
    a = 0.5 * spec.B0 * spec.R ** 2 * L / r ** 2
    b = -0.5 * spec.B0 * spec.R ** 2 * L / r ** 3
    return a, b
