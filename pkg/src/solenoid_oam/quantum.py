"""Fractional-order Bessel evaluation and the flux-shifted radial order.

Around a long solenoid the canonical quantum number m stays an integer,
but the radial equation sees the effective order

    alpha = m + e * integral_r^inf B_z(r', z) r' dr',

which tends to m - beta (beta = e*Phi/2pi) as the return flux settles:
the eigenfunctions are J_|m - beta|(k r) despite the field-free exterior.

Only non-negative real orders are accepted (the eigenfunctions use
|alpha|).  Small and moderate arguments use the ascending power series;
beyond its float64 cancellation range the function is evaluated from
its exact integral representation

    J_nu(x) = (1/pi) int_0^pi cos(nu t - x sin t) dt
            - sin(nu pi)/pi int_0^inf exp(-x sinh s - nu s) ds,

whose second term drops for integer orders.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .quadrature import adaptive_quad
from .sources import DEFAULT_CHARGE, SolenoidSpec, sheet_profile

_SERIES_MAX_TERMS = 500


def beta_parameter(spec: SolenoidSpec, e: float = DEFAULT_CHARGE) -> float:
    """Fractional flux parameter e*Phi/(2 pi) = e B0 R^2 / 2."""
    return 0.5 * e * spec.B0 * spec.R ** 2


def _bessel_series(nu: float, x: float, tol: float) -> float:
    half = 0.5 * x
    # leading term (x/2)^nu / Gamma(nu+1), in logs to dodge under/overflow
    log_t0 = nu * math.log(half) - math.lgamma(nu + 1.0) if x > 0 else 0.0
    if log_t0 < -745.0:  # underflows float64; the value is indistinguishable from 0
        return 0.0
    term = math.exp(log_t0)
    total = term
    h2 = half * half
    for k in range(1, _SERIES_MAX_TERMS):
        term *= -h2 / (k * (nu + k))
        total += term
        if abs(term) < 0.01 * tol and k > half:
            return total
    raise ArithmeticError(f"Bessel series failed to converge for nu={nu}, x={x}")


def _bessel_integral(nu: float, x: float, tol: float) -> float:
    def oscillatory(ts):
        return np.cos(nu * ts - x * np.sin(ts))

    value, _ = adaptive_quad(oscillatory, 0.0, math.pi, tol * math.pi / 4.0,
                             max_panels=20000)
    result = float(value) / math.pi

    if abs(nu - round(nu)) > 1e-12:
        s_max = math.asinh(745.0 / max(x, 1.0))

        def damped(ss):
            return np.exp(-x * np.sinh(ss) - nu * ss)

        tail, _ = adaptive_quad(damped, 0.0, s_max, tol * math.pi / 4.0)
        result -= math.sin(nu * math.pi) / math.pi * float(tail)
    return result


def bessel_j(nu: float, x: float, tol: float = 1e-12) -> float:
    """Bessel function of the first kind for real order nu >= 0, x >= 0."""
    if nu < 0:
        raise ValueError("negative orders are not supported; use |alpha|")
    if x < 0:
        raise ValueError("argument must be non-negative")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    if x > 1e6:
        raise OverflowError("argument too large for controlled evaluation")
    if x <= max(10.0, 2.0 * nu):
        return _bessel_series(nu, x, tol)
    return _bessel_integral(nu, x, tol)


def alpha_exponent(m: int, r: float, z: float, spec: SolenoidSpec,
                   e: float = DEFAULT_CHARGE, tol: float = 1e-6,
                   field_tol: float = 1e-9) -> float:
    """Effective Bessel order m + e * radial tail integral of B_z r'.

    The integral runs from r to a cutoff well beyond both the solenoid
    and the field point; past the cutoff the r^-3 falloff gives the
    closed-form remainder -B0 R^2 L / (2 r_c), which is added in.
    """
    if spec.infinite:
        raise ValueError("alpha_exponent integrates the finite solenoid's return flux")
    if not isinstance(m, (int, np.integer)):
        raise TypeError("the canonical quantum number m must be an integer")
    if r <= 0:
        raise ValueError("r must be positive")
    L = spec.half_length
    r_cut = max(10.0 * L, 4.0 * r, 50.0 * spec.R)

    def integrand(rs):
        out = np.empty_like(rs)
        for i, rv in enumerate(rs):
            out[i] = sheet_profile(float(rv), z, spec, field_tol)[2]
        return out * rs

    value, _ = adaptive_quad(integrand, r, r_cut, tol * 0.5)
    tail = -0.5 * spec.B0 * spec.R ** 2 * L / r_cut
    return float(m) + e * (float(value) + tail)


@dataclass(frozen=True)
class EigenMode:
    """Cylindrical scattering mode with flux-shifted radial order.

    ``alpha`` defaults to m - beta, the long-solenoid limit of the
    radial-order integral; |alpha| is the Bessel order actually used.
    """

    m: int
    k: float
    mass: float
    beta: float
    alpha: float | None = None

    def __post_init__(self):
        if not isinstance(self.m, (int, np.integer)):
            raise TypeError("m must be an integer")
        if self.k <= 0 or self.mass <= 0:
            raise ValueError("k and mass must be positive")
        if self.alpha is None:
            object.__setattr__(self, "alpha", float(self.m) - self.beta)

    @property
    def order(self) -> float:
        return abs(self.alpha)


def eigenmode_value(mode: EigenMode, r: float, phi: float, t: float,
                    tol: float = 1e-12) -> complex:
    """(2 pi)^(-1/2) J_|alpha|(k r) exp(i(m phi - k^2 t / (2 M)))."""
    radial = bessel_j(mode.order, mode.k * r, tol) / math.sqrt(2.0 * math.pi)
    phase = mode.m * phi - mode.k ** 2 * t / (2.0 * mode.mass)
    return radial * cmath.exp(1j * phase)
