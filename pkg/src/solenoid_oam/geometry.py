"""Points, composable piecewise paths, line integrals and FD derivatives.

Paths are ordered lists of segments (straight lines, circular arcs, and
n-fold repeats of a closed subpath).  Orientation is intrinsic to the
segment order; reversing a path negates every line integral along it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import StencilError
from .quadrature import adaptive_quad

_CONNECT_ATOL = 1e-12
TWO_PI = 2.0 * math.pi


def normalize_angle(phi: float) -> float:
    """Map an angle to the principal interval (-pi, pi]."""
    out = math.remainder(phi, TWO_PI)
    if out <= -math.pi:
        out += TWO_PI
    return out


@dataclass(frozen=True)
class Point2:
    """Planar point with Cartesian storage and polar accessors."""

    x: float
    y: float

    @property
    def r(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def phi(self) -> float:
        return normalize_angle(math.atan2(self.y, self.x))

    @classmethod
    def from_polar(cls, r: float, phi: float) -> "Point2":
        if r < 0:
            raise ValueError("radius must be non-negative")
        return cls(r * math.cos(phi), r * math.sin(phi))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y])

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class Point3:
    """Spatial point; the polar accessors refer to the xy-plane."""

    x: float
    y: float
    z: float

    @property
    def r(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def phi(self) -> float:
        return normalize_angle(math.atan2(self.y, self.x))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z


def _as_xy(p) -> np.ndarray:
    a = np.asarray(tuple(p) if isinstance(p, (Point2, Point3)) else p, dtype=float)
    if a.shape != (2,):
        raise ValueError(f"expected a planar point, got shape {a.shape}")
    return a


class Segment:
    """Common interface: point(t) and tangent(t) for t in [0, 1]."""

    def point(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def tangent(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @property
    def start(self) -> np.ndarray:
        return self.point(np.array([0.0]))[0]

    @property
    def end(self) -> np.ndarray:
        return self.point(np.array([1.0]))[0]

    def reversed(self) -> "Segment":
        raise NotImplementedError

    def radius_crossings(self, radius: float) -> list[float]:
        """Parameter values in (0, 1) where |point(t)| == radius."""
        raise NotImplementedError


@dataclass(frozen=True)
class StraightLine(Segment):
    a: tuple
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(_as_xy(self.a)))
        object.__setattr__(self, "b", tuple(_as_xy(self.b)))

    def point(self, t):
        a = np.asarray(self.a)
        d = np.asarray(self.b) - a
        return a + np.outer(np.atleast_1d(t), d)

    def tangent(self, t):
        d = np.asarray(self.b) - np.asarray(self.a)
        return np.broadcast_to(d, (np.size(t), 2)).copy()

    def reversed(self):
        return StraightLine(self.b, self.a)

    def radius_crossings(self, radius):
        # |a + t d|^2 = radius^2 is quadratic in t.
        a = np.asarray(self.a)
        d = np.asarray(self.b) - a
        qa = float(d @ d)
        if qa == 0.0:
            return []
        qb = 2.0 * float(a @ d)
        qc = float(a @ a) - radius * radius
        disc = qb * qb - 4.0 * qa * qc
        if disc <= 0.0:
            return []
        root = math.sqrt(disc)
        return [t for t in ((-qb - root) / (2 * qa), (-qb + root) / (2 * qa))
                if 1e-12 < t < 1.0 - 1e-12]


@dataclass(frozen=True)
class CircularArc(Segment):
    center: tuple
    radius: float
    phi_start: float
    phi_end: float

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(_as_xy(self.center)))
        if self.radius <= 0:
            raise ValueError("arc radius must be positive")
        if abs(self.phi_end - self.phi_start) > TWO_PI + 1e-12:
            raise ValueError("arc span exceeds a full turn; use Repeat for multiple loops")

    def _angles(self, t):
        return self.phi_start + np.atleast_1d(t) * (self.phi_end - self.phi_start)

    def point(self, t):
        ang = self._angles(t)
        c = np.asarray(self.center)
        return c + self.radius * np.stack([np.cos(ang), np.sin(ang)], axis=-1)

    def tangent(self, t):
        ang = self._angles(t)
        span = self.phi_end - self.phi_start
        return self.radius * span * np.stack([-np.sin(ang), np.cos(ang)], axis=-1)

    def reversed(self):
        return CircularArc(self.center, self.radius, self.phi_end, self.phi_start)

    def radius_crossings(self, radius):
        # |c + rho u(phi)| = radius  =>  cos(phi - phi_c) fixed by the
        # law of cosines; concentric arcs never cross.
        c = np.asarray(self.center)
        dc = float(np.hypot(*c))
        if dc == 0.0:
            return []
        cosv = (radius * radius - dc * dc - self.radius ** 2) / (2 * self.radius * dc)
        if abs(cosv) > 1.0:
            return []
        phi_c = math.atan2(c[1], c[0])
        dv = math.acos(cosv)
        span = self.phi_end - self.phi_start
        if span == 0.0:
            return []
        out = []
        for phi in (phi_c + dv, phi_c - dv):
            # Unwrap into the arc's parameter range (span <= 2*pi).
            for k in range(-3, 4):
                t = (phi + k * TWO_PI - self.phi_start) / span
                if 1e-12 < t < 1.0 - 1e-12:
                    out.append(t)
        return sorted(set(out))


@dataclass(frozen=True)
class Repeat(Segment):
    """A closed subpath traversed ``n`` times."""

    subpath: "Path"
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("repeat count must be >= 1")
        if not np.allclose(self.subpath.start, self.subpath.end,
                           rtol=0.0, atol=_CONNECT_ATOL):
            raise ValueError("Repeat requires a closed subpath")

    @property
    def start(self):
        return self.subpath.start

    @property
    def end(self):
        return self.subpath.start

    def reversed(self):
        return Repeat(self.subpath.reversed(), self.n)


class Path:
    """Ordered, connected sequence of segments."""

    def __init__(self, segments: Sequence[Segment], closed: bool | None = None):
        if not segments:
            raise ValueError("a path needs at least one segment")
        self.segments = list(segments)
        for prev, nxt in zip(self.segments[:-1], self.segments[1:]):
            if not np.allclose(prev.end, nxt.start, rtol=0.0, atol=_CONNECT_ATOL):
                raise ValueError(
                    f"segments are not connected: {prev.end} -> {nxt.start}")
        is_loop = bool(np.allclose(self.start, self.end, rtol=0.0, atol=_CONNECT_ATOL))
        if closed is None:
            closed = is_loop
        elif closed and not is_loop:
            raise ValueError("path flagged closed but start != end")
        self.closed = closed

    @property
    def start(self) -> np.ndarray:
        return self.segments[0].start

    @property
    def end(self) -> np.ndarray:
        return self.segments[-1].end

    def reversed(self) -> "Path":
        return Path([s.reversed() for s in reversed(self.segments)], closed=self.closed)

    def __add__(self, other: "Path") -> "Path":
        return Path(self.segments + other.segments)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def line(a, b) -> "Path":
        return Path([StraightLine(a, b)])

    @staticmethod
    def circle(radius: float, center=(0.0, 0.0), ccw: bool = True) -> "Path":
        span = TWO_PI if ccw else -TWO_PI
        return Path([CircularArc(center, radius, 0.0, span)], closed=True)

    @staticmethod
    def polyline(points, closed: bool = False) -> "Path":
        pts = [_as_xy(p) for p in points]
        if closed and not np.allclose(pts[0], pts[-1], rtol=0.0, atol=_CONNECT_ATOL):
            pts.append(pts[0])
        segs = [StraightLine(p, q) for p, q in zip(pts[:-1], pts[1:])]
        return Path(segs, closed=closed or None)

    @staticmethod
    def repeat(subpath: "Path", n: int) -> "Path":
        return Path([Repeat(subpath, n)], closed=True)


def _segment_integral(field, seg: Segment, tol: float) -> float:
    wall = getattr(field, "wall_radius", None)
    points = seg.radius_crossings(wall) if wall else ()

    def integrand(ts):
        xs = seg.point(ts)
        return np.einsum("ij,ij->i", np.asarray(field(xs), dtype=float),
                         seg.tangent(ts))

    value, _ = adaptive_quad(integrand, 0.0, 1.0, tol, points=points)
    return float(value)


def line_integral(field, path: Path, tol: float = 1e-10) -> float:
    """Integral of A . dx along ``path`` by adaptive quadrature.

    ``field`` must map an (n, 2) array of points to (n, 2) vector values;
    a ``wall_radius`` attribute, when present, marks a circle where the
    integrand may kink, and every segment is split there before any
    panel is laid down.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    def _flatten(segments, mult):
        for seg in segments:
            if isinstance(seg, Repeat):
                yield from _flatten(seg.subpath.segments, mult * seg.n)
            else:
                yield seg, mult

    flat = list(_flatten(path.segments, 1))
    seg_tol = tol / len(flat)
    total = 0.0
    for seg, mult in flat:
        total += mult * _segment_integral(field, seg, seg_tol / mult)
    return total


def default_step(x, h: float | None = None) -> float:
    """Central-difference step scaled to the point's magnitude."""
    if h is not None:
        if h <= 0:
            raise ValueError("step must be positive")
        return h
    xa = _as_xy(x)
    return 1e-5 * max(1.0, float(np.hypot(*xa)))


def grad_scalar(f: Callable, x, h: float | None = None) -> np.ndarray:
    """O(h^2) central-difference gradient of a scalar field at ``x``."""
    xa = _as_xy(x)
    step = default_step(xa, h)
    vals = []
    for dx, dy in ((step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)):
        try:
            v = float(f(np.array([xa[0] + dx, xa[1] + dy])))
        except Exception as exc:  # noqa: BLE001 - reported as stencil failure
            raise StencilError(
                f"stencil evaluation failed at offset ({dx}, {dy}) from {xa}: {exc}"
            ) from exc
        if not math.isfinite(v):
            raise StencilError(f"non-finite stencil value at offset ({dx}, {dy}) from {xa}")
        vals.append(v)
    return np.array([(vals[0] - vals[1]) / (2 * step),
                     (vals[2] - vals[3]) / (2 * step)])


def curl_z(field, x, h: float | None = None) -> float:
    """d(Ay)/dx - d(Ax)/dy by central differences."""
    xa = _as_xy(x)
    step = default_step(xa, h)
    pts = np.array([
        [xa[0] + step, xa[1]],
        [xa[0] - step, xa[1]],
        [xa[0], xa[1] + step],
        [xa[0], xa[1] - step],
    ])
    vals = np.asarray(field(pts), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise StencilError(f"non-finite field value in curl stencil around {xa}")
    day_dx = (vals[0, 1] - vals[1, 1]) / (2 * step)
    dax_dy = (vals[2, 0] - vals[3, 0]) / (2 * step)
    return float(day_dx - dax_dy)


def divergence_2d(field, x, h: float | None = None) -> float:
    """d(Ax)/dx + d(Ay)/dy by central differences."""
    xa = _as_xy(x)
    step = default_step(xa, h)
    pts = np.array([
        [xa[0] + step, xa[1]],
        [xa[0] - step, xa[1]],
        [xa[0], xa[1] + step],
        [xa[0], xa[1] - step],
    ])
    vals = np.asarray(field(pts), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise StencilError(f"non-finite field value in divergence stencil around {xa}")
    dax_dx = (vals[0, 0] - vals[1, 0]) / (2 * step)
    day_dy = (vals[2, 1] - vals[3, 1]) / (2 * step)
    return float(dax_dx + day_dy)
