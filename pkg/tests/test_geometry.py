import math

import numpy as np
import pytest

from solenoid_oam.errors import FieldEvaluationError, QuadratureConvergenceError
from solenoid_oam.geometry import (CircularArc, Path, Point2, Repeat,
                                   StraightLine, curl_z, grad_scalar,
                                   line_integral, normalize_angle)
from solenoid_oam.quadrature import adaptive_quad


def smooth_field(a, b, c, d):
    """Synthetic vector field for path-algebra property tests."""

    def f(pts):
        p = np.atleast_2d(pts)
        return np.stack([np.sin(a * p[:, 0] + b * p[:, 1]),
                         np.cos(c * p[:, 0] - d * p[:, 1])], axis=-1)

    return f


class TestPoints:
    def test_polar_roundtrip(self, rng):
        for _ in range(200):
            x, y = rng.uniform(-10, 10, 2)
            p = Point2(x, y)
            q = Point2.from_polar(p.r, p.phi)
            assert math.isclose(q.x, x, rel_tol=1e-12, abs_tol=1e-12)
            assert math.isclose(q.y, y, rel_tol=1e-12, abs_tol=1e-12)

    def test_phi_interval(self, rng):
        for _ in range(300):
            p = Point2(*rng.uniform(-5, 5, 2))
            assert -math.pi < p.phi <= math.pi
            assert p.r >= 0
        assert Point2(-1.0, 0.0).phi == math.pi
        assert Point2(-1.0, -0.0).phi == math.pi

    def test_normalize_angle_branch_cut(self):
        assert normalize_angle(3 * math.pi) == pytest.approx(math.pi)
        assert normalize_angle(-math.pi) == pytest.approx(math.pi)
        assert normalize_angle(0.25) == pytest.approx(0.25)

    def test_negative_radius_rejected(self):
        with pytest.raises(ValueError):
            Point2.from_polar(-1.0, 0.0)

    def test_point3_planar_accessors(self):
        from solenoid_oam.geometry import Point3

        p = Point3(3.0, 4.0, -2.0)
        assert p.r == pytest.approx(5.0)
        assert p.phi == pytest.approx(math.atan2(4.0, 3.0))
        assert list(p) == [3.0, 4.0, -2.0]


class TestPathConstruction:
    def test_disconnected_segments_rejected(self):
        with pytest.raises(ValueError, match="not connected"):
            Path([StraightLine((0, 0), (1, 0)), StraightLine((2, 0), (3, 0))])

    def test_closed_flag_must_match_geometry(self):
        with pytest.raises(ValueError, match="closed"):
            Path([StraightLine((0, 0), (1, 0))], closed=True)

    def test_repeat_requires_closed_subpath(self):
        open_path = Path.line((0, 0), (1, 1))
        with pytest.raises(ValueError, match="closed"):
            Repeat(open_path, 2)

    def test_repeat_start_equals_end(self):
        loop = Path.circle(1.0)
        rep = Repeat(loop, 3)
        assert np.allclose(rep.start, rep.end, atol=1e-15)

    def test_arc_span_capped(self):
        with pytest.raises(ValueError, match="full turn"):
            CircularArc((0, 0), 1.0, 0.0, 3 * math.pi)

    def test_concatenation_and_reversal_endpoints(self):
        p = Path.line((0, 0), (1, 0)) + Path.line((1, 0), (1, 2))
        assert np.allclose(p.start, [0, 0])
        assert np.allclose(p.end, [1, 2])
        r = p.reversed()
        assert np.allclose(r.start, [1, 2])
        assert np.allclose(r.end, [0, 0])


class TestLineIntegral:
    def test_symmetric_circle_gives_flux(self, sym):
        val = line_integral(sym, Path.circle(2.0), 1e-10)
        assert val == pytest.approx(math.pi, abs=1e-10)

    def test_non_enclosing_loop_is_zero(self, sym):
        val = line_integral(sym, Path.circle(0.5, center=(5.0, 0.0)), 1e-10)
        assert abs(val) < 1e-10

    def test_landau2_circle_gives_flux(self, lan):
        val = line_integral(lan, Path.circle(2.0), 1e-10)
        assert val == pytest.approx(math.pi, abs=1e-10)

    def test_reversal_negates(self, rng):
        for _ in range(10):
            f = smooth_field(*rng.uniform(0.3, 2.0, 4))
            pts = rng.uniform(-2, 2, (4, 2))
            p = Path.polyline(pts)
            fwd = line_integral(f, p, 1e-11)
            bwd = line_integral(f, p.reversed(), 1e-11)
            assert fwd == pytest.approx(-bwd, abs=1e-10)

    def test_concatenation_additivity(self, rng):
        f = smooth_field(*rng.uniform(0.3, 2.0, 4))
        p = Path.polyline([(0, 0), (1.5, 0.3), (0.8, 1.9)])
        q = Path.polyline([(0.8, 1.9), (-0.5, 0.7)])
        whole = line_integral(f, p + q, 1e-11)
        parts = line_integral(f, p, 1e-11) + line_integral(f, q, 1e-11)
        assert whole == pytest.approx(parts, abs=1e-10)

    def test_repeat_linearity(self, rng):
        f = smooth_field(*rng.uniform(0.3, 2.0, 4))
        loop = Path.circle(1.3, center=(0.2, -0.4))
        once = line_integral(f, loop, 1e-12)
        for n in (2, 5):
            repeated = line_integral(f, Path.repeat(loop, n), 1e-11)
            assert repeated == pytest.approx(n * once, abs=1e-10)

    def test_gauge_shift_preserves_closed_loops(self, sym, rng):
        # adding an exact gradient of a single-valued function cannot
        # change any closed-loop integral
        a, b = rng.uniform(0.3, 1.0, 2)

        def shifted(pts):
            p = np.atleast_2d(pts)
            gx = a * np.cos(a * p[:, 0]) * np.sin(b * p[:, 1])
            gy = b * np.sin(a * p[:, 0]) * np.cos(b * p[:, 1])
            return sym(p) + np.stack([gx, gy], axis=-1)

        shifted.wall_radius = 1.0
        tol = 1e-10
        for loop in (Path.circle(2.0), Path.circle(1.7, center=(0.3, 0.1))):
            base = line_integral(sym, loop, tol)
            moved = line_integral(shifted, loop, tol)
            assert abs(base - moved) <= 2 * tol

    def test_wall_kink_does_not_degrade_accuracy(self, sym):
        # a chord crossing the solenoid wall twice
        chord = Path.line((-3.0, 0.4), (3.0, 0.4))
        val = line_integral(sym, chord, 1e-12)
        # independent oracle: brute-force fine Simpson on the kink-free pieces
        seg = StraightLine((-3.0, 0.4), (3.0, 0.4))
        ts = np.linspace(0, 1, 200001)
        ys = np.einsum("ij,ij->i", sym(seg.point(ts)), seg.tangent(ts))
        from scipy.integrate import simpson
        assert val == pytest.approx(simpson(ys, x=ts), abs=1e-8)

    def test_nonfinite_field_reports_location(self):
        def bad(pts):
            p = np.atleast_2d(pts)
            out = np.ones_like(p)
            out[p[:, 0] > 0.5] = np.nan
            return out

        with pytest.raises(FieldEvaluationError):
            line_integral(bad, Path.line((0, 0), (1, 0)), 1e-10)

    def test_convergence_error_carries_best_estimate(self):
        # genuinely nasty integrand with a tiny panel budget
        def jagged(ts):
            return np.sin(1.0 / (ts + 1e-4))

        with pytest.raises(QuadratureConvergenceError) as exc:
            adaptive_quad(jagged, 0.0, 1.0, 1e-14, max_panels=8)
        assert exc.value.best_estimate is not None
        assert exc.value.error_estimate > 1e-14


class TestDerivatives:
    def test_grad_of_bilinear(self):
        g = grad_scalar(lambda p: 0.5 * p[0] * p[1], (1.0, 2.0))
        assert np.allclose(g, [1.0, 0.5], atol=1e-9)

    def test_grad_of_constant(self):
        g = grad_scalar(lambda p: 4.2, (0.3, -0.7))
        assert np.allclose(g, [0.0, 0.0])

    def test_grad_of_pure_gauge_angle(self):
        # half-flux times the polar angle: gradient is (1/2r) e_phi
        def f(p):
            return 0.5 * math.atan2(p[1], p[0])

        x = (2.0 * math.cos(math.pi / 4), 2.0 * math.sin(math.pi / 4))
        g = grad_scalar(f, x)
        e_phi = np.array([-math.sin(math.pi / 4), math.cos(math.pi / 4)])
        assert np.hypot(*g) == pytest.approx(0.25, abs=1e-9)
        assert np.allclose(g, 0.25 * e_phi, atol=1e-9)

    def test_curl_symmetric_inside_outside(self, sym):
        assert curl_z(sym, (0.5, 0.0)) == pytest.approx(1.0, abs=1e-7)
        assert curl_z(sym, (2.0, 0.0)) == pytest.approx(0.0, abs=1e-7)

    def test_curl_landau2_inside(self, lan):
        assert curl_z(lan, (0.3, 0.1)) == pytest.approx(1.0, abs=1e-7)

    def test_stencil_failure_surfaces(self):
        from solenoid_oam.errors import StencilError

        def sometimes(p):
            if p[0] > 1.0:
                raise RuntimeError("off the grid")
            return p[0]

        with pytest.raises(StencilError):
            grad_scalar(sometimes, (1.0, 0.0), h=0.5)
