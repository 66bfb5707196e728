import math

import numpy as np
import pytest

from solenoid_oam.errors import (IllConditionedGeometryError,
                                 NonAxisymmetricFieldError)
from solenoid_oam.geometry import Path
from solenoid_oam.helmholtz import apply_gauge
from solenoid_oam.observables import (OamLedger, ab_phase, cross_z, ledger,
                                      phase_oam_relation, potential_oam,
                                      surface_terms)
from solenoid_oam.sources import SolenoidSpec, landau2_gauge, symmetric_gauge


class TestAbPhase:
    def test_symmetric_circle(self, sym):
        assert ab_phase(sym, Path.circle(2.0), -1.0, 1e-10) \
            == pytest.approx(-math.pi, abs=1e-10)

    def test_landau2_circle(self, lan):
        assert ab_phase(lan, Path.circle(2.0), -1.0, 1e-10) \
            == pytest.approx(-math.pi, abs=1e-10)

    def test_non_enclosing(self, sym):
        assert abs(ab_phase(sym, Path.circle(0.4, center=(4.0, 0.0)), -1.0,
                            1e-10)) < 1e-10

    def test_open_path_rejected(self, sym):
        with pytest.raises(ValueError, match="closed"):
            ab_phase(sym, Path.line((2, 0), (3, 0)), -1.0)

    def test_loop_shape_independence(self, sym):
        square = Path.polyline([(2, -2), (2, 2), (-2, 2), (-2, -2), (2, -2)],
                               closed=True)
        ellipse = Path.polyline(
            [(3 * math.cos(t), 1.5 * math.sin(t))
             for t in np.linspace(0, 2 * math.pi, 129)], closed=True)
        for loop in (Path.circle(2.0), square, ellipse):
            assert ab_phase(sym, loop, -1.0, 1e-9) \
                == pytest.approx(-math.pi, abs=2e-9)

    def test_winding_linearity(self, sym):
        for k in (2, 3, 5):
            loop = Path.repeat(Path.circle(2.0), k)
            assert ab_phase(sym, loop, -1.0, 1e-9) \
                == pytest.approx(-k * math.pi, abs=1e-8)


class TestPotentialOam:
    def test_position_independent_outside(self, sym):
        for r in (2.0, 5.0):
            val = potential_oam((r, 0.0), sym.at((r, 0.0)), -1.0)
            assert val == pytest.approx(-0.5, abs=1e-14)

    def test_parallel_vectors_vanish(self):
        assert potential_oam((2.0, 1.0), (4.0, 2.0), -1.0) == 0.0


class TestPhaseOamRelation:
    def test_holds_at_multiple_radii(self, sym):
        for r in (2.0, 5.0, 10.0):
            rep = phase_oam_relation(sym, r, -1.0, 1e-8)
            assert rep.residual < 1e-8
            assert rep.l_pot == pytest.approx(-0.5, abs=1e-12)

    def test_zero_field(self):
        sym0 = symmetric_gauge(SolenoidSpec(B0=0.0))
        rep = phase_oam_relation(sym0, 2.0, -1.0, 1e-8)
        assert rep.phase == pytest.approx(0.0, abs=1e-12)
        assert rep.l_pot == 0.0

    def test_non_axisymmetric_input_rejected(self, lan):
        with pytest.raises(NonAxisymmetricFieldError):
            phase_oam_relation(lan, 2.0, -1.0, 1e-8)


class TestLedger:
    def test_static_charge_outside(self, sym):
        # direct-substitution oracle: p=0 so Pi = -eA = +A at e=-1
        led = ledger((2.0, 0.0), (0.0, 0.0), sym, -1.0, 1e-6)
        assert led.L_mech == pytest.approx(0.5, abs=1e-6)
        assert led.L_pot == pytest.approx(-0.5, abs=1e-6)
        assert led.L_gic == pytest.approx(0.0, abs=2e-6)
        assert led.L_gic == led.L_mech + led.L_pot  # exact by construction

    def test_uncoupled_circular_momentum(self, sym):
        m0, r = 2.0, 2.0
        led = ledger((r, 0.0), (0.0, m0 / r), sym, 0.0, 1e-6)
        assert led.L_mech == pytest.approx(m0, abs=1e-12)
        assert led.L_pot == 0.0
        assert led.L_gic == pytest.approx(m0, abs=1e-12)

    def test_gauge_invariance_for_same_physical_state(self, sym, lan, spec):
        # the canonical momentum of one physical state shifts by e*grad(chi)
        # under the gauge change; L_pot and L_gic then agree across gauges
        e = -1.0
        x = np.array([1.7, 0.9])
        p_sym = np.array([0.4, -1.1])
        grad_chi = 0.5 * spec.B0 * np.array([x[1], x[0]])
        p_lan = p_sym + e * grad_chi
        led_s = ledger(x, p_sym, sym, e, 1e-6)
        led_l = ledger(x, p_lan, lan, e, 1e-6)
        assert led_l.L_pot == pytest.approx(led_s.L_pot, abs=2e-6)
        assert led_l.L_gic == pytest.approx(led_s.L_gic, abs=2e-6)
        assert led_l.L_mech == pytest.approx(led_s.L_mech, abs=2e-6)

    def test_identity_random_samples(self, sym, lan, rng):
        for gf in (sym, lan):
            for _ in range(10):
                r = rng.uniform(1.1, 4.0)
                phi = rng.uniform(0, 2 * math.pi)
                x = (r * math.cos(phi), r * math.sin(phi))
                p = rng.uniform(-2, 2, 2)
                led = ledger(x, p, gf, -1.0, 1e-5)
                assert led.L_gic == led.L_mech + led.L_pot

    def test_dataclass_shape(self):
        led = OamLedger(L_mech=1.0, L_pot=-0.5, L_gic=0.5, m0=0.5)
        assert led.m0 == 0.5


class TestSurfaceTerms:
    def test_cancellations(self, spec):
        st = surface_terms((3.0, 0.0), spec, 50.0, 1e-9, -1.0)
        # S1 wipes out the potential OAM; the paired log terms cancel jointly
        assert st.S1 == pytest.approx(0.5, rel=0.01)
        assert st.L_pot == pytest.approx(-0.5, abs=1e-12)
        assert abs(st.S1 + st.L_pot) < 0.01 * abs(st.L_pot)
        assert abs(st.S2 + st.S3) < 0.01 * abs(st.S2)
        assert abs(st.lhs_residual) < 0.02 * abs(st.L_pot)

    def test_gauss_law_subchecks(self, spec):
        st = surface_terms((3.0, 0.0), spec, 100.0, 1e-10, -1.0)
        assert st.gauss_outer == pytest.approx(-1.0, abs=1e-9)
        assert st.gauss_inner == pytest.approx(0.0, abs=1e-9)

    def test_no_source_no_terms(self, spec):
        st = surface_terms((3.0, 0.0), spec, 50.0, 1e-9, 0.0)
        assert st.S1 == st.S2 == st.S3 == 0.0

    def test_s1_converges_with_boundary(self, spec):
        prev = None
        for r_inf in (20.0, 50.0, 100.0):
            st = surface_terms((3.0, 0.0), spec, r_inf, 1e-9, -1.0)
            gap = abs(st.S1 + st.L_pot)
            assert gap < 0.01 * abs(st.L_pot)
            prev = gap

    def test_off_axis_charge(self, spec):
        st = surface_terms((2.0, 2.5), spec, 60.0, 1e-9, -1.0)
        assert abs(st.S1 + st.L_pot) < 0.01 * abs(st.L_pot)
        assert abs(st.S2 + st.S3) < 0.01 * abs(st.S2)

    def test_geometry_preconditions(self, spec):
        with pytest.raises(ValueError, match="must lie in"):
            surface_terms((0.5, 0.0), spec, 50.0)
        with pytest.raises(IllConditionedGeometryError):
            surface_terms((1.005, 0.0), spec, 50.0)

    def test_cross_z(self):
        assert cross_z((1.0, 2.0), (3.0, 4.0)) == pytest.approx(-2.0)
