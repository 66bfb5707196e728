"""Numerical toolkit for solenoid gauge fields, loop phases and the
mechanical / potential / canonical orbital-angular-momentum ledger."""

__version__ = "0.1.0"

from .errors import (ConfigError, FieldEvaluationError,
                     IllConditionedGeometryError, LedgerConsistencyError,
                     NearSheetError, NonAxisymmetricFieldError,
                     QuadratureConvergenceError, StencilError, ToolkitError)
from .geometry import (CircularArc, Path, Point2, Point3, Repeat,
                       StraightLine, curl_z, grad_scalar, line_integral)
from .sources import (GaugeField, SolenoidSpec, eval_A_landau2,
                      eval_A_symmetric, eval_B_infinite, eval_finite_solenoid,
                      landau2_gauge, net_flux_z0, symmetric_gauge)
from .helmholtz import (ScalarField2, apply_gauge, curl_field,
                        longitudinal_part, static_reduction_check,
                        transverse_from_B_2d)
from .dewitt import (LoopedRadial, PathFamily, PolygonalXY, RadialStraight,
                     dewitt_lambda, dewitt_potential, loop_gauge_correspondence)
from .observables import (OamLedger, ab_phase, ledger, phase_oam_relation,
                          potential_oam, surface_terms)
from .dynamics import (RampProfile, Trajectory, approach_scenario,
                       infinite_length_sweep, ramp_scenario)
from .quantum import (EigenMode, alpha_exponent, bessel_j, beta_parameter,
                      eigenmode_value)
