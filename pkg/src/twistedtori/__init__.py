"""Differential geometry of twisted Lagrangian tori built from plane curves."""

from .curves import (CurveJet, CurveSpec, circle, eval_jet, offset_circle,
                     orientation_check, radial_cosine, signed_curvature,
                     total_curvature, u_parameter, u_star, winding_number)
from .errors import (BudgetExhausted, CrossCheckMismatch, DomainError,
                     IntegrationFailure, OrientationError, ParseError,
                     RegularityViolation, TwistedToriError)
from .geometry import (GeometryFrame, christoffel, div_JH, frame, immersion,
                       mean_curvature, mean_curvature_factor, metric, second_form)
from .ode import OdeProfile, bounds, closed_form_u, integrate_profile, period_analysis
from .reduction import (DoublePoint, DoublePointScan, PullbackReport,
                        ReductionMaps, find_double_points, level_set_check,
                        reduced_curve, verify_pullbacks)
from .stationarity import (CurveFamily, FamilyScan, StationarityReport, classify,
                           conserved_quantity, count_critical_points, defect,
                           report, scan_family)
from .trig import TrigPoly

__version__ = "0.1.0"
