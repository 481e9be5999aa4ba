"""Correlations between GF(2) polynomials of degree at most three and the
complex/boolean mod functions: exact enumeration engines, the directional
derivative calculus, closed forms, exhaustive searches, and local-correlation
experiments."""

from ._util import DEFAULT_SEED
from .engine import (BudgetError, CorrelationValue, b_m, bias, c_phi, e_phi,
                     symmetric_b_m, symmetric_c_phi, symmetric_e_phi)
from .modfun import (Angle, AngleError, angle_grid, bmod_m, fraction_weight_mod,
                     mod_phi, parse_angle, reduce_angle)
from .poly import (ParseError, PolyGF2, SymmetricSpec, DirectionGraph,
                   UnsupportedDegreeError, elementary, format_poly, parse)
from .deriv import (Restriction, check_squared_identity, contribution,
                    contribution_sweep, c_restricted, handshake_classify,
                    lemma_hypotheses, v_phi, v_restricted)

__version__ = "0.1.0"

__all__ = [
    "Angle", "AngleError", "BudgetError", "CorrelationValue", "DirectionGraph",
    "DEFAULT_SEED", "ParseError", "PolyGF2", "Restriction", "SymmetricSpec",
    "UnsupportedDegreeError", "angle_grid", "b_m", "bias", "bmod_m", "c_phi",
    "c_restricted", "check_squared_identity", "contribution",
    "contribution_sweep", "e_phi", "elementary", "format_poly",
    "fraction_weight_mod", "handshake_classify", "lemma_hypotheses", "mod_phi",
    "parse", "parse_angle", "reduce_angle", "symmetric_b_m", "symmetric_c_phi",
    "symmetric_e_phi", "v_phi", "v_restricted",
]
