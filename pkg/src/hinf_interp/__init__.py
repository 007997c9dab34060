"""Numerical bounds for the constant of interpolation of finite sequences in
the upper half-plane: Pick matrices from below, Jones-type interpolation
operators and the characteristics c_H, c_HJ, c_J from above."""
from .characteristics import (CharacteristicsReport, WeightFamily, c_H, c_HJ, c_J_estimate,
                              c_J_given_g, constant_one, m_bounds, outer_extremal, standard_jones,
                              tabulated)
from .gamma_example import GammaConfig, generate_Zgamma, sharpness_report
from .halfplane import PointSequence, SignConvention, b_j_at_zj, blaschke_eval, delta
from .jones import GridSpec, InterpolantSpec, evaluate_interpolant, norm_certificate
from .outer import g0_eval, psi, psi_at_i
from .pick import estimate_M, minimal_norm, pick_matrix

__version__ = "0.1.0"

__all__ = [
    "CharacteristicsReport", "GammaConfig", "GridSpec", "InterpolantSpec", "PointSequence",
    "SignConvention", "WeightFamily", "b_j_at_zj", "blaschke_eval", "c_H", "c_HJ", "c_J_estimate",
    "c_J_given_g", "constant_one", "delta", "estimate_M", "evaluate_interpolant", "g0_eval",
    "generate_Zgamma", "m_bounds", "minimal_norm", "norm_certificate", "outer_extremal",
    "pick_matrix", "psi", "psi_at_i", "sharpness_report", "standard_jones", "tabulated",
]
