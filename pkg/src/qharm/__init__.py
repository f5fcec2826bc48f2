"""Salagean q-differential operators on harmonic mappings of the unit disc.

Submodules: :mod:`~qharm.qcore` (q-integers, parameters), :mod:`~qharm.series`
(truncated series and operators), :mod:`~qharm.classes` (coefficient classes),
:mod:`~qharm.bounds` (distortion and covering), :mod:`~qharm.verify`
(grid verifiers) and :mod:`~qharm.cli`.
"""

from .bounds import covering_radius, distortion_bounds
from .classes import (ConvexWeights, ExtremalWeights, MembershipReport, NotRestrictedError, Verdict,
                      coefficient_functional, convex_combination, extremal_function,
                      extreme_point_g, extreme_point_h, is_member_restricted,
                      restricted_member)
from .render import render_svg
from .qcore import ClassParams, QParam, q_bracket, q_bracket_pow
from .series import (AnalyticSeries, GridSpec, HarmonicSeries, derivative, evaluate, hadamard,
                     q_derivative_coeffs, q_derivative_pointwise, salagean_q, salagean_q_harmonic)

__version__ = "0.1.0"
