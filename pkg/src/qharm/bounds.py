"""Distortion and covering bounds for the restricted class.

Both formulas are implemented exactly as stated for the class.  The
``variant=True`` switch replaces the ``b1`` factor ``(1+alpha)/([2]-alpha)``
of the distortion bracket with ``(1+alpha)/([2]+alpha)``, the form the
co-analytic weights of the coefficient functional would suggest; it exists
only for side-by-side comparison.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .qcore import ClassParams, q_bracket

__all__ = [
    "DistortionBound",
    "distortion_bracket",
    "distortion_bounds",
    "covering_radius",
    "covering_limit_from_distortion",
    "bounds_table",
    "bounds_csv",
    "CSV_COLUMNS",
]

CSV_COLUMNS = ("q", "m", "alpha", "b1", "r", "lower", "upper", "covering_radius")


@dataclass(frozen=True)
class DistortionBound:
    r: float
    lower: float
    upper: float
    b1: float
    variant: bool = False

    @property
    def vacuous_lower(self) -> bool:
        """True when the lower bound is negative and says nothing beyond ``|f| >= 0``."""
        return self.lower < 0


def _check_b1(b1: float) -> float:
    b1 = float(b1)
    if not (0.0 <= b1 < 1.0):
        raise ValueError(f"b1 must satisfy 0 <= b1 < 1, got {b1!r}")
    return b1


def distortion_bracket(p: ClassParams, b1: float, variant: bool = False) -> float:
    """Coefficient of ``r**2`` in both distortion bounds."""
    b1 = _check_b1(b1)
    two = q_bracket(2, p.q)
    b1_den = two + p.alpha if variant else two - p.alpha
    return ((1 - p.alpha) / (two - p.alpha) - (1 + p.alpha) / b1_den * b1) / two**p.m


def distortion_bounds(p: ClassParams, b1: float, r: float, variant: bool = False) -> DistortionBound:
    """Bounds ``lower <= |f(z)| <= upper`` on ``|z| = r`` for restricted members with ``b_1 = b1``.

    A negative lower bound is returned as is; see :attr:`DistortionBound.vacuous_lower`.
    """
    r = float(r)
    if not (0.0 < r < 1.0):
        raise ValueError(f"r must satisfy 0 < r < 1, got {r!r}")
    c = distortion_bracket(p, b1, variant)
    return DistortionBound(r, (1 - b1) * r - c * r * r, (1 + b1) * r + c * r * r, float(b1), variant)


def covering_radius(p: ClassParams, b1: float) -> float:
    """Radius of the disc about 0 contained in ``f(D)`` for every restricted member."""
    b1 = _check_b1(b1)
    two = q_bracket(2, p.q)
    two_m = two**p.m
    lead = (two ** (p.m + 1) - 1 - (two_m - 1) * p.alpha) / (two_m * (two - p.alpha))
    return lead * (1 - (two - p.alpha) / (two + p.alpha) * b1)


def covering_limit_from_distortion(p: ClassParams, b1: float, variant: bool = False) -> float:
    """``lim_{r->1}`` of the distortion lower bound: ``1 - b1 - bracket``."""
    return (1 - b1) - distortion_bracket(p, b1, variant)


def bounds_table(params, b1_values, radii, variant: bool = False) -> list[dict]:
    """One row per ``(p, b1, r)`` with the columns of :data:`CSV_COLUMNS`."""
    rows = []
    for p in params:
        for b1 in b1_values:
            cov = covering_radius(p, b1)
            for r in radii:
                d = distortion_bounds(p, b1, r, variant)
                rows.append(dict(q=p.q, m=p.m, alpha=p.alpha, b1=float(b1), r=float(r),
                                 lower=d.lower, upper=d.upper, covering_radius=cov))
    return rows


def _fmt(v) -> str:
    if isinstance(v, float):
        if math.isfinite(v):
            return format(v, ".17g")
        return str(v)
    return str(v)


def bounds_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow([_fmt(row[c]) for c in CSV_COLUMNS])
    return buf.getvalue()
