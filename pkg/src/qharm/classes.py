"""Coefficient classes H_q^m(alpha) and their restricted subclass.

The coefficient functional

    sum_{n>=2} [n]^m ([n] - alpha) |a_n| + sum_{n>=1} [n]^m ([n] + alpha) |b_n|

against the budget ``1 - alpha`` decides membership: it is a sufficient test
in general, and an exact one for the restricted family

    h(z) = z - sum a_n z^n,  g(z) = sum b_n z^n,  a_n, b_n >= 0,

whose members are stored as ``f = h + (-1)**m conj(g)`` (see
:class:`qharm.series.HarmonicSeries`).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .qcore import ClassParams, q_brackets
from .series import AnalyticSeries, HarmonicSeries, default_order

__all__ = [
    "Verdict",
    "MembershipReport",
    "NotRestrictedError",
    "ExtremalWeights",
    "ConvexWeights",
    "class_weights",
    "coefficient_functional",
    "is_member_restricted",
    "restricted_sign_violation",
    "extremal_function",
    "extreme_point_h",
    "extreme_point_g",
    "convex_combination",
    "restricted_member",
]

WEIGHT_SUM_TOL = 1e-12


class Verdict(str, enum.Enum):
    MEMBER_SUFFICIENT = "member-sufficient"
    NOT_CERTIFIED = "not-certified"
    MEMBER_IFF = "member-iff"
    NON_MEMBER = "non-member"


class NotRestrictedError(ValueError):
    """Input lacks the restricted sign pattern; only the sufficiency test applies."""


@dataclass(frozen=True)
class MembershipReport:
    functional_value: float
    budget: float
    margin: float
    verdict: Verdict

    @property
    def is_member(self) -> bool:
        return self.verdict in (Verdict.MEMBER_SUFFICIENT, Verdict.MEMBER_IFF)

    def to_dict(self) -> dict:
        return {
            "functional_value": self.functional_value,
            "budget": self.budget,
            "margin": self.margin,
            "verdict": self.verdict.value,
        }


def class_weights(p: ClassParams, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Weights ``(wa, wb)`` of the coefficient functional, indexed by ``n``.

    ``wa[n] = [n]^m ([n] - alpha)`` for ``n >= 2`` (``wa[0] = wa[1] = 0``) and
    ``wb[n] = [n]^m ([n] + alpha)`` for ``n >= 1``.
    """
    br = q_brackets(order, p.q)
    pw = br**p.m
    wa = pw * (br - p.alpha)
    wb = pw * (br + p.alpha)
    wa[:2] = 0.0
    wb[0] = 0.0
    return wa, wb


def _functional(f: HarmonicSeries, p: ClassParams) -> float:
    wa, wb = class_weights(p, f.order)
    terms = np.concatenate([wa[2:] * np.abs(f.a[2:]), wb[1:] * np.abs(f.b[1:])])
    return float(np.sum(terms))


def coefficient_functional(f: HarmonicSeries, p: ClassParams) -> MembershipReport:
    """Evaluate the coefficient functional; a nonnegative margin certifies membership."""
    value = _functional(f, p)
    budget = p.budget
    margin = budget - value
    verdict = Verdict.MEMBER_SUFFICIENT if margin >= 0 else Verdict.NOT_CERTIFIED
    return MembershipReport(value, budget, margin, verdict)


def restricted_sign_violation(f: HarmonicSeries, p: ClassParams) -> str | None:
    """Describe why ``f`` is outside the restricted family, or ``None`` if it is inside."""
    tail = f.a[2:]
    if np.any(tail.imag != 0) or np.any(tail.real > 0):
        return "analytic tail must be -a_n z^n with real a_n >= 0"
    b = f.b[1:]
    if np.any(b.imag != 0) or np.any(b.real < 0):
        return "co-analytic coefficients b_n must be real and >= 0"
    if not f.g.is_zero() and f.co_sign != p.co_sign:
        return f"co-analytic part must carry the sign (-1)^m = {p.co_sign:+d}"
    return None


def is_member_restricted(f: HarmonicSeries, p: ClassParams) -> MembershipReport:
    """Exact membership test for the restricted family.

    Raises :class:`NotRestrictedError` when the sign pattern does not hold.
    """
    why = restricted_sign_violation(f, p)
    if why is not None:
        raise NotRestrictedError(f"not in the restricted family ({why}); use the sufficiency test")
    value = _functional(f, p)
    margin = p.budget - value
    verdict = Verdict.MEMBER_IFF if margin >= 0 else Verdict.NON_MEMBER
    return MembershipReport(value, p.budget, margin, verdict)


def _dense(values, first: int, name: str) -> np.ndarray:
    """Normalize a weight sequence to a dense array indexed by ``n``.

    Accepts a mapping ``{n: value}`` or a sequence whose first entry is the
    weight of index ``first``.
    """
    if isinstance(values, dict):
        items = {int(k): v for k, v in values.items()}
        if items and min(items) < first:
            raise ValueError(f"{name} indices start at {first}")
        top = max(items, default=first - 1)
        out = np.zeros(top + 1, dtype=complex)
        for k, v in items.items():
            out[k] = v
        return out
    arr = np.asarray(values if values is not None else [], dtype=complex).ravel()
    out = np.zeros(arr.size + first, dtype=complex)
    out[first:] = arr
    return out


@dataclass(frozen=True, eq=False)
class ExtremalWeights:
    """Complex weights ``x_n`` (``n >= 2``) and ``y_n`` (``n >= 1``), dense by index.

    ``sum |x_n| + sum |y_n|`` must equal 1.
    """

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=complex).ravel()
        y = np.asarray(self.y, dtype=complex).ravel()
        if x.size and np.any(x[: min(2, x.size)] != 0):
            raise ValueError("x_n is only defined for n >= 2")
        if y.size and y[0] != 0:
            raise ValueError("y_n is only defined for n >= 1")
        total = float(np.sum(np.abs(x)) + np.sum(np.abs(y)))
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"sum |x_n| + sum |y_n| must equal 1, got {total!r}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def of(cls, x=None, y=None) -> "ExtremalWeights":
        """From ``{n: x_n}``/``{n: y_n}`` mappings or sequences ``x_2, ...`` and ``y_1, ...``."""
        return cls(_dense(x, 2, "x"), _dense(y, 1, "y"))

    @property
    def support(self) -> int:
        nz = np.flatnonzero(np.concatenate([np.abs(self.x), [0.0]]))
        ny = np.flatnonzero(np.concatenate([np.abs(self.y), [0.0]]))
        return int(max(nz.max(initial=1), ny.max(initial=1)))


@dataclass(frozen=True, eq=False)
class ConvexWeights:
    """Nonnegative weights ``X_n``, ``Y_n`` (``n >= 1``) summing to 1, dense by index."""

    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float).ravel()
        Y = np.asarray(self.Y, dtype=float).ravel()
        if (X.size and X[0] != 0) or (Y.size and Y[0] != 0):
            raise ValueError("X_n and Y_n are indexed from n = 1")
        if np.any(X < 0) or np.any(Y < 0):
            raise ValueError("X_n and Y_n must be nonnegative")
        total = float(X.sum() + Y.sum())
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"sum (X_n + Y_n) must equal 1, got {total!r}")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    @classmethod
    def of(cls, X=None, Y=None) -> "ConvexWeights":
        X, Y = _dense(X, 1, "X"), _dense(Y, 1, "Y")
        if np.any(X.imag) or np.any(Y.imag):
            raise ValueError("convex weights must be real")
        return cls(X.real, Y.real)

    @property
    def support(self) -> int:
        return int(max(self.X.size, self.Y.size, 2) - 1)


def _resolve_order(order, support: int) -> int:
    order = default_order() if order is None else int(order)
    if support > order:
        raise ValueError(f"index {support} exceeds truncation order {order}")
    return order


def extremal_function(p: ClassParams, w: ExtremalWeights, order: int | None = None) -> HarmonicSeries:
    """Member with ``a_n = (1-alpha) x_n / wa[n]`` and ``b_n = (1-alpha) y_n / wb[n]``.

    Its coefficient functional equals the budget exactly (margin zero).
    """
    order = _resolve_order(order, w.support)
    wa, wb = class_weights(p, order)
    a = np.zeros(order + 1, dtype=complex)
    b = np.zeros(order + 1, dtype=complex)
    nx, ny = min(w.x.size, order + 1), min(w.y.size, order + 1)
    a[2:nx] = p.budget * w.x[2:nx] / wa[2:nx]
    b[1:ny] = p.budget * w.y[1:ny] / wb[1:ny]
    a[1] = 1.0
    return HarmonicSeries(AnalyticSeries(a), AnalyticSeries(b),
                          hull_boundary=bool(abs(b[1]) >= 1))


def _tail_coefficient(p: ClassParams, n: int, analytic: bool, order: int) -> float:
    wa, wb = class_weights(p, order)
    return p.budget / (wa[n] if analytic else wb[n])


def extreme_point_h(p: ClassParams, n: int, order: int | None = None) -> HarmonicSeries:
    """``h_n(z) = z - (1-alpha) / ([n]^m ([n]-alpha)) z**n``; ``n = 1`` is the identity."""
    if n < 1:
        raise ValueError("extreme point index must be >= 1")
    order = _resolve_order(order, n)
    if n == 1:
        return HarmonicSeries.identity(order)
    a = np.zeros(order + 1)
    a[1] = 1.0
    a[n] = -_tail_coefficient(p, n, True, order)
    return HarmonicSeries(AnalyticSeries(a), AnalyticSeries.zero(order), co_sign=p.co_sign)


def extreme_point_g(p: ClassParams, n: int, order: int | None = None) -> HarmonicSeries:
    """``g_n = z + (-1)**m conj(c z**n)`` with ``c = (1-alpha) / ([n]^m ([n]+alpha))``.

    For ``alpha = 0, n = 1`` the coefficient is 1 and the result is flagged
    ``hull_boundary``: it lies in the closed hull but is not sense-preserving.
    """
    if n < 1:
        raise ValueError("extreme point index must be >= 1")
    order = _resolve_order(order, n)
    c = _tail_coefficient(p, n, False, order)
    return HarmonicSeries(AnalyticSeries.monomial(1, order),
                          AnalyticSeries.monomial(n, order, c),
                          co_sign=p.co_sign, hull_boundary=bool(c >= 1))


def convex_combination(p: ClassParams, w: ConvexWeights, order: int | None = None) -> HarmonicSeries:
    """``sum X_n h_n + Y_n g_n`` over the extreme points.

    The coefficient functional of the result is ``(1-alpha)(1 - X_1)``.
    """
    order = _resolve_order(order, w.support)
    wa, wb = class_weights(p, order)
    a = np.zeros(order + 1)
    b = np.zeros(order + 1)
    nx, ny = min(w.X.size, order + 1), min(w.Y.size, order + 1)
    a[2:nx] = -p.budget * w.X[2:nx] / wa[2:nx]
    b[1:ny] = p.budget * w.Y[1:ny] / wb[1:ny]
    a[1] = 1.0
    return HarmonicSeries(AnalyticSeries(a), AnalyticSeries(b), co_sign=p.co_sign,
                          hull_boundary=bool(b[1] >= 1))


def restricted_member(p: ClassParams, a_tail, b, order: int | None = None) -> HarmonicSeries:
    """Restricted-family function from magnitudes ``a_2, a_3, ...`` and ``b_1, b_2, ...``.

    Builds ``z - sum a_n z^n + (-1)**m conj(sum b_n z^n)``; no budget check.
    """
    a_tail = np.asarray(a_tail, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if np.any(a_tail < 0) or np.any(b < 0):
        raise ValueError("restricted magnitudes must be nonnegative")
    order = _resolve_order(order, max(a_tail.size + 1, b.size, 1))
    a = np.zeros(order + 1)
    a[1] = 1.0
    a[2 : 2 + a_tail.size] = -a_tail
    bb = np.zeros(order + 1)
    bb[1 : 1 + b.size] = b
    return HarmonicSeries(AnalyticSeries(a), AnalyticSeries(bb), co_sign=p.co_sign)
