"""Truncated power series on the unit disc and the q-calculus operators on them.

An :class:`AnalyticSeries` stores ``c_0, c_1, ..., c_N`` densely with the
constant slot pinned to zero.  A :class:`HarmonicSeries` is the pair
``(h, g)`` standing for ``f = h + co_sign * conj(g)``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from .qcore import q_brackets, _q_value

__all__ = [
    "DEFAULT_ORDER",
    "default_order",
    "AnalyticSeries",
    "HarmonicSeries",
    "SalageanImage",
    "GridSpec",
    "evaluate",
    "derivative",
    "q_derivative_pointwise",
    "q_derivative_coeffs",
    "hadamard",
    "salagean_kernel",
    "salagean_q",
    "salagean_q_harmonic",
]

DEFAULT_ORDER = 64
ORDER_ENV_VAR = "QHARM_TRUNC_ORDER"


def default_order() -> int:
    """Truncation order used when none is given; ``$QHARM_TRUNC_ORDER`` overrides 64."""
    raw = os.environ.get(ORDER_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_ORDER
    try:
        order = int(raw)
    except ValueError:
        raise ValueError(f"{ORDER_ENV_VAR} must be a positive integer, got {raw!r}") from None
    if order < 1:
        raise ValueError(f"{ORDER_ENV_VAR} must be a positive integer, got {raw!r}")
    return order


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class AnalyticSeries:
    """Coefficients ``coeffs[n]`` of ``z**n`` for ``n = 0..N``, with ``coeffs[0] == 0``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).ravel()
        if c.size < 2:
            raise ValueError("truncation order must be at least 1")
        if c[0] != 0:
            raise ValueError("constant term must be zero")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coeffs", _frozen(c))

    @classmethod
    def from_coeffs(cls, c, order: int | None = None) -> "AnalyticSeries":
        """Build from ``c_1, ..., c_k``, zero-padded up to ``order`` if given."""
        c = np.asarray(c, dtype=complex).ravel()
        n = c.size if order is None else order
        if c.size > n:
            raise ValueError(f"{c.size} coefficients exceed truncation order {n}")
        out = np.zeros(n + 1, dtype=complex)
        out[1 : c.size + 1] = c
        return cls(out)

    @classmethod
    def zero(cls, order: int) -> "AnalyticSeries":
        return cls(np.zeros(order + 1, dtype=complex))

    @classmethod
    def monomial(cls, n: int, order: int, c=1.0) -> "AnalyticSeries":
        if not 1 <= n <= order:
            raise ValueError(f"power {n} outside 1..{order}")
        out = np.zeros(order + 1, dtype=complex)
        out[n] = c
        return cls(out)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __eq__(self, other):
        if not isinstance(other, AnalyticSeries):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def __call__(self, z):
        return P.polyval(np.asarray(z, dtype=complex), self.coeffs)

    def __add__(self, other: "AnalyticSeries") -> "AnalyticSeries":
        a, b = _pad_pair(self.coeffs, other.coeffs)
        return AnalyticSeries(a + b)

    def __sub__(self, other: "AnalyticSeries") -> "AnalyticSeries":
        a, b = _pad_pair(self.coeffs, other.coeffs)
        return AnalyticSeries(a - b)

    def __mul__(self, scalar) -> "AnalyticSeries":
        return AnalyticSeries(self.coeffs * complex(scalar))

    __rmul__ = __mul__

    def padded(self, order: int) -> "AnalyticSeries":
        if order < self.order:
            raise ValueError("cannot pad to a smaller order")
        if order == self.order:
            return self
        out = np.zeros(order + 1, dtype=complex)
        out[: self.coeffs.size] = self.coeffs
        return AnalyticSeries(out)

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)


def _pad_pair(a: np.ndarray, b: np.ndarray):
    n = max(a.size, b.size)
    if a.size < n:
        a = np.concatenate([a, np.zeros(n - a.size, dtype=complex)])
    if b.size < n:
        b = np.concatenate([b, np.zeros(n - b.size, dtype=complex)])
    return a, b


@dataclass(frozen=True, eq=False)
class HarmonicSeries:
    """Harmonic map ``f = h + co_sign * conj(g)`` on the unit disc.

    ``h`` is normalized with ``h[1] == 1`` and ``|g[1]| < 1``.  ``co_sign`` is
    +1 for the plain form; the restricted classes built by
    :mod:`qharm.classes` store ``(-1)**m`` here so that ``g`` keeps
    nonnegative coefficients.  ``hull_boundary`` admits ``|g[1]| == 1``, which
    only occurs on the boundary of the closed convex hull.
    """

    h: AnalyticSeries
    g: AnalyticSeries
    co_sign: int = 1
    hull_boundary: bool = False

    def __post_init__(self):
        h, g = self.h, self.g
        if not isinstance(h, AnalyticSeries):
            h = AnalyticSeries(h)
        if not isinstance(g, AnalyticSeries):
            g = AnalyticSeries(g)
        n = max(h.order, g.order)
        h, g = h.padded(n), g.padded(n)
        if h.coeffs[1] != 1:
            raise ValueError(f"normalization h'(0) = 1 violated: a_1 = {h.coeffs[1]}")
        b1 = abs(g.coeffs[1])
        if b1 > 1 or (b1 == 1 and not self.hull_boundary):
            raise ValueError(f"|b_1| < 1 violated: |b_1| = {b1}")
        if self.co_sign not in (1, -1):
            raise ValueError("co_sign must be +1 or -1")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "g", g)

    @classmethod
    def from_coeffs(cls, a, b=None, co_sign: int = 1, order: int | None = None,
                    hull_boundary: bool = False) -> "HarmonicSeries":
        """Build from ``a_1..a_k`` (``a_1`` must be 1) and optional ``b_1..b_j``."""
        a = np.asarray(a, dtype=complex).ravel()
        b = np.zeros(0) if b is None else np.asarray(b, dtype=complex).ravel()
        if order is None:
            order = max(a.size, b.size, 1)
        return cls(AnalyticSeries.from_coeffs(a, order), AnalyticSeries.from_coeffs(b, order),
                   co_sign=co_sign, hull_boundary=hull_boundary)

    @classmethod
    def identity(cls, order: int | None = None) -> "HarmonicSeries":
        order = default_order() if order is None else order
        return cls(AnalyticSeries.monomial(1, order), AnalyticSeries.zero(order))

    @property
    def order(self) -> int:
        return self.h.order

    @property
    def a(self) -> np.ndarray:
        return self.h.coeffs

    @property
    def b(self) -> np.ndarray:
        return self.g.coeffs

    def evaluate(self, z):
        return evaluate(self, z)

    def __call__(self, z):
        return evaluate(self, z)

    def __eq__(self, other):
        if not isinstance(other, HarmonicSeries):
            return NotImplemented
        return (self.h == other.h and self.g == other.g and self.co_sign == other.co_sign
                and self.hull_boundary == other.hull_boundary)

    def __hash__(self):
        return hash((self.h, self.g, self.co_sign, self.hull_boundary))


def _check_in_disc(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if np.any(~np.isfinite(z)) or np.any(np.abs(z) >= 1):
        raise ValueError("evaluation point(s) must lie in the open unit disc |z| < 1")
    return z


def _eval_unchecked(f: HarmonicSeries, z: np.ndarray):
    return f.h(z) + f.co_sign * np.conj(f.g(z))


def evaluate(f: HarmonicSeries, z):
    """``h(z) + co_sign * conj(g(z))`` for ``|z| < 1`` (scalar or array)."""
    z = _check_in_disc(z)
    out = _eval_unchecked(f, z)
    return out[()] if out.ndim == 0 else out


def derivative(s: AnalyticSeries) -> np.ndarray:
    """Coefficients of ``s'``: entry ``k`` is ``(k + 1) * c_{k+1}``, length ``N``."""
    return P.polyder(s.coeffs)


def q_derivative_pointwise(s: AnalyticSeries, q, z):
    """Jackson difference quotient ``(s(z) - s(qz)) / ((1 - q) z)``.

    At ``z = 0`` the removable value ``c_1`` is returned; so it is for
    ``|z| < 1e-100``, where the two agree to double precision and the quotient
    itself would underflow.
    """
    q = _q_value(q)
    z = _check_in_disc(z)
    zero = np.abs(z) < 1e-100
    safe = np.where(zero, 1.0, z)
    out = (s(safe) - s(q * safe)) / ((1.0 - q) * safe)
    out = np.where(zero, s.coeffs[1], out)
    return out[()] if out.ndim == 0 else out


def q_derivative_coeffs(s: AnalyticSeries, q) -> np.ndarray:
    """Coefficients of ``d_q s``: entry ``k`` is ``[k+1]_q * c_{k+1}``."""
    br = q_brackets(s.order, q)
    return br[1:] * s.coeffs[1:]


def hadamard(s1: AnalyticSeries, s2: AnalyticSeries) -> AnalyticSeries:
    """Coefficient-wise product; the shorter series is zero-padded."""
    a, b = _pad_pair(s1.coeffs, s2.coeffs)
    return AnalyticSeries(a * b)


def salagean_kernel(order: int, q, m: int) -> AnalyticSeries:
    """``z + sum [n]_q**m z**n``, the convolution kernel of D_q^m."""
    return AnalyticSeries(_kernel_weights(order, q, m).astype(complex))


def _kernel_weights(order: int, q, m: int) -> np.ndarray:
    if m < 0 or int(m) != m:
        raise ValueError(f"operator order must be a nonnegative integer, got {m!r}")
    br = q_brackets(order, q)
    w = br ** int(m)
    w[0] = 0.0
    return w


def salagean_q(s: AnalyticSeries, q, m: int) -> AnalyticSeries:
    """D_q^m s: the ``z**n`` coefficient is multiplied by ``[n]_q**m``.

    ``m = 0`` returns ``s`` itself.
    """
    if m == 0:
        _q_value(q)
        return s
    return hadamard(s, salagean_kernel(s.order, q, m))


@dataclass(frozen=True, eq=False)
class SalageanImage:
    """``D_q^m f = h + sign * conj(g)`` with ``h = D_q^m f.h`` and ``g = D_q^m f.g``.

    ``sign`` is ``(-1)**m`` times the ``co_sign`` of the source function; the
    co-analytic coefficients themselves are never sign-flipped.
    """

    h: AnalyticSeries
    g: AnalyticSeries
    sign: int = field(default=1)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = self.h(z) + self.sign * np.conj(self.g(z))
        return out[()] if out.ndim == 0 else out


def salagean_q_harmonic(f: HarmonicSeries, q, m: int) -> SalageanImage:
    """D_q^m f = D_q^m h + (-1)**m conj(D_q^m g)."""
    sign = (-1 if m % 2 else 1) * f.co_sign
    return SalageanImage(salagean_q(f.h, q, m), salagean_q(f.g, q, m), sign)


@dataclass(frozen=True)
class GridSpec:
    """Polar sample grid ``z = r * exp(2j*pi*k/angles_per_ring)``.

    Angle ``k = 0`` lies on the positive real axis; an even ring size also
    hits the negative real axis.
    """

    radii: tuple
    angles_per_ring: int = 128
    max_radius: float = 0.999

    def __post_init__(self):
        radii = tuple(float(r) for r in np.atleast_1d(self.radii))
        if not radii:
            raise ValueError("grid needs at least one radius")
        if not (0 < self.max_radius < 1):
            raise ValueError("max_radius must lie in (0, 1)")
        if any(not (0 < r <= self.max_radius) for r in radii):
            raise ValueError("every radius must satisfy 0 < r <= max_radius < 1")
        if int(self.angles_per_ring) < 1:
            raise ValueError("angles_per_ring must be positive")
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "angles_per_ring", int(self.angles_per_ring))
        object.__setattr__(self, "max_radius", float(self.max_radius))

    @classmethod
    def geometric(cls, n_radii: int = 32, angles_per_ring: int = 128,
                  min_radius: float = 0.05, max_radius: float = 0.999) -> "GridSpec":
        """Radii spaced geometrically in the distance ``1 - r`` to the circle.

        Rings crowd towards ``max_radius``, where the class inequalities are
        tight.
        """
        if n_radii == 1:
            return cls((max_radius,), angles_per_ring, max_radius)
        gaps = np.geomspace(1.0 - min_radius, 1.0 - max_radius, n_radii)
        radii = np.clip(1.0 - gaps, min_radius, max_radius)
        radii[-1] = max_radius
        return cls(tuple(radii), angles_per_ring, max_radius)

    @property
    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.angles_per_ring) / self.angles_per_ring

    def points(self) -> np.ndarray:
        """Complex array of shape ``(len(radii), angles_per_ring)``."""
        r = np.asarray(self.radii)[:, None]
        return r * np.exp(1j * self.angles)[None, :]

    @property
    def size(self) -> int:
        return len(self.radii) * self.angles_per_ring

    def to_dict(self) -> dict:
        return {
            "radii": list(self.radii),
            "angles_per_ring": self.angles_per_ring,
            "max_radius": self.max_radius,
        }
