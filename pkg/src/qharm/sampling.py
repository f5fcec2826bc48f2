"""Seeded random class parameters and class members for sweeps.

Every generator takes a :class:`numpy.random.Generator`, so a sweep is fully
determined by its seed.
"""

from __future__ import annotations

import numpy as np

from .classes import ConvexWeights, ExtremalWeights, class_weights, convex_combination
from .qcore import ClassParams
from .series import AnalyticSeries, HarmonicSeries

__all__ = [
    "random_params",
    "random_extremal_weights",
    "random_margin_positive",
    "random_overbudget_restricted",
    "random_hull_member",
]


def random_params(rng: np.random.Generator, q_range=(0.05, 0.95), m_max: int = 4,
                  alpha_max: float = 0.95) -> ClassParams:
    q = rng.uniform(*q_range)
    m = int(rng.integers(0, m_max + 1))
    alpha = rng.uniform(0.0, alpha_max)
    return ClassParams(q, m, alpha)


def _sparse_complex(rng, size: int, density: float) -> np.ndarray:
    mask = rng.random(size) < density
    if not mask.any():
        mask[rng.integers(size)] = True
    mag = rng.exponential(size=size) * mask
    phase = np.exp(2j * np.pi * rng.random(size))
    return mag * phase


def random_extremal_weights(rng: np.random.Generator, support: int = 16) -> ExtremalWeights:
    """Complex weights with ``sum |x| + sum |y| = 1`` on indices up to ``support``."""
    x = np.zeros(support + 1, dtype=complex)
    y = np.zeros(support + 1, dtype=complex)
    x[2:] = _sparse_complex(rng, support - 1, rng.uniform(0.1, 1.0))
    y[1:] = _sparse_complex(rng, support, rng.uniform(0.1, 1.0)) * (rng.random() < 0.8)
    total = np.abs(x).sum() + np.abs(y).sum()
    x, y = x / total, y / total
    # renormalize once more so the float sum sits within a few ulps of 1
    total = np.abs(x).sum() + np.abs(y).sum()
    return ExtremalWeights(x / total, y / total)


def random_margin_positive(rng: np.random.Generator, p: ClassParams, support: int = 16,
                           order: int | None = None, fill=(0.0, 1.0)) -> HarmonicSeries:
    """Random complex-coefficient member with functional ``u * (1 - alpha)``, ``u`` in ``fill``.

    ``u`` is drawn strictly below 1 so the margin is positive.
    """
    order = support if order is None else order
    wa, wb = class_weights(p, order)
    a = np.zeros(order + 1, dtype=complex)
    b = np.zeros(order + 1, dtype=complex)
    a[2 : support + 1] = _sparse_complex(rng, support - 1, rng.uniform(0.1, 1.0))
    if rng.random() < 0.8:
        b[1 : support + 1] = _sparse_complex(rng, support, rng.uniform(0.1, 1.0))
    value = np.sum(wa * np.abs(a)) + np.sum(wb * np.abs(b))
    u = rng.uniform(*fill)
    u = min(u, np.nextafter(1.0, 0.0)) * (1.0 - 1e-9)
    scale = u * p.budget / value
    a *= scale
    b *= scale
    a[1] = 1.0
    return HarmonicSeries(AnalyticSeries(a), AnalyticSeries(b))


def random_overbudget_restricted(rng: np.random.Generator, p: ClassParams, support: int = 16,
                                 order: int | None = None, excess=(1.01, 2.0)) -> HarmonicSeries:
    """Restricted-sign function whose functional is ``k * (1 - alpha)``, ``k`` in ``excess``."""
    order = support if order is None else order
    wa, wb = class_weights(p, order)
    k = rng.uniform(*excess)
    a = np.zeros(order + 1)
    b = np.zeros(order + 1)
    a[2 : support + 1] = np.abs(_sparse_complex(rng, support - 1, rng.uniform(0.1, 1.0)))
    if rng.random() < 0.7:
        b[1 : support + 1] = np.abs(_sparse_complex(rng, support, rng.uniform(0.1, 1.0)))
    shares = np.concatenate([wa * a, wb * b])
    shares /= shares.sum()
    # keep b_1 strictly inside the unit disc
    cap = 0.9 * (1.0 + p.alpha) / (k * p.budget)
    j = order + 2
    if shares[j] > cap:
        shares[j] = cap
        rest = np.delete(np.arange(shares.size), j)
        shares[rest] *= (1.0 - cap) / shares[rest].sum()
    with np.errstate(divide="ignore", invalid="ignore"):
        mags = np.where(np.concatenate([wa, wb]) > 0, shares * k * p.budget / np.concatenate([wa, wb]), 0.0)
    a_mag, b_mag = mags[: order + 1], mags[order + 1 :]
    h = np.zeros(order + 1)
    h[1] = 1.0
    h[2:] = -a_mag[2:]
    return HarmonicSeries(AnalyticSeries(h), AnalyticSeries(b_mag), co_sign=p.co_sign)


def random_hull_member(rng: np.random.Generator, p: ClassParams, support: int = 16,
                       order: int | None = None, b1_zero: bool = True) -> HarmonicSeries:
    """Random convex combination of extreme points, with ``Y_1 = 0`` when ``b1_zero``."""
    X = np.zeros(support + 1)
    Y = np.zeros(support + 1)
    X[1:] = rng.exponential(size=support) * (rng.random(support) < 0.5)
    Y[1:] = rng.exponential(size=support) * (rng.random(support) < 0.5)
    if b1_zero:
        Y[1] = 0.0
    if X.sum() + Y.sum() == 0:
        X[1] = 1.0
    total = X.sum() + Y.sum()
    X, Y = X / total, Y / total
    total = X.sum() + Y.sum()
    return convex_combination(p, ConvexWeights(X / total, Y / total),
                              order=support if order is None else order)
