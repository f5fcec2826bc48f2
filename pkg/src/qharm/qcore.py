"""q-integers and the parameter triple (q, m, alpha) of the harmonic classes.

The q-integer ``[n]_q = 1 + q + ... + q**(n-1)`` is always evaluated in its
summation form.  The closed form ``(1 - q**n) / (1 - q)`` cancels badly as
``q -> 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "QParam",
    "ClassParams",
    "q_bracket",
    "q_bracket_pow",
    "q_brackets",
]


@dataclass(frozen=True)
class QParam:
    """The deformation parameter, restricted to the open interval (0, 1)."""

    q: float

    def __post_init__(self):
        q = float(self.q)
        if not (0.0 < q < 1.0) or math.isnan(q):
            raise ValueError(f"q must satisfy 0 < q < 1, got {self.q!r}")
        object.__setattr__(self, "q", q)

    def __float__(self) -> float:
        return self.q


@dataclass(frozen=True)
class ClassParams:
    """Parameters ``(q, m, alpha)`` of the class H_q^m(alpha).

    ``m`` is the order of the Salagean q-operator (``m = 0`` allowed) and
    ``alpha`` the order of the class, ``0 <= alpha < 1``.
    """

    q: float
    m: int = 0
    alpha: float = 0.0

    def __post_init__(self):
        q = _q_value(self.q)
        if isinstance(self.m, bool) or int(self.m) != self.m or self.m < 0:
            raise ValueError(f"m must be a nonnegative integer, got {self.m!r}")
        alpha = float(self.alpha)
        if not (0.0 <= alpha < 1.0):
            raise ValueError(f"alpha must satisfy 0 <= alpha < 1, got {self.alpha!r}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "alpha", alpha)

    @property
    def budget(self) -> float:
        """Right-hand side ``1 - alpha`` of the coefficient inequality."""
        return 1.0 - self.alpha

    @property
    def co_sign(self) -> int:
        """``(-1)**m``, the sign carried by the co-analytic part of D_q^m f."""
        return -1 if self.m % 2 else 1


def _q_value(q) -> float:
    if isinstance(q, QParam):
        return q.q
    return QParam(q).q


def q_bracket(n: int, q) -> float:
    """Return the q-integer ``[n]_q = sum(q**k for k in range(n))``.

    ``[1]_q == 1`` exactly and ``[n]_q < n`` for ``n >= 2``.
    """
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"q-integer index must be a positive integer, got {n!r}")
    q = _q_value(q)
    return math.fsum(q**k for k in range(int(n)))


def q_bracket_pow(n: int, q, m: int) -> float:
    """Return ``[n]_q ** m``; ``m = 0`` gives exactly 1."""
    if isinstance(m, bool) or int(m) != m or m < 0:
        raise ValueError(f"power must be a nonnegative integer, got {m!r}")
    base = q_bracket(n, q)
    if m == 0:
        return 1.0
    return base ** int(m)


@lru_cache(maxsize=512)
def _brackets_cached(order: int, q: float) -> np.ndarray:
    out = np.zeros(order + 1)
    for n in range(1, order + 1):
        out[n] = q_bracket(n, q)
    out.flags.writeable = False
    return out


def q_brackets(order: int, q) -> np.ndarray:
    """Array ``b`` of length ``order + 1`` with ``b[n] = [n]_q`` and ``b[0] = 0``.

    The returned array is cached and read-only.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    return _brackets_cached(int(order), _q_value(q))
