from fractions import Fraction

import numpy as np
import pytest


def exact_bracket(n: int, q: float) -> Fraction:
    """[n]_q in exact rational arithmetic from the binary value of q."""
    qf = Fraction(q)
    return (1 - qf**n) / (1 - qf)


@pytest.fixture
def rng():
    return np.random.default_rng(20181005)


def pointwise_salagean(s, q: float, m: int, order: int, radius: float = 0.9, samples: int = 64):
    """Coefficients of D_q^m s rebuilt from pointwise values only.

    Applies the difference operator ``F -> (F(z) - F(qz)) / (1 - q)`` ``m``
    times to the evaluation callable and recovers coefficients by a discrete
    Cauchy integral (FFT) on ``|z| = radius``.
    """
    def step(F):
        return lambda z: (F(z) - F(q * z)) / (1 - q)

    F = s
    for _ in range(m):
        F = step(F)
    z = radius * np.exp(2j * np.pi * np.arange(samples) / samples)
    c = np.fft.fft(F(z)) / samples
    return c[: order + 1] / radius ** np.arange(order + 1)


ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, passed: bool, detail: str) -> None:
    ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
