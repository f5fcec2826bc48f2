import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qharm.qcore import ClassParams, QParam, q_bracket, q_bracket_pow, q_brackets

from conftest import exact_bracket


def test_bracket_examples():
    assert q_bracket(1, 0.7) == 1.0
    assert q_bracket(2, 0.5) == 1.5
    assert q_bracket(3, 0.999999) == pytest.approx(3, abs=1e-4)


def test_bracket_pow_examples():
    assert q_bracket_pow(5, 0.3, 0) == 1.0
    assert q_bracket_pow(2, 0.5, 2) == 2.25
    assert q_bracket_pow(2, 0.999999, 3) == pytest.approx(8, abs=1e-3)


@pytest.mark.parametrize("n", [0, -1])
def test_bracket_rejects_nonpositive_index(n):
    with pytest.raises(ValueError):
        q_bracket(n, 0.5)


@pytest.mark.parametrize("q", [0.0, 1.0, -0.2, 1.5, float("nan")])
def test_qparam_rejects_boundary(q):
    with pytest.raises(ValueError):
        QParam(q)
    with pytest.raises(ValueError):
        q_bracket(2, q)


def test_class_params_validation():
    p = ClassParams(0.5, 2, 0.25)
    assert p.budget == 0.75 and p.co_sign == 1
    assert ClassParams(0.5, 3).co_sign == -1
    assert ClassParams(QParam(0.3)).q == 0.3
    for bad in [dict(q=0.5, m=-1), dict(q=0.5, m=1.5), dict(q=0.5, alpha=1.0), dict(q=0.5, alpha=-0.1)]:
        with pytest.raises(ValueError):
            ClassParams(**bad)


@settings(max_examples=300, deadline=None)
@given(n=st.integers(1, 256), q=st.sampled_from([0.1, 0.5, 0.9, 0.99, 0.9999]))
def test_summation_matches_exact_ratio_form(n, q):
    exact = float(exact_bracket(n, q))
    assert abs(q_bracket(n, q) - exact) <= 8 * math.ulp(exact)


@settings(max_examples=200, deadline=None)
@given(n=st.integers(1, 300), q=st.floats(0.01, 0.9999))
def test_monotone_in_n(n, q):
    lo, hi = q_bracket(n, q), q_bracket(n + 1, q)
    assert lo <= hi
    # strict while the increment q**n is above the rounding unit of [n+1]_q
    if q**n > 2 * math.ulp(hi):
        assert lo < hi


@pytest.mark.parametrize("q", [0.9, 0.99, 1 - 1e-6, 1 - 1e-12])
@pytest.mark.parametrize("n", [2, 3, 10, 64])
def test_limit_envelope(n, q):
    assert abs(q_bracket(n, q) - n) <= n * (n - 1) * (1 - q) / 2 + 1e-12 * n


def test_summation_form_survives_q_near_one():
    # the closed form would lose every digit here
    q = 1 - 1e-12
    assert q_bracket(5, q) == pytest.approx(float(exact_bracket(5, q)), rel=1e-15)


def test_bracket_array_matches_scalar():
    b = q_brackets(20, 0.37)
    assert b[0] == 0
    assert all(b[n] == q_bracket(n, 0.37) for n in range(1, 21))
    assert not b.flags.writeable
