import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qharm.bounds import (bounds_csv, bounds_table, covering_limit_from_distortion,
                          covering_radius, distortion_bounds, distortion_bracket)
from qharm.qcore import ClassParams

Q1 = 1 - 1e-6


def test_distortion_examples():
    d = distortion_bounds(ClassParams(0.999999, 0, 0), 0, 0.5)
    assert d.upper == pytest.approx(0.625, abs=1e-6) and d.lower == pytest.approx(0.375, abs=1e-6)
    d = distortion_bounds(ClassParams(0.5, 0, 0), 0, 0.5)
    assert d.upper == pytest.approx(0.5 + 2 / 3 * 0.25, abs=1e-15)
    assert d.lower == pytest.approx(0.5 - 2 / 3 * 0.25, abs=1e-15)


@pytest.mark.parametrize("alpha", [0.0, 0.3, 0.6])
def test_bracket_vanishes_linear_bounds(alpha):
    p = ClassParams(0.4, 2, alpha)
    b1 = (1 - alpha) / (1 + alpha)
    if b1 >= 1:
        pytest.skip("b1 = 1 is outside the domain")
    d = distortion_bounds(p, b1, 0.7)
    assert d.upper == pytest.approx((1 + b1) * 0.7, abs=1e-15)
    assert d.lower == pytest.approx((1 - b1) * 0.7, abs=1e-15)


def test_printed_form_not_variant():
    p = ClassParams(0.5, 1, 0.5)
    two = 1.5
    printed = ((1 - 0.5) / (two - 0.5) - (1 + 0.5) / (two - 0.5) * 0.2) / two
    variant = ((1 - 0.5) / (two - 0.5) - (1 + 0.5) / (two + 0.5) * 0.2) / two
    assert distortion_bracket(p, 0.2) == pytest.approx(printed, abs=1e-15)
    assert distortion_bracket(p, 0.2, variant=True) == pytest.approx(variant, abs=1e-15)


@settings(max_examples=300, deadline=None)
@given(q=st.floats(0.01, 0.99), m=st.integers(0, 5), alpha=st.floats(0, 0.99),
       b1=st.floats(0, 0.999), r=st.floats(0.001, 0.999), variant=st.booleans())
def test_lower_bound_nonnegative_on_domain(q, m, alpha, b1, r, variant):
    # lower = r((1 - c r) - b1 (1 - d r)) with c <= d, so it never goes below 0
    d = distortion_bounds(ClassParams(q, m, alpha), b1, r, variant=variant)
    assert d.lower >= -1e-15
    assert d.vacuous_lower == (d.lower < 0)


@pytest.mark.parametrize("b1, r", [(-0.1, 0.5), (1.0, 0.5), (0.2, 0.0), (0.2, 1.0)])
def test_distortion_domain(b1, r):
    with pytest.raises(ValueError):
        distortion_bounds(ClassParams(0.5), b1, r)


def test_covering_examples():
    assert covering_radius(ClassParams(0.999999, 0, 0), 0) == pytest.approx(0.5, abs=1e-6)
    assert covering_radius(ClassParams(0.5, 0, 0), 0) == pytest.approx(1 / 3, abs=1e-15)
    with pytest.raises(ValueError):
        covering_radius(ClassParams(0.5), 1.0)


@settings(max_examples=200, deadline=None)
@given(q=st.floats(0.02, 0.98), m=st.integers(0, 6), alpha=st.floats(0, 0.99))
def test_covering_b1_zero_equals_lower_limit(q, m, alpha):
    p = ClassParams(q, m, alpha)
    identity_form = 1 - (1 - alpha) / ((1 + q) ** m * (1 + q - alpha))
    assert covering_radius(p, 0) == pytest.approx(identity_form, abs=1e-12)
    at_edge = distortion_bounds(p, 0, 1 - 1e-9).lower
    assert abs(covering_radius(p, 0) - at_edge) <= 1e-6
    assert covering_radius(p, 0) == pytest.approx(covering_limit_from_distortion(p, 0), abs=1e-14)


@pytest.mark.parametrize("q", [0.1, 0.5, 0.9])
@pytest.mark.parametrize("alpha", [0.0, 0.5])
def test_covering_increases_with_m(q, alpha):
    radii = [covering_radius(ClassParams(q, m, alpha), 0) for m in range(7)]
    assert np.all(np.diff(radii) > 0)


@pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5, 0.75])
@pytest.mark.parametrize("b1", [0.0, 0.1])
def test_reduction_to_classical_values(alpha, b1):
    p = ClassParams(Q1, 0, alpha)
    r = 0.6
    bracket = (1 - alpha) / (2 - alpha) - (1 + alpha) / (2 - alpha) * b1
    d = distortion_bounds(p, b1, r)
    assert d.upper == pytest.approx((1 + b1) * r + bracket * r * r, abs=1e-4)
    assert d.lower == pytest.approx((1 - b1) * r - bracket * r * r, abs=1e-4)
    classical_cover = 1 / (2 - alpha) * (1 - (2 - alpha) / (2 + alpha) * b1)
    assert covering_radius(p, b1) == pytest.approx(classical_cover, abs=1e-4)


def test_lower_never_exceeds_upper():
    for q in (0.1, 0.5, 0.9):
        for m in (0, 2):
            for alpha in (0, 0.5, 0.9):
                for b1 in (0, 0.3, 0.9):
                    if (1 + alpha) * b1 > 1 - alpha:
                        continue    # no class member has this b1
                    for r in (0.1, 0.5, 0.99):
                        d = distortion_bounds(ClassParams(q, m, alpha), b1, r)
                        assert d.lower <= d.upper


def test_csv_table():
    rows = bounds_table([ClassParams(0.5, 1, 0.25)], [0.0, 0.1], [0.5])
    text = bounds_csv(rows)
    lines = text.strip().split("\n")
    assert lines[0] == "q,m,alpha,b1,r,lower,upper,covering_radius"
    assert len(lines) == 3
    first = lines[1].split(",")
    assert float(first[6]) == rows[0]["upper"]
