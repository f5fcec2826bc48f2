"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""

import io
import math
from contextlib import redirect_stdout

import numpy as np
import pytest

from qharm import bounds
from qharm.classes import (coefficient_functional, extremal_function, extreme_point_g,
                           extreme_point_h, is_member_restricted)
from qharm.cli import main
from qharm.qcore import ClassParams
from qharm.sampling import (random_extremal_weights, random_hull_member, random_margin_positive,
                            random_overbudget_restricted, random_params)
from qharm.series import AnalyticSeries, GridSpec, salagean_q
from qharm.verify import (b1_discrepancy_report, default_grid, injectivity_grid,
                          necessity_witness, ratio_real_part, truncation_slack, verify_covering,
                          verify_distortion, verify_injectivity_sampled, verify_ratio_condition,
                          verify_reduction_m0, verify_reduction_q1, verify_sense_preserving)

from conftest import pointwise_salagean, record_criterion

RADII = (0.25, 0.5, 0.9)


def test_criterion_1_operator_oracle():
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(200):
        order = int(rng.integers(1, 17))
        q = rng.uniform(0.05, 0.95)
        m = int(rng.integers(0, 5))
        s = AnalyticSeries.from_coeffs(rng.normal(size=order) + 1j * rng.normal(size=order))
        got = salagean_q(s, q, m).coeffs
        ref = pointwise_salagean(s, q, m, order)
        worst = max(worst, np.max(np.abs(got - ref)) / np.max(np.abs(ref)))
    passed = worst <= 1e-10
    record_criterion(1, passed, f"200 series, worst relative error {worst:.3g} (limit 1e-10)")
    assert passed


def test_criterion_2_sharpness():
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(1000):
        p = random_params(rng)
        f = extremal_function(p, random_extremal_weights(rng), order=16)
        worst = max(worst, abs(coefficient_functional(f, p).margin))
    passed = worst <= 1e-10
    record_criterion(2, passed, f"1000 extremal functions, worst |margin| {worst:.3g} (limit 1e-10)")
    assert passed


def test_criterion_3_soundness_sweep():
    rng = np.random.default_rng(3)
    grid, inj = default_grid(), injectivity_grid()
    fails = {"ratio": 0, "sense": 0, "injectivity": 0}
    first = None
    for i in range(500):
        p = random_params(rng)
        f = random_margin_positive(rng, p)
        checks = {"ratio": verify_ratio_condition(f, p, grid),
                  "sense": verify_sense_preserving(f, grid),
                  "injectivity": verify_injectivity_sampled(f, inj)}
        for name, rep in checks.items():
            if not rep.passed:
                fails[name] += 1
                if first is None:
                    first = (i, name, p, rep.witness)
    passed = not any(fails.values())
    detail = (f"500 margin-positive members; failures ratio={fails['ratio']} "
              f"sense={fails['sense']} injectivity={fails['injectivity']}")
    if first is not None:
        i, name, p, w = first
        detail += f"; first: member {i} {name} at q={p.q:.3f} m={p.m} alpha={p.alpha:.3f} z={w:.4g}"
    record_criterion(3, passed, detail)
    assert passed, detail


def test_criterion_4_necessity_sweep():
    rng = np.random.default_rng(4)
    missing, inconsistent = 0, 0
    for _ in range(200):
        p = random_params(rng)
        f = random_overbudget_restricted(rng, p)
        assert is_member_restricted(f, p).margin <= -0.01 * p.budget + 1e-12
        r0 = necessity_witness(f, p)
        if r0 is None or not 0 < r0 < 1:
            missing += 1
        elif not ratio_real_part(f, p, r0).item() < p.alpha:
            inconsistent += 1
    passed = missing == 0 and inconsistent == 0
    record_criterion(4, passed, f"200 over-budget members; missing witness {missing}, "
                                f"ratio at r0 not below alpha {inconsistent}")
    assert passed


def test_criterion_5_reductions():
    rng = np.random.default_rng(5)
    grid = default_grid()
    worst_m0 = 0.0
    for _ in range(20):
        p = random_params(rng)
        worst_m0 = max(worst_m0, verify_reduction_m0(random_margin_positive(rng, p), p.q, grid).extremum)
    rep = verify_reduction_q1(AnalyticSeries.from_coeffs([1, 1]), 1, (0.999,))
    err = rep.details["table"][0]["errors"][1]
    passed = worst_m0 == 0.0 and abs(err - 1e-3) <= 1e-4
    record_criterion(5, passed, f"m=0 extremum {worst_m0!r}; q=0.999 m=1 n=2 error {err:.6g}")
    assert passed


def _extreme_points(p, order):
    for n in range(1, order + 1):
        if n >= 2:
            yield extreme_point_h(p, n, order)
        g = extreme_point_g(p, n, order)
        if not g.hull_boundary:
            yield g


def test_criterion_6_distortion():
    rng = np.random.default_rng(6)
    order = 16
    failures, checked = 0, 0
    params = [ClassParams(0.5, 0, 0.0)] + [random_params(rng) for _ in range(9)]
    for p in params:
        for f in _extreme_points(p, order):
            checked += 1
            failures += not verify_distortion(f, p, RADII).passed
    for _ in range(200):
        p = random_params(rng)
        f = random_hull_member(rng, p, order=order)
        checked += 1
        failures += not verify_distortion(f, p, RADII).passed
    touch = 0.0
    theta = 2 * np.pi * np.arange(256) / 256
    for p in params:
        f = extreme_point_h(p, 2, order)
        for r in RADII:
            upper = bounds.distortion_bounds(p, 0.0, r).upper
            gap = abs(np.max(np.abs(f(r * np.exp(1j * theta)))) - upper)
            touch = max(touch, gap - truncation_slack(f, p, r))
    passed = failures == 0 and touch <= 1e-9
    record_criterion(6, passed, f"{checked} members, {failures} outside bounds; "
                                f"h_2 upper-bound contact gap {touch:.3g} (limit 1e-9)")
    assert passed


def test_criterion_7_covering():
    rng = np.random.default_rng(7)
    failures = 0
    for _ in range(200):
        p = random_params(rng)
        failures += not verify_covering(random_hull_member(rng, p), p).passed
    p0 = ClassParams(0.5, 0, 0)
    ext = verify_covering(extreme_point_h(p0, 2, 16), p0, 1 - 1e-3).extremum
    limit_gap = 0.0
    for q in np.linspace(0.05, 0.95, 10):
        for m in range(5):
            for alpha in np.linspace(0, 0.95, 6):
                p = ClassParams(float(q), m, float(alpha))
                lower = bounds.distortion_bounds(p, 0.0, 1 - 1e-9).lower
                limit_gap = max(limit_gap, abs(bounds.covering_radius(p, 0.0) - lower))
    passed = failures == 0 and abs(ext - 1 / 3) <= 1e-3 and limit_gap <= 1e-6
    record_criterion(7, passed, f"200 b1=0 members, {failures} below radius; h_2 min modulus "
                                f"{ext:.6f} vs 1/3; r->1 limit gap {limit_gap:.3g}")
    assert passed


def test_criterion_8_b1_discrepancy_report():
    rng = np.random.default_rng(8)
    params = [ClassParams(0.5, 0, 0.0), ClassParams(0.9, 3, 0.3)] + [random_params(rng) for _ in range(14)]
    b1_values = [0.0, 0.05, 0.1, 0.2, 0.3, 0.5]
    rows = b1_discrepancy_report(params, b1_values)
    feasible = [r for r in rows if r["feasible"]]
    distortion_viol = sum(r["violation"] for r in feasible if r["r"] != "ring")
    cover_viol = [r for r in feasible if r["r"] == "ring" and r["violation"]]
    b0_viol = sum(r["violation"] for r in feasible if r["b1"] == 0.0)
    flagged = all(isinstance(r["violation"], bool) for r in feasible)
    passed = bool(feasible) and flagged and b0_viol == 0
    worst = min((r["oracle_min"] - r["covering_radius"] for r in cover_viol), default=0.0)
    record_criterion(8, passed, f"{len(rows)} rows; distortion violations {distortion_viol}; "
                                f"covering violations flagged {len(cover_viol)} (all b1>0, "
                                f"worst shortfall {-worst:.3g})")
    assert passed


def test_criterion_9_determinism(tmp_path):
    argv = ["verify", "--random", "--random-params", "--seed", "42", "--count", "20"]
    outs = []
    for k in range(2):
        path = tmp_path / f"run{k}.json"
        main(argv + ["--output", str(path)])
        outs.append(path.read_bytes())
    passed = outs[0] == outs[1] and len(outs[0]) > 0
    record_criterion(9, passed, f"two seeded verify runs, {len(outs[0])} bytes, identical={outs[0] == outs[1]}")
    assert passed
