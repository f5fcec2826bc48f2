"""Grid-based numerical checks of the class properties, with witness reporting.

Every check returns a :class:`VerificationReport`.  Grid reductions use
``argmin``/``argmax`` on the flattened ``(ring, angle)`` array, so ties
resolve to the lowest grid index and reports are reproducible.

Sampled injectivity is evidence only: a finite grid plus local refinement
can find a collision, never rule one out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.optimize import minimize

from . import bounds
from .classes import (NotRestrictedError, class_weights, coefficient_functional,
                      is_member_restricted, restricted_member, restricted_sign_violation)
from .qcore import ClassParams, q_brackets
from .series import (AnalyticSeries, GridSpec, HarmonicSeries, derivative, salagean_q,
                     salagean_q_harmonic)

__all__ = [
    "VerificationReport",
    "DIVISION_GUARD",
    "default_grid",
    "injectivity_grid",
    "default_r_grid",
    "truncation_slack",
    "ring_slack",
    "verify_ratio_condition",
    "verify_sense_preserving",
    "verify_injectivity_sampled",
    "necessity_quotient",
    "necessity_witness",
    "ratio_real_part",
    "verify_distortion",
    "verify_covering",
    "verify_reduction_m0",
    "verify_reduction_q1",
    "b1_discrepancy_report",
    "run_suite",
]

DIVISION_GUARD = 1e-14
TOL = 1e-6
IDENTITY_TOL = 1e-10
# float noise allowed below zero margin for members built on the boundary
MEMBER_TOL = 1e-12


@dataclass
class VerificationReport:
    check: str
    passed: bool
    extremum: float
    witness: complex | float | None = None
    grid: GridSpec | None = None
    tol: float = TOL
    kind: str | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError(f"failed check {self.check!r} must carry a witness")

    def __bool__(self):
        return bool(self.passed)

    def witness_dict(self):
        w = self.witness
        if w is None:
            return None
        if isinstance(w, complex):
            return {"re": w.real, "im": w.imag}
        return {"r0": float(w)}

    def to_dict(self) -> dict:
        out = {
            "check": self.check,
            "pass": bool(self.passed),
            "extremum": float(self.extremum),
            "witness": self.witness_dict(),
            "grid": None if self.grid is None else self.grid.to_dict(),
            "tol": self.tol,
        }
        if self.kind is not None:
            out["kind"] = self.kind
        if self.details:
            out["details"] = self.details
        return out


def default_grid() -> GridSpec:
    """32 rings in (0.05, 0.999), crowded towards the circle, times 128 angles."""
    return GridSpec.geometric(32, 128, 0.05, 0.999)


def injectivity_grid(max_radius: float = 0.999) -> GridSpec:
    """Decimated 12 x 24 grid for the quadratic-cost pairwise check."""
    return GridSpec.geometric(12, 24, 0.05, max_radius)


def default_r_grid() -> np.ndarray:
    """Positive real axis samples, dense everywhere and geometrically dense near 1."""
    return np.unique(np.concatenate([np.linspace(5e-4, 0.9995, 20000),
                                     1.0 - np.geomspace(5e-4, 1e-12, 400)]))


def truncation_slack(f: HarmonicSeries, p: ClassParams, r: float) -> float:
    """Bound on the modulus of omitted terms of index ``> N`` at radius ``r``.

    Any class member extending ``f`` beyond order ``N`` spends at most the
    remaining budget on the tail, and the functional weights increase with
    ``n``, so the tail is at most ``margin * r**(N+1) / w[N+1]``.
    """
    margin = max(coefficient_functional(f, p).margin, 0.0)
    n = f.order + 1
    w = class_weights(p, n)[0][n]
    return margin * r**n / w


def ring_slack(f: HarmonicSeries, rho: float) -> float:
    """Bound on ``|f(e^{it}) - f(rho e^{it})|``: ``sum (|a_n| + |b_n|)(1 - rho**n)``."""
    n = np.arange(f.order + 1)
    return float(np.sum((np.abs(f.a) + np.abs(f.b)) * (1.0 - rho**n)))


def _argmin(values: np.ndarray) -> int:
    return int(np.argmin(values.ravel()))


def verify_ratio_condition(f: HarmonicSeries, p: ClassParams, grid: GridSpec | None = None,
                           tol: float = TOL) -> VerificationReport:
    """Check ``Re(D_q^{m+1} f / D_q^m f) >= alpha`` on the grid."""
    grid = default_grid() if grid is None else grid
    z = grid.points().ravel()
    den = salagean_q_harmonic(f, p.q, p.m)(z)
    num = salagean_q_harmonic(f, p.q, p.m + 1)(z)
    small = np.abs(den) < DIVISION_GUARD
    if small.any():
        i = int(np.flatnonzero(small)[0])
        return VerificationReport("ratio_condition", False, float(abs(den[i])), complex(z[i]),
                                  grid, tol, kind="degenerate-denominator")
    re = (num / den).real
    i = _argmin(re)
    ext = float(re[i])
    passed = ext >= p.alpha - tol
    return VerificationReport("ratio_condition", passed, ext, None if passed else complex(z[i]),
                              grid, tol, details={"alpha": p.alpha})


def _critical_point(h: AnalyticSeries, radius: float) -> complex | None:
    """Zero of ``h'`` of smallest modulus inside ``|z| < radius``, if any."""
    c = _trimmed(derivative(h))
    if len(c) < 2:
        return None
    roots = P.polyroots(c)
    inside = roots[np.abs(roots) < radius]
    # keep only roots that are genuine zeros of h', not companion-matrix noise
    scale = np.sum(np.abs(c) * radius ** np.arange(len(c)))
    inside = inside[np.abs(P.polyval(inside, c)) <= 1e-9 * scale]
    if inside.size == 0:
        return None
    return complex(inside[np.argmin(np.abs(inside))])


def verify_sense_preserving(f: HarmonicSeries, grid: GridSpec | None = None) -> VerificationReport:
    """Check ``|g'/h'| < 1`` (equivalently ``J_f > 0``) on the grid.

    Zeros of ``h'`` are isolated, so sampling alone would miss them; they are
    located as polynomial roots and any inside ``|z| < max_radius`` fails.
    """
    grid = default_grid() if grid is None else grid
    z = grid.points().ravel()
    crit_root = _critical_point(f.h, grid.max_radius)
    if crit_root is not None:
        return VerificationReport("sense_preserving", False, math.inf, crit_root, grid, 0.0,
                                  kind="critical-point")
    dh = P.polyval(z, derivative(f.h))
    dg = P.polyval(z, derivative(f.g))
    adh = np.abs(dh)
    crit = adh < DIVISION_GUARD
    if crit.any():
        i = int(np.flatnonzero(crit)[0])
        return VerificationReport("sense_preserving", False, math.inf, complex(z[i]), grid, 0.0,
                                  kind="critical-point")
    dil = np.abs(dg) / adh
    jac = adh**2 - np.abs(dg) ** 2
    i = int(np.argmax(dil))
    ext = float(dil[i])
    j = _argmin(jac)
    passed = bool(ext < 1 and jac[j] > 0)
    return VerificationReport("sense_preserving", passed, ext, None if passed else complex(z[i]),
                              grid, 0.0, details={"min_jacobian": float(jac[j])})


def _divided_difference_pairs(s: AnalyticSeries, z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
    """``(s(z1) - s(z2)) / (z1 - z2)`` by the stable recurrence over powers."""
    c = s.coeffs
    out = np.zeros(z1.shape, dtype=complex)
    pw1 = np.ones(z1.shape, dtype=complex)
    sk = np.zeros(z1.shape, dtype=complex)
    # sk = sum_{k<n} z1^k z2^(n-1-k)
    for n in range(1, c.size):
        sk = sk * z2 + pw1
        pw1 = pw1 * z1
        if c[n] != 0:
            out += c[n] * sk
    return out


def _quotient_pairs(f: HarmonicSeries, z1, z2):
    d = z1 - z2
    phase = np.conj(d) / d
    return _divided_difference_pairs(f.h, z1, z2) + f.co_sign * np.conj(
        _divided_difference_pairs(f.g, z1, z2)) * phase


def _horner(c: list, z: complex) -> complex:
    acc = 0j
    for ck in reversed(c):
        acc = acc * z + ck
    return acc


def _trimmed(c: np.ndarray) -> list:
    nz = np.flatnonzero(c)
    return [complex(v) for v in c[: nz[-1] + 1]] if nz.size else [0j]


class _ScalarQuotient:
    """Difference quotient of ``f`` at a pair of points, for local search."""

    def __init__(self, f: HarmonicSeries):
        self.h, self.g = _trimmed(f.h.coeffs), _trimmed(f.g.coeffs)
        self.dh = _trimmed(derivative(f.h)) if f.h.order > 0 else [0j]
        self.dg = _trimmed(derivative(f.g)) if f.g.order > 0 else [0j]
        self.sign = f.co_sign

    def __call__(self, z1: complex, z2: complex, direction: complex) -> complex:
        d = z1 - z2
        if abs(d) > 1e-7:
            qh = (_horner(self.h, z1) - _horner(self.h, z2)) / d
            qg = (_horner(self.g, z1) - _horner(self.g, z2)) / d
            phase = d.conjugate() / d
        else:
            mid = 0.5 * (z1 + z2)
            qh, qg = _horner(self.dh, mid), _horner(self.dg, mid)
            phase = direction.conjugate() / direction
        return qh + self.sign * qg.conjugate() * phase


def _to_disc(u: np.ndarray, radius: float) -> complex:
    w = complex(u[0], u[1])
    return radius * w / math.sqrt(1.0 + abs(w) ** 2)


def _from_disc(z: complex, radius: float) -> np.ndarray:
    s = abs(z) / radius
    s = min(s, 1 - 1e-12)
    w = z / radius / math.sqrt(1.0 - s * s)
    return np.array([w.real, w.imag])


def verify_injectivity_sampled(f: HarmonicSeries, grid: GridSpec | None = None, tol: float = TOL,
                               refine: int = 2) -> VerificationReport:
    """Evidence-grade injectivity: minimum pairwise difference quotient.

    The coarse minimum over all grid pairs is refined by a local search from
    the ``refine`` best pairs, kept inside the disc of radius ``max_radius``.
    Passing means no collision was found, not that ``f`` is univalent.
    """
    grid = injectivity_grid() if grid is None else grid
    z = grid.points().ravel()
    i, j = np.triu_indices(z.size, k=1)
    quot = np.abs(_quotient_pairs(f, z[i], z[j]))
    order = np.argsort(quot, kind="stable")
    k = int(order[0])
    best, w1, w2 = float(quot[k]), complex(z[i[k]]), complex(z[j[k]])
    rad = grid.max_radius
    quotient = _ScalarQuotient(f)
    for k in order[:refine]:
        z1, z2 = complex(z[i[k]]), complex(z[j[k]])
        direction = (z1 - z2) / abs(z1 - z2)

        def objective(u):
            a, b = _to_disc(u[:2], rad), _to_disc(u[2:], rad)
            return abs(quotient(a, b, direction))

        x0 = np.concatenate([_from_disc(z1, rad), _from_disc(z2, rad)])
        res = minimize(objective, x0, method="Nelder-Mead",
                       options={"xatol": 1e-9, "fatol": 1e-13, "maxiter": 600})
        if res.fun < best:
            best = float(res.fun)
            w1, w2 = _to_disc(res.x[:2], rad), _to_disc(res.x[2:], rad)
    passed = best > tol
    return VerificationReport("injectivity_sampled", passed, best, None if passed else w1, grid, tol,
                              details={"evidence_grade": True, "pair": [[w1.real, w1.imag], [w2.real, w2.imag]],
                                       "pairs_sampled": int(i.size)})


def _restricted_magnitudes(f: HarmonicSeries):
    return -f.a.real, f.b.real


def necessity_quotient(f: HarmonicSeries, p: ClassParams, r) -> np.ndarray:
    """The positive-real-axis quotient ``(Re ratio - alpha)`` in numerator/denominator form.

    Returns ``(numerator, denominator)`` arrays at the radii ``r``.
    """
    r = np.asarray(r, dtype=float)
    a, b = _restricted_magnitudes(f)
    wa, wb = class_weights(p, f.order)
    pw = q_brackets(f.order, p.q) ** p.m
    a = a.copy()
    a[:2] = 0.0
    # coefficient n pairs with r^(n-1)
    num = p.budget - P.polyval(r, (wa * a)[1:]) - P.polyval(r, (wb * b)[1:])
    den = 1.0 - P.polyval(r, (pw * a)[1:]) + P.polyval(r, (pw * b)[1:])
    return num, den


def necessity_witness(f: HarmonicSeries, p: ClassParams, r_grid=None) -> float | None:
    """Smallest sampled ``r0`` in (0, 1) where the real-axis quotient is negative.

    Requires a restricted-family ``f``.  A positive margin is rejected; at
    margin zero the quotient stays nonnegative and ``None`` comes back.
    """
    report = is_member_restricted(f, p)
    if report.margin > 0:
        raise ValueError("necessity witness requires a nonpositive coefficient margin")
    r = default_r_grid() if r_grid is None else np.sort(np.asarray(r_grid, dtype=float))
    if np.any((r <= 0) | (r >= 1)):
        raise ValueError("r_grid must lie in (0, 1)")
    num, den = necessity_quotient(f, p, r)
    neg = (num / den) < 0
    if not neg.any():
        return None
    return float(r[int(np.argmax(neg))])


def ratio_real_part(f: HarmonicSeries, p: ClassParams, z) -> np.ndarray:
    """``Re(D_q^{m+1} f(z) / D_q^m f(z))``."""
    z = np.asarray(z, dtype=complex)
    return (salagean_q_harmonic(f, p.q, p.m + 1)(z) / salagean_q_harmonic(f, p.q, p.m)(z)).real


def _require_restricted_member(f: HarmonicSeries, p: ClassParams):
    report = is_member_restricted(f, p)
    if report.margin < -MEMBER_TOL:
        raise ValueError("function is not a member of the restricted class")
    return report


def verify_distortion(f: HarmonicSeries, p: ClassParams, radii=(0.25, 0.5, 0.9), tol: float = TOL,
                      angles: int = 256, variant: bool = False) -> VerificationReport:
    """Check the distortion bounds on circles ``|z| = r`` for a restricted member."""
    _require_restricted_member(f, p)
    b1 = float(f.b[1].real)
    theta = 2.0 * np.pi * np.arange(angles) / angles
    worst, witness, rows = math.inf, None, []
    for r in radii:
        d = bounds.distortion_bounds(p, b1, r, variant)
        z = r * np.exp(1j * theta)
        mod = np.abs(f(z))
        slack = truncation_slack(f, p, r)
        gap = np.minimum(mod - d.lower, d.upper - mod)
        k = _argmin(gap)
        if gap[k] < worst:
            worst, witness = float(gap[k]), complex(z[k])
        rows.append({"r": float(r), "lower": d.lower, "upper": d.upper, "min_modulus": float(mod.min()),
                     "max_modulus": float(mod.max()), "slack": slack,
                     "vacuous_lower": d.vacuous_lower})
    allowed = tol + max(row["slack"] for row in rows)
    passed = worst >= -allowed
    grid = GridSpec(tuple(radii), angles, max(radii))
    return VerificationReport("distortion", passed, worst, None if passed else witness, grid, tol,
                              details={"b1": b1, "rows": rows, "variant": variant})


def verify_covering(f: HarmonicSeries, p: ClassParams, ring_radius: float = 1 - 1e-3,
                    tol: float = TOL, angles: int = 2048) -> VerificationReport:
    """Minimum modulus on a near-boundary ring against the covering radius.

    Necessary-condition check: if the covering disc lies in ``f(D)``, then
    ``|f| >= radius`` on the unit circle, hence ``>= radius - ring_slack`` on
    the ring.
    """
    _require_restricted_member(f, p)
    b1 = float(f.b[1].real)
    radius = bounds.covering_radius(p, b1)
    theta = 2.0 * np.pi * np.arange(angles) / angles
    z = ring_radius * np.exp(1j * theta)
    mod = np.abs(f(z))
    k = _argmin(mod)
    slack = ring_slack(f, ring_radius) + truncation_slack(f, p, 1.0)
    ext = float(mod[k])
    passed = ext >= radius - slack - tol
    grid = GridSpec((ring_radius,), angles, ring_radius)
    return VerificationReport("covering", passed, ext, None if passed else complex(z[k]), grid, tol,
                              details={"covering_radius": radius, "slack": slack, "b1": b1})


def verify_reduction_m0(f: HarmonicSeries, q, grid: GridSpec | None = None) -> VerificationReport:
    """``D_q^0 f`` must coincide with ``f`` bit for bit."""
    grid = default_grid() if grid is None else grid
    z = grid.points().ravel()
    diff = np.abs(salagean_q_harmonic(f, q, 0)(z) - f(z))
    i = int(np.argmax(diff))
    ext = float(diff[i])
    passed = ext == 0.0
    return VerificationReport("reduction_m0", passed, ext, None if passed else complex(z[i]), grid, 0.0)


def verify_reduction_q1(s: AnalyticSeries, m: int, q_seq) -> VerificationReport:
    """Coefficient errors ``|[n]_q^m - n^m| |c_n|`` along ``q -> 1``.

    Passes when the worst error never increases along ``q_seq`` and the last
    one respects ``m n^(m-1) n(n-1)/2 (1-q) |c_n|`` for every ``n``, from
    ``n - [n]_q <= n(n-1)(1-q)/2`` and the mean value theorem.
    """
    q_seq = [float(q) for q in q_seq]
    if any(not (0 < q < 1) for q in q_seq):
        raise ValueError("q_seq must lie in (0, 1)")
    if any(b <= a for a, b in zip(q_seq, q_seq[1:])):
        raise ValueError("q_seq must be increasing")
    n = np.arange(s.order + 1, dtype=float)
    exact = n**m * s.coeffs
    exact[0] = 0
    table, worst = [], []
    for q in q_seq:
        err = np.abs(salagean_q(s, q, m).coeffs - exact)
        worst.append(float(err.max()))
        table.append({"q": q, "errors": [float(e) for e in err[1:]]})
    q_last = q_seq[-1]
    envelope = m * n ** max(m - 1, 0) * n * (n - 1) / 2 * (1 - q_last) * np.abs(s.coeffs)
    last = np.abs(salagean_q(s, q_last, m).coeffs - exact)
    within = bool(np.all(last <= envelope + 1e-15 * (1 + np.abs(exact))))
    monotone = all(b <= a for a, b in zip(worst, worst[1:]))
    passed = within and monotone
    witness = None if passed else q_last
    return VerificationReport("reduction_q1", passed, worst[-1], witness, None, 0.0,
                              details={"m": m, "table": table, "monotone": monotone,
                                       "envelope": [float(e) for e in envelope[1:]],
                                       "naive_envelope": m * s.order**2 * (1 - q_last)})


def _oracle_members(p: ClassParams, b1: float, n_max: int, order: int):
    """Two-term margin-zero restricted members with the given ``b_1``.

    The budget left after ``b_1`` goes entirely into one ``a_n`` or one ``b_n``.
    """
    wa, wb = class_weights(p, order)
    left = p.budget - wb[1] * b1
    if left < 0:
        return
    for n in range(2, n_max + 1):
        a_tail = np.zeros(order - 1)
        a_tail[n - 2] = left / wa[n]
        bb = np.zeros(order)
        bb[0] = b1
        yield f"a_{n}", restricted_member(p, a_tail, bb, order)
        bb = np.zeros(order)
        bb[0] = b1
        bb[n - 1] = left / wb[n]
        yield f"b_{n}", restricted_member(p, np.zeros(order - 1), bb, order)


def b1_discrepancy_report(params, b1_values, radii=(0.25, 0.5, 0.9), n_max: int = 6,
                          angles: int = 720, ring_radius: float = 1 - 1e-3) -> list[dict]:
    """Compare printed bounds, the variant ``b1`` factor, and a grid-search oracle.

    For each ``(p, b1)`` the oracle maximizes/minimizes ``|f|`` over the two-term
    margin-zero members of :func:`_oracle_members`.  Rows flag any oracle value
    outside the printed bounds by more than ``1e-9`` plus ring slack (covering
    rows only).  Nothing here raises on a violation; the table is the finding.
    """
    theta = 2.0 * np.pi * np.arange(angles) / angles
    rows = []
    for p in params:
        for b1 in b1_values:
            order = n_max
            members = list(_oracle_members(p, b1, n_max, order))
            if not members:
                rows.append({"q": p.q, "m": p.m, "alpha": p.alpha, "b1": b1, "r": None,
                             "feasible": False})
                continue
            for r in list(radii) + [None]:
                rho = ring_radius if r is None else r
                z = rho * np.exp(1j * theta)
                mods = [(name, np.abs(f(z))) for name, f in members]
                hi_name, hi = max(((nm, float(v.max())) for nm, v in mods), key=lambda t: t[1])
                lo_name, lo = min(((nm, float(v.min())) for nm, v in mods), key=lambda t: t[1])
                row = {"q": p.q, "m": p.m, "alpha": p.alpha, "b1": float(b1), "feasible": True,
                       "oracle_max": hi, "oracle_max_member": hi_name,
                       "oracle_min": lo, "oracle_min_member": lo_name}
                if r is None:
                    cov = bounds.covering_radius(p, b1)
                    slack = max(ring_slack(f, ring_radius) for _, f in members)
                    row.update(r="ring", ring_radius=ring_radius, covering_radius=cov,
                               lower_limit=bounds.covering_limit_from_distortion(p, b1),
                               lower_limit_variant=bounds.covering_limit_from_distortion(p, b1, True),
                               slack=slack, violation=bool(lo < cov - slack - 1e-9))
                else:
                    d = bounds.distortion_bounds(p, b1, r)
                    v = bounds.distortion_bounds(p, b1, r, variant=True)
                    row.update(r=float(r), lower=d.lower, upper=d.upper,
                               lower_variant=v.lower, upper_variant=v.upper,
                               violation=bool(hi > d.upper + 1e-9 or lo < d.lower - 1e-9))
                rows.append(row)
    return rows


def run_suite(f: HarmonicSeries, p: ClassParams, grid: GridSpec | None = None, tol: float = TOL,
              inj_grid: GridSpec | None = None) -> list[VerificationReport]:
    """Run every applicable check on one function.

    Ratio, sense and injectivity checks need a certified member; distortion and
    covering need a restricted member; a restricted non-member gets the
    necessity witness instead.
    """
    grid = default_grid() if grid is None else grid
    reports = []
    restricted = restricted_sign_violation(f, p) is None
    cert = coefficient_functional(f, p)
    if restricted and cert.margin < 0:
        r0 = necessity_witness(f, p)
        reports.append(VerificationReport(
            "necessity_witness", False, cert.margin, r0 if r0 is not None else math.nan, None, tol,
            kind="non-member", details={"margin": cert.margin,
                                        "ratio_at_r0": None if r0 is None else float(ratio_real_part(f, p, r0))}))
        return reports
    if cert.margin < 0:
        reports.append(VerificationReport("coefficient_certificate", False, cert.margin, math.nan, None,
                                          tol, kind="not-certified"))
    reports.append(verify_ratio_condition(f, p, grid, tol))
    if not f.hull_boundary:
        reports.append(verify_sense_preserving(f, grid))
        reports.append(verify_injectivity_sampled(f, inj_grid, tol))
    if restricted:
        try:
            reports.append(verify_distortion(f, p, tol=tol))
            reports.append(verify_covering(f, p, tol=tol))
        except (NotRestrictedError, ValueError):
            pass
    reports.append(verify_reduction_m0(f, p.q, grid))
    return reports
