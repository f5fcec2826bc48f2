"""
q-integers, the Jackson derivative and the Salagean q-operator
==============================================================

A short tour of the operator layer: q-integers approach n as q -> 1, the
Jackson derivative is a difference quotient, and the Salagean q-operator
just rescales power-series coefficients.
"""

import numpy as np

from qharm import AnalyticSeries, q_bracket, q_derivative_pointwise, salagean_q

# [n]_q = 1 + q + ... + q^(n-1) creeps up to n as q -> 1
for q in (0.5, 0.9, 0.99, 0.999):
    print(f"q={q:<6} [2]={q_bracket(2, q):.6f} [5]={q_bracket(5, q):.6f}")

# the Jackson derivative of z^3 at z is [3]_q z^2
s = AnalyticSeries.monomial(3, 3)
z = 0.3 + 0.4j
print("Jackson derivative of z^3:", q_derivative_pointwise(s, 0.5, z), "vs", q_bracket(3, 0.5) * z**2)

# D_q^m multiplies coefficient n by [n]_q^m
s = AnalyticSeries.from_coeffs([1.0, 0.5, 0.25])
for m in range(4):
    print(f"m={m}: coefficients", np.round(salagean_q(s, 0.5, m).coeffs[1:].real, 6))

# q -> 1 recovers the classical n^m scaling
for q in (0.9, 0.99, 0.999):
    err = abs(salagean_q(s, q, 2).coeffs[3] - 9 * 0.25)
    print(f"q={q}: |[3]^2 c_3 - 9 c_3| = {err:.3e}")
