"""
Coefficient membership, extremal functions and extreme points
=============================================================

The coefficient functional certifies membership for general coefficients and
decides it exactly for the restricted sign pattern.  Extremal functions spend
the whole budget, and the closed convex hull is generated by h_n and g_n.
"""

from qharm import (ClassParams, ConvexWeights, ExtremalWeights, HarmonicSeries,
                   coefficient_functional, convex_combination, extremal_function,
                   extreme_point_g, extreme_point_h, is_member_restricted, restricted_member)

p = ClassParams(q=0.5, m=1, alpha=0.0)
print("budget 1 - alpha =", p.budget)

f = HarmonicSeries.from_coeffs([1, 0.2], [0.1])
print("z + 0.2z^2 + conj(0.1z):", coefficient_functional(f, p).to_dict())

# all of the budget on a_2 gives a_2 = 1/[2]^2 = 4/9
e = extremal_function(p, ExtremalWeights.of(x={2: 1}), order=3)
print("extremal a_2 =", e.a[2].real, "margin", coefficient_functional(e, p).margin)

# a restricted function 1% over budget is a non-member, not just uncertified
over = restricted_member(p, [1.01 / 2.25], [], order=3)
print("over budget:", is_member_restricted(over, p).verdict.value)

# extreme points sit exactly on the budget
p = ClassParams(0.9, 1, 0.5)
for n in (2, 3, 4):
    h = extreme_point_h(p, n, 6)
    g = extreme_point_g(p, n, 6)
    print(f"n={n}: h_n a_n={h.a[n].real:+.6f}  g_n b_n={g.b[n].real:.6f}  "
          f"margins {is_member_restricted(h, p).margin:.1e} {is_member_restricted(g, p).margin:.1e}")

# a convex combination keeps X_1 (1 - alpha) of the budget unspent
w = ConvexWeights.of(X={1: 0.25, 2: 0.25, 3: 0.25}, Y={2: 0.25})
c = convex_combination(p, w, 6)
print("hull member margin", is_member_restricted(c, p).margin, "= X_1 (1 - alpha) =", 0.25 * p.budget)
