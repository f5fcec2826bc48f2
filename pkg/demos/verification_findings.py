"""
Grid verification and what it turns up
======================================

The ratio condition holds for every coefficient-certified member we try.
Univalence is a different story for small q: a member on the coefficient
budget can have a critical point inside the disc.  The b1 > 0 covering radius
also overshoots for some members.
"""

import numpy as np

from qharm import ClassParams, ExtremalWeights, extremal_function
from qharm.sampling import random_margin_positive, random_overbudget_restricted, random_params
from qharm.verify import (b1_discrepancy_report, necessity_witness, ratio_real_part,
                          verify_injectivity_sampled, verify_ratio_condition,
                          verify_sense_preserving)

# small q: a_2 = 1/[2]_q = 1/1.1 is on the budget, yet h' = 1 + 2 a_2 z vanishes at -0.55
p = ClassParams(0.1, 0, 0.0)
f = extremal_function(p, ExtremalWeights.of(x={2: 1}), order=4)
print("ratio condition:", verify_ratio_condition(f, p).passed)
sense = verify_sense_preserving(f)
print("sense preserving:", sense.passed, sense.kind, "at", sense.witness)
inj = verify_injectivity_sampled(f)
print("sampled injectivity:", inj.passed, "collision pair", inj.details["pair"])

# a small sweep, split by q
rng = np.random.default_rng(0)
for lo, hi in ((0.05, 0.5), (0.5, 0.95)):
    bad = 0
    for _ in range(40):
        p = random_params(rng, q_range=(lo, hi))
        g = random_margin_positive(rng, p)
        bad += not (verify_sense_preserving(g).passed and verify_injectivity_sampled(g).passed)
    print(f"q in ({lo}, {hi}): {bad}/40 certified members fail sense or injectivity")

# over budget, restricted sign pattern: a real-axis witness always exists
p = ClassParams(0.6, 2, 0.3)
g = random_overbudget_restricted(rng, p)
r0 = necessity_witness(g, p)
print(f"necessity witness r0={r0:.6f}, Re ratio there {ratio_real_part(g, p, r0).item():.6f} < {p.alpha}")

# b1 > 0: covering radius against the two-term oracle
rows = b1_discrepancy_report([ClassParams(0.9, 3, 0.3)], [0.0, 0.25, 0.5])
for r in rows:
    if r["r"] == "ring":
        print(f"b1={r['b1']}: covering radius {r['covering_radius']:.4f}, oracle min |f| "
              f"{r['oracle_min']:.4f} ({r['oracle_min_member']}), violation={r['violation']}")
