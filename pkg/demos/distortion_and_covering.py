"""
Distortion bounds, the covering disc and a picture of f(D)
==========================================================

Bounds on |f(z)| for |z| = r, checked against a member that attains them, and
an SVG of the image of concentric circles with the covering disc drawn in.
"""

import sys
from pathlib import Path

import numpy as np

from qharm import ClassParams, covering_radius, distortion_bounds, extreme_point_h, render_svg
from qharm.verify import verify_covering, verify_distortion

p = ClassParams(0.5, 0, 0.0)
f = extreme_point_h(p, 2, 8)          # z - (2/3) z^2

theta = np.linspace(0, 2 * np.pi, 721)
for r in (0.25, 0.5, 0.9):
    d = distortion_bounds(p, 0.0, r)
    mod = np.abs(f(r * np.exp(1j * theta)))
    print(f"r={r}: bounds [{d.lower:.6f}, {d.upper:.6f}]  |f| in [{mod.min():.6f}, {mod.max():.6f}]")

print("distortion check:", verify_distortion(f, p).passed)

# the image of the circle comes within ~1e-3 of the covering radius 1/3
rep = verify_covering(f, p)
print(f"covering radius {covering_radius(p, 0.0):.6f}, min |f| on the ring {rep.extremum:.6f}")

# larger m pushes the covering radius up
for m in range(5):
    print(f"m={m}: covering radius {covering_radius(ClassParams(0.5, m, 0.0), 0.0):.6f}")

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("extreme_point_h2.svg")
out.write_text(render_svg(f, p))
print("wrote", out)
