"""SVG picture of ``f(D)``: images of concentric circles, covering disc, distortion annuli."""

from __future__ import annotations

import numpy as np

from . import bounds
from .qcore import ClassParams
from .series import HarmonicSeries

__all__ = ["render_svg"]

RING_RADII = (0.2, 0.4, 0.6, 0.8, 0.9, 0.95, 0.999)
ANNULUS_RADII = (0.5, 0.9)


def _num(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(f: HarmonicSeries, p: ClassParams, radii=RING_RADII, angles: int = 360,
               annuli=ANNULUS_RADII, size: int = 600) -> str:
    """Return an SVG document; output is a pure function of the inputs.

    The covering disc and the distortion annuli use ``b1 = |b_1|`` and are
    only meaningful for restricted class members.
    """
    theta = 2.0 * np.pi * np.arange(angles + 1) / angles
    curves = [f(r * np.exp(1j * theta)) for r in radii]
    b1 = float(abs(f.b[1]))
    cover = bounds.covering_radius(p, b1) if b1 < 1 else None
    ann = [bounds.distortion_bounds(p, b1, r) for r in annuli] if b1 < 1 else []
    extent = max(float(np.max(np.abs(c))) for c in curves)
    extent = max(extent, *(d.upper for d in ann)) if ann else extent
    extent *= 1.05
    scale = size / (2.0 * extent)

    def xy(w):
        return _num(size / 2 + scale * w.real), _num(size / 2 - scale * w.imag)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<title>f(D) for q={p.q!r}, m={p.m}, alpha={p.alpha!r}</title>',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<line x1="0" y1="{size / 2}" x2="{size}" y2="{size / 2}" stroke="#ccc" stroke-width="0.5"/>',
        f'<line x1="{size / 2}" y1="0" x2="{size / 2}" y2="{size}" stroke="#ccc" stroke-width="0.5"/>',
        '<g id="image-rings" fill="none" stroke="#1f4e99" stroke-width="1">',
    ]
    for r, c in zip(radii, curves):
        pts = " ".join(",".join(xy(w)) for w in c)
        out.append(f'<polyline data-r="{_num(r)}" points="{pts}"/>')
    out.append("</g>")
    c0 = _num(size / 2)
    if ann:
        out.append('<g id="distortion-annuli" fill="none" stroke="#2a9d3a" stroke-width="0.8" '
                   'stroke-dasharray="2,3">')
        for d in ann:
            for kind, rad in (("lower", d.lower), ("upper", d.upper)):
                if rad > 0:
                    out.append(f'<circle data-r="{_num(d.r)}" data-bound="{kind}" cx="{c0}" cy="{c0}" '
                               f'r="{_num(scale * rad)}"/>')
        out.append("</g>")
    if cover is not None:
        out.append(f'<circle id="covering-disc" data-radius="{_num(cover)}" cx="{c0}" cy="{c0}" '
                   f'r="{_num(scale * cover)}" fill="none" stroke="#c0392b" stroke-width="1.5" '
                   'stroke-dasharray="6,4"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
