"""Deterministic SVG plots: 1-d wavefronts and spectrum tick plots.

SVG is assembled by hand so identical inputs give byte-identical files
(no library version strings, ids, or timestamps).
"""

from __future__ import annotations

import numpy as np

from .errors import CapabilityError

_W, _H, _PAD = 640, 400, 45


def _fmt(x):
    return f"{x:.4f}".rstrip("0").rstrip(".")


def _scale(lo, hi):
    if hi <= lo:
        lo, hi = lo - 0.5, hi + 0.5
    return lo, hi


def front_svg(cloud) -> str:
    """Wavefront in the (q, z) plane; stroke hue encodes the p value."""
    if cloud.base_dim != 1:
        raise CapabilityError("front plots exist for 1-dimensional bases only")
    q = cloud.q[:, 0]
    z = cloud.z
    p = cloud.p[:, 0]
    qlo, qhi = 0.0, cloud.period
    zlo, zhi = _scale(float(z.min()), float(z.max()))
    pmax = max(float(np.abs(p).max()), 1e-12)

    def sx(v):
        return _PAD + (v - qlo) / (qhi - qlo) * (_W - 2 * _PAD)

    def sy(v):
        return _H - _PAD - (v - zlo) / (zhi - zlo) * (_H - 2 * _PAD)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<line x1="{_PAD}" y1="{_H - _PAD}" x2="{_W - _PAD}" y2="{_H - _PAD}" '
        'stroke="black" stroke-width="1"/>',
        f'<line x1="{_PAD}" y1="{_PAD}" x2="{_PAD}" y2="{_H - _PAD}" '
        'stroke="black" stroke-width="1"/>',
        f'<text x="{_W // 2}" y="{_H - 10}" font-size="12" '
        'text-anchor="middle">q</text>',
        f'<text x="14" y="{_H // 2}" font-size="12" '
        'text-anchor="middle">z</text>',
    ]
    order = np.lexsort((z, q))
    for i in order:
        # hue: blue (negative p) through green (0) to red (positive p)
        hue = 120.0 - 120.0 * float(p[i]) / pmax
        parts.append(
            f'<circle cx="{_fmt(sx(float(q[i])))}" cy="{_fmt(sy(float(z[i])))}" '
            f'r="2.2" fill="hsl({_fmt(hue)},80%,42%)"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def spectrum_svg(spec) -> str:
    """Tick plot of spectrum values on the action axis."""
    values = list(spec.values)
    if values:
        lo, hi = _scale(min(values), max(values))
    else:
        lo, hi = -1.0, 1.0
    y0 = _H // 2

    def sx(v):
        return _PAD + (v - lo) / (hi - lo) * (_W - 2 * _PAD)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<line x1="{_PAD}" y1="{y0}" x2="{_W - _PAD}" y2="{y0}" '
        'stroke="black" stroke-width="1"/>',
        f'<text x="{_W // 2}" y="{_H - 10}" font-size="12" '
        'text-anchor="middle">action</text>',
    ]
    for v in values:
        x = _fmt(sx(float(v)))
        parts.append(
            f'<line x1="{x}" y1="{y0 - 40}" x2="{x}" y2="{y0 + 40}" '
            'stroke="crimson" stroke-width="2"/>')
        parts.append(
            f'<text x="{x}" y="{y0 - 48}" font-size="11" '
            f'text-anchor="middle">{_fmt(float(v))}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
