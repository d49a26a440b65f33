"""Deterministic text renderings: CSV peak lists, SVG figures, PGM grids.

Every function here returns a string built only from its arguments, with
floats formatted by ``repr`` (shortest round-trip form), so identical inputs
give byte-identical files on any platform or thread count.  Wave numbers are
written as exact integer numerators plus a log2 denominator; floats never
carry coordinate information.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .dyadic import Dyadic, DyadicPoint2
from .subst import PatternWindow

__all__ = [
    "Peak",
    "peaks_csv",
    "module_csv",
    "stem_svg",
    "disc_svg",
    "window_text",
    "window_pgm",
]


@dataclass(frozen=True)
class Peak:
    """One Bragg peak: wave number, complex amplitude, intensity."""

    k: Dyadic | DyadicPoint2
    amplitude: complex
    intensity: float


def _fmt(x: float) -> str:
    # repr() of a float is its shortest exact decimal form; -0.0 would
    # break byte-stable goldens, so flush it to 0.0.
    value = float(x)
    if value == 0.0:
        value = 0.0
    return repr(value)


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------


def peaks_csv(peaks, dim: int) -> str:
    """Peak list as CSV with exact dyadic coordinates."""
    if dim == 1:
        lines = ["k_num,k_log2den,amp_re,amp_im,intensity"]
        for peak in peaks:
            k = peak.k
            lines.append(
                f"{k.m},{k.r},{_fmt(peak.amplitude.real)},"
                f"{_fmt(peak.amplitude.imag)},{_fmt(peak.intensity)}"
            )
    elif dim == 2:
        lines = ["kx_num,ky_num,k_log2den,amp_re,amp_im,intensity"]
        for peak in peaks:
            k = peak.k
            lines.append(
                f"{k.m},{k.n},{k.s},{_fmt(peak.amplitude.real)},"
                f"{_fmt(peak.amplitude.imag)},{_fmt(peak.intensity)}"
            )
    else:
        raise ValueError(f"unsupported dimension: {dim}")
    return "\n".join(lines) + "\n"


def module_csv(points, dim: int) -> str:
    """Module point list as CSV (coordinates only)."""
    if dim == 1:
        lines = ["k_num,k_log2den"]
        lines.extend(f"{k.m},{k.r}" for k in points)
    elif dim == 2:
        lines = ["kx_num,ky_num,k_log2den"]
        lines.extend(f"{k.m},{k.n},{k.s}" for k in points)
    else:
        raise ValueError(f"unsupported dimension: {dim}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

_SVG_OPEN = (
    '<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
    'viewBox="0 0 {w} {h}">'
)


def stem_svg(peaks, lo, hi) -> str:
    """Stem plot: one vertical line per peak, height proportional to |amplitude|.

    ``lo`` and ``hi`` bound the wave-number axis.  The tallest stem spans the
    full plot height, so the figure is invariant under rescaling all weights.
    """
    width, height, margin = 800.0, 400.0, 40.0
    flo, fhi = Fraction(lo), Fraction(hi)
    if fhi <= flo:
        raise ValueError("empty axis range")
    span = float(fhi - flo)
    top = max((abs(peak.amplitude) for peak in peaks), default=0.0)
    lines = [
        _SVG_OPEN.format(w=int(width), h=int(height)),
        f'<rect width="{int(width)}" height="{int(height)}" fill="white"/>',
        f'<line x1="{_fmt(margin)}" y1="{_fmt(height - margin)}" '
        f'x2="{_fmt(width - margin)}" y2="{_fmt(height - margin)}" '
        'stroke="black" stroke-width="1"/>',
    ]
    for peak in peaks:
        size = abs(peak.amplitude)
        if top == 0.0 or size == 0.0:
            continue
        x = margin + (float(peak.k.value) - float(flo)) / span * (width - 2 * margin)
        stem = size / top * (height - 2 * margin)
        lines.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(height - margin)}" '
            f'x2="{_fmt(x)}" y2="{_fmt(height - margin - stem)}" '
            'stroke="black" stroke-width="1.5"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def disc_svg(peaks, x_bounds, y_bounds=None) -> str:
    """Disc plot: one filled circle per peak with area proportional to intensity.

    Radii scale as sqrt(intensity / max intensity), so areas are exactly
    proportional in the written coordinates; each circle also records its
    intensity in a ``data-intensity`` attribute.
    """
    if y_bounds is None:
        y_bounds = x_bounds
    width = height = 800.0
    margin = 40.0
    top_radius = 16.0
    fxlo, fxhi = Fraction(x_bounds[0]), Fraction(x_bounds[1])
    fylo, fyhi = Fraction(y_bounds[0]), Fraction(y_bounds[1])
    if fxhi <= fxlo or fyhi <= fylo:
        raise ValueError("empty plot region")
    xspan, yspan = float(fxhi - fxlo), float(fyhi - fylo)
    top = max((peak.intensity for peak in peaks), default=0.0)
    lines = [
        _SVG_OPEN.format(w=int(width), h=int(height)),
        f'<rect width="{int(width)}" height="{int(height)}" fill="white"/>',
    ]
    for peak in peaks:
        if top == 0.0 or peak.intensity <= 0.0:
            continue
        kx, ky = peak.k.value
        x = margin + (float(kx) - float(fxlo)) / xspan * (width - 2 * margin)
        y = height - margin - (float(ky) - float(fylo)) / yspan * (height - 2 * margin)
        radius = top_radius * (peak.intensity / top) ** 0.5
        lines.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(radius)}" '
            f'fill="black" data-intensity="{_fmt(peak.intensity)}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Pattern windows
# ---------------------------------------------------------------------------


def window_text(window: PatternWindow, letters) -> str:
    """Letters of a pattern window.

    One dimension: a single line with ``|`` marking the origin (drawn before
    position 0 when the window straddles it).  Two dimensions: one line per
    row, top row first, letters space-separated.
    """
    letters = tuple(letters)
    if window.dim == 1:
        (lo,) = window.origin
        chars = [letters[label] for label in window.labels.tolist()]
        if lo < 0 < lo + len(chars):
            chars.insert(-lo, "|")
        return "".join(chars) + "\n"
    rows = []
    for row in window.labels[::-1]:
        rows.append(" ".join(letters[label] for label in row.tolist()))
    return "\n".join(rows) + "\n"


def window_pgm(window: PatternWindow, n_letters: int) -> str:
    """Two-dimensional window as a plain-text PGM image, one grey per label."""
    if window.dim != 2:
        raise ValueError("PGM export needs a two-dimensional window")
    if n_letters < 1:
        raise ValueError("need at least one letter")
    spread = max(n_letters - 1, 1)
    greys = np.array([255 * index // spread for index in range(n_letters)])
    ny, nx = window.labels.shape
    lines = ["P2", f"{nx} {ny}", "255"]
    for row in window.labels[::-1]:
        lines.append(" ".join(str(g) for g in greys[row].tolist()))
    return "\n".join(lines) + "\n"
