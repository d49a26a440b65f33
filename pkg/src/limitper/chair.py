"""Closed-form diffraction analytics for the four-colour block fixed point.

The pattern is the fixed point of the bundled 2 x 2 block rule grown from
the seed (3 0 / 2 1) on {-1, 0}^2.  Colours 0 and 2 partition the even
sublattice (coordinate sum even), colours 1 and 3 the odd one.  Three views
of the same object live here:

* ``label`` resolves one cell by halving chains.  Each colour class
  satisfies a decoupled fixed-point equation whose right-hand sides are
  half-scale copies shifted by the coordinate parities, so repeatedly
  subtracting the parity offset and halving either exits on a sublattice
  test or walks down the hierarchy.  The two diagonal rays per sublattice
  are 2-adic limit points where the walk would stall; they are matched
  first and carry the seed colours outward.

* ``coset_amplitude`` is the exact Fourier coefficient of one hierarchy
  layer: the union of 2^(r+1)-scaled odd-sublattice cosets stepped along a
  diagonal direction.  Summing layers (see ``numerics.approximant_amplitude``)
  reconstructs each colour amplitude from scratch.

* ``amplitudes`` evaluates the summed series in closed form, split by the
  denominator exponent s of the wave number.  All roots of unity come from
  exact index arithmetic mod 2^s.

The colour symmetry of the square acts by the dihedral elements in
``d4_elements``: each geometric map pairs with a colour permutation that
leaves the fixed point invariant as a coloured pattern.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import subst
from .dyadic import Dyadic, DyadicPoint2, phase

__all__ = [
    "U",
    "V",
    "COLOR_STEPS",
    "COLOR_SHIFTS",
    "Weights",
    "Amplitudes",
    "system",
    "seed",
    "pattern_window",
    "label",
    "label_grid",
    "coset_amplitude",
    "amplitudes",
    "intensity",
    "D4Element",
    "d4_elements",
    "d4_compose",
    "apply_d4",
    "transform_wavevector",
]

U = (1, 0)
V = (0, 1)

# Per colour: the diagonal step direction of its hierarchy layers, and the
# lattice translation taking the layered set onto the colour class.
COLOR_STEPS = ((1, 1), (1, -1), (-1, -1), (-1, 1))
COLOR_SHIFTS = ((0, 0), (0, -1), (-1, -1), (-1, 0))


@lru_cache(maxsize=None)
def system() -> subst.SubstitutionSystem:
    """The bundled four-colour block rule."""
    return subst.bundled_system("chair")


def seed() -> subst.PatternWindow:
    return subst.block_seed(system(), (("3", "0"), ("2", "1")))


def pattern_window(iterations: int) -> subst.PatternWindow:
    """The fixed-point window on [-2^n, 2^n)^2."""
    return subst.fixed_point_window(system(), seed(), iterations)


def label(point: tuple[int, int]) -> int:
    """Colour of one cell of the fixed point.

    The diagonal x1 == x2 carries 0 on t >= 0 and 2 on t < 0; the
    antidiagonal x1 + x2 == -1 carries 1 on x1 >= 0 and 3 on x1 < 0.  Off
    the diagonals, subtract the coordinate parities and halve: if the halved
    cell lands on the opposite sublattice the colour is decided by which
    parity offset was removed, otherwise the halved cell has the same
    colour and the walk continues (it strictly shrinks, so it terminates).
    """
    x, y = point
    while True:
        if x == y:
            return 0 if x >= 0 else 2
        if x + y == -1:
            return 1 if x >= 0 else 3
        hx, hy = x >> 1, y >> 1
        if (x + y) % 2 == 0:
            if (hx + hy) % 2 == 1:
                return 0 if x % 2 == 0 else 2
        else:
            if (hx + hy) % 2 == 0:
                return 1 if x % 2 == 0 else 3
        x, y = hx, hy


def label_grid(x_lo: int, x_hi: int, y_lo: int, y_hi: int) -> np.ndarray:
    """Colours on [x_lo, x_hi) x [y_lo, y_hi) as a uint8 array [iy, ix].

    Vectorised form of ``label``: all cells walk their halving chains in
    lock step, each chain freezing once its colour is decided.
    """
    if x_hi <= x_lo or y_hi <= y_lo:
        raise ValueError("empty grid")
    xs = np.arange(x_lo, x_hi, dtype=np.int64)
    ys = np.arange(y_lo, y_hi, dtype=np.int64)
    x = np.broadcast_to(xs[None, :], (ys.size, xs.size)).copy().ravel()
    y = np.broadcast_to(ys[:, None], (ys.size, xs.size)).copy().ravel()
    out = np.full(x.shape, 255, dtype=np.uint8)

    bound = max(abs(x_lo), abs(x_hi), abs(y_lo), abs(y_hi))
    max_rounds = 2 * int(bound).bit_length() + 8
    for _ in range(max_rounds):
        open_mask = out == 255
        if not open_mask.any():
            break
        diag = open_mask & (x == y)
        out[diag & (x >= 0)] = 0
        out[diag & (x < 0)] = 2
        anti = open_mask & (x + y == -1)
        out[anti & (x >= 0)] = 1
        out[anti & (x < 0)] = 3
        open_mask &= out == 255

        hx, hy = x >> 1, y >> 1
        even_lattice = (x + y) % 2 == 0
        half_odd = (hx + hy) % 2 == 1
        x_even = x % 2 == 0

        exit0 = open_mask & even_lattice & half_odd
        out[exit0 & x_even] = 0
        out[exit0 & ~x_even] = 2
        exit1 = open_mask & ~even_lattice & ~half_odd
        out[exit1 & x_even] = 1
        out[exit1 & ~x_even] = 3

        cont = open_mask & (out == 255)
        x = np.where(cont, hx, x)
        y = np.where(cont, hy, y)
    if (out == 255).any():
        raise AssertionError("halving chains failed to resolve")
    return out.reshape(ys.size, xs.size)


def coset_amplitude(level: int, step: tuple[int, int], k: DyadicPoint2) -> complex:
    """Fourier coefficient at k of one hierarchy layer.

    The layer at `level` r is the union of the odd sublattice scaled by
    2^(r+1) and stepped through 0, step, ..., (2^r - 1) step.  Its transform
    is supported on the even sublattice divided by 2^(r+2); there the
    coefficient is a finite geometric sum in e^{-2 pi i k . step} times the
    scaled-coset phase and density 2^(-2r-3).  The geometric sum is resolved
    exactly: full weight 2^r when k . step is an integer, zero when only
    2^level k . step is.
    """
    if level < 0:
        raise ValueError(f"negative layer index: {level}")
    scale = level + 2
    # Support test: 2^(level+2) k must land on the even sublattice.
    if k.s > scale or (k.s == scale and (k.m + k.n) % 2 != 0):
        return 0j
    theta = k.dot(step)
    if theta.r == 0:
        geometric: complex = float(1 << level)
    elif theta.r <= level:
        return 0j
    else:
        turns = Dyadic.of(-theta.m << level, theta.r)
        geometric = (1 - phase(turns)) / (1 - phase(-theta))
    shift_phase = phase(Dyadic.of(-k.m << (level + 1), k.s))
    return geometric * shift_phase / float(1 << (2 * level + 3))


@dataclass(frozen=True)
class Weights:
    """Complex scattering weights for the four colours."""

    values: tuple[complex, complex, complex, complex]


@dataclass(frozen=True)
class Amplitudes:
    """Per-colour peak amplitudes at one dyadic wave number."""

    k: DyadicPoint2
    values: tuple[complex, complex, complex, complex]


def _eps_pow(exponent: int, s: int) -> complex:
    """(e^{-2 pi i / 2^s})^exponent via exact index arithmetic mod 2^s."""
    return phase(Dyadic.of(-exponent, s))


def _axis_sum_amplitude(c: int, s: int) -> complex:
    """The s >= 2 case split shared by the two amplitude pairs.

    `c` is the relevant numerator sum (m + n for colours 0/2, m - n for
    1/3).  Divisibility by 2^s kills the coefficient; otherwise exactly one
    hierarchy layer survives the geometric cancellation and contributes a
    single root-of-unity ratio.
    """
    if c % (1 << s) == 0:
        return 0j
    if c % 2 == 0:
        if (c // 2) % 2 == 0:
            return 0j
        return -(4.0 / float(4**s)) / (1 - _eps_pow(c, s))
    return (1.0 / float(4**s)) / (1 - _eps_pow(c, s))


def amplitudes(k: DyadicPoint2) -> Amplitudes:
    """Closed-form amplitudes of the four colour classes at k = (m, n) / 2^s."""
    m, n, s = k.m, k.n, k.s
    if s == 0:
        vals = (0.25 + 0j,) * 4
    elif s == 1:
        if m % 2 == 1 and n % 2 == 1:
            vals = (0.25 + 0j, -0.25 + 0j, 0.25 + 0j, -0.25 + 0j)
        else:
            # m + n odd: the two sublattices contribute with opposite signs.
            sn = 0.125 if n % 2 == 0 else -0.125
            sm = 0.125 if m % 2 == 0 else -0.125
            vals = (0.125 + 0j, sn + 0j, -0.125 + 0j, sm + 0j)
    else:
        a0 = _axis_sum_amplitude(m + n, s)
        a1 = _eps_pow(-n, s) * _axis_sum_amplitude(m - n, s)
        vals = (a0, a1, -a0, -a1)
    return Amplitudes(k=k, values=vals)


def intensity(k: DyadicPoint2, weights: Weights) -> float:
    """Peak intensity |sum_i alpha_i A_i|^2 at a dyadic wave number."""
    amp = amplitudes(k)
    return abs(sum(w * a for w, a in zip(weights.values, amp.values))) ** 2


@dataclass(frozen=True)
class D4Element:
    """One symmetry of the square paired with its colour permutation.

    The geometry acts on unit cells: `quarter_turns` anticlockwise quarter
    rotations about the origin corner, preceded (if `mirrored`) by the
    reflection in the horizontal axis.  ``color_perm[c]`` is the colour that
    must replace c after moving the cells for the pattern to be invariant.
    """

    name: str
    quarter_turns: int
    mirrored: bool
    color_perm: tuple[int, int, int, int]


# Generators: one anticlockwise quarter turn shifts every colour down by one
# (0 -> 3 -> 2 -> 1 -> 0); the horizontal mirror swaps 0 with 1 and 2 with 3.
_ROT_PERM = (3, 0, 1, 2)
_MIRROR_PERM = (1, 0, 3, 2)


def _perm_compose(outer: tuple[int, ...], inner: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(outer[inner[c]] for c in range(len(inner)))


@lru_cache(maxsize=None)
def d4_elements() -> tuple[D4Element, ...]:
    """The eight symmetries, rotations first, in a stable order."""
    elements = []
    for mirrored in (False, True):
        perm = _MIRROR_PERM if mirrored else (0, 1, 2, 3)
        for quarter_turns in range(4):
            name = f"r{90 * quarter_turns}" + ("m" if mirrored else "")
            elements.append(
                D4Element(
                    name=name,
                    quarter_turns=quarter_turns,
                    mirrored=mirrored,
                    color_perm=perm,
                )
            )
            perm = _perm_compose(_ROT_PERM, perm)
    return tuple(elements)


def d4_compose(g: D4Element, h: D4Element) -> D4Element:
    """The element acting like h followed by g."""
    if g.mirrored:
        # The outer mirror conjugates h's rotation: R^a M R^b = R^(a-b) M.
        quarter_turns = (g.quarter_turns - h.quarter_turns) % 4
    else:
        quarter_turns = (g.quarter_turns + h.quarter_turns) % 4
    mirrored = g.mirrored != h.mirrored
    perm = _perm_compose(g.color_perm, h.color_perm)
    name = f"r{90 * quarter_turns}" + ("m" if mirrored else "")
    return D4Element(name, quarter_turns, mirrored, perm)


def _cell_map(g: D4Element, x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Where g sends the unit cell with lower-left corner (x, y)."""
    if g.mirrored:
        x, y = x, -y - 1
    for _ in range(g.quarter_turns):
        x, y = -y - 1, x
    return x, y


def apply_d4(g: D4Element, window: subst.PatternWindow) -> subst.PatternWindow:
    """Move a centred square window by g and recolour it by g's permutation."""
    if window.dim != 2:
        raise ValueError("dihedral symmetries act on plane windows")
    ny, nx = window.labels.shape
    if nx != ny or window.origin != (-(nx // 2), -(ny // 2)) or nx % 2 != 0:
        raise ValueError("window must be a centred square [-h, h)^2")
    labels = window.labels
    if g.mirrored:
        labels = labels[::-1, :]
    for _ in range(g.quarter_turns):
        # One anticlockwise quarter turn: new[iy, ix] = old[n - 1 - ix, iy].
        labels = labels[::-1, :].T
    perm = np.array(g.color_perm, dtype=labels.dtype)
    return subst.PatternWindow(window.origin, perm[labels])


def transform_wavevector(g: D4Element, k: DyadicPoint2) -> DyadicPoint2:
    """The (linear) action of g on wave numbers."""
    if g.mirrored:
        k = k.map_ints(1, 0, 0, -1)
    for _ in range(g.quarter_turns):
        k = k.map_ints(0, -1, 1, 0)
    return k
