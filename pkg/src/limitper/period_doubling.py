"""Closed-form diffraction analytics for the two-letter doubling chain.

The chain is the bi-infinite fixed point, under the squared rule, of
a -> ab, b -> aa grown from the seed a|a.  Every quantity here is exact:

* letter membership comes from the residue-class solution of the fixed
  point equations (b sits exactly on the classes 2*4^(i-1) - 1 mod 4^i),
* the two-valued autocorrelation follows its halving recursion in rational
  arithmetic,
* each dyadic wave number m / 2^r carries a closed-form amplitude pair,
  one amplitude per letter, and weighted peak intensities follow from
  those by sesquilinear combination.

The one aperiodic subtlety: position -1 never matches any residue class.
It is the 2-adic limit point of the hierarchy and is fixed to letter a,
matching the seed the window construction uses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import subst
from .dyadic import Dyadic, module_interval, phase

__all__ = [
    "LETTER_A",
    "LETTER_B",
    "Weights",
    "Amplitudes",
    "system",
    "doubled_system",
    "seed",
    "pattern_window",
    "label",
    "label_window",
    "autocorr_balanced",
    "autocorr_balanced_closed_form",
    "autocorr",
    "amplitudes",
    "intensity",
    "peak_mass",
]

LETTER_A = 0
LETTER_B = 1

ALPHABET = ("a", "b")


@lru_cache(maxsize=None)
def system() -> subst.SubstitutionSystem:
    """The bundled doubling rule a -> ab, b -> aa."""
    return subst.bundled_system("period_doubling")


@lru_cache(maxsize=None)
def doubled_system() -> subst.SubstitutionSystem:
    """The squared rule; the two-sided seed a|a is legal for it but not for the rule itself."""
    return system().power(2)


def seed() -> subst.PatternWindow:
    return subst.word_seed(doubled_system(), "a", "a")


def pattern_window(iterations: int) -> subst.PatternWindow:
    """The fixed-point window on [-4^n, 4^n) grown by the squared rule."""
    return subst.fixed_point_window(doubled_system(), seed(), iterations)


def label(n: int) -> int:
    """LETTER_B where the chain carries b, LETTER_A elsewhere (including n = -1).

    b occupies the arithmetic progressions 2*4^(i-1) - 1 mod 4^i, i >= 1; a
    occupies everything else.  A match needs 4^i <= 2(|n| + 1), so the scan
    is logarithmic in |n|.
    """
    bound = 2 * (abs(n) + 1)
    modulus = 4
    while modulus <= bound:
        if n % modulus == modulus // 2 - 1:
            return LETTER_B
        modulus *= 4
    return LETTER_A


def label_window(lo: int, hi: int) -> np.ndarray:
    """Labels for the positions lo..hi-1 as a uint8 array (vectorised `label`)."""
    if hi < lo:
        raise ValueError(f"empty range: [{lo}, {hi})")
    positions = np.arange(lo, hi, dtype=np.int64)
    out = np.zeros(positions.shape, dtype=np.uint8)
    bound = 2 * (max(abs(lo), abs(hi)) + 1)
    modulus = 4
    while modulus <= bound:
        out[positions % modulus == modulus // 2 - 1] = LETTER_B
        modulus *= 4
    return out


def autocorr_balanced(shift: int) -> Fraction:
    """Autocorrelation coefficient of the +-1 letter comb at an integer shift.

    Defined by the recursion eta(0) = 1, eta(odd) = -1/3 and
    eta(2m) = (1 + eta(m)) / 2, evaluated exactly.
    """
    shift = abs(shift)
    if shift == 0:
        return Fraction(1)
    halvings = (shift & -shift).bit_length() - 1
    value = Fraction(-1, 3)
    for _ in range(halvings):
        value = (1 + value) / 2
    return value


def autocorr_balanced_closed_form(shift: int) -> Fraction:
    """The same coefficient in closed form: 1 - 4 / (3 * 2^r) for shift = 2^r * odd."""
    shift = abs(shift)
    if shift == 0:
        return Fraction(1)
    halvings = (shift & -shift).bit_length() - 1
    return 1 - Fraction(4, 3 * (1 << halvings))


@dataclass(frozen=True)
class Weights:
    """Complex scattering weights for the two letters."""

    alpha: complex
    beta: complex


def autocorr(shift: int, weights: Weights) -> complex:
    """Autocorrelation of the weighted comb at an integer shift.

    Writing the weight function as p + q * sign (sign = +1 on a, -1 on b),
    the mean of sign is 1/3 and the sign autocorrelation is the balanced
    coefficient, hence |p|^2 + (2/3) Re(p conj(q)) + |q|^2 eta(shift).
    """
    p = (weights.alpha + weights.beta) / 2
    q = (weights.alpha - weights.beta) / 2
    base = abs(p) ** 2 + (2.0 / 3.0) * (p * q.conjugate()).real
    return complex(base + abs(q) ** 2 * float(autocorr_balanced(shift)))


@dataclass(frozen=True)
class Amplitudes:
    """Per-letter peak amplitudes at one dyadic wave number."""

    k: Dyadic
    a: complex
    b: complex


def amplitudes(k: Dyadic) -> Amplitudes:
    """Closed-form amplitude pair at k = m / 2^r.

    The a amplitude is 2 / (3 (-2)^r) e^{2 pi i k}; the b amplitude is its
    complement against the full-lattice comb, which only contributes on
    integer wave numbers.
    """
    amp_a = (2.0 / (3.0 * float((-2) ** k.r))) * phase(k)
    amp_b = (1.0 if k.r == 0 else 0.0) - amp_a
    return Amplitudes(k=k, a=amp_a, b=amp_b)


def intensity(k: Dyadic, weights: Weights) -> float:
    """Peak intensity |alpha A + beta B|^2 at a dyadic wave number."""
    amp = amplitudes(k)
    return abs(weights.alpha * amp.a + weights.beta * amp.b) ** 2


def peak_mass(r_max: int, weights: Weights) -> float:
    """Total intensity of all peaks with denominator exponent <= r_max in [0, 1).

    For the balanced weights this converges to the autocorrelation at shift
    zero, i.e. to 1, as r_max grows; the tail decays geometrically.
    """
    return sum(intensity(k, weights) for k in module_interval(r_max, 0, 1, include_hi=False))
