"""Windowed estimators and layer-sum approximants.

Everything here approaches the diffraction amplitudes from the pattern
itself rather than from the closed forms, so the two routes can be compared:

* ``empirical_autocorrelation`` averages w(x) conj(w(x - z)) over a finite
  centred window, normalised by the full window cardinality.

* ``empirical_amplitude`` is the normalised exponential sum
  (2N+1)^{-d} sum_x w(x) e^{-2 pi i k.x}.  At dyadic k the exponential only
  depends on x mod 2^s, so the sum is grouped exactly into residue-class
  counts times one root of unity each.  The grouping makes the estimator
  deterministic to the last bit: the counts are integers and the remaining
  sum has at most (levels of grey) * 4^s terms.

* ``approximant_amplitude_chair`` rebuilds a colour amplitude of the block
  fixed point by summing exact layer coefficients (``chair.coset_amplitude``)
  up to a cut-off level, with the colour's translation phase applied last.
  The two diagonal rays in each colour class have density zero and drop out
  of amplitudes, so truncating the layer sum is the only approximation.

``compare`` packages reference-vs-estimate sweeps into a report.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import chair, period_doubling
from .dyadic import Dyadic, DyadicPoint2, phase
from .subst import PatternWindow

__all__ = [
    "WeightedComb",
    "pd_comb",
    "chair_comb",
    "empirical_autocorrelation",
    "empirical_amplitude",
    "approximant_amplitude_chair",
    "ComparisonRecord",
    "ComparisonReport",
    "compare",
]


class WeightedComb:
    """A weighted Dirac comb restricted to the centred cube [-N, N]^d.

    ``weights[label]`` is the complex scattering weight carried by every
    cell of that label.  Residue-class label counts are cached per modulus
    because amplitude evaluation at many wave numbers reuses them.
    """

    def __init__(self, window: PatternWindow, weights) -> None:
        weights = tuple(complex(w) for w in weights)
        extent = window.extent
        if any(size != extent[0] for size in extent):
            raise ValueError("window must be a cube")
        if extent[0] % 2 != 1:
            raise ValueError("window side must be odd (2N+1)")
        half = extent[0] // 2
        if window.origin != (-half,) * window.dim:
            raise ValueError("window must be centred: [-N, N]^d")
        if int(window.labels.max()) >= len(weights):
            raise ValueError("every window label needs a weight")
        self.window = window
        self.weights = weights
        self.half = half
        self._weight_array: np.ndarray | None = None
        self._residue_counts: dict[int, np.ndarray] = {}

    @property
    def dim(self) -> int:
        return self.window.dim

    def weight_array(self) -> np.ndarray:
        """w(x) over the window as a complex array, cached."""
        if self._weight_array is None:
            table = np.array(self.weights, dtype=complex)
            self._weight_array = table[self.window.labels]
        return self._weight_array

    def residue_counts(self, modulus: int) -> np.ndarray:
        """Occurrences of each (label, position mod modulus) pair, cached.

        Shape (len(weights), modulus) in one dimension and
        (len(weights), modulus, modulus) in two, the residues ordered
        (y mod modulus, x mod modulus).
        """
        counts = self._residue_counts.get(modulus)
        if counts is not None:
            return counts
        n_labels = len(self.weights)
        labels = self.window.labels.astype(np.int64)
        half = self.half
        if self.dim == 1:
            rx = np.arange(-half, half + 1, dtype=np.int64) % modulus
            keys = labels * modulus + rx
            counts = np.bincount(keys, minlength=n_labels * modulus)
            counts = counts.reshape(n_labels, modulus)
        else:
            rx = (np.arange(-half, half + 1, dtype=np.int64) % modulus)[None, :]
            ry = (np.arange(-half, half + 1, dtype=np.int64) % modulus)[:, None]
            keys = (labels * modulus + ry) * modulus + rx
            counts = np.bincount(keys.ravel(), minlength=n_labels * modulus * modulus)
            counts = counts.reshape(n_labels, modulus, modulus)
        self._residue_counts[modulus] = counts
        return counts


def pd_comb(half: int, weights) -> WeightedComb:
    """Comb over the chain fixed point on [-N, N], weights = (alpha, beta)."""
    labels = period_doubling.label_window(-half, half + 1)
    return WeightedComb(PatternWindow((-half,), labels), weights)


def chair_comb(half: int, weights) -> WeightedComb:
    """Comb over the block fixed point on [-N, N]^2, one weight per colour."""
    labels = chair.label_grid(-half, half + 1, -half, half + 1)
    return WeightedComb(PatternWindow((-half, -half), labels), weights)


def empirical_autocorrelation(comb: WeightedComb, z) -> complex:
    """Windowed autocorrelation coefficient at the integer shift z.

    Averages w(x) conj(w(x - z)) over all window cells x whose shifted
    partner also lies in the window, still normalising by the full
    cardinality (2N+1)^d, so missing boundary terms count as zero.  The
    shift must satisfy |z| <= N/2 componentwise to keep the boundary
    deficit small against the estimate itself.
    """
    half = comb.half
    weights = comb.weight_array()
    if comb.dim == 1:
        if not isinstance(z, int):
            raise TypeError("one-dimensional shift must be an integer")
        shifts = (z,)
    else:
        shifts = tuple(z)
        if len(shifts) != 2:
            raise ValueError("two-dimensional shift must be a pair")
    if any(abs(c) > half // 2 for c in shifts):
        raise ValueError(f"shift {z} outside allowed range |z| <= {half // 2}")
    size = 2 * half + 1
    if comb.dim == 1:
        (zx,) = shifts
        lo, hi = max(0, zx), size + min(0, zx)
        prod = weights[lo:hi] * np.conj(weights[lo - zx : hi - zx])
    else:
        zx, zy = shifts
        xlo, xhi = max(0, zx), size + min(0, zx)
        ylo, yhi = max(0, zy), size + min(0, zy)
        prod = weights[ylo:yhi, xlo:xhi] * np.conj(
            weights[ylo - zy : yhi - zy, xlo - zx : xhi - zx]
        )
    return complex(prod.sum()) / float(size**comb.dim)


def _phase_table(numerator: int, den_exp: int) -> np.ndarray:
    """e^{-2 pi i numerator t / 2^den_exp} for t = 0 .. 2^den_exp - 1."""
    modulus = 1 << den_exp
    return np.array(
        [phase(Dyadic.of(-numerator * t, den_exp)) for t in range(modulus)],
        dtype=complex,
    )


def empirical_amplitude(comb: WeightedComb, k) -> complex:
    """Normalised exponential sum (2N+1)^{-d} sum_x w(x) e^{-2 pi i k.x}.

    As the window grows this converges to the peak amplitude at module
    points and to zero elsewhere.  Dyadic k makes the kernel periodic with
    period 2^s per axis, so the sum is evaluated exactly from the cached
    residue-class counts.
    """
    if comb.dim == 1:
        if not isinstance(k, Dyadic):
            raise TypeError("one-dimensional wave numbers are Dyadic")
        modulus = 1 << k.r
        counts = comb.residue_counts(modulus)
        kernel = _phase_table(k.m, k.r)
        per_label = (counts * kernel[None, :]).sum(axis=1)
    else:
        if not isinstance(k, DyadicPoint2):
            raise TypeError("two-dimensional wave numbers are DyadicPoint2")
        modulus = 1 << k.s
        counts = comb.residue_counts(modulus)
        kernel = np.outer(_phase_table(k.n, k.s), _phase_table(k.m, k.s))
        per_label = (counts * kernel[None, :, :]).sum(axis=(1, 2))
    total = sum(w * t for w, t in zip(comb.weights, per_label))
    size = 2 * comb.half + 1
    return complex(total) / float(size**comb.dim)


def approximant_amplitude_chair(levels: int, color: int, k: DyadicPoint2) -> complex:
    """Colour amplitude rebuilt from hierarchy layers 0 .. levels.

    Each colour class is a translate of a stack of layered coset unions
    along its diagonal direction, plus two rays of density zero that do not
    affect amplitudes.  The translation contributes only the phase
    e^{-2 pi i k . shift}; the layers contribute ``chair.coset_amplitude``.
    The discarded tail is geometric (ratio 1/2 in amplitude), so levels=20
    already sits within 1e-6 of the closed form.
    """
    if levels < 0:
        raise ValueError(f"negative layer cut-off: {levels}")
    if color not in (0, 1, 2, 3):
        raise ValueError(f"unknown colour: {color}")
    step = chair.COLOR_STEPS[color]
    shift = chair.COLOR_SHIFTS[color]
    total = 0j
    for level in range(levels + 1):
        total += chair.coset_amplitude(level, step, k)
    return phase(-(k.dot(shift))) * total


@dataclass(frozen=True)
class ComparisonRecord:
    """One wave number with both evaluation routes and their distance."""

    k: object
    closed_form: complex
    empirical: complex
    abs_error: float


@dataclass(frozen=True)
class ComparisonReport:
    """A reference-vs-estimate sweep with summary statistics."""

    records: tuple[ComparisonRecord, ...]
    max_error: float
    mean_error: float
    window_size: int


def compare(reference_fn, estimate_fn, points, *, window_size: int = 0) -> ComparisonReport:
    """Evaluate both routes at each point, in the given order.

    ``window_size`` is carried through to the report untouched; pass the
    window cardinality when the estimate came from a finite window.
    """
    records = []
    for k in points:
        reference = complex(reference_fn(k))
        estimate = complex(estimate_fn(k))
        records.append(
            ComparisonRecord(
                k=k,
                closed_form=reference,
                empirical=estimate,
                abs_error=abs(reference - estimate),
            )
        )
    if records:
        max_error = max(record.abs_error for record in records)
        mean_error = sum(record.abs_error for record in records) / len(records)
    else:
        max_error = 0.0
        mean_error = 0.0
    return ComparisonReport(
        records=tuple(records),
        max_error=max_error,
        mean_error=mean_error,
        window_size=window_size,
    )
