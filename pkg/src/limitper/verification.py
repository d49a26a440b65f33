"""Named self-checks crossing every computation route against the others.

Each check pits two independent routes to the same quantity against each
other (recursion vs closed form, congruences vs substitution, layer sums vs
case formulas, windowed sums vs limits) or asserts an identity the closed
forms must satisfy.  ``run_checks`` runs them all and reports one result per
name; ``quick=True`` shrinks windows and cut-offs to keep the suite under a
few seconds.

The ``tamper`` argument is a negative-control hook for tests: naming a check
perturbs the weight table that check feeds to its estimator or identity, so
it must come back failed.  Checks that use no weight table ignore the hook.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import chair, numerics, period_doubling
from .dyadic import Dyadic, DyadicPoint2, module_box, module_interval, phase
from .subst import PatternWindow

__all__ = ["CheckResult", "run_checks", "report_text", "CHECK_NAMES"]


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named check."""

    name: str
    passed: bool
    detail: str


def _perturb(weights):
    """Nudge the last weight so estimates and references disagree."""
    values = list(weights)
    values[-1] = values[-1] * 0.9 if values[-1] != 0 else 0.1
    return tuple(values)


def _pick(weights, name, tamper):
    return _perturb(weights) if name in tamper else tuple(weights)


# ---------------------------------------------------------------------------
# Doubling chain checks
# ---------------------------------------------------------------------------


def _check_pd_eta(quick, tamper):
    limit = 1 << (12 if quick else 16)
    for m in range(1, limit + 1):
        if period_doubling.autocorr_balanced(m) != period_doubling.autocorr_balanced_closed_form(m):
            return False, f"recursion and closed form split at shift {m}"
        if m % 2 == 1 and period_doubling.autocorr_balanced(m) != Fraction(-1, 3):
            return False, f"odd shift {m} not -1/3"
    return True, f"exact agreement for all shifts up to {limit}"


def _check_pd_labels(quick, tamper):
    iterations = 6 if quick else 9
    window = period_doubling.pattern_window(iterations)
    half = 4**iterations
    direct = period_doubling.label_window(-half, half)
    if not np.array_equal(window.labels, direct):
        where = int(np.flatnonzero(window.labels != direct)[0]) - half
        return False, f"congruence labels disagree with the fixed point at {where}"
    return True, f"congruences match the fixed point on [-{half}, {half})"


def _check_pd_amplitude_relations(quick, tamper):
    weights = period_doubling.Weights(*_pick((1, -1), "pd-amplitude-relations", tamper))
    frozen = [
        (Dyadic(0), 2 / 3 + 0j, 1 / 3 + 0j),
        (Dyadic(1, 1), 1 / 3 + 0j, -1 / 3 + 0j),
        (Dyadic(1, 2), 1j / 6, -1j / 6),
    ]
    for k, amp_a, amp_b in frozen:
        got = period_doubling.amplitudes(k)
        if abs(got.a - amp_a) > 1e-15 or abs(got.b - amp_b) > 1e-15:
            return False, f"amplitude pair at {k} off the pinned value"
    for k in module_interval(5 if quick else 8, 0, 1, include_hi=False):
        shifted = Dyadic(k.m + (1 << k.r), k.r)
        if abs(period_doubling.amplitudes(k).a) != abs(period_doubling.amplitudes(shifted).a):
            return False, f"|A| not lattice-periodic at {k}"
    balanced = [
        (Dyadic(0), 1 / 9),
        (Dyadic(1, 1), 4 / 9),
        (Dyadic(1, 2), 1 / 9),
    ]
    for k, expected in balanced:
        if abs(period_doubling.intensity(k, weights) - expected) > 1e-12:
            return False, f"balanced intensity at {k} not {expected}"
    return True, "pinned amplitudes, lattice periodicity, balanced intensities"


def _check_pd_peak_mass(quick, tamper):
    r_max = 8 if quick else 12
    weights = period_doubling.Weights(*_pick((1, -1), "pd-peak-mass", tamper))
    mass = period_doubling.peak_mass(r_max, weights)
    if not 0.99 <= mass <= 1 + 1e-9:
        return False, f"peak mass {mass:.6f} outside [0.99, 1] at r <= {r_max}"
    return True, f"peak mass {mass:.6f} at r <= {r_max}"


def _check_pd_empirical_amplitudes(quick, tamper):
    half = 1 << (16 if quick else 20)
    r_max = 4 if quick else 6
    tol = 0.02 if quick else 0.01
    points = module_interval(r_max, 0, 1, include_hi=False)
    worst = 0.0
    for alpha, beta in ((1, 0), (0, 1), (1, -1)):
        comb_weights = _pick((alpha, beta), "pd-empirical-amplitudes", tamper)
        comb = numerics.pd_comb(half, comb_weights)
        report = numerics.compare(
            lambda k: alpha * period_doubling.amplitudes(k).a
            + beta * period_doubling.amplitudes(k).b,
            lambda k: numerics.empirical_amplitude(comb, k),
            points,
            window_size=2 * half + 1,
        )
        worst = max(worst, report.max_error)
    if worst > tol:
        return False, f"max closed-vs-windowed error {worst:.4f} > {tol}"
    return True, f"max error {worst:.4f} over r <= {r_max}, window half {half}"


def _check_pd_empirical_autocorr(quick, tamper):
    half = 1 << (16 if quick else 20)
    z_max = 16 if quick else 64
    tol = 0.02 if quick else 0.01
    comb_weights = _pick((1, -1), "pd-empirical-autocorrelation", tamper)
    comb = numerics.pd_comb(half, comb_weights)
    weights = period_doubling.Weights(1, -1)
    worst = 0.0
    for z in range(-z_max, z_max + 1):
        expected = period_doubling.autocorr(z, weights)
        got = numerics.empirical_autocorrelation(comb, z)
        worst = max(worst, abs(expected - got))
    if worst > tol:
        return False, f"max autocorrelation error {worst:.4f} > {tol}"
    return True, f"max error {worst:.4f} for |z| <= {z_max}, window half {half}"


# ---------------------------------------------------------------------------
# Block colouring checks
# ---------------------------------------------------------------------------

_GOLDEN_8X8 = (
    "3 2 1 2 1 2 1 0",
    "0 3 2 3 0 1 0 3",
    "1 0 3 2 1 0 3 2",
    "0 3 0 3 0 3 0 3",
    "1 2 1 2 1 2 1 2",
    "0 1 2 3 0 1 2 3",
    "1 2 3 2 1 0 1 2",
    "2 3 0 3 0 3 0 1",
)


def _check_chair_labels(quick, tamper):
    iterations = 8 if quick else 10
    half = 1 << iterations
    window = chair.pattern_window(iterations)
    direct = chair.label_grid(-half, half, -half, half)
    if not np.array_equal(window.labels, direct):
        return False, "halving-chain labels disagree with the fixed point"
    for (x, y), colour in (((0, 0), 0), ((0, -1), 1), ((-1, -1), 2), ((-1, 0), 3)):
        if chair.label((x, y)) != colour:
            return False, f"seed cell {(x, y)} not colour {colour}"
    central = chair.label_grid(-4, 4, -4, 4)
    rows = tuple(" ".join(str(v) for v in row) for row in central[::-1])
    if rows != _GOLDEN_8X8:
        return False, "central 8x8 block off its pinned value"
    return True, f"chains match the fixed point on [-{half}, {half})^2"


def _check_chair_amplitude_relations(quick, tamper):
    s_max = 3 if quick else 5
    frozen = [
        (DyadicPoint2(0, 0), (0.25, 0.25, 0.25, 0.25)),
        (DyadicPoint2(1, 1, 1), (0.25, -0.25, 0.25, -0.25)),
        (DyadicPoint2(1, 0, 1), (0.125, 0.125, -0.125, -0.125)),
        (DyadicPoint2(1, 0, 2), ((1 - 1j) / 32, (1 - 1j) / 32, -(1 - 1j) / 32, -(1 - 1j) / 32)),
        (DyadicPoint2(1, 1, 2), (-0.125, 0, 0.125, 0)),
    ]
    for k, expected in frozen:
        got = chair.amplitudes(k).values
        if any(abs(g - e) > 1e-15 for g, e in zip(got, expected)):
            return False, f"amplitudes at {k} off the pinned values"
    for k in module_box(s_max, (-1, 1)):
        values = chair.amplitudes(k).values
        minus = chair.amplitudes(-k).values
        if any(abs(m - v.conjugate()) > 1e-12 for m, v in zip(minus, values)):
            return False, f"Hermitian symmetry broken at {k}"
        if k.s >= 2 and (values[2] != -values[0] or values[3] != -values[1]):
            return False, f"anti-pairing broken at {k}"
    return True, f"pinned values, Hermitian symmetry, anti-pairing for s <= {s_max}"


def _half_even_lattice(k: DyadicPoint2) -> bool:
    # (m, n) / 2^s lies in (1/2) * (even sublattice) iff s = 0, or s = 1
    # with both numerators odd.
    return k.s == 0 or (k.s == 1 and k.m % 2 == 1 and k.n % 2 == 1)


def _check_chair_sum_rules(quick, tamper):
    s_max = 3 if quick else 5
    for k in module_box(s_max, (-1, 1)):
        values = chair.amplitudes(k).values
        even_pair = values[0] + values[2]
        odd_pair = values[1] + values[3]
        if _half_even_lattice(k):
            expected_odd = 0.5 * phase(Dyadic.of(-k.m, k.s))
            if abs(even_pair - 0.5) > 1e-12 or abs(odd_pair - expected_odd) > 1e-12:
                return False, f"sum rule broken on the half lattice at {k}"
        else:
            if abs(even_pair) > 1e-12 or abs(odd_pair) > 1e-12:
                return False, f"pair sums nonzero off the half lattice at {k}"
    return True, f"pair sums match on and off the half lattice for s <= {s_max}"


def _check_chair_extinctions(quick, tamper):
    s_max = 3 if quick else 5
    ones = chair.Weights(_pick((1, 1, 1, 1), "chair-extinctions", tamper))
    fourth = chair.Weights(_pick((1, 1j, -1, -1j), "chair-extinctions", tamper))
    for k in module_box(s_max, (-1, 1)):
        lattice = abs(chair.intensity(k, ones) - (1.0 if k.s == 0 else 0.0))
        if lattice > 1e-12:
            return False, f"all-ones intensity wrong at {k}"
        if _half_even_lattice(k):
            values = chair.amplitudes(k).values
            total = sum(w * a for w, a in zip(fourth.values, values))
            if abs(total) > 1e-12:
                return False, f"fourth-root weights not extinct at {k}"
    return True, f"lattice comb and fourth-root extinctions hold for s <= {s_max}"


def _check_chair_approximant(quick, tamper):
    s_max = 3 if quick else 5
    levels = 12 if quick else 20
    tol = 1e-4 if quick else 1e-6
    worst = 0.0
    for k in module_box(s_max, (-1, 1)):
        values = chair.amplitudes(k).values
        for colour in range(4):
            approx = numerics.approximant_amplitude_chair(levels, colour, k)
            worst = max(worst, abs(approx - values[colour]))
    if worst > tol:
        return False, f"layer sums drift {worst:.2e} > {tol:.0e} from closed forms"
    return True, f"max layer-sum error {worst:.2e} at {levels} levels, s <= {s_max}"


def _check_chair_empirical_amplitudes(quick, tamper):
    half = 256 if quick else 1024
    s_max = 3 if quick else 4
    tol = 0.05 if quick else 0.01
    labels = chair.label_grid(-half, half + 1, -half, half + 1)
    window = PatternWindow((-half, -half), labels)
    points = module_box(s_max, (-1, 1))
    worst = 0.0
    for colour in range(4):
        one_hot = tuple(1.0 if i == colour else 0.0 for i in range(4))
        comb = numerics.WeightedComb(
            window, _pick(one_hot, "chair-empirical-amplitudes", tamper)
        )
        for k in points:
            expected = chair.amplitudes(k).values[colour]
            got = numerics.empirical_amplitude(comb, k)
            worst = max(worst, abs(expected - got))
    if worst > tol:
        return False, f"max closed-vs-windowed error {worst:.4f} > {tol}"
    return True, f"max error {worst:.4f} per colour, s <= {s_max}, window half {half}"


def _check_chair_d4_window(quick, tamper):
    half = 128 if quick else 512
    labels = chair.label_grid(-half, half, -half, half)
    window = PatternWindow((-half, -half), labels)
    for element in chair.d4_elements():
        if chair.apply_d4(element, window) != window:
            return False, f"window not invariant under {element.name}"
    return True, f"all 8 symmetries fix the recoloured window, half {half}"


def _check_chair_d4_intensity(quick, tamper):
    s_max = 3 if quick else 5
    weights = chair.Weights(_pick((1, 1j, -1, -1j), "chair-d4-intensity-symmetry", tamper))
    for k in module_box(s_max, (0, 1), include_hi=False):
        reference = chair.intensity(k, weights)
        for element in chair.d4_elements():
            moved = chair.transform_wavevector(element, k)
            if abs(chair.intensity(moved, weights) - reference) > 1e-10:
                return False, f"intensity not {element.name}-symmetric at {k}"
    return True, f"fourth-root intensities are dihedral-symmetric for s <= {s_max}"


def _check_chair_periodicity(quick, tamper):
    s_max = 3 if quick else 5
    generic = (0.8 + 0.3j, -0.5 + 0.9j, 0.2 - 0.7j, -0.9 - 0.4j)
    weights = chair.Weights(_pick(generic, "chair-lattice-periodicity", tamper))
    pair = chair.Weights((1, 0, 1, 0))
    for k in module_box(s_max, (0, 1), include_hi=False):
        reference = chair.intensity(k, weights)
        for shift in ((1, 0), (0, 1)):
            moved = k + shift
            if abs(chair.intensity(moved, weights) - reference) > 1e-10:
                return False, f"intensity not lattice-periodic at {k} + {shift}"
    for k in module_box(s_max, (0, 1), include_hi=False):
        moved = _shift_half_diagonal(k)
        if abs(chair.intensity(moved, pair) - chair.intensity(k, pair)) > 1e-10:
            return False, f"pair-comb intensity not half-lattice-periodic at {k}"
    return True, f"lattice and half-lattice periodicities hold for s <= {s_max}"


def _shift_half_diagonal(k: DyadicPoint2) -> DyadicPoint2:
    """k + (1/2, 1/2) in normal form."""
    if k.s == 0:
        return DyadicPoint2.of(2 * k.m + 1, 2 * k.n + 1, 1)
    return DyadicPoint2.of(k.m + (1 << (k.s - 1)), k.n + (1 << (k.s - 1)), k.s)


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------

_CHECKS = (
    ("pd-eta-recursion-closed-form", _check_pd_eta),
    ("pd-label-window-agreement", _check_pd_labels),
    ("pd-amplitude-relations", _check_pd_amplitude_relations),
    ("pd-peak-mass", _check_pd_peak_mass),
    ("pd-empirical-amplitudes", _check_pd_empirical_amplitudes),
    ("pd-empirical-autocorrelation", _check_pd_empirical_autocorr),
    ("chair-label-window-agreement", _check_chair_labels),
    ("chair-amplitude-relations", _check_chair_amplitude_relations),
    ("chair-sum-rules", _check_chair_sum_rules),
    ("chair-extinctions", _check_chair_extinctions),
    ("chair-approximant-agreement", _check_chair_approximant),
    ("chair-empirical-amplitudes", _check_chair_empirical_amplitudes),
    ("chair-d4-window-invariance", _check_chair_d4_window),
    ("chair-d4-intensity-symmetry", _check_chair_d4_intensity),
    ("chair-lattice-periodicity", _check_chair_periodicity),
)

CHECK_NAMES = tuple(name for name, _ in _CHECKS)


def run_checks(*, quick: bool = False, tamper=frozenset()) -> tuple[CheckResult, ...]:
    """Run every named check and collect the results in a stable order."""
    tamper = frozenset(tamper)
    unknown = tamper - set(CHECK_NAMES)
    if unknown:
        raise ValueError(f"unknown check names: {sorted(unknown)}")
    results = []
    for name, check in _CHECKS:
        passed, detail = check(quick, tamper)
        results.append(CheckResult(name=name, passed=passed, detail=detail))
    return tuple(results)


def report_text(results) -> str:
    """One PASS/FAIL line per check."""
    lines = [
        f"{'PASS' if result.passed else 'FAIL'} {result.name}: {result.detail}"
        for result in results
    ]
    failed = [result.name for result in results if not result.passed]
    if failed:
        lines.append(f"{len(failed)} of {len(results)} checks failed, first: {failed[0]}")
    else:
        lines.append(f"all {len(results)} checks passed")
    return "\n".join(lines) + "\n"
