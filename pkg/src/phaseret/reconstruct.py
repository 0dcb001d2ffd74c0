"""Constructive inversion of the three Gaussian-mask magnitude records.

The pipeline recovers the complex spectrum F = F[gauss * phi] from the three
magnitude records, integrates its phase derivative, and divides out the
Gaussian window.  The same module classifies signal pairs up to global phase /
conjugate reflection and builds the rational-ratio counterexample that defeats
the sine mask family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .equivalence import EquivalenceVerdict, VerdictKind
from .grid_signal import (
    Gauss,
    GaussAffine,
    GaussDeriv,
    Grid,
    GridSignal,
    conj_reflect,
    eval_mask,
    inner,
    inverse_fourier,
    norm,
)
from .measurement import MeasurementRecord

__all__ = [
    "DegenerateSignalError",
    "Spectrum",
    "recover_fprime_fbar",
    "integrate_phase",
    "reconstruct_three",
    "classify_pair",
    "best_phase",
    "sine_rational_counterexample",
]


class DegenerateSignalError(Exception):
    """The magnitude record carries no usable phase information."""


@dataclass(frozen=True)
class Spectrum:
    """Recovered complex spectrum on a frequency grid.

    ``support`` holds the inclusive index bounds of the interval on which the
    phase was actually integrated; outside it the values fall back to the raw
    magnitudes (zero phase) and are extrapolation only.
    """

    grid: Grid
    F: np.ndarray = field(repr=False)
    Fprime: np.ndarray = field(repr=False)
    support: tuple[int, int]


def _check_gaussian_triple(
    rec1: MeasurementRecord, rec2: MeasurementRecord, rec3: MeasurementRecord
) -> None:
    if not (rec1.grid == rec2.grid == rec3.grid):
        raise ValueError("the three records must share one grid")
    expected = (Gauss(), GaussDeriv(), GaussAffine())
    got = (rec1.mask, rec2.mask, rec3.mask)
    if got != expected:
        raise ValueError(
            f"records must carry the masks (gauss, gauss-deriv, gauss-affine) "
            f"in that order, got {tuple(type(m).__name__ for m in got)}"
        )


def recover_fprime_fbar(
    rec1: MeasurementRecord, rec2: MeasurementRecord, rec3: MeasurementRecord
) -> np.ndarray:
    """Samples of F' * conj(F) on the dual grid, from magnitudes alone.

    With F = F[gauss*phi] the three records give |F|, |F'| and |F - iF'|
    (the derivative satisfies F' = -i F[2*pi*t*gauss*phi] under this
    transform normalization).  Hence

        Re{F' conj(F)} = (|F|^2)' / 2        (centered differences)
        Im{F' conj(F)} = (|F - iF'|^2 - |F|^2 - |F'|^2) / 2   (pointwise)

    The real part is exactly the centered second-order difference of
    rec1^2 / 2, one-sided at the grid ends.
    """
    _check_gaussian_triple(rec1, rec2, rec3)
    h = rec1.dual_grid().spacing
    s1 = rec1.magnitudes**2
    s2 = rec2.magnitudes**2
    s3 = rec3.magnitudes**2
    edge = 2 if rec1.grid.n >= 3 else 1
    re = 0.5 * np.gradient(s1, h, edge_order=edge)
    im = 0.5 * (s3 - s1 - s2)
    return re + 1j * im


def _largest_run(mask: np.ndarray) -> tuple[int, int]:
    """Inclusive bounds of the longest run of True values."""
    padded = np.concatenate(([False], mask, [False])).astype(int)
    d = np.diff(padded)
    starts = np.flatnonzero(d == 1)
    ends = np.flatnonzero(d == -1) - 1
    k = int(np.argmax(ends - starts))
    return int(starts[k]), int(ends[k])


def integrate_phase(
    fpf: np.ndarray, rec1: MeasurementRecord, zero_tol: float = 1e-6
) -> Spectrum:
    """Recover F = |F| e^{i theta} by integrating the phase derivative.

    Since Im{F' conj(F)} = |F|^2 * theta', the phase is the cumulative
    trapezoidal integral of Im(fpf)/rec1^2 over the largest contiguous
    dual-grid interval where rec1 > zero_tol * max(rec1), anchored at zero at
    the interval's left end.  Outside the interval F is set to the raw
    magnitudes (zero phase).  The recovered signal is therefore determined up
    to one global phase only.
    """
    if not 0 < zero_tol < 1:
        raise ValueError(f"zero_tol must lie in (0, 1), got {zero_tol}")
    m = rec1.magnitudes
    if fpf.shape != m.shape:
        raise ValueError("fpf and rec1 must live on the same grid")
    mx = float(m.max(initial=0.0))
    if mx <= 0.0:
        raise DegenerateSignalError("record is identically zero")
    lo, hi = _largest_run(m > zero_tol * mx)

    h = rec1.dual_grid().spacing
    g = fpf.imag[lo : hi + 1] / m[lo : hi + 1] ** 2
    theta = np.zeros(hi - lo + 1)
    theta[1:] = np.cumsum(0.5 * h * (g[1:] + g[:-1]))

    F = m.astype(complex).copy()
    F[lo : hi + 1] = m[lo : hi + 1] * np.exp(1j * theta)
    Fprime = np.zeros_like(F)
    Fprime[lo : hi + 1] = fpf[lo : hi + 1] * np.exp(1j * theta) / m[lo : hi + 1]
    return Spectrum(rec1.dual_grid(), F, Fprime, (lo, hi))


def reconstruct_three(
    rec1: MeasurementRecord,
    rec2: MeasurementRecord,
    rec3: MeasurementRecord,
    zero_tol: float = 1e-9,
    window_floor: float = 1e-6,
) -> GridSignal:
    """Recover phi (up to one unimodular constant) from the Gaussian triple.

    The spectrum from :func:`integrate_phase` is transformed back to the time
    grid and divided by the Gaussian window.  Division is suppressed (values
    zeroed) where the window falls below ``window_floor``: beyond that point
    the exponential amplification of spectral extrapolation noise exceeds any
    information the samples still carry.
    """
    fpf = recover_fprime_fbar(rec1, rec2, rec3)
    spectrum = integrate_phase(fpf, rec1, zero_tol=zero_tol)
    masked = inverse_fourier(GridSignal(spectrum.grid, spectrum.F))
    window = eval_mask(Gauss(), rec1.grid).values.real
    keep = window >= window_floor
    vals = np.where(keep, masked.values / np.where(keep, window, 1.0), 0.0)
    return GridSignal(rec1.grid, vals)


def best_phase(reference: GridSignal, candidate: GridSignal) -> complex:
    """Unimodular c minimizing ||candidate - c*reference||; 1 if undetermined."""
    ip = inner(reference, candidate)
    return ip / abs(ip) if ip != 0 else 1.0 + 0.0j


def classify_pair(
    phi: GridSignal, psi: GridSignal, tol: float = 1e-6
) -> EquivalenceVerdict:
    """Classify a pair as global-phase / conjugate-reflection / distinct.

    Fits the best unimodular constant against phi and against the conjugate
    reflection phi*(t) = conj(phi(-t)); a fit counts when the relative misfit
    ||psi - c*phi|| / ||phi|| stays below ``tol``.
    """
    if phi.grid != psi.grid:
        raise ValueError("classification requires signals on a common grid")
    nphi = norm(phi)
    npsi = norm(psi)
    if nphi == 0.0:
        if npsi == 0.0:
            return EquivalenceVerdict(VerdictKind.GLOBAL_PHASE, 1.0 + 0.0j, 0.0)
        return EquivalenceVerdict(VerdictKind.DISTINCT, None, 1.0)

    c1 = best_phase(phi, psi)
    r1 = norm(GridSignal(phi.grid, psi.values - c1 * phi.values)) / nphi
    if r1 <= tol:
        return EquivalenceVerdict(VerdictKind.GLOBAL_PHASE, c1, r1)

    star = conj_reflect(phi)
    c2 = best_phase(star, psi)
    r2 = norm(GridSignal(phi.grid, psi.values - c2 * star.values)) / nphi
    if r2 <= tol:
        return EquivalenceVerdict(VerdictKind.CONJUGATE_REFLECTION, c2, r2)
    return EquivalenceVerdict(VerdictKind.DISTINCT, None, min(r1, r2))


def sine_rational_counterexample(
    phi: GridSignal, a: Fraction | float, p: int, q: int
) -> GridSignal:
    """A signal distinct from phi whose sine-family records all match phi's.

    For b = (p/q)*a and beta = q/a, the signal

        psi(t) = exp(-2*pi*beta*t - pi*beta^2) * phi(t + beta)

    satisfies gauss(t)*psi(t) = gauss(t+beta)*phi(t+beta), so its Gaussian
    spectrum is a pure modulation e^{2*pi*i*beta*x} of phi's, and because
    beta*a and beta*b are integers the sine-mask magnitudes are preserved as
    well.  The translation must land on the sample grid; phi should be smooth
    and supported well inside the grid so the cyclic shift is harmless.
    """
    if q == 0:
        raise ValueError("q must be nonzero")
    if not a > 0:
        raise ValueError(f"the base frequency a must be positive, got {a}")
    beta = q / a if isinstance(a, Fraction) else q / float(a)
    shift = float(beta) / phi.grid.spacing
    m = round(shift)
    if abs(shift - m) > 1e-9:
        raise ValueError(
            f"translation beta={float(beta)} is not a multiple of the grid "
            f"spacing {phi.grid.spacing}"
        )
    t = phi.grid.points()
    shifted = np.roll(phi.values, -m)
    weight = np.exp(-2 * np.pi * float(beta) * t - np.pi * float(beta) ** 2)
    return GridSignal(phi.grid, weight * shifted)
