"""Analytic trigonometric polynomials and their magnitude-sampling theory.

A coefficient vector psi in C^N is identified with
P(x) = sum_j psi_j exp(2*pi*i*j*x), a polynomial with nonnegative frequencies
only.  |P|^2 is, up to a unimodular factor, a degree 2N-2 polynomial on the
unit circle, so 2N-1 equispaced magnitude samples determine it; combined with
derivative-magnitude samples this pins P down to a global phase, while
explicit pairs show that 2N-2 samples do not.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np
from numpy.polynomial import polynomial as npoly

from .equivalence import EquivalenceVerdict, VerdictKind

__all__ = [
    "TrigPoly",
    "AutocorrCoeffs",
    "DerivKind",
    "NotCircleEqualError",
    "RootPairing",
    "autocorrelation",
    "interpolate_sq_modulus",
    "sample_measurements",
    "counterexample_continuous",
    "counterexample_discrete",
    "classify_poly_pair",
    "roots_on_plane",
    "root_pairing_check",
    "random_trigpoly",
    "save_poly",
    "load_poly",
]


class NotCircleEqualError(Exception):
    """The two polynomials do not share the same modulus on the unit circle."""


class DerivKind(Enum):
    """Which derivative-type magnitudes accompany the plain samples."""

    CONTINUOUS = "continuous"
    DISCRETE = "discrete"


@dataclass(frozen=True)
class TrigPoly:
    """Coefficients psi_0..psi_{N-1} of P(x) = sum psi_j exp(2*pi*i*j*x)."""

    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.atleast_1d(np.ascontiguousarray(self.coeffs, dtype=complex))
        if c.ndim != 1 or c.size < 1:
            raise ValueError("coefficients must form a nonempty 1-d array")
        if not np.isfinite(c).all():
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def n(self) -> int:
        return self.coeffs.size

    def eval(self, x) -> complex | np.ndarray:
        """Evaluate P at x (scalar or array) via Horner on exp(2*pi*i*x)."""
        w = np.exp(2j * np.pi * np.asarray(x))
        out = npoly.polyval(w, self.coeffs)
        return complex(out) if np.isscalar(x) else out

    def derivative(self) -> "TrigPoly":
        """P' has coefficients 2*pi*i*j*psi_j."""
        j = np.arange(self.n)
        return TrigPoly(2j * np.pi * j * self.coeffs)

    def padded(self, n: int) -> "TrigPoly":
        if n < self.n:
            raise ValueError(f"cannot pad length {self.n} down to {n}")
        if n == self.n:
            return self
        return TrigPoly(np.concatenate([self.coeffs, np.zeros(n - self.n)]))

    def degree(self) -> int:
        """Index of the highest nonzero coefficient (-1 for the zero polynomial)."""
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else -1


@dataclass(frozen=True)
class AutocorrCoeffs:
    """Coefficients c_0..c_{2N-2} with |P(x)|^2 = e^{-2*pi*i*(N-1)x} sum c_l e^{2*pi*i*l*x}.

    Hermitian symmetry c_{N-1+k} = conj(c_{N-1-k}) holds by construction and
    the central coefficient equals ||psi||^2.
    """

    c: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.atleast_1d(np.ascontiguousarray(self.c, dtype=complex))
        if arr.size % 2 != 1:
            raise ValueError("autocorrelation length must be odd (2N-1)")
        arr.setflags(write=False)
        object.__setattr__(self, "c", arr)

    @property
    def n(self) -> int:
        return (self.c.size + 1) // 2

    def sq_modulus(self, x) -> float | np.ndarray:
        """|P(x)|^2 evaluated from the autocorrelation representation."""
        w = np.exp(2j * np.pi * np.asarray(x))
        out = (npoly.polyval(w, self.c) * w ** (-(self.n - 1))).real
        return float(out) if np.isscalar(x) else out


def autocorrelation(p: TrigPoly) -> AutocorrCoeffs:
    """c_l = sum_j psi_j conj(psi_{j - l + N - 1}); symmetry is exact."""
    psi = p.coeffs
    n = p.n
    c = np.zeros(2 * n - 1, dtype=complex)
    for k in range(n):
        # lag-k correlation; vdot conjugates its first argument
        c[n - 1 + k] = np.vdot(psi[: n - k], psi[k:])
        c[n - 1 - k] = np.conj(c[n - 1 + k])
    return AutocorrCoeffs(c)


def interpolate_sq_modulus(samples: np.ndarray) -> AutocorrCoeffs:
    """Recover the autocorrelation from 2N-1 samples of |P| at k/(2N-1).

    Demodulating the squared samples by e^{2*pi*i*(N-1)k/(2N-1)} turns the
    representation into a plain DFT, which is inverted exactly.
    """
    s = np.asarray(samples, dtype=float)
    if s.ndim != 1 or s.size < 1 or s.size % 2 != 1:
        raise ValueError(
            f"need exactly 2N-1 samples for some N >= 1, got {s.size}"
        )
    if np.any(s < 0):
        raise ValueError("magnitude samples must be nonnegative")
    m = s.size
    n = (m + 1) // 2
    k = np.arange(m)
    y = s**2 * np.exp(2j * np.pi * (n - 1) * k / m)
    return AutocorrCoeffs(np.fft.fft(y) / m)


def sample_measurements(
    p: TrigPoly, m: int, kind: DerivKind
) -> tuple[np.ndarray, np.ndarray]:
    """Magnitude samples (|P(k/M)|, deriv-magnitudes) for k = 0..M-1.

    The second array holds |P'(k/M)| for the continuous kind and the forward
    differences |P((k+1)/M) - P(k/M)| (cyclic in k) for the discrete kind.
    """
    if m < 1:
        raise ValueError(f"sample count must be positive, got {m}")
    x = np.arange(m) / m
    vals = p.eval(x)
    a1 = np.abs(vals)
    if kind is DerivKind.CONTINUOUS:
        a2 = np.abs(p.derivative().eval(x))
    elif kind is DerivKind.DISCRETE:
        a2 = np.abs(np.roll(vals, -1) - vals)
    else:
        raise ValueError(f"unknown derivative kind: {kind!r}")
    return a1, a2


def _check_odd_n(n: int) -> int:
    if n < 3 or n % 2 != 1:
        raise ValueError(f"counterexamples need an odd N >= 3, got {n}")
    return (n - 1) // 2


def counterexample_continuous(n: int) -> tuple[TrigPoly, TrigPoly]:
    """A pair matching |P| and |P'| at all 2N-2 equispaced points, yet distinct.

    Built from p(z) = z and q(z) = z^2/2 + sqrt(3)i/2 lifted by z -> z^m with
    N = 2m+1: both polynomials are unimodular with unit-modulus derivative on
    the fourth roots of unity, but have different numbers of nonzero
    coefficients.
    """
    m = _check_odd_n(n)
    phi = np.zeros(n, dtype=complex)
    phi[m] = 1.0
    psi = np.zeros(n, dtype=complex)
    psi[2 * m] = 0.5
    psi[0] = np.sqrt(3) / 2 * 1j
    return TrigPoly(phi), TrigPoly(psi)


def counterexample_discrete(n: int) -> tuple[TrigPoly, TrigPoly]:
    """Like :func:`counterexample_continuous` for forward-difference samples.

    Built from p(z) = z and q(z) = (z^2 + i)/sqrt(2), which share all
    magnitudes |p|, |p(z) - p(iz)| on the fourth roots of unity.
    """
    m = _check_odd_n(n)
    phi = np.zeros(n, dtype=complex)
    phi[m] = 1.0
    psi = np.zeros(n, dtype=complex)
    psi[2 * m] = 1 / np.sqrt(2)
    psi[0] = 1j / np.sqrt(2)
    return TrigPoly(phi), TrigPoly(psi)


def classify_poly_pair(
    p: TrigPoly, q: TrigPoly, tol: float = 1e-10
) -> EquivalenceVerdict:
    """Global-phase classification in coefficient space.

    There is no conjugate-reflection branch: conjugation maps analytic
    trigonometric polynomials out of the nonnegative-frequency class, so the
    only admissible equivalence is q = lambda * p with |lambda| = 1.
    """
    n = max(p.n, q.n)
    a = p.padded(n).coeffs
    b = q.padded(n).coeffs
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0:
        if nb == 0.0:
            return EquivalenceVerdict(VerdictKind.GLOBAL_PHASE, 1.0 + 0.0j, 0.0)
        return EquivalenceVerdict(VerdictKind.DISTINCT, None, 1.0)
    ip = complex(np.vdot(a, b))
    lam = ip / abs(ip) if ip != 0 else 1.0 + 0.0j
    residual = float(np.linalg.norm(b - lam * a)) / na
    if residual <= tol:
        return EquivalenceVerdict(VerdictKind.GLOBAL_PHASE, lam, residual)
    return EquivalenceVerdict(VerdictKind.DISTINCT, None, residual)


def roots_on_plane(p: TrigPoly, cluster_tol: float = 1e-8) -> list[tuple[complex, int]]:
    """Roots of the algebraic polynomial sum psi_j z^j with multiplicities.

    Uses companion-matrix eigenvalues; roots closer than ``cluster_tol``
    (relative) are merged into one root with summed multiplicity.
    """
    deg = p.degree()
    if deg < 0:
        raise ValueError("the zero polynomial has no well-defined roots")
    if deg == 0:
        return []
    raw = np.roots(p.coeffs[deg::-1])
    order = np.lexsort((raw.imag, raw.real))
    raw = raw[order]
    clusters: list[list[complex]] = []
    for r in raw:
        placed = False
        for cl in clusters:
            center = np.mean(cl)
            if abs(r - center) <= cluster_tol * max(1.0, abs(center)):
                cl.append(r)
                placed = True
                break
        if not placed:
            clusters.append([r])
    return [(complex(np.mean(cl)), len(cl)) for cl in clusters]


@dataclass(frozen=True)
class RootPairing:
    """How the roots of Q line up with the roots of P.

    Each pair is (q_root, p_root, flipped); flipped means the Q root is the
    unit-circle reflection 1/conj(p_root) rather than the root itself.
    ``degree_offset`` is the difference of the root-at-zero multiplicities.
    """

    pairs: tuple[tuple[complex, complex, bool], ...]
    degree_offset: int

    @property
    def n_flipped(self) -> int:
        return sum(1 for _, _, f in self.pairs if f)


def _expanded_nonzero_roots(p: TrigPoly) -> tuple[list[complex], int]:
    """(nonzero roots repeated by multiplicity, multiplicity of the zero root)."""
    zeros_at_origin = 0
    expanded: list[complex] = []
    for root, mult in roots_on_plane(p):
        if abs(root) <= 1e-10:
            zeros_at_origin += mult
        else:
            expanded.extend([root] * mult)
    return expanded, zeros_at_origin


def root_pairing_check(p: TrigPoly, q: TrigPoly, tol: float = 1e-6) -> RootPairing:
    """Match every root of Q to a root of P, directly or circle-reflected.

    Requires |P| = |Q| on the unit circle, checked first through the
    autocorrelation coefficients (tolerance 1e-8); raises
    :class:`NotCircleEqualError` otherwise, and ``ValueError`` with a
    diagnostic if no consistent pairing exists.
    """
    n = max(p.n, q.n)
    cp = autocorrelation(p.padded(n)).c
    cq = autocorrelation(q.padded(n)).c
    scale = max(np.abs(cp).max(initial=0.0), np.abs(cq).max(initial=0.0), 1e-300)
    gap = np.abs(cp - cq).max()
    if gap > 1e-8 * scale:
        raise NotCircleEqualError(
            f"autocorrelations differ by {gap:.3e} (scale {scale:.3e}); the "
            "polynomials do not share a circle modulus"
        )
    p_roots, p_zero = _expanded_nonzero_roots(p)
    q_roots, q_zero = _expanded_nonzero_roots(q)
    if len(p_roots) != len(q_roots):
        raise ValueError(
            f"root counts differ ({len(p_roots)} vs {len(q_roots)}) despite "
            "equal circle modulus; root finding may have failed"
        )
    used = [False] * len(p_roots)
    pairs = []
    for y in q_roots:
        best_j, best_d, best_flag = -1, np.inf, False
        for j, x in enumerate(p_roots):
            if used[j]:
                continue
            d_same = abs(y - x)
            d_flip = abs(y - 1 / np.conj(x))
            d = min(d_same, d_flip)
            if d < best_d:
                best_j, best_d, best_flag = j, d, d_flip < d_same
        x = p_roots[best_j]
        if best_d > tol * max(1.0, abs(x)):
            raise ValueError(
                f"root {y} of Q matches no root of P within {tol:.1e} "
                f"(closest miss {best_d:.3e})"
            )
        used[best_j] = True
        # circle roots are their own reflection; report them as unflipped
        flipped = best_flag and abs(abs(x) - 1) > 1e-8
        pairs.append((complex(y), complex(x), flipped))
    return RootPairing(tuple(pairs), q_zero - p_zero)


def random_trigpoly(n: int, rng: np.random.Generator) -> TrigPoly:
    """Standard complex Gaussian coefficients; used by randomized experiments."""
    return TrigPoly(rng.standard_normal(n) + 1j * rng.standard_normal(n))


# ---------------------------------------------------------------------------
# File format: { "N": int, "coeffs": [[re, im], ...] }
# ---------------------------------------------------------------------------

def save_poly(p: TrigPoly, path: str | Path) -> None:
    doc = {
        "N": p.n,
        "coeffs": [[float(c.real), float(c.imag)] for c in p.coeffs],
    }
    Path(path).write_text(json.dumps(doc))


def load_poly(path: str | Path) -> TrigPoly:
    doc = json.loads(Path(path).read_text())
    coeffs = np.array([complex(re, im) for re, im in doc["coeffs"]])
    if coeffs.size != int(doc["N"]):
        raise ValueError(
            f"polynomial file declares N={doc['N']} but has {coeffs.size} coefficients"
        )
    return TrigPoly(coeffs)
