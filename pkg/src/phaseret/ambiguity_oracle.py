"""Brute-force enumeration of Fourier-magnitude ambiguities by zero flipping.

Reflecting a root x of the coefficient polynomial across the unit circle to
1/conj(x), with a |x| rescaling, preserves the modulus on the circle.  For a
fixed degree this flip group is the complete ambiguity set (roots determine
the polynomial up to a scalar), which makes uniqueness claims at small N
machine-checkable: enumerate every flip, then sieve by sampled magnitudes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .equivalence import VerdictKind
from .trigpoly import (
    DerivKind,
    TrigPoly,
    classify_poly_pair,
    roots_on_plane,
    sample_measurements,
)

__all__ = [
    "ResourceLimitError",
    "FlipSet",
    "zero_flip",
    "enumerate_ambiguities",
    "filter_by_measurements",
]

_CIRCLE_TOL = 1e-8
_ZERO_TOL = 1e-10


class ResourceLimitError(Exception):
    """The enumeration would exceed the configured degree cap."""


def _expanded_roots(p: TrigPoly) -> list[complex]:
    """All algebraic roots repeated by multiplicity, sorted by (re, im)."""
    expanded: list[complex] = []
    for root, mult in roots_on_plane(p):
        expanded.extend([root] * mult)
    expanded.sort(key=lambda z: (z.real, z.imag))
    return expanded


def _flippable(root: complex) -> bool:
    return abs(root) > _ZERO_TOL and abs(abs(root) - 1) > _CIRCLE_TOL


@dataclass(frozen=True)
class FlipSet:
    """Indices (into the sorted expanded root list) of roots to reflect."""

    source: TrigPoly
    indices: tuple[int, ...]


def zero_flip(p: TrigPoly, flips: FlipSet) -> TrigPoly:
    """Reflect the selected roots across the unit circle.

    Each flipped root x becomes 1/conj(x) and the polynomial is rescaled by
    prod |x| over the flipped roots, so the circle modulus (hence the
    autocorrelation) is unchanged.  Roots at zero and on the circle cannot be
    flipped.
    """
    roots = _expanded_roots(p)
    deg = p.degree()
    lead = p.coeffs[deg]
    new_roots = list(roots)
    scale = 1.0
    for idx in flips.indices:
        if not 0 <= idx < len(roots):
            raise ValueError(f"flip index {idx} out of range for {len(roots)} roots")
        x = roots[idx]
        if not _flippable(x):
            raise ValueError(
                f"root {x} lies on the unit circle or at the origin and cannot be flipped"
            )
        new_roots[idx] = 1 / np.conj(x)
        scale *= abs(x)
    coeffs_desc = lead * scale * np.poly(new_roots) if new_roots else np.array([lead * scale])
    coeffs = coeffs_desc[::-1]
    out = np.zeros(p.n, dtype=complex)
    out[: coeffs.size] = coeffs
    return TrigPoly(out)


def enumerate_ambiguities(p: TrigPoly, max_degree: int = 20) -> list[TrigPoly]:
    """All zero-flip relatives of p, deduplicated up to global phase.

    Subsets of flippable roots are visited in lexicographic index order, so
    the output is deterministic.  The first entry reproduces p itself (empty
    flip set).
    """
    deg = p.degree()
    if deg < 0:
        raise ValueError("the zero polynomial has no ambiguity family")
    if deg > max_degree:
        raise ResourceLimitError(
            f"degree {deg} exceeds the enumeration cap {max_degree}"
        )
    roots = _expanded_roots(p)
    flippable = [i for i, r in enumerate(roots) if _flippable(r)]
    subsets = sorted(
        subset
        for size in range(len(flippable) + 1)
        for subset in combinations(flippable, size)
    )
    out: list[TrigPoly] = []
    for subset in subsets:
        q = zero_flip(p, FlipSet(p, subset))
        if any(
            classify_poly_pair(kept, q).kind is VerdictKind.GLOBAL_PHASE
            for kept in out
        ):
            continue
        out.append(q)
    return out


def filter_by_measurements(
    candidates: list[TrigPoly],
    m: int,
    kind: DerivKind,
    ref1: np.ndarray,
    ref2: np.ndarray,
    tol: float,
) -> list[TrigPoly]:
    """Keep candidates whose sampled magnitudes match the reference in sup-norm."""
    if tol < 0:
        raise ValueError(f"tolerance must be nonnegative, got {tol}")
    ref1 = np.asarray(ref1, dtype=float)
    ref2 = np.asarray(ref2, dtype=float)
    survivors = []
    for q in candidates:
        a1, a2 = sample_measurements(q, m, kind)
        gap = max(np.abs(a1 - ref1).max(initial=0.0), np.abs(a2 - ref2).max(initial=0.0))
        if gap <= tol:
            survivors.append(q)
    return survivors
