"""Uniform grids on the real line, Gaussian-family masks, and quadrature
Fourier transforms.

The transform uses the convention F[f](xi) = integral f(t) exp(-2*pi*i*t*xi) dt,
approximated by the trapezoid-free Riemann sum on a symmetric grid.  For even n
the sum is computed exactly (to roundoff) by an FFT with shift factors, and the
frequency samples live on the dual grid with spacing 1/extent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

__all__ = [
    "Grid",
    "GridSignal",
    "Gauss",
    "GaussDeriv",
    "GaussAffine",
    "GaussSine",
    "Custom",
    "MaskKind",
    "make_grid",
    "eval_mask",
    "is_real_mask",
    "mask_tag",
    "mask_to_json",
    "mask_from_json",
    "fourier",
    "inverse_fourier",
    "bargmann_pair",
    "conj_reflect",
    "norm",
    "inner",
    "save_signal",
    "load_signal",
]


@dataclass(frozen=True)
class Grid:
    """Uniform sampling grid of n points covering [-extent/2, extent/2)."""

    n: int
    extent: float

    def __post_init__(self):
        if self.n < 2 or self.n % 2 != 0:
            raise ValueError(f"grid size must be an even integer >= 2, got {self.n}")
        if not self.extent > 0:
            raise ValueError(f"grid extent must be positive, got {self.extent}")

    @property
    def spacing(self) -> float:
        return self.extent / self.n

    def points(self) -> np.ndarray:
        """Sample points t_k = -extent/2 + k*spacing, k = 0..n-1."""
        return -self.extent / 2 + self.spacing * np.arange(self.n)

    def dual(self) -> "Grid":
        """Frequency grid of `fourier`: same n, spacing 1/extent."""
        return Grid(self.n, self.n / self.extent)


@dataclass(frozen=True)
class GridSignal:
    """Complex-valued signal sampled on a :class:`Grid`."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=complex)
        if v.shape != (self.grid.n,):
            raise ValueError(
                f"signal has {v.size} values but the grid has {self.grid.n} points"
            )
        if not np.isfinite(v).all():
            raise ValueError("signal values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)


def make_grid(n: int, extent: float) -> Grid:
    """Create a uniform grid; rejects odd or nonpositive n and nonpositive extent."""
    return Grid(int(n), float(extent))


def norm(sig: GridSignal) -> float:
    """Quadrature L2 norm sqrt(spacing * sum |values|^2)."""
    return float(np.sqrt(sig.grid.spacing * np.sum(np.abs(sig.values) ** 2)))


def inner(a: GridSignal, b: GridSignal) -> complex:
    """Quadrature inner product, conjugate-linear in the first argument."""
    if a.grid != b.grid:
        raise ValueError("inner product requires signals on the same grid")
    return complex(a.grid.spacing * np.vdot(a.values, b.values))


# ---------------------------------------------------------------------------
# Masks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Gauss:
    """The standard Gaussian window exp(-pi*t^2)."""


@dataclass(frozen=True)
class GaussDeriv:
    """The odd window 2*pi*t * exp(-pi*t^2)."""


@dataclass(frozen=True)
class GaussAffine:
    """The window (1 - 2*pi*t) * exp(-pi*t^2)."""


@dataclass(frozen=True)
class GaussSine:
    """The window sin(freq*pi*t) * exp(-pi*t^2).

    The frequency may be an exact ``Fraction`` (kept exact, so rational-ratio
    constructions can key off it) or a plain float.
    """

    freq: Fraction | float

    def __post_init__(self):
        if not self.freq > 0:
            raise ValueError(f"sine mask frequency must be positive, got {self.freq}")


@dataclass(frozen=True)
class Custom:
    """Arbitrary mask given by its samples; length must match the target grid."""

    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=complex)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __eq__(self, other):
        return isinstance(other, Custom) and np.array_equal(self.values, other.values)


MaskKind = Gauss | GaussDeriv | GaussAffine | GaussSine | Custom


def eval_mask(kind: MaskKind, grid: Grid) -> GridSignal:
    """Sample a mask on a grid.  The Gaussian mask is strictly positive."""
    t = grid.points()
    g = np.exp(-np.pi * t**2)
    if isinstance(kind, Gauss):
        vals = g
    elif isinstance(kind, GaussDeriv):
        vals = 2 * np.pi * t * g
    elif isinstance(kind, GaussAffine):
        vals = (1 - 2 * np.pi * t) * g
    elif isinstance(kind, GaussSine):
        vals = np.sin(float(kind.freq) * np.pi * t) * g
    elif isinstance(kind, Custom):
        if kind.values.size != grid.n:
            raise ValueError(
                f"custom mask has {kind.values.size} values, grid has {grid.n} points"
            )
        vals = kind.values
    else:
        raise ValueError(f"unknown mask kind: {kind!r}")
    return GridSignal(grid, vals)


def is_real_mask(kind: MaskKind) -> bool:
    """True if the mask is real-valued on the line."""
    if isinstance(kind, Custom):
        return bool(np.all(kind.values.imag == 0))
    return True


def mask_tag(kind: MaskKind) -> str:
    if isinstance(kind, Gauss):
        return "gauss"
    if isinstance(kind, GaussDeriv):
        return "gauss-deriv"
    if isinstance(kind, GaussAffine):
        return "gauss-affine"
    if isinstance(kind, GaussSine):
        return "gauss-sine"
    if isinstance(kind, Custom):
        return "custom"
    raise ValueError(f"unknown mask kind: {kind!r}")


def mask_to_json(kind: MaskKind) -> dict:
    d = {"kind": mask_tag(kind)}
    if isinstance(kind, GaussSine):
        # exact rationals serialize as "p/q" strings, floats as numbers
        d["freq"] = str(kind.freq) if isinstance(kind.freq, Fraction) else float(kind.freq)
    elif isinstance(kind, Custom):
        d["values"] = [[float(v.real), float(v.imag)] for v in kind.values]
    return d


def mask_from_json(d: dict) -> MaskKind:
    tag = d["kind"]
    if tag == "gauss":
        return Gauss()
    if tag == "gauss-deriv":
        return GaussDeriv()
    if tag == "gauss-affine":
        return GaussAffine()
    if tag == "gauss-sine":
        freq = d["freq"]
        return GaussSine(Fraction(freq) if isinstance(freq, str) else float(freq))
    if tag == "custom":
        return Custom(np.array([complex(re, im) for re, im in d["values"]]))
    raise ValueError(f"unknown mask tag: {tag!r}")


# ---------------------------------------------------------------------------
# Quadrature Fourier transform
# ---------------------------------------------------------------------------

def fourier(sig: GridSignal) -> GridSignal:
    """Quadrature Fourier transform onto the dual grid.

    Computes spacing * sum_k values_k * exp(-2*pi*i*t_k*xi_j) for every dual
    point xi_j = (j - n/2)/extent.  Because t_k*xi_j is a multiple of 1/n this
    equals an FFT with index shifts, exactly up to roundoff; the map satisfies
    the discrete Parseval identity exactly.
    """
    g = sig.grid
    spec = g.spacing * np.fft.fftshift(np.fft.fft(np.fft.ifftshift(sig.values)))
    return GridSignal(g.dual(), spec)


def inverse_fourier(sig: GridSignal) -> GridSignal:
    """Inverse of :func:`fourier`; round trips are exact up to roundoff."""
    g = sig.grid
    vals = g.spacing * g.n * np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(sig.values)))
    return GridSignal(g.dual(), vals)


def bargmann_pair(grid: Grid) -> tuple[GridSignal, GridSignal]:
    """The chirped-Gaussian pair exp(-(1 +/- i)*pi*t^2).

    The two signals are pointwise conjugates of each other, share the same
    modulus, and their Fourier transforms share the same modulus, yet they are
    not unimodular multiples of each other.
    """
    t = grid.points()
    plus = np.exp(-(1 + 1j) * np.pi * t**2)
    minus = np.conj(plus)
    return GridSignal(grid, plus), GridSignal(grid, minus)


def conj_reflect(sig: GridSignal) -> GridSignal:
    """The conjugate reflection s*(t) = conj(s(-t)).

    Reflection is realized cyclically (index k -> (n-k) mod n), which maps the
    leftmost sample to itself; for signals decaying at the grid edge this
    matches the pointwise definition.
    """
    n = sig.grid.n
    idx = (-np.arange(n)) % n
    return GridSignal(sig.grid, np.conj(sig.values[idx]))


# ---------------------------------------------------------------------------
# File format: { "n": int, "extent": float, "values": [[re, im], ...] }
# ---------------------------------------------------------------------------

def save_signal(sig: GridSignal, path: str | Path) -> None:
    doc = {
        "n": sig.grid.n,
        "extent": sig.grid.extent,
        "values": [[float(v.real), float(v.imag)] for v in sig.values],
    }
    Path(path).write_text(json.dumps(doc))


def load_signal(path: str | Path) -> GridSignal:
    doc = json.loads(Path(path).read_text())
    grid = Grid(int(doc["n"]), float(doc["extent"]))
    values = np.array([complex(re, im) for re, im in doc["values"]])
    if values.size != grid.n:
        raise ValueError(
            f"signal file declares n={grid.n} but contains {values.size} values"
        )
    return GridSignal(grid, values)
