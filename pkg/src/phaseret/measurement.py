"""Phaseless coded-diffraction measurements: magnitudes of masked Fourier
transforms, their self-adjoint conjugated variants, and the Gaussian / sine
mask families used throughout the package."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .grid_signal import (
    Custom,
    Gauss,
    GaussAffine,
    GaussDeriv,
    GaussSine,
    Grid,
    GridSignal,
    MaskKind,
    eval_mask,
    fourier,
    inverse_fourier,
    is_real_mask,
    mask_from_json,
    mask_to_json,
)

__all__ = [
    "MeasurementRecord",
    "coded_diffraction",
    "three_gaussian_measurements",
    "selfadjoint_measurement",
    "sine_measurements",
    "save_record",
    "load_record",
    "record_to_csv",
]


@dataclass(frozen=True)
class MeasurementRecord:
    """One mask together with the sampled magnitudes |F[mask * signal]|.

    ``grid`` is the time-domain grid of the masked signal; the magnitudes are
    sampled on ``grid.dual()``.
    """

    mask: MaskKind
    grid: Grid
    magnitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.ascontiguousarray(self.magnitudes, dtype=float)
        if m.shape != (self.grid.n,):
            raise ValueError(
                f"record has {m.size} magnitudes but the grid has {self.grid.n} points"
            )
        if not np.isfinite(m).all() or np.any(m < 0):
            raise ValueError("magnitudes must be finite and nonnegative")
        m.setflags(write=False)
        object.__setattr__(self, "magnitudes", m)

    def dual_grid(self) -> Grid:
        return self.grid.dual()


def coded_diffraction(phi: GridSignal, mask: MaskKind) -> MeasurementRecord:
    """Magnitudes of the Fourier transform of the masked signal.

    Phase information is discarded; the record is invariant under global
    phase changes of ``phi``.
    """
    masked = GridSignal(phi.grid, eval_mask(mask, phi.grid).values * phi.values)
    return MeasurementRecord(mask, phi.grid, np.abs(fourier(masked).values))


def three_gaussian_measurements(
    phi: GridSignal,
) -> tuple[MeasurementRecord, MeasurementRecord, MeasurementRecord]:
    """Records for the Gaussian family, in the fixed order
    (gauss, gauss-deriv, gauss-affine)."""
    return (
        coded_diffraction(phi, Gauss()),
        coded_diffraction(phi, GaussDeriv()),
        coded_diffraction(phi, GaussAffine()),
    )


def selfadjoint_measurement(phi: GridSignal, mask: MaskKind) -> MeasurementRecord:
    """Magnitudes of A*phi = F[mask * F^{-1} phi] for a real-valued mask.

    Real masks make A self-adjoint; complex custom masks are rejected.
    """
    if not is_real_mask(mask):
        raise ValueError("self-adjoint measurements require a real-valued mask")
    return coded_diffraction(inverse_fourier(phi), mask)


def sine_measurements(
    phi: GridSignal, a: Fraction | float, b: Fraction | float
) -> tuple[MeasurementRecord, MeasurementRecord, MeasurementRecord]:
    """Records for the sine family (gauss, gauss-sine(a), gauss-sine(b)).

    Frequencies passed as ``Fraction`` are kept exact on the records, so the
    rational/irrational distinction of the ratio a/b stays representable.
    """
    if not a > 0 or not b > 0:
        raise ValueError(f"sine mask frequencies must be positive, got a={a}, b={b}")
    return (
        coded_diffraction(phi, Gauss()),
        coded_diffraction(phi, GaussSine(a)),
        coded_diffraction(phi, GaussSine(b)),
    )


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------

def save_record(record: MeasurementRecord, path: str | Path) -> None:
    """JSON format: { "mask": tag+params, "n", "extent", "magnitudes" }."""
    doc = {
        "mask": mask_to_json(record.mask),
        "n": record.grid.n,
        "extent": record.grid.extent,
        "magnitudes": [float(m) for m in record.magnitudes],
    }
    Path(path).write_text(json.dumps(doc))


def load_record(path: str | Path) -> MeasurementRecord:
    doc = json.loads(Path(path).read_text())
    grid = Grid(int(doc["n"]), float(doc["extent"]))
    mags = np.asarray(doc["magnitudes"], dtype=float)
    if mags.size != grid.n:
        raise ValueError(
            f"record file declares n={grid.n} but contains {mags.size} magnitudes"
        )
    return MeasurementRecord(mask_from_json(doc["mask"]), grid, mags)


def record_to_csv(record: MeasurementRecord, path: str | Path) -> None:
    """One row per dual-grid point, columns (xi, magnitude)."""
    xi = record.dual_grid().points()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["xi", "magnitude"])
        for x, m in zip(xi, record.magnitudes):
            writer.writerow([repr(float(x)), repr(float(m))])
