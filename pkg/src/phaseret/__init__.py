"""Phase retrieval from masked Fourier magnitudes.

Three explicit Gaussian-derived masks make magnitude-only Fourier
measurements invertible up to a global phase; two of them leave exactly the
conjugate-reflection ambiguity; a sine-mask family works only when the
frequency ratio is irrational.  A parallel discrete theory for analytic
trigonometric polynomials pins down the sharp 2N-1 sampling threshold, with
explicit counterexamples at 2N-2 and a brute-force zero-flip oracle to verify
uniqueness claims at small sizes.
"""

from .ambiguity_oracle import (
    FlipSet,
    ResourceLimitError,
    enumerate_ambiguities,
    filter_by_measurements,
    zero_flip,
)
from .equivalence import EquivalenceVerdict, VerdictKind
from .grid_signal import (
    Custom,
    Gauss,
    GaussAffine,
    GaussDeriv,
    GaussSine,
    Grid,
    GridSignal,
    MaskKind,
    bargmann_pair,
    conj_reflect,
    eval_mask,
    fourier,
    inner,
    inverse_fourier,
    load_signal,
    make_grid,
    norm,
    save_signal,
)
from .measurement import (
    MeasurementRecord,
    coded_diffraction,
    load_record,
    record_to_csv,
    save_record,
    selfadjoint_measurement,
    sine_measurements,
    three_gaussian_measurements,
)
from .reconstruct import (
    DegenerateSignalError,
    Spectrum,
    best_phase,
    classify_pair,
    integrate_phase,
    reconstruct_three,
    recover_fprime_fbar,
    sine_rational_counterexample,
)
from .trigpoly import (
    AutocorrCoeffs,
    DerivKind,
    NotCircleEqualError,
    RootPairing,
    TrigPoly,
    autocorrelation,
    classify_poly_pair,
    counterexample_continuous,
    counterexample_discrete,
    interpolate_sq_modulus,
    load_poly,
    random_trigpoly,
    root_pairing_check,
    roots_on_plane,
    sample_measurements,
    save_poly,
)

__version__ = "0.1.0"
