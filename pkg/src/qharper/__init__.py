"""Two-photon quantum correlation dynamics in modulated photonic lattices.

Core pieces: the off-diagonal Harper chain and its spectrum (lattice,
spectra), photon propagation and two-photon correlations (evolution),
pair-source counting statistics (counting), confinement calibration
(calibrate), and a config-driven CLI reproducing the reference
experiments (cli).
"""

__version__ = "0.1.0"

from .calibrate import calibrate_coupling
from .errors import (
    CalibrationError,
    ConfigError,
    InvalidParameterError,
    NumericalFailureError,
    QharperError,
    UndefinedEstimateError,
)
from .evolution import (
    Propagator,
    TwoPhotonCorrelation,
    confinement,
    evolution_snapshots,
    propagate,
    single_photon_distribution,
    two_photon_correlation,
)
from .lattice import (
    GOLDEN_MEAN,
    CouplingProfile,
    Hamiltonian,
    LatticeParams,
    apply_disorder,
    build_hamiltonian,
    coupling_profile,
    separation_layout,
)
from .spectra import (
    BandStructure,
    SpectralData,
    classify_modes,
    eigendecompose,
    phase_sweep,
)
from .counting import (
    CauchySchwarzResult,
    CountRecord,
    DetectionChannel,
    G2Estimate,
    SourceModel,
    analytic_g2,
    cauchy_schwarz,
    estimate_g2,
    hbt_auto_g2,
    simulate_counts,
    site_count_record,
    site_g2_scan,
)

__all__ = [
    "__version__",
    "GOLDEN_MEAN",
    "QharperError",
    "InvalidParameterError",
    "NumericalFailureError",
    "CalibrationError",
    "UndefinedEstimateError",
    "ConfigError",
    "LatticeParams",
    "CouplingProfile",
    "Hamiltonian",
    "coupling_profile",
    "build_hamiltonian",
    "apply_disorder",
    "separation_layout",
    "SpectralData",
    "BandStructure",
    "eigendecompose",
    "classify_modes",
    "phase_sweep",
    "Propagator",
    "TwoPhotonCorrelation",
    "propagate",
    "single_photon_distribution",
    "two_photon_correlation",
    "confinement",
    "evolution_snapshots",
    "SourceModel",
    "DetectionChannel",
    "CountRecord",
    "G2Estimate",
    "CauchySchwarzResult",
    "analytic_g2",
    "simulate_counts",
    "estimate_g2",
    "hbt_auto_g2",
    "cauchy_schwarz",
    "site_count_record",
    "site_g2_scan",
    "calibrate_coupling",
]
