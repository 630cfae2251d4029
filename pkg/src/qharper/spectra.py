"""Spectral analysis: eigendecomposition, localization metrics, mode labels.

Boundary modes are detected by combining two signals: the eigenvalue sits
next to a spectral gap (large spacing to a neighbor) and the eigenvector
weight is concentrated on the outermost sites of one end.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, NumericalFailureError
from .lattice import Hamiltonian, LatticeParams, build_hamiltonian, coupling_profile

# Sites counted into the edge weight at each end. Boundary modes decay
# within a few sites at moderate modulation, so a short window keeps the
# classifier sharp.
EDGE_SITES = 2

LABEL_BULK = "bulk"
LABEL_LEFT = "left-boundary"
LABEL_RIGHT = "right-boundary"

DEFAULT_GAP_FRACTION = 0.05
DEFAULT_EDGE_THRESHOLD = 0.9


@dataclass(frozen=True)
class SpectralData:
    """Eigensystem of one Hamiltonian plus per-mode localization metrics.

    Attributes
    ----------
    eigenvalues : (N,) array, sorted ascending, per mm.
    eigenvectors : (N, N) array, column k is the mode of eigenvalues[k].
    ipr : (N,) array, inverse participation ratio sum |psi_n|^4.
    edge_weight_left : (N,) array, sum of |psi_n|^2 over the leftmost sites.
    edge_weight_right : (N,) array, same over the rightmost sites.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    ipr: np.ndarray
    edge_weight_left: np.ndarray
    edge_weight_right: np.ndarray

    @property
    def n_modes(self):
        return self.eigenvalues.size


@dataclass(frozen=True)
class BandStructure:
    """Spectra collected over a phase sweep, with per-mode labels."""

    phis: np.ndarray
    spectra: tuple
    mode_labels: tuple  # one tuple of N labels per phi sample

    def __post_init__(self):
        if np.any(np.diff(self.phis) <= 0):
            raise InvalidParameterError("phi samples must be strictly increasing")
        if self.phis.size and (self.phis[0] < 0 or self.phis[-1] >= 2 * np.pi):
            raise InvalidParameterError("phi samples must lie in [0, 2*pi)")


def eigendecompose(h: Hamiltonian) -> SpectralData:
    """Solve the eigenproblem and attach IPR and edge weights per mode."""
    try:
        w, v = np.linalg.eigh(h.matrix)
    except np.linalg.LinAlgError as exc:
        cond = _condition_hint(h.matrix)
        raise NumericalFailureError(
            "eigensolver failed to converge (%s); %s" % (exc, cond)
        ) from exc
    dens = v**2
    k = min(EDGE_SITES, h.dimension)
    data = SpectralData(
        eigenvalues=w,
        eigenvectors=v,
        ipr=(dens**2).sum(axis=0),
        edge_weight_left=dens[:k].sum(axis=0),
        edge_weight_right=dens[-k:].sum(axis=0),
    )
    for a in (data.eigenvalues, data.eigenvectors, data.ipr,
              data.edge_weight_left, data.edge_weight_right):
        a.setflags(write=False)
    return data


def _condition_hint(m):
    try:
        c = np.linalg.cond(m)
        return "condition number %.3g" % c
    except Exception:
        return "condition number unavailable"


def classify_modes(spectral: SpectralData, gap_fraction: float = DEFAULT_GAP_FRACTION,
                   edge_threshold: float = DEFAULT_EDGE_THRESHOLD):
    """Label each mode bulk, left-boundary, or right-boundary.

    A gap is a consecutive-eigenvalue spacing exceeding gap_fraction times
    the total spectral span. A mode counts as in-gap when it borders such a
    spacing on either side; it is then labeled a boundary mode only if its
    edge weight on the matching end exceeds edge_threshold, so band-edge
    modes that merely border a gap stay bulk.

    Returns a list of N string labels.
    """
    if not 0 < gap_fraction < 1:
        raise InvalidParameterError("gap_fraction must lie in (0, 1)")
    if not 0.5 <= edge_threshold < 1:
        raise InvalidParameterError("edge_threshold must lie in [0.5, 1)")
    w = spectral.eigenvalues
    n = w.size
    span = w[-1] - w[0]
    if span == 0:
        warnings.warn("degenerate all-equal spectrum; classifying all modes bulk")
        return [LABEL_BULK] * n
    spacing = np.diff(w)
    is_gap = spacing > gap_fraction * span
    labels = []
    for m in range(n):
        in_gap = (m > 0 and is_gap[m - 1]) or (m < n - 1 and is_gap[m])
        label = LABEL_BULK
        if in_gap:
            if spectral.edge_weight_left[m] > edge_threshold:
                label = LABEL_LEFT
            elif spectral.edge_weight_right[m] > edge_threshold:
                label = LABEL_RIGHT
        labels.append(label)
    return labels


def phase_sweep(params: LatticeParams, n_phi: int,
                gap_fraction: float = DEFAULT_GAP_FRACTION,
                edge_threshold: float = DEFAULT_EDGE_THRESHOLD) -> BandStructure:
    """Spectra at phi_k = 2*pi*k/n_phi for k = 0..n_phi-1.

    The sweep overrides params.phi per sample and attaches classifier
    labels to every mode.
    """
    if n_phi < 2:
        raise InvalidParameterError("n_phi must be >= 2, got %r" % (n_phi,))
    phis = 2 * np.pi * np.arange(n_phi) / n_phi
    spectra = []
    labels = []
    for phi in phis:
        sd = eigendecompose(build_hamiltonian(coupling_profile(params.with_phi(phi))))
        spectra.append(sd)
        labels.append(tuple(classify_modes(sd, gap_fraction, edge_threshold)))
    phis.setflags(write=False)
    return BandStructure(phis=phis, spectra=tuple(spectra), mode_labels=tuple(labels))
