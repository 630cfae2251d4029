"""Single- and two-photon propagation through the chain.

Site indices at this API are 1-based (the leftmost waveguide is site 1),
matching the lattice convention used everywhere else in the package.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .lattice import Hamiltonian
from .spectra import eigendecompose


@dataclass(frozen=True)
class Propagator:
    """Unitary evolution matrix U(z) = V exp(-i E z) V^T."""

    matrix: np.ndarray
    z: float

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n_sites(self):
        return self.matrix.shape[0]


@dataclass(frozen=True)
class TwoPhotonCorrelation:
    """Joint two-photon detection probabilities over site pairs.

    gamma is stored symmetrically; gamma[q-1][r-1] is the probability of
    the unordered outcome {one photon at q, one at r}, so the matrix sums
    to 1 over unordered pairs (q <= r), not over all entries.
    """

    gamma: np.ndarray
    input_sites: tuple
    indistinguishable: bool

    def __post_init__(self):
        g = np.asarray(self.gamma, dtype=float)
        g.setflags(write=False)
        object.__setattr__(self, "gamma", g)

    def at(self, q, r):
        """Coincidence probability for the unordered site pair {q, r}."""
        return float(self.gamma[q - 1, r - 1])

    def region_normalized(self, region):
        """gamma renormalized over unordered pairs inside ``region``.

        Useful when comparing against measurements that only scanned a
        window of output sites.
        """
        ix = np.asarray(sorted(set(region)), dtype=int) - 1
        if ix.size == 0 or ix.min() < 0 or ix.max() >= self.gamma.shape[0]:
            raise InvalidParameterError("region indices out of range")
        sub = self.gamma[np.ix_(ix, ix)]
        total = (sub.sum() + np.trace(sub)) / 2.0
        if total <= 0:
            raise InvalidParameterError("region has zero coincidence weight")
        return sub / total


def propagate(h: Hamiltonian, z: float) -> Propagator:
    """Spectral matrix exponential U = V exp(-i E z) V^T."""
    if z < 0:
        raise InvalidParameterError("z must be nonnegative, got %r" % (z,))
    sd = eigendecompose(h)
    v = sd.eigenvectors
    u = (v * np.exp(-1j * sd.eigenvalues * z)) @ v.T
    return Propagator(matrix=u, z=float(z))


def _check_site(u, site, name):
    if not 1 <= site <= u.n_sites:
        raise InvalidParameterError(
            "%s=%r out of range [1, %d]" % (name, site, u.n_sites)
        )


def single_photon_distribution(u: Propagator, input_site: int) -> np.ndarray:
    """Output probabilities p_q = |U[q, input]|^2 for one injected photon."""
    _check_site(u, input_site, "input_site")
    return np.abs(u.matrix[:, input_site - 1]) ** 2


def two_photon_correlation(u: Propagator, a: int, b: int,
                           indistinguishable: bool = True) -> TwoPhotonCorrelation:
    """Joint output distribution for photons injected at sites a and b.

    Indistinguishable photons interfere through the symmetrized amplitude
    U[q,a]U[r,b] + U[q,b]U[r,a]; distinguishable photons add the two
    assignment probabilities instead. Both normalizations are exact for a
    unitary propagator, with no numerical rescaling.
    """
    _check_site(u, a, "a")
    _check_site(u, b, "b")
    col_a = u.matrix[:, a - 1]
    col_b = u.matrix[:, b - 1]
    m = np.outer(col_a, col_b)
    if indistinguishable:
        raw = np.abs(m + m.T) ** 2
        den_ab = 2.0 if a == b else 1.0
    else:
        raw = np.abs(m) ** 2 + np.abs(m.T) ** 2
        den_ab = 1.0
    n = u.n_sites
    pair_count = 1.0 + np.eye(n)  # double-counts q == r otherwise
    gamma = raw / pair_count / den_ab
    return TwoPhotonCorrelation(gamma=gamma, input_sites=(a, b),
                                indistinguishable=bool(indistinguishable))


def confinement(p, region) -> float:
    """Total probability inside ``region``, a set of 1-based site indices."""
    p = np.asarray(p, dtype=float)
    sites = sorted(set(int(s) for s in region))
    if not sites:
        raise InvalidParameterError("region must be nonempty")
    if sites[0] < 1 or sites[-1] > p.size:
        raise InvalidParameterError("region indices out of range [1, %d]" % p.size)
    return float(p[np.asarray(sites) - 1].sum())


def evolution_snapshots(h: Hamiltonian, input_site: int, z_samples) -> np.ndarray:
    """Single-photon output distribution at each z in ``z_samples``.

    Returns an array of shape (len(z_samples), N); row k is the
    distribution after propagating z_samples[k] mm. One eigendecomposition
    serves all samples.
    """
    zs = np.asarray(z_samples, dtype=float)
    if zs.ndim != 1 or zs.size == 0:
        raise InvalidParameterError("z_samples must be a nonempty 1D sequence")
    if zs[0] < 0 or np.any(np.diff(zs) < 0):
        raise InvalidParameterError("z_samples must be nondecreasing and >= 0")
    sd = eigendecompose(h)
    if not 1 <= input_site <= h.dimension:
        raise InvalidParameterError(
            "input_site=%r out of range [1, %d]" % (input_site, h.dimension)
        )
    v = sd.eigenvectors
    weights = v[input_site - 1]  # overlap of the input with each mode
    phases = np.exp(-1j * np.outer(zs, sd.eigenvalues))
    amps = (phases * weights) @ v.T
    out = np.abs(amps) ** 2
    out.setflags(write=False)
    return out
