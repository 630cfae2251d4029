"""Off-diagonal Harper chain: parameters, couplings, Hamiltonian, disorder.

The model is a 1D tight-binding chain of ``n_sites`` waveguides whose
nearest-neighbor couplings are cosine-modulated,

    c_n = t * (1 + lam * cos(2*pi*b*n + phi)),   n = 1 .. N-1,

with zero on-site terms. Site indexing in the modulation starts at n=1;
the spectrum depends on that offset, so it is fixed here once.
"""

from dataclasses import dataclass

import numpy as np

from .errors import CalibrationError, InvalidParameterError

GOLDEN_MEAN = (1.0 + np.sqrt(5.0)) / 2.0


def _readonly(a):
    a = np.asarray(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class LatticeParams:
    """Model parameters of the modulated chain.

    Parameters
    ----------
    n_sites : int
        Number of waveguides N, at least 2.
    t : float
        Average coupling strength, per mm.
    lam : float
        Modulation amplitude in [0, 1); keeps every coupling positive.
    b : float
        Periodicity parameter of the modulation. The golden mean gives the
        standard incommensurate chain.
    phi : float
        Modulation phase in radians, reduced to [0, 2*pi) on construction.
    """

    n_sites: int = 50
    t: float = 1.0
    lam: float = 0.5
    b: float = GOLDEN_MEAN
    phi: float = 0.2 * np.pi

    def __post_init__(self):
        if self.n_sites < 2:
            raise InvalidParameterError("n_sites must be >= 2, got %r" % (self.n_sites,))
        if not self.t > 0:
            raise InvalidParameterError("t must be positive, got %r" % (self.t,))
        if not 0 <= self.lam < 1:
            raise InvalidParameterError("lam must lie in [0, 1), got %r" % (self.lam,))
        object.__setattr__(self, "phi", float(np.mod(self.phi, 2 * np.pi)))

    def with_t(self, t):
        """Copy of these parameters with a different coupling scale."""
        return LatticeParams(self.n_sites, t, self.lam, self.b, self.phi)

    def with_phi(self, phi):
        """Copy of these parameters with a different modulation phase."""
        return LatticeParams(self.n_sites, self.t, self.lam, self.b, phi)


@dataclass(frozen=True)
class CouplingProfile:
    """Realized nearest-neighbor couplings c_1 .. c_{N-1}, per mm."""

    couplings: np.ndarray

    def __post_init__(self):
        c = _readonly(self.couplings)
        if c.ndim != 1 or c.size < 1:
            raise InvalidParameterError("profile must be a nonempty 1D sequence")
        if not np.all(c > 0):
            raise InvalidParameterError("all couplings must be positive")
        object.__setattr__(self, "couplings", c)

    @property
    def n_sites(self):
        return self.couplings.size + 1


@dataclass(frozen=True)
class Hamiltonian:
    """Real symmetric tridiagonal matrix with zero diagonal."""

    matrix: np.ndarray

    def __post_init__(self):
        m = _readonly(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 2:
            raise InvalidParameterError("matrix must be square, dimension >= 2")
        if np.any(np.diag(m) != 0):
            raise InvalidParameterError("diagonal must be identically zero")
        if not np.array_equal(m, m.T):
            raise InvalidParameterError("matrix must be symmetric")
        band = np.triu(m, 2)
        if np.any(band != 0):
            raise InvalidParameterError("matrix must be tridiagonal")
        object.__setattr__(self, "matrix", m)

    @property
    def dimension(self):
        return self.matrix.shape[0]

    @property
    def off_diagonal(self):
        return np.diag(self.matrix, 1)


def coupling_profile(params: LatticeParams) -> CouplingProfile:
    """Evaluate c_n = t*(1 + lam*cos(2*pi*b*n + phi)) for n = 1..N-1."""
    n = np.arange(1, params.n_sites)
    c = params.t * (1.0 + params.lam * np.cos(2 * np.pi * params.b * n + params.phi))
    return CouplingProfile(c)


def build_hamiltonian(profile: CouplingProfile) -> Hamiltonian:
    """Assemble the symmetric tridiagonal Hamiltonian from a profile."""
    c = profile.couplings
    m = np.diag(c, 1) + np.diag(c, -1)
    return Hamiltonian(m)


def apply_disorder(profile: CouplingProfile, strength: float, seed: int) -> CouplingProfile:
    """Multiply each coupling by (1 + strength*u), u uniform in [-1, 1].

    Deterministic per (profile, strength, seed): the same inputs produce
    bit-identical outputs.
    """
    if not 0 <= strength < 1:
        raise InvalidParameterError("strength must lie in [0, 1), got %r" % (strength,))
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    u = rng.uniform(-1.0, 1.0, size=profile.couplings.size)
    return CouplingProfile(profile.couplings * (1.0 + strength * u))


def separation_layout(profile: CouplingProfile, kappa0: float, d0: float) -> np.ndarray:
    """Waveguide separations d_n = d0*ln(kappa0/c_n) in micrometers.

    Inverts the exponential coupling model c = kappa0*exp(-d/d0); the
    round trip back to couplings is exact to floating point.
    """
    if not d0 > 0:
        raise InvalidParameterError("d0 must be positive, got %r" % (d0,))
    c = profile.couplings
    if np.any(c >= kappa0):
        raise CalibrationError(
            "kappa0 (%g) must exceed every coupling (max %g)" % (kappa0, c.max())
        )
    return d0 * np.log(kappa0 / c)
