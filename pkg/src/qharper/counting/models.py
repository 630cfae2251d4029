"""Source and detector models plus closed-form correlation results.

The pair source is a family of K identical thermal modes with total mean
pair number mu per coincidence window (negative-binomial pair count), or a
Poissonian control with independent arms ("coherent" statistics). The
closed forms:

    g_auto = 1 + 1/K          (either arm against itself)
    g_si   = 1 + 1/K + 1/mu   (signal against idler)

for thermal statistics, and exactly 1 for the coherent control.

Click probabilities for non-number-resolving detectors follow from the
pair-number probability generating function G(u) = E[u^n]:

    thermal   G(u) = (1 + mu*(1-u)/K)^(-K)
    coherent  G(u) = exp(-mu*(1-u))

since a detector with transmission eta misses all n pairs with
probability (1-eta)^n, i.e. G(1-eta).
"""

from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidParameterError

THERMAL = "thermal"
COHERENT = "coherent"


@dataclass(frozen=True)
class SourceModel:
    """Photon-pair source parameters.

    Parameters
    ----------
    mu : float
        Mean photon pairs per coincidence window.
    schmidt_k : float
        Effective mode number K >= 1; sets the auto-correlation 1 + 1/K.
    window_ns : float
        Coincidence window in nanoseconds.
    statistics : str
        "thermal" for the pair source, "coherent" for the classical
        control (Poissonian numbers, independent arms).
    """

    mu: float
    schmidt_k: float = 1.0
    window_ns: float = 2.0
    statistics: str = THERMAL

    def __post_init__(self):
        if not self.mu > 0:
            raise InvalidParameterError("mu must be positive, got %r" % (self.mu,))
        if not self.schmidt_k >= 1:
            raise InvalidParameterError(
                "schmidt_k must be >= 1, got %r" % (self.schmidt_k,)
            )
        if not self.window_ns > 0:
            raise InvalidParameterError(
                "window_ns must be positive, got %r" % (self.window_ns,)
            )
        if self.statistics not in (THERMAL, COHERENT):
            raise InvalidParameterError(
                "statistics must be %r or %r" % (THERMAL, COHERENT)
            )

    @property
    def thermal(self):
        return self.statistics == THERMAL


@dataclass(frozen=True)
class DetectionChannel:
    """One detection arm: overall transmission and dark-click probability.

    transmission is the product of every loss on the arm (lattice output
    probability at the monitored site, polarization projection, detector
    efficiency); dark_prob is the chance of a spurious click per window.
    """

    transmission: float
    dark_prob: float = 0.0

    def __post_init__(self):
        if not 0 <= self.transmission <= 1:
            raise InvalidParameterError(
                "transmission must lie in [0, 1], got %r" % (self.transmission,)
            )
        if not 0 <= self.dark_prob < 1:
            raise InvalidParameterError(
                "dark_prob must lie in [0, 1), got %r" % (self.dark_prob,)
            )


@dataclass(frozen=True)
class CountRecord:
    """Tallies from one counting run with threshold detectors."""

    n_windows: int
    singles_s: int
    singles_i: int
    coincidences: int
    duration: float

    def __post_init__(self):
        counts = (self.singles_s, self.singles_i, self.coincidences)
        if any(c < 0 for c in counts) or self.n_windows < 0:
            raise InvalidParameterError("counts must be nonnegative")
        if any(c > self.n_windows for c in counts):
            raise InvalidParameterError("counts cannot exceed n_windows")
        if self.coincidences > min(self.singles_s, self.singles_i):
            raise InvalidParameterError("coincidences cannot exceed either singles")


@dataclass(frozen=True)
class G2Estimate:
    """A second-order correlation value with one-sigma uncertainty."""

    value: float
    sigma: float

    def __post_init__(self):
        if self.value < 0 or self.sigma < 0:
            raise InvalidParameterError("value and sigma must be nonnegative")


@dataclass(frozen=True)
class CauchySchwarzResult:
    """Violation V = g_si^2 - g_ss*g_ii with propagated uncertainty."""

    violation: float
    sigma_v: float
    sds: float
    violated: bool


G2Triple = namedtuple("G2Triple", ["g_si", "g_ss", "g_ii"])


def analytic_g2(source: SourceModel) -> G2Triple:
    """Closed-form (g_si, g_ss, g_ii) for the source, loss-independent."""
    if not source.thermal:
        return G2Triple(1.0, 1.0, 1.0)
    g_auto = 1.0 + 1.0 / source.schmidt_k
    return G2Triple(g_auto + 1.0 / source.mu, g_auto, g_auto)


def _pgf(source: SourceModel, u):
    """E[u^n] for the pair number n of one window."""
    if source.thermal:
        return (1.0 + source.mu * (1.0 - u) / source.schmidt_k) ** (-source.schmidt_k)
    return np.exp(-source.mu * (1.0 - u))


def click_probabilities(source: SourceModel, ch_s: DetectionChannel,
                        ch_i: DetectionChannel):
    """Exact per-window probabilities of the four click patterns.

    Returns (p00, p01, p10, p11), ordered (signal, idler) with 0 = no
    click. Thermal arms share the pair number; coherent arms are
    independent Poisson streams.
    """
    es, ei = ch_s.transmission, ch_i.transmission
    ds, di = ch_s.dark_prob, ch_i.dark_prob
    if source.thermal:
        none_s = _pgf(source, 1.0 - es)
        none_i = _pgf(source, 1.0 - ei)
        none_both = _pgf(source, (1.0 - es) * (1.0 - ei))
    else:
        none_s = _pgf(source, 1.0 - es)
        none_i = _pgf(source, 1.0 - ei)
        none_both = none_s * none_i
    q_s = none_s * (1.0 - ds)  # P(no signal click)
    q_i = none_i * (1.0 - di)
    p00 = none_both * (1.0 - ds) * (1.0 - di)
    p01 = q_s - p00
    p10 = q_i - p00
    p11 = 1.0 - q_s - q_i + p00
    return float(p00), float(p01), float(p10), float(p11)


def auto_click_probabilities(source: SourceModel, ch: DetectionChannel):
    """Click-pattern probabilities for one arm split 50:50 onto two detectors.

    Each photon of the selected arm survives with probability
    ch.transmission and then picks a detector with probability 1/2, so the
    per-detector miss factors are G(1 - eta/2) and jointly G(1 - eta).
    Both virtual detectors share ch.dark_prob.
    """
    eta, d = ch.transmission, ch.dark_prob
    none_1 = _pgf(source, 1.0 - eta / 2.0)
    none_both = _pgf(source, 1.0 - eta)
    q1 = none_1 * (1.0 - d)
    p00 = none_both * (1.0 - d) ** 2
    p01 = q1 - p00
    p10 = q1 - p00
    p11 = 1.0 - 2.0 * q1 + p00
    return float(p00), float(p01), float(p10), float(p11)
