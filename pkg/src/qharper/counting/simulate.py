"""Counting simulations and correlation estimators.

Windows are simulated in blocks of 2**18; block j of a run draws from
Generator(PCG64(SeedSequence((seed, j)))), so results are deterministic,
order-independent, and identical across backends (see _numpy_backend for
the shared draw protocol).

Runs longer than ``aggregate_threshold`` windows switch to an exact
aggregate sampler: the four click patterns of a window are jointly
multinomial with the closed-form probabilities from models.py, so drawing
Multinomial(n_windows, p) reproduces the per-window distribution exactly
at any scale. The aggregate stream uses block index 2**32, which the
per-window path never reaches.
"""

import os

import numpy as np

from ..errors import InvalidParameterError, UndefinedEstimateError
from . import _numpy_backend
from .models import (
    CauchySchwarzResult,
    CountRecord,
    DetectionChannel,
    G2Estimate,
    SourceModel,
    auto_click_probabilities,
    click_probabilities,
)

try:
    from . import _kernels
except ImportError:
    _kernels = None

BLOCK_WINDOWS = 1 << 18
DEFAULT_AGGREGATE_THRESHOLD = 1_000_000_000
_AGGREGATE_BLOCK = 1 << 32

SIGNAL = "signal"
IDLER = "idler"
_ARM_SALT = {SIGNAL: 0, IDLER: 1}


def available_backends():
    names = ["numpy"]
    if _kernels is not None:
        names.insert(0, "cython")
    return tuple(names)


def active_backend(backend=None):
    """Resolve a backend name, honoring the QHARPER_BACKEND variable."""
    requested = backend or os.environ.get("QHARPER_BACKEND", "").strip().lower()
    if not requested or requested == "auto":
        return "cython" if _kernels is not None else "numpy"
    if requested == "numpy":
        return "numpy"
    if requested == "cython":
        if _kernels is None:
            raise InvalidParameterError(
                "cython backend requested but the compiled kernel is not available"
            )
        return "cython"
    raise InvalidParameterError("unknown backend %r" % (requested,))


def _impl(backend):
    return _kernels if active_backend(backend) == "cython" else _numpy_backend


def _n_windows(source, duration):
    if not duration > 0:
        raise InvalidParameterError("duration must be positive, got %r" % (duration,))
    n = int(round(duration * 1e9 / source.window_ns))
    if n < 1:
        raise InvalidParameterError("duration shorter than one window")
    return n


def _check_seed(seed):
    seed = int(seed)
    if seed < 0:
        raise InvalidParameterError("seed must be nonnegative, got %r" % (seed,))
    return seed


def _block_rng(seed, block):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, block))))


def _run_blocks(seed, n_windows, fn, args):
    done = 0
    block = 0
    a = b = c = 0
    while done < n_windows:
        nb = min(BLOCK_WINDOWS, n_windows - done)
        da, db, dc = fn(_block_rng(seed, block), nb, *args)
        a += da
        b += db
        c += dc
        done += nb
        block += 1
    return a, b, c


def _sample_patterns(probs, n_windows, seed):
    rng = _block_rng(seed, _AGGREGATE_BLOCK)
    p = np.asarray(probs, dtype=float)
    counts = rng.multinomial(n_windows, p / p.sum())
    return counts  # order (00, 01, 10, 11)


def simulate_counts(source: SourceModel, ch_s: DetectionChannel,
                    ch_i: DetectionChannel, duration: float, seed: int,
                    backend=None,
                    aggregate_threshold=DEFAULT_AGGREGATE_THRESHOLD) -> CountRecord:
    """Count singles and coincidences over duration/window windows.

    Per window: draw the pair number from the source statistics, thin each
    arm binomially by its transmission, add dark clicks, and threshold to
    at most one click per arm. Deterministic per seed.
    """
    seed = _check_seed(seed)
    n_windows = _n_windows(source, duration)
    if n_windows > aggregate_threshold:
        c00, c01, c10, c11 = _sample_patterns(
            click_probabilities(source, ch_s, ch_i), n_windows, seed
        )
        singles_s, singles_i, coinc = c10 + c11, c01 + c11, c11
    else:
        singles_s, singles_i, coinc = _run_blocks(
            seed, n_windows, _impl(backend).cross_tallies,
            (source.thermal, source.schmidt_k, source.mu,
             ch_s.transmission, ch_i.transmission,
             ch_s.dark_prob, ch_i.dark_prob),
        )
    return CountRecord(
        n_windows=int(n_windows),
        singles_s=int(singles_s),
        singles_i=int(singles_i),
        coincidences=int(coinc),
        duration=float(duration),
    )


def estimate_g2(rec: CountRecord) -> G2Estimate:
    """g2 = C*W/(S_s*S_i) with independent-Poisson error propagation."""
    if rec.singles_s <= 0 or rec.singles_i <= 0:
        raise UndefinedEstimateError(
            "g2 undefined: singles_s=%d singles_i=%d" % (rec.singles_s, rec.singles_i),
            record=rec,
        )
    value = rec.coincidences * rec.n_windows / (rec.singles_s * rec.singles_i)
    if rec.coincidences > 0:
        rel = np.sqrt(
            1.0 / rec.coincidences + 1.0 / rec.singles_s + 1.0 / rec.singles_i
        )
        sigma = value * rel
    else:
        sigma = 0.0  # first-order propagation collapses at C = 0
    return G2Estimate(value=float(value), sigma=float(sigma))


def hbt_auto_g2(source: SourceModel, which_arm: str, ch: DetectionChannel,
                duration: float, seed: int, backend=None,
                aggregate_threshold=DEFAULT_AGGREGATE_THRESHOLD) -> G2Estimate:
    """Auto-correlation of one arm split 50:50 onto two virtual detectors.

    The two arms carry identical marginal statistics; which_arm only
    decorrelates the random stream so signal and idler measurements of one
    run are independent.
    """
    if which_arm not in _ARM_SALT:
        raise InvalidParameterError(
            "which_arm must be %r or %r" % (SIGNAL, IDLER)
        )
    seed = _check_seed(seed)
    arm_seed = int(
        np.random.SeedSequence((seed, _ARM_SALT[which_arm]))
        .generate_state(1, np.uint64)[0]
    )
    n_windows = _n_windows(source, duration)
    if n_windows > aggregate_threshold:
        c00, c01, c10, c11 = _sample_patterns(
            auto_click_probabilities(source, ch), n_windows, arm_seed
        )
        s1, s2, coinc = c10 + c11, c01 + c11, c11
    else:
        s1, s2, coinc = _run_blocks(
            arm_seed, n_windows, _impl(backend).auto_tallies,
            (source.thermal, source.schmidt_k, source.mu,
             ch.transmission, ch.dark_prob),
        )
    rec = CountRecord(
        n_windows=int(n_windows), singles_s=int(s1), singles_i=int(s2),
        coincidences=int(coinc), duration=float(duration),
    )
    return estimate_g2(rec)


def cauchy_schwarz(gsi: G2Estimate, gss: G2Estimate,
                   gii: G2Estimate) -> CauchySchwarzResult:
    """V = g_si^2 - g_ss*g_ii with first-order uncertainty propagation."""
    v = gsi.value**2 - gss.value * gii.value
    sigma_v = float(np.sqrt(
        (2.0 * gsi.value * gsi.sigma) ** 2
        + (gii.value * gss.sigma) ** 2
        + (gss.value * gii.sigma) ** 2
    ))
    if sigma_v > 0:
        sds = v / sigma_v
    elif v == 0:
        sds = 0.0
    else:
        sds = float(np.inf) if v > 0 else float(-np.inf)
    return CauchySchwarzResult(
        violation=float(v), sigma_v=sigma_v, sds=float(sds),
        violated=bool(v > 0 and sds > 0),
    )


def site_seed(seed, site):
    """Deterministic per-site child seed for scan runs."""
    ss = np.random.SeedSequence((_check_seed(seed), int(site)))
    return int(ss.generate_state(1, np.uint64)[0])


def site_count_record(u, input_a: int, input_b: int, source: SourceModel,
                      base_channel: DetectionChannel, site: int,
                      duration: float, seed: int, backend=None,
                      aggregate_threshold=DEFAULT_AGGREGATE_THRESHOLD) -> CountRecord:
    """Raw counts with both arms picked up at one monitored output site.

    Each arm's transmission is the base channel transmission times the
    single-photon output probability at the site for that arm's injection,
    so the detected flux tracks the lattice output pattern.
    """
    from ..evolution import single_photon_distribution

    if not 1 <= site <= u.n_sites:
        raise InvalidParameterError("site %r out of range" % (site,))
    p_a = single_photon_distribution(u, input_a)
    p_b = single_photon_distribution(u, input_b)
    ch_s = DetectionChannel(
        transmission=base_channel.transmission * float(p_a[site - 1]),
        dark_prob=base_channel.dark_prob,
    )
    ch_i = DetectionChannel(
        transmission=base_channel.transmission * float(p_b[site - 1]),
        dark_prob=base_channel.dark_prob,
    )
    return simulate_counts(
        source, ch_s, ch_i, duration, site_seed(seed, site),
        backend=backend, aggregate_threshold=aggregate_threshold,
    )


def site_g2_scan(u, input_a: int, input_b: int, source: SourceModel,
                 base_channel: DetectionChannel, sites, duration: float,
                 seed: int, backend=None,
                 aggregate_threshold=DEFAULT_AGGREGATE_THRESHOLD):
    """Cross-correlation estimates at each monitored output site.

    Both photons must exit the monitored site (iris pickup) and are split
    there onto the two detectors; see site_count_record for the per-site
    channel construction. Raises UndefinedEstimateError, tagged with the
    site, when a site yields no singles.
    """
    estimates = []
    for site in sites:
        rec = site_count_record(
            u, input_a, input_b, source, base_channel, site, duration, seed,
            backend=backend, aggregate_threshold=aggregate_threshold,
        )
        try:
            estimates.append(estimate_g2(rec))
        except UndefinedEstimateError as exc:
            exc.site = site
            raise
    return estimates
