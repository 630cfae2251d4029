"""Click-pattern probabilities by truncated photon-number summation.

Sums the source number distribution term by term (scipy.stats pmfs)
against explicit survival factors, rather than evaluating probability
generating functions, so it cross-checks the library's closed forms
through independent arithmetic. Patterns are ordered (p00, p01, p10,
p11); the digits read (signal, idler), so p10 means the signal detector
clicked and the idler did not.
"""

import numpy as np
from scipy import stats

_TAIL = 1e-16
_MAX_N = 20000


def _number_pmf(statistics, mu, schmidt_k):
    if statistics == "thermal":
        p = schmidt_k / (schmidt_k + mu)
        dist = stats.nbinom(schmidt_k, p)
    elif statistics == "coherent":
        dist = stats.poisson(mu)
    else:
        raise ValueError("unknown statistics %r" % (statistics,))
    ns = np.arange(_MAX_N)
    pmf = dist.pmf(ns)
    keep = int(np.searchsorted(np.cumsum(pmf), 1.0 - _TAIL)) + 2
    return ns[:keep], pmf[:keep]


def cross_click_probabilities(statistics, mu, schmidt_k, eta_s, eta_i,
                              dark_s=0.0, dark_i=0.0):
    """(p00, p01, p10, p11) for one coincidence window."""
    ns, pmf = _number_pmf(statistics, mu, schmidt_k)
    surv_s = (1.0 - eta_s) ** ns
    surv_i = (1.0 - eta_i) ** ns
    ks = 1.0 - dark_s
    ki = 1.0 - dark_i
    if statistics == "thermal":
        # one shared pair number; arms conditionally independent given n
        q_s = float(np.sum(pmf * surv_s)) * ks
        q_i = float(np.sum(pmf * surv_i)) * ki
        p00 = float(np.sum(pmf * surv_s * surv_i)) * ks * ki
    else:
        # independent Poisson numbers per arm
        q_s = float(np.sum(pmf * surv_s)) * ks
        q_i = float(np.sum(pmf * surv_i)) * ki
        p00 = q_s * q_i
    p01 = q_s - p00
    p10 = q_i - p00
    p11 = 1.0 - q_s - q_i + p00
    return p00, p01, p10, p11


def auto_click_probabilities(statistics, mu, schmidt_k, eta, dark=0.0):
    """(p00, p01, p10, p11) for one arm split 50:50 onto two detectors."""
    ns, pmf = _number_pmf(statistics, mu, schmidt_k)
    k = 1.0 - dark
    q1 = float(np.sum(pmf * (1.0 - eta / 2.0) ** ns)) * k
    p00 = float(np.sum(pmf * (1.0 - eta) ** ns)) * k * k
    p01 = q1 - p00
    p10 = q1 - p00
    p11 = 1.0 - 2.0 * q1 + p00
    return p00, p01, p10, p11


def click_level_g2(patterns):
    """Limit of the windowed estimator C*W/(S_s*S_i) for given patterns."""
    p00, p01, p10, p11 = patterns
    ps = p10 + p11
    pi = p01 + p11
    return p11 / (ps * pi)
