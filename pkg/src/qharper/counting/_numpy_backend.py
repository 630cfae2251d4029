"""Vectorized per-window counting, the fallback when the kernel is absent.

The draw protocol per block is fixed and shared with the compiled kernel:

  cross, thermal:  pair numbers (negative binomial), signal thinning
                   (binomial), idler thinning (binomial), then one uniform
                   per window per arm only when that arm has dark counts.
  cross, coherent: signal numbers (Poisson), idler numbers (Poisson),
                   signal thinning, idler thinning, darks as above.
  auto:            arm numbers, arm thinning (binomial), 50:50 split
                   (binomial), then darks for each virtual detector.

Both backends call the same underlying numpy distribution functions in
this order, so identical (seed, block) pairs yield identical tallies bit
for bit.
"""

import numpy as np

NAME = "numpy"


def cross_tallies(gen, nb, thermal, k, mu, eta_s, eta_i, dark_s, dark_i):
    if thermal:
        pairs = gen.negative_binomial(k, k / (k + mu), nb)
        det_s = gen.binomial(pairs, eta_s)
        det_i = gen.binomial(pairs, eta_i)
    else:
        n_s = gen.poisson(mu, nb)
        n_i = gen.poisson(mu, nb)
        det_s = gen.binomial(n_s, eta_s)
        det_i = gen.binomial(n_i, eta_i)
    click_s = det_s > 0
    click_i = det_i > 0
    if dark_s > 0:
        click_s |= gen.random(nb) < dark_s
    if dark_i > 0:
        click_i |= gen.random(nb) < dark_i
    return (
        int(np.count_nonzero(click_s)),
        int(np.count_nonzero(click_i)),
        int(np.count_nonzero(click_s & click_i)),
    )


def auto_tallies(gen, nb, thermal, k, mu, eta, dark):
    if thermal:
        n = gen.negative_binomial(k, k / (k + mu), nb)
    else:
        n = gen.poisson(mu, nb)
    arrived = gen.binomial(n, eta)
    half_1 = gen.binomial(arrived, 0.5)
    half_2 = arrived - half_1
    click_1 = half_1 > 0
    click_2 = half_2 > 0
    if dark > 0:
        click_1 |= gen.random(nb) < dark
        click_2 |= gen.random(nb) < dark
    return (
        int(np.count_nonzero(click_1)),
        int(np.count_nonzero(click_2)),
        int(np.count_nonzero(click_1 & click_2)),
    )
