# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-window counting loops.

Bit-stream compatible with the numpy fallback: both consume the same
numpy C distribution functions in the same per-block phase order, so the
tallies match the vectorized path exactly for identical (seed, block)
pairs. See _numpy_backend for the protocol.
"""

import numpy as np

cimport numpy as cnp
from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.string cimport memset
from numpy.random cimport bitgen_t
from numpy.random.c_distributions cimport (
    binomial_t,
    random_binomial,
    random_negative_binomial,
    random_poisson,
    random_standard_uniform,
)

cnp.import_array()

NAME = "cython"


cdef bitgen_t *_state(object bit_generator) except NULL:
    return <bitgen_t *> PyCapsule_GetPointer(bit_generator.capsule, "BitGenerator")


def cross_tallies(object gen, Py_ssize_t nb, bint thermal, double k, double mu,
                  double eta_s, double eta_i, double dark_s, double dark_i):
    cdef object bg = gen.bit_generator
    cdef bitgen_t *rng = _state(bg)
    cdef cnp.int64_t[::1] n_s = np.empty(nb, dtype=np.int64)
    cdef cnp.int64_t[::1] n_i
    cdef cnp.uint8_t[::1] click_s = np.empty(nb, dtype=np.uint8)
    cdef cnp.uint8_t[::1] click_i = np.empty(nb, dtype=np.uint8)
    cdef binomial_t binom
    cdef double p_nb
    cdef Py_ssize_t j
    cdef long long ss = 0, si = 0, cc = 0
    memset(&binom, 0, sizeof(binom))
    if thermal:
        n_i = n_s  # arms share the pair number
    else:
        n_i = np.empty(nb, dtype=np.int64)
    with bg.lock, nogil:
        if thermal:
            p_nb = k / (k + mu)
            for j in range(nb):
                n_s[j] = random_negative_binomial(rng, k, p_nb)
        else:
            for j in range(nb):
                n_s[j] = random_poisson(rng, mu)
            for j in range(nb):
                n_i[j] = random_poisson(rng, mu)
        for j in range(nb):
            click_s[j] = random_binomial(rng, eta_s, n_s[j], &binom) > 0
        for j in range(nb):
            click_i[j] = random_binomial(rng, eta_i, n_i[j], &binom) > 0
        if dark_s > 0:
            for j in range(nb):
                if random_standard_uniform(rng) < dark_s:
                    click_s[j] = 1
        if dark_i > 0:
            for j in range(nb):
                if random_standard_uniform(rng) < dark_i:
                    click_i[j] = 1
        for j in range(nb):
            ss += click_s[j]
            si += click_i[j]
            cc += click_s[j] & click_i[j]
    return ss, si, cc


def auto_tallies(object gen, Py_ssize_t nb, bint thermal, double k, double mu,
                 double eta, double dark):
    cdef object bg = gen.bit_generator
    cdef bitgen_t *rng = _state(bg)
    cdef cnp.int64_t[::1] n = np.empty(nb, dtype=np.int64)
    cdef cnp.int64_t[::1] arrived = np.empty(nb, dtype=np.int64)
    cdef cnp.int64_t[::1] half_1 = np.empty(nb, dtype=np.int64)
    cdef cnp.uint8_t[::1] click_1 = np.empty(nb, dtype=np.uint8)
    cdef cnp.uint8_t[::1] click_2 = np.empty(nb, dtype=np.uint8)
    cdef binomial_t binom
    cdef double p_nb
    cdef Py_ssize_t j
    cdef long long s1 = 0, s2 = 0, cc = 0
    memset(&binom, 0, sizeof(binom))
    with bg.lock, nogil:
        if thermal:
            p_nb = k / (k + mu)
            for j in range(nb):
                n[j] = random_negative_binomial(rng, k, p_nb)
        else:
            for j in range(nb):
                n[j] = random_poisson(rng, mu)
        for j in range(nb):
            arrived[j] = random_binomial(rng, eta, n[j], &binom)
        for j in range(nb):
            half_1[j] = random_binomial(rng, 0.5, arrived[j], &binom)
        for j in range(nb):
            click_1[j] = half_1[j] > 0
            click_2[j] = (arrived[j] - half_1[j]) > 0
        if dark > 0:
            for j in range(nb):
                if random_standard_uniform(rng) < dark:
                    click_1[j] = 1
            for j in range(nb):
                if random_standard_uniform(rng) < dark:
                    click_2[j] = 1
        for j in range(nb):
            s1 += click_1[j]
            s2 += click_2[j]
            cc += click_1[j] & click_2[j]
    return s1, s2, cc
