"""Bit-level equivalence of the compiled and pure-numpy counting kernels.

Both backends must consume the per-block PCG64 streams identically, so
every tally (not just the statistics) matches exactly. These tests skip
when the compiled kernel is unavailable; everything else in the suite
runs against whichever backend is active.
"""

import numpy as np
import pytest

from qharper import DetectionChannel, SourceModel, simulate_counts, hbt_auto_g2
from qharper.counting import COHERENT, THERMAL, available_backends, active_backend
from qharper.counting.simulate import BLOCK_WINDOWS

needs_kernel = pytest.mark.skipif(
    "cython" not in available_backends(),
    reason="compiled kernel not built",
)

CASES = [
    ("thermal single mode", SourceModel(mu=0.1056, schmidt_k=1.0), 0.05, 0.05, 0.0, 0.0),
    ("thermal multimode", SourceModel(mu=0.7, schmidt_k=2.6), 0.9, 0.6, 0.0, 0.0),
    ("thermal with darks", SourceModel(mu=0.3, schmidt_k=1.0), 0.4, 0.3, 1e-3, 2e-3),
    ("coherent", SourceModel(mu=0.4, statistics=COHERENT), 0.5, 0.5, 0.0, 0.0),
    ("coherent with darks", SourceModel(mu=0.2, statistics=COHERENT), 0.3, 0.7, 5e-4, 0.0),
]

# spans two full blocks plus one partial block
_DUR = (2 * BLOCK_WINDOWS + 1234) * 2e-9


@needs_kernel
@pytest.mark.parametrize("name,src,es,ei,ds,di", CASES)
def test_cross_tallies_bit_identical(name, src, es, ei, ds, di):
    ch_s, ch_i = DetectionChannel(es, ds), DetectionChannel(ei, di)
    a = simulate_counts(src, ch_s, ch_i, _DUR, seed=17, backend="cython")
    b = simulate_counts(src, ch_s, ch_i, _DUR, seed=17, backend="numpy")
    assert a == b


@needs_kernel
@pytest.mark.parametrize("statistics", [THERMAL, COHERENT])
@pytest.mark.parametrize("dark", [0.0, 1e-3])
def test_auto_tallies_bit_identical(statistics, dark):
    src = SourceModel(mu=0.5, schmidt_k=1.4, statistics=statistics)
    ch = DetectionChannel(0.35, dark)
    a = hbt_auto_g2(src, "signal", ch, _DUR, seed=23, backend="cython")
    b = hbt_auto_g2(src, "signal", ch, _DUR, seed=23, backend="numpy")
    assert a == b


@needs_kernel
def test_partial_final_block_bit_identical():
    src = SourceModel(mu=0.1056)
    ch = DetectionChannel(0.1)
    for n in (1, 7, 1234, BLOCK_WINDOWS - 1, BLOCK_WINDOWS):
        a = simulate_counts(src, ch, ch, n * 2e-9, seed=2, backend="cython")
        b = simulate_counts(src, ch, ch, n * 2e-9, seed=2, backend="numpy")
        assert a == b, "disagreement at %d windows" % n


def test_backend_selection():
    assert active_backend("numpy") == "numpy"
    assert active_backend() in available_backends()
    with pytest.raises(Exception):
        active_backend("fortran")


@needs_kernel
def test_env_variable_selects_backend(monkeypatch):
    monkeypatch.setenv("QHARPER_BACKEND", "numpy")
    assert active_backend() == "numpy"
    monkeypatch.setenv("QHARPER_BACKEND", "cython")
    assert active_backend() == "cython"
    monkeypatch.setenv("QHARPER_BACKEND", "auto")
    assert active_backend() == "cython"
