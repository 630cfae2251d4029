import numpy as np
import pytest

from qharper import (
    CalibrationError,
    CouplingProfile,
    GOLDEN_MEAN,
    InvalidParameterError,
    LatticeParams,
    apply_disorder,
    build_hamiltonian,
    coupling_profile,
    separation_layout,
)


def test_defaults_match_reference_lattice():
    p = LatticeParams()
    assert p.n_sites == 50
    assert p.t == 1.0
    assert p.lam == 0.5
    assert np.isclose(p.b, (1 + np.sqrt(5)) / 2)
    assert np.isclose(p.phi, 0.2 * np.pi)


def test_profile_formula_and_indexing():
    p = LatticeParams(n_sites=5, t=2.0, lam=0.3, b=1.25, phi=0.7)
    c = coupling_profile(p).couplings
    assert c.shape == (4,)
    for n in range(1, 5):
        expect = 2.0 * (1 + 0.3 * np.cos(2 * np.pi * 1.25 * n + 0.7))
        assert np.isclose(c[n - 1], expect, atol=1e-14)


def test_unmodulated_profile_is_uniform():
    c = coupling_profile(LatticeParams(n_sites=8, t=1.7, lam=0.0)).couplings
    assert np.allclose(c, 1.7)


def test_phase_wraps_into_principal_interval():
    p = LatticeParams(phi=2 * np.pi + 0.3)
    assert np.isclose(p.phi, 0.3)
    assert np.isclose(LatticeParams(phi=-0.3).phi, 2 * np.pi - 0.3)


def test_with_t_and_with_phi_leave_the_rest_alone():
    p = LatticeParams(n_sites=10, t=0.5, lam=0.2, b=1.1, phi=0.4)
    q = p.with_t(0.9)
    assert (q.t, q.n_sites, q.lam, q.b, q.phi) == (0.9, 10, 0.2, 1.1, 0.4)
    r = p.with_phi(1.0)
    assert (r.phi, r.t) == (1.0, 0.5)


@pytest.mark.parametrize("kwargs", [
    dict(n_sites=1),
    dict(t=0.0),
    dict(t=-1.0),
    dict(lam=1.0),
    dict(lam=-0.1),
])
def test_invalid_parameters_rejected(kwargs):
    with pytest.raises(InvalidParameterError):
        LatticeParams(**kwargs)


def test_hamiltonian_structure():
    p = LatticeParams(n_sites=6)
    c = coupling_profile(p).couplings
    h = build_hamiltonian(coupling_profile(p))
    assert h.dimension == 6
    assert np.allclose(np.diag(h.matrix), 0.0)
    assert np.allclose(h.off_diagonal, c)
    assert np.array_equal(h.matrix, h.matrix.T)
    assert not h.matrix.flags.writeable


def test_hamiltonian_rejects_bad_matrices():
    with pytest.raises(InvalidParameterError):
        build_hamiltonian(CouplingProfile(np.array([1.0, -0.5])))
    from qharper import Hamiltonian
    with pytest.raises(InvalidParameterError):
        Hamiltonian(np.array([[1.0, 0.5], [0.5, 0.0]]))  # nonzero diagonal
    with pytest.raises(InvalidParameterError):
        Hamiltonian(np.array([[0.0, 0.5], [0.4, 0.0]]))  # asymmetric
    m = np.zeros((4, 4))
    m[0, 3] = m[3, 0] = 0.2
    with pytest.raises(InvalidParameterError):
        Hamiltonian(m)  # long-range entry


def test_disorder_is_deterministic_and_bounded():
    base = coupling_profile(LatticeParams())
    a = apply_disorder(base, 0.1, seed=42)
    b = apply_disorder(base, 0.1, seed=42)
    assert np.array_equal(a.couplings, b.couplings)
    c = apply_disorder(base, 0.1, seed=43)
    assert not np.array_equal(a.couplings, c.couplings)
    ratio = a.couplings / base.couplings
    assert np.all(ratio >= 0.9) and np.all(ratio <= 1.1)


def test_zero_disorder_is_identity():
    base = coupling_profile(LatticeParams())
    out = apply_disorder(base, 0.0, seed=1)
    assert np.array_equal(out.couplings, base.couplings)


def test_disorder_strength_validation():
    base = coupling_profile(LatticeParams())
    with pytest.raises(InvalidParameterError):
        apply_disorder(base, 1.0, seed=0)
    with pytest.raises(InvalidParameterError):
        apply_disorder(base, -0.2, seed=0)


def test_separation_layout_round_trip():
    base = coupling_profile(LatticeParams())
    kappa0, d0 = 3.0, 4.2
    d = separation_layout(base, kappa0, d0)
    assert np.all(d > 0)
    back = kappa0 * np.exp(-d / d0)
    assert np.allclose(back, base.couplings, rtol=1e-14)


def test_separation_layout_requires_headroom():
    base = coupling_profile(LatticeParams(t=2.0))
    with pytest.raises(CalibrationError):
        separation_layout(base, kappa0=1.0, d0=4.2)


def test_golden_mean_constant():
    assert np.isclose(GOLDEN_MEAN, 1.618033988749895, atol=1e-15)
