import numpy as np
import pytest

from oracles.taylor import expm_taylor
from oracles.twoboson import correlation_matrix
from qharper import (
    Hamiltonian,
    InvalidParameterError,
    LatticeParams,
    build_hamiltonian,
    confinement,
    coupling_profile,
    evolution_snapshots,
    propagate,
    single_photon_distribution,
    two_photon_correlation,
)


def _h(n_sites=6, t=0.8, lam=0.5, phi=0.3):
    return build_hamiltonian(coupling_profile(
        LatticeParams(n_sites=n_sites, t=t, lam=lam, phi=phi)))


def test_propagator_is_unitary():
    u = propagate(_h(50, t=1.0), 35.0)
    eye = u.matrix @ u.matrix.conj().T
    assert np.abs(eye - np.eye(50)).max() < 1e-10


def test_propagator_matches_taylor_series_oracle():
    h = _h(6)
    u = propagate(h, 2.7)
    oracle = expm_taylor(-1j * 2.7 * h.matrix)
    assert np.abs(u.matrix - oracle).max() < 1e-12


def test_zero_depth_is_identity():
    u = propagate(_h(5), 0.0)
    assert np.allclose(u.matrix, np.eye(5), atol=1e-14)


def test_depth_composes_additively():
    h = _h(5)
    u1 = propagate(h, 1.2).matrix
    u2 = propagate(h, 2.3).matrix
    u3 = propagate(h, 3.5).matrix
    assert np.abs(u1 @ u2 - u3).max() < 1e-12


def test_negative_depth_rejected():
    with pytest.raises(InvalidParameterError):
        propagate(_h(4), -1.0)


def test_single_photon_distribution_conserves_probability():
    u = propagate(_h(50), 35.0)
    for site in (1, 26, 50):
        p = single_photon_distribution(u, site)
        assert abs(p.sum() - 1.0) < 1e-10
        assert np.all(p >= -1e-15)


def test_single_photon_site_bounds():
    u = propagate(_h(4), 1.0)
    with pytest.raises(InvalidParameterError):
        single_photon_distribution(u, 0)
    with pytest.raises(InvalidParameterError):
        single_photon_distribution(u, 5)


@pytest.mark.parametrize("a,b", [(1, 1), (1, 4), (2, 3), (5, 5)])
def test_two_photon_matrix_matches_fock_oracle(a, b):
    h = _h(5, t=0.9, lam=0.4, phi=1.1)
    corr = two_photon_correlation(propagate(h, 3.3), a, b)
    oracle = correlation_matrix(h.matrix, 3.3, a, b, indistinguishable=True)
    assert np.abs(corr.gamma - oracle).max() < 1e-8


@pytest.mark.parametrize("a,b", [(1, 3), (2, 2)])
def test_distinguishable_matrix_matches_oracle(a, b):
    h = _h(6, t=0.7)
    corr = two_photon_correlation(propagate(h, 2.0), a, b,
                                  indistinguishable=False)
    oracle = correlation_matrix(h.matrix, 2.0, a, b, indistinguishable=False)
    assert np.abs(corr.gamma - oracle).max() < 1e-8


def test_unordered_pair_normalization_is_exact():
    u = propagate(_h(50), 35.0)
    for a, b in ((1, 1), (1, 26), (26, 26)):
        g = two_photon_correlation(u, a, b).gamma
        total = (g.sum() + np.trace(g)) / 2.0
        assert abs(total - 1.0) < 1e-10


def test_same_site_injection_factorizes_on_the_diagonal():
    # both photons from one site: gamma_qq = p_q^2 exactly
    u = propagate(_h(50), 35.0)
    p = single_photon_distribution(u, 1)
    g = two_photon_correlation(u, 1, 1).gamma
    assert np.allclose(np.diag(g), p**2, atol=1e-12)


def test_hom_zero_at_the_balanced_coupler_point():
    # c*z = pi/4 is the 50:50 point of a two-site coupler
    c = 0.53
    h = Hamiltonian(np.array([[0.0, c], [c, 0.0]]))
    u = propagate(h, np.pi / (4 * c))
    g = two_photon_correlation(u, 1, 2).gamma
    assert abs(g[0, 1]) < 1e-10
    assert abs(g[0, 0] - 0.5) < 1e-10
    # distinguishable photons keep the cross term
    gd = two_photon_correlation(u, 1, 2, indistinguishable=False).gamma
    assert abs(gd[0, 1] - 0.25) > 0.2


def test_correlation_records_inputs():
    u = propagate(_h(5), 1.0)
    corr = two_photon_correlation(u, 2, 4)
    assert corr.input_sites == (2, 4)
    assert corr.indistinguishable
    assert corr.at(2, 4) == corr.gamma[1, 3]


def test_region_normalized_restricts_and_renormalizes():
    u = propagate(_h(50), 35.0)
    corr = two_photon_correlation(u, 1, 1)
    region = range(1, 8)
    sub = corr.region_normalized(region)
    assert sub.shape == (7, 7)
    total = (sub.sum() + np.trace(sub)) / 2.0
    assert abs(total - 1.0) < 1e-12
    # restriction can only raise the leading entry
    assert sub[0, 0] >= corr.at(1, 1) - 1e-15


def test_region_normalized_validates_region():
    corr = two_photon_correlation(propagate(_h(5), 1.0), 1, 1)
    with pytest.raises(InvalidParameterError):
        corr.region_normalized([0, 1])
    with pytest.raises(InvalidParameterError):
        corr.region_normalized([])


def test_confinement_sums_selected_sites():
    p = np.array([0.5, 0.25, 0.25])
    assert confinement(p, {1}) == 0.5
    assert confinement(p, (1, 3)) == 0.75
    with pytest.raises(InvalidParameterError):
        confinement(p, {0})
    with pytest.raises(InvalidParameterError):
        confinement(p, set())


def test_snapshots_match_pointwise_propagation():
    h = _h(8, t=0.6)
    zs = np.linspace(0.0, 5.0, 7)
    snaps = evolution_snapshots(h, 3, zs)
    assert snaps.shape == (7, 8)
    for k, z in enumerate(zs):
        direct = single_photon_distribution(propagate(h, z), 3)
        assert np.allclose(snaps[k], direct, atol=1e-12)
    assert np.allclose(snaps.sum(axis=1), 1.0, atol=1e-10)


def test_snapshots_validate_grid():
    h = _h(4)
    with pytest.raises(InvalidParameterError):
        evolution_snapshots(h, 1, [1.0, 0.5])
    with pytest.raises(InvalidParameterError):
        evolution_snapshots(h, 1, [-0.1, 0.5])
    with pytest.raises(InvalidParameterError):
        evolution_snapshots(h, 9, [0.0, 1.0])
