"""Fermionized chain, Majorana matrix, end-mode cubic, and the figure data."""

import numpy as np
import pytest

from ybe3q.chain import (ChainSpec, band_spectrum, boundary_nullspace,
                         eta_for_equal_nnn, fermion_quadratic, fig1_csv,
                         fig1_data, kitaev_params, majorana_matrix,
                         mf_inequalities, spin_chain_matrix, zero_mode_cubic)
from ybe3q.qlinalg import I2, S3, S_MINUS, S_PLUS, kron

RNG = np.random.default_rng(20240816)

SQRT2 = np.sqrt(2.0)
BETA_STAR = float(np.arccos(np.sqrt(6.0) / 3.0))

# upper-triangle entries of the 12 x 12 Majorana matrix at (eta, beta)
# = (-pi/3, beta*); every entry is an integer there
MAJORANA_STAR_UPPER = {
    (0, 1): 2.0, (0, 3): -2.0, (1, 4): 2.0, (2, 3): 4.0, (2, 5): -4.0,
    (3, 6): 2.0, (4, 5): 6.0, (4, 7): -4.0, (5, 8): 2.0, (6, 7): 6.0,
    (6, 9): -4.0, (7, 10): 2.0, (8, 9): 4.0, (8, 11): -2.0, (10, 11): 2.0,
}


def jw_annihilators(n):
    # occupied = up spin (bit 0); parity string (1 - 2n) = -S3 on earlier sites
    ops = []
    for j in range(1, n + 1):
        facs = [(-S3) if k < j else (S_MINUS if k == j else I2)
                for k in range(1, n + 1)]
        m = facs[0]
        for f in facs[1:]:
            m = kron(m, f)
        ops.append(m)
    return ops


def fock_matrix(spec):
    # materialize the quadratic table with string-built fermion operators
    n = spec.n_sites
    q = fermion_quadratic(spec)
    a = jw_annihilators(n)
    ad = [m.conj().T for m in a]
    h = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for j in range(n):
        h += q.onsite[j] * (ad[j] @ a[j] - 0.5 * np.eye(2 ** n))
    for j in range(n - 1):
        h += q.nn_hop[j] * (ad[j] @ a[j + 1] + ad[j + 1] @ a[j])
        h += q.nn_pair[j] * (ad[j] @ ad[j + 1])
        h += np.conj(q.nn_pair[j]) * (a[j + 1] @ a[j])
    for j in range(n - 2):
        h += q.nnn_hop[j] * (ad[j] @ a[j + 2] + ad[j + 2] @ a[j])
        h += q.nnn_pair[j] * (ad[j] @ ad[j + 2])
        h += np.conj(q.nnn_pair[j]) * (a[j + 2] @ a[j])
    return h


def magnon_indices(n):
    return [2 ** n - 1 - 2 ** (n - k) for k in range(1, n + 1)]


def single_particle(q):
    t = np.diag(q.onsite + q.vacuum_energy())
    n = q.onsite.size
    for j in range(n - 1):
        t[j, j + 1] = t[j + 1, j] = q.nn_hop[j]
    for j in range(n - 2):
        t[j, j + 2] = t[j + 2, j] = q.nnn_hop[j]
    return t


def bdg_matrix(q):
    n = q.onsite.size
    h = np.diag(q.onsite.astype(complex))
    dm = np.zeros((n, n), dtype=complex)
    for j in range(n - 1):
        h[j, j + 1] += q.nn_hop[j]
        h[j + 1, j] += q.nn_hop[j]
        dm[j, j + 1] += q.nn_pair[j]
        dm[j + 1, j] -= q.nn_pair[j]
    for j in range(n - 2):
        h[j, j + 2] += q.nnn_hop[j]
        h[j + 2, j] += q.nnn_hop[j]
        dm[j, j + 2] += q.nnn_pair[j]
        dm[j + 2, j] -= q.nnn_pair[j]
    return np.block([[h, dm], [-dm.conj(), -h.T]])


def test_kitaev_params_special_point():
    got = np.array(kitaev_params(-np.pi / 3, BETA_STAR))
    assert np.abs(got - [1.0, 1.0, -0.5, -0.5, 0.5, -0.5]).max() < 1e-14


def test_fermion_quadratic_bracket_counts():
    spec = ChainSpec(7, 0.8, 0.5)
    q = fermion_quadratic(spec)
    p = kitaev_params(0.8, 0.5)
    assert abs(q.onsite[0] + p.mu1) < 1e-14
    assert abs(q.onsite[1] + p.mu1 + p.mu2) < 1e-14
    assert abs(q.onsite[3] + 2 * p.mu1 + p.mu2) < 1e-14
    assert abs(q.nn_hop[0] + p.omega1) < 1e-14
    assert abs(q.nn_hop[3] + 2 * p.omega1) < 1e-14
    assert np.abs(q.nnn_hop + p.omega2).max() < 1e-14
    assert np.abs(q.nnn_pair - p.delta2).max() < 1e-14


def test_fermionization_matches_spin_chain():
    # string-built Fock matrix of the coefficient table reproduces the
    # spin chain exactly, pair phases included
    for _ in range(3):
        eta, beta = RNG.uniform(-1.3, 1.3, 2)
        phi = float(RNG.uniform(-1, 1))
        spec = ChainSpec(5, float(eta), float(beta), phi)
        diff = np.abs(fock_matrix(spec) - spin_chain_matrix(spec)).max()
        assert diff < 1e-12


def test_one_magnon_block_is_single_particle_matrix():
    for n in (4, 6, 8):
        eta, beta = RNG.uniform(-1.3, 1.3, 2)
        spec = ChainSpec(n, float(eta), float(beta), phi=0.3)
        idx = magnon_indices(n)
        blk = spin_chain_matrix(spec)[np.ix_(idx, idx)]
        t = single_particle(fermion_quadratic(spec))
        assert np.abs(blk - t).max() < 1e-10


def test_one_magnon_spectra_match():
    for n in (4, 6, 8):
        eta, beta = RNG.uniform(-1.3, 1.3, 2)
        spec = ChainSpec(n, float(eta), float(beta))
        idx = magnon_indices(n)
        w_spin = np.linalg.eigvalsh(spin_chain_matrix(spec)[np.ix_(idx, idx)])
        w_ferm = np.linalg.eigvalsh(single_particle(fermion_quadratic(spec)))
        assert np.abs(w_spin - w_ferm).max() < 1e-10


def test_band_spectrum_matches_bdg():
    # bulk coefficients: brackets cover each site 3x and each bond 2x (nn)
    # or 1x (nnn), so the wire has onsite -(2 mu1 + mu2), hops -2 omega1
    # and -omega2, pairs 2 delta1 and delta2
    for _ in range(5):
        eta, beta = RNG.uniform(-1.3, 1.3, 2)
        phi = float(RNG.uniform(-1, 1))
        p = kitaev_params(eta, beta)
        k = np.linspace(-np.pi, np.pi, 100)
        xi = (-(2 * p.mu1 + p.mu2) - 4 * p.omega1 * np.cos(k)
              - 2 * p.omega2 * np.cos(2 * k))
        delta = 2j * np.exp(2j * phi) * (2 * p.delta1 * np.sin(k)
                                         + p.delta2 * np.sin(2 * k))
        want = np.sqrt(xi ** 2 / 4 + np.abs(delta / 2) ** 2)
        plus, minus = band_spectrum(eta, beta, k, phi)
        assert np.abs(plus - want).max() < 1e-10
        assert np.abs(minus + want).max() < 1e-10


def test_gap_closes_at_special_point():
    k = np.linspace(-np.pi, np.pi, 20001)
    eps, _ = band_spectrum(-np.pi / 3, BETA_STAR, k)
    assert eps.min() <= 1e-8


def test_eta_for_equal_nnn():
    assert abs(eta_for_equal_nnn(BETA_STAR) + np.pi / 3) < 1e-14
    for beta in RNG.uniform(0.1, 1.4, 50):
        p = kitaev_params(eta_for_equal_nnn(beta), beta)
        assert abs(p.omega2 - p.delta2) < 1e-14


def test_majorana_matrix_entries():
    spec = ChainSpec(6, -np.pi / 3, BETA_STAR)
    a = majorana_matrix(spec)
    assert a.dtype == np.float64
    assert np.abs(a + a.T).max() == 0.0
    for (i, j), val in MAJORANA_STAR_UPPER.items():
        assert abs(a[i, j] - val) < 1e-12
    mask = np.ones_like(a, dtype=bool)
    for (i, j) in MAJORANA_STAR_UPPER:
        mask[i, j] = mask[j, i] = False
    assert np.abs(a[mask]).max() < 1e-12


def test_majorana_spectrum_matches_bdg():
    # quasiparticle energies of (i omega2/4) sum A c c are the positive
    # eigenvalues of i omega2 A, gauge independent
    for beta in (0.5, 0.8, 1.2):
        eta = eta_for_equal_nnn(beta)
        spec = ChainSpec(6, eta, beta)
        p = kitaev_params(eta, beta)
        a = majorana_matrix(spec)
        w_maj = np.sort(np.linalg.eigvalsh(1j * p.omega2 * a).real)
        w_bdg = np.sort(np.linalg.eigvalsh(bdg_matrix(fermion_quadratic(spec))))
        assert np.abs(w_maj - w_bdg).max() < 1e-10


def test_majorana_matrix_guards():
    with pytest.raises(ValueError):
        majorana_matrix(ChainSpec(6, 0.3, 0.8))     # omega2 != delta2
    with pytest.raises(ValueError):
        majorana_matrix(ChainSpec(6, eta_for_equal_nnn(1e-9), 1e-9))


def test_zero_mode_cubic_landmarks():
    roots = zero_mode_cubic(BETA_STAR)
    assert np.abs(roots - [-0.5, 1.0, 1.0]).max() < 1e-8
    moduli = np.abs(zero_mode_cubic(1e-9))
    assert np.abs(moduli - [0.0, 1.0, 1.0]).max() < 1e-7


def test_zero_mode_cubic_residuals():
    b = np.tan(0.4)
    coeffs = np.array([2 * b ** 2 + 1, -2 * SQRT2 * (b ** 3 + b),
                       2 * b ** 2 - 1, SQRT2 * b])
    res = np.abs(np.polyval(coeffs, zero_mode_cubic(0.4)))
    assert res.max() < 1e-12


def test_two_decaying_roots_everywhere():
    for beta in RNG.uniform(1e-3, np.pi / 2 - 1e-3, 200):
        moduli = np.abs(zero_mode_cubic(beta))
        assert int(np.sum(moduli <= 1.0 + 1e-8)) == 2


def test_boundary_nullspace_sweep():
    for beta in np.linspace(0.05, np.pi / 2 - 0.05, 60):
        rep = boundary_nullspace(beta, zero_mode_cubic(beta))
        assert rep.inside_count == 2
        assert not rep.unpaired_mf


def test_boundary_report_at_special_point():
    rep = boundary_nullspace(BETA_STAR, zero_mode_cubic(BETA_STAR))
    assert rep.gap_closed
    assert not rep.unpaired_mf
    assert np.abs(rep.moduli - [0.5, 1.0, 1.0]).max() < 1e-8


def test_mf_inequalities_at_most_one():
    for beta in np.linspace(-1.5, 1.5, 1000):
        assert sum(mf_inequalities(0.8, beta)) <= 1
    # all three conditions saturate at beta*, margins vanish to rounding
    sb, cb = np.sin(BETA_STAR), np.cos(BETA_STAR)
    lhs = SQRT2 * abs(2 * sb * cb)
    margins = (lhs - (1 + sb ** 2), lhs - 2 * cb ** 2, 2 * cb ** 2 - (1 + sb ** 2))
    assert max(abs(m) for m in margins) < 1e-14
    assert sum(mf_inequalities(0.8, BETA_STAR)) <= 1
    with pytest.raises(ValueError):
        mf_inequalities(0.0, 0.5)


def test_fig1_data_and_csv(tmp_path):
    grid = np.linspace(0.05, np.pi / 2 - 0.05, 80)
    rows = fig1_data(grid)
    assert rows.shape == (80, 4)
    assert np.abs(rows[:, 0] - grid).max() == 0.0
    # the two decaying curves are continuous everywhere; the outer one
    # only away from the tan(beta) pole
    step = grid[1] - grid[0]
    assert np.abs(np.diff(rows[:, 1:3], axis=0)).max() < 10 * step
    inner = rows[grid < 1.2]
    assert np.abs(np.diff(inner[:, 3])).max() < 10 * step
    path = tmp_path / "fig1.csv"
    fig1_csv(rows, path)
    text = path.read_text().splitlines()
    assert text[0] == "beta,abs_x1,abs_x2,abs_x3"
    assert len(text) == 81
    with pytest.raises(ValueError):
        fig1_data(np.array([0.0, 0.3]))


def test_spec_validation():
    with pytest.raises(ValueError):
        ChainSpec(2, 0.5, 0.5)
    with pytest.raises(ValueError):
        ChainSpec(4, 0.5, 0.5, boundary="twisted")
    with pytest.raises(ValueError):
        spin_chain_matrix(ChainSpec(13, 0.5, 0.5))
    with pytest.raises(ValueError):
        fermion_quadratic(ChainSpec(4, 0.5, 0.5, boundary="periodic"))
    with pytest.raises(ValueError):
        zero_mode_cubic(np.pi / 2)
