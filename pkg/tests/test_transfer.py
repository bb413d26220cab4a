"""One-magnon transfer: spectrum, amplitudes, concurrence, sweep report."""

import numpy as np
import pytest
from scipy.linalg import expm

from ybe3q.entanglement import wootters2
from ybe3q.qlinalg import partial_trace
from ybe3q.transfer import (BETA_BLOCKADE, TransferSpec, alpha_t,
                            amplitude_timeline, concurrence_t,
                            concurrence_timeline, ej_spectrum, magnon_state,
                            n4_frequency, one_magnon_h, one_magnon_indices,
                            sweep, sweep_csv)

RNG = np.random.default_rng(20240817)

SQRT2 = np.sqrt(2.0)


def random_spec(n, rng=RNG):
    return TransferSpec(n, float(rng.uniform(0.1, 1.4)),
                        float(rng.uniform(-np.pi, np.pi)))


def test_block_hermitian_and_spectrum():
    for n in (3, 4, 5, 6, 9):
        spec = random_spec(n)
        h = one_magnon_h(spec)
        assert np.abs(h - h.conj().T).max() < 1e-14
        w = np.sort(np.linalg.eigvalsh(h))
        assert np.abs(w - np.sort(ej_spectrum(spec))).max() < 1e-10


def test_alpha_start_and_normalization():
    spec = TransferSpec(6, 0.8, 0.4, m1=1, m2=2)
    a0 = alpha_t(spec, 0.0)
    want = np.zeros(6, dtype=complex)
    want[0] = want[1] = 1.0 / SQRT2
    assert np.abs(a0 - want).max() < 1e-12
    for t in (0.7, 5.0, 19.0):
        assert abs(np.linalg.norm(alpha_t(spec, t)) - 1.0) < 1e-12


def test_alpha_matches_direct_evolution():
    for n in (4, 6, 7):
        spec = random_spec(n)
        h = one_magnon_h(spec)
        psi0 = np.zeros(n, dtype=complex)
        psi0[spec.m1 - 1] = psi0[spec.m2 - 1] = 1.0 / SQRT2
        for t in (0.5, 3.3, 11.0):
            direct = expm(-1j * h * t) @ psi0
            assert np.abs(alpha_t(spec, t) - direct).max() < 1e-10


def test_concurrence_matches_wootters():
    # 2 |a_l1| |a_l2| equals the Wootters concurrence of the two-site
    # reduced state of the embedded magnon register
    for n in (6, 8):
        spec = TransferSpec(n, 1.05, 0.7)
        for t in (0.9, 7.5, 16.0):
            psi = magnon_state(alpha_t(spec, t))
            for l1, l2 in ((1, 2), (3, 4), (2, 5)):
                rho = partial_trace(psi, [l1, l2])
                want = wootters2(rho)
                assert abs(concurrence_t(spec, l1, l2, t) - want) < 1e-10


def test_n4_closed_forms():
    spec = TransferSpec(4, 0.6)
    om = n4_frequency(0.6)
    t = np.linspace(0.0, 12.0, 300)
    a = alpha_t(spec, t)
    assert np.abs(np.abs(a[0]) - np.abs(np.cos(om * t)) / SQRT2).max() < 1e-10
    assert np.abs(np.abs(a[1]) - np.abs(np.cos(om * t)) / SQRT2).max() < 1e-10
    assert np.abs(np.abs(a[2]) - np.abs(np.sin(om * t)) / SQRT2).max() < 1e-10
    assert np.abs(np.abs(a[3]) - np.abs(np.sin(om * t)) / SQRT2).max() < 1e-10
    c34 = concurrence_t(spec, 3, 4, t)
    assert np.abs(c34 - np.sin(om * t) ** 2).max() < 1e-10


def test_n4_periodicity():
    spec = TransferSpec(4, 0.6)
    om = n4_frequency(0.6)
    t = np.linspace(0.0, 6.0, 50)
    c = concurrence_t(spec, 3, 4, t)
    c_shift = concurrence_t(spec, 3, 4, t + np.pi / abs(om))
    assert np.abs(c - c_shift).max() < 1e-10


def test_n4_blockade():
    assert abs(n4_frequency(BETA_BLOCKADE)) < 1e-12
    spec = TransferSpec(4, BETA_BLOCKADE)
    t = np.linspace(0.0, 20.0, 400)
    assert np.abs(concurrence_t(spec, 3, 4, t)).max() < 1e-12
    assert np.abs(concurrence_t(spec, 1, 2, t) - 1.0).max() < 1e-10


def test_n4_frequency_stationary_point():
    # d|Omega|/d beta = 0 where cos(2 beta) = sqrt(3)/3
    beta0 = np.arccos(np.sqrt(3.0) / 3.0) / 2.0
    deriv = 2 * SQRT2 * np.cos(2 * beta0) - 2 * np.sin(2 * beta0)
    assert abs(deriv) < 1e-14
    assert abs(n4_frequency(0.0) - 2.0) < 1e-14


def test_reflection_relabels_bonds():
    # reversing the field conjugates the block, so the (5,6) bond at
    # -theta replays the (3,4) bond at +theta
    t = np.linspace(0.0, 20.0, 200)
    plus = concurrence_t(TransferSpec(6, np.pi / 3, 0.7), 3, 4, t)
    minus = concurrence_t(TransferSpec(6, np.pi / 3, -0.7), 5, 6, t)
    assert np.abs(plus - minus).max() < 1e-10
    same = concurrence_t(TransferSpec(6, np.pi / 3, 0.0), 5, 6, t)
    base = concurrence_t(TransferSpec(6, np.pi / 3, 0.0), 3, 4, t)
    assert np.abs(same - base).max() < 1e-10


def test_magnon_embedding():
    assert one_magnon_indices(3) == [3, 5, 6]
    a = np.array([0.5, 0.5j, -0.5, 0.5])
    psi = magnon_state(a)
    assert psi.size == 16
    assert abs(np.linalg.norm(psi) - 1.0) < 1e-14
    for k, idx in enumerate(one_magnon_indices(4)):
        assert psi[idx] == a[k]


def test_timelines_agree():
    spec = TransferSpec(5, 0.9, 0.2, n_t=101, t_max=8.0)
    tl = amplitude_timeline(spec)
    ct = concurrence_timeline(spec, 2, 4)
    assert tl.alphas.shape == (5, 101)
    want = 2 * np.abs(tl.alphas[1]) * np.abs(tl.alphas[3])
    assert np.abs(ct.c_values - want).max() == 0.0
    assert ct.times[-1] == 8.0


def test_sweep_rows_and_report():
    spec = TransferSpec(6, np.pi / 3)
    theta_grid = np.linspace(-0.5, 0.5, 11)
    t_grid = np.linspace(0.0, 20.0, 201)
    rows, report = sweep(spec, 3, 4, theta_grid, t_grid)
    assert rows.shape == (11 * 201, 3)
    # theta-major ordering
    assert np.abs(rows[:201, 0] - theta_grid[0]).max() == 0.0
    assert np.abs(rows[:201, 1] - t_grid).max() == 0.0
    for key in ("c_max", "theta_star", "t_star", "n", "beta", "m1", "m2", "l1", "l2"):
        assert key in report
    assert report["n"] == 6 and report["l1"] == 3 and report["l2"] == 4
    # refined maximum at least as good as the raw grid, inside the hull
    assert report["c_max"] >= rows[:, 2].max() - 1e-12
    assert theta_grid.min() <= report["theta_star"] <= theta_grid.max()
    assert t_grid.min() <= report["t_star"] <= t_grid.max()


def test_sweep_single_theta_stays_put():
    spec = TransferSpec(6, np.pi / 3)
    rows, report = sweep(spec, 3, 4, [0.0], np.linspace(0.0, 20.0, 2001))
    assert report["theta_star"] == 0.0
    # no-field maximum of the (3,4) bond
    assert abs(report["c_max"] - 0.458960) < 1e-3
    assert abs(report["t_star"] - 10.8422) < 2e-2


def test_paper_grid_fingerprints():
    # surface values at two fixed probe points, frozen to 5 digits
    spec = TransferSpec(6, np.pi / 3)
    assert abs(concurrence_t(TransferSpec(6, np.pi / 3, 0.0), 3, 4, 14.704)
               - 0.45542) < 2e-4
    assert abs(concurrence_t(TransferSpec(6, np.pi / 3, 2.130), 3, 4, 19.248)
               - 0.98229) < 2e-4


def test_sweep_csv(tmp_path):
    spec = TransferSpec(4, 0.6)
    rows, _ = sweep(spec, 3, 4, [0.0, 0.1], np.linspace(0.0, 5.0, 26))
    path = tmp_path / "sweep.csv"
    sweep_csv(rows, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "theta,t,concurrence"
    assert len(lines) == 1 + rows.shape[0]
    first = [float(x) for x in lines[1].split(",")]
    assert np.abs(np.array(first) - rows[0]).max() < 1e-12


def test_validation_errors():
    with pytest.raises(ValueError):
        TransferSpec(2, 0.5)
    with pytest.raises(ValueError):
        TransferSpec(6, 0.5, m1=3, m2=3)
    with pytest.raises(ValueError):
        TransferSpec(6, 0.5, n_t=1)
    with pytest.raises(ValueError):
        concurrence_t(TransferSpec(6, 0.5), 2, 2, 1.0)
    with pytest.raises(ValueError):
        sweep(TransferSpec(6, 0.5), 3, 4, [], [0.0, 1.0])
