"""Gauge-potential Hamiltonians for the driven phase, spectra, Berry phases.

Only the phase phi is time dependent, phi(t) = phi_rate * t, so the
Hamiltonian is the gauge potential i*hbar (dU/dt) U^-1 of the braid
unitary.  The two-body generator lives on span{|00>, |11>}; the
three-body one has the fixed spectrum {0 x4, +2*hbar*phi_rate*sin(eta) x2,
-2*hbar*phi_rate*sin(eta) x2}.

Eigenvectors of the driven bands split as |psi> = u + exp(2i*phi) w with
<u|w> = 0, which makes the Berry phase over a half period exactly
-2*pi*||w||^2 = -pi*(1 -+ sin(eta)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qlinalg import I2, S3, S_MINUS, S_PLUS, basis_ket, herm_eig, kron

SQRT2 = np.sqrt(2.0)

E0_DEG_TOL = 1e-8      # |sin eta|, |cos eta|, |cos beta| below this: printed forms degenerate
LIMIT_TOL = 1e-12      # 1 -+ sin(eta) below this: use the exact limit eigenvectors
BERRY_DRIFT_TOL = 1e-5  # step-halving and member-spread budget for the Wilson loop


class ConvergenceError(RuntimeError):
    """Raised when the discrete Berry phase fails its stability checks."""


@dataclass(frozen=True)
class DriveParams:
    """Parameters of the adiabatic drive: phi(t) = phi_rate * t."""

    eta: float
    beta: float
    phi_rate: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")


@dataclass(frozen=True)
class SpectrumReport:
    """Instantaneous spectrum of the three-site generator.

    projector_distance holds the 2-norm distance between each computed
    degenerate subspace projector and the one built from the closed-form
    eigenvectors, ordered (zero, plus, minus).  It is None when the
    parameters are degenerate and the comparison is skipped.
    """

    eigenvalues: np.ndarray
    e_plus: float
    e_minus: float
    multiplicities: tuple
    projector_distance: tuple | None
    degenerate: bool


def h2_local(theta, chi, chi_rate: float = 1.0, hbar: float = 1.0) -> np.ndarray:
    """Two-site gauge potential i*hbar (dR/dt) R^dagger for chi = chi_rate*t.

    Acts on span{|00>, |11>} only; eigenvalues are -+hbar*chi_rate*sin(theta)
    (once each) and 0 (twice).  The state
    cos(pi/4 - theta/2)|00> + sin(pi/4 - theta/2) e^{-i chi}|11>
    carries E = -hbar*chi_rate*sin(theta).
    """
    st, ct = np.sin(theta), np.cos(theta)
    h = np.zeros((4, 4), dtype=complex)
    h[0, 0] = st
    h[3, 3] = -st
    h[0, 3] = ct * np.exp(1j * chi)
    h[3, 0] = ct * np.exp(-1j * chi)
    return -hbar * chi_rate * st * h


def three_site_terms(eta, beta, phi: float = 0.0, scale: float = 1.0) -> list:
    """Coefficient/operator-triple list for the three-site generator.

    Each entry is (coeff, (op1, op2, op3)); Hermitian conjugates are
    materialized explicitly so the sum is manifestly the full operator.
    """
    se, ce = np.sin(eta), np.cos(eta)
    sb, cb = np.sin(beta), np.cos(beta)
    s2e, s2b = 2 * se * ce, 2 * sb * cb
    bond = np.exp(2j * phi)

    terms = []

    def _plus_hc(coeff, ops):
        terms.append((coeff, ops))
        terms.append((np.conj(coeff), tuple(op.conj().T for op in ops)))

    z_edge = -scale * se ** 2 * (sb ** 2 + 1) / 2
    z_mid = -scale * se ** 2 * cb ** 2
    terms.append((z_edge, (S3, I2, I2)))
    terms.append((z_edge, (I2, I2, S3)))
    terms.append((z_mid, (I2, S3, I2)))

    c_pair = -scale * (s2e * cb / SQRT2) * bond
    _plus_hc(c_pair, (S_PLUS, S_PLUS, I2))
    _plus_hc(c_pair, (I2, S_PLUS, S_PLUS))

    c_hop = scale * (se ** 2 * s2b / SQRT2)
    _plus_hc(c_hop, (S_PLUS, S_MINUS, I2))
    _plus_hc(c_hop, (I2, S_PLUS, S_MINUS))

    _plus_hc(-scale * s2e * sb * bond, (S_PLUS, S3, S_PLUS))

    c_long = -scale * se ** 2 * cb ** 2
    terms.append((c_long, (S_PLUS, S3, S_MINUS)))
    terms.append((c_long, (S_MINUS, S3, S_PLUS)))
    return terms


def h3_local(dp: DriveParams, phi: float = 0.0) -> np.ndarray:
    """Three-site gauge potential i*hbar (dR123/dt) R123^-1 as an 8x8 matrix."""
    h = np.zeros((8, 8), dtype=complex)
    scale = dp.hbar * dp.phi_rate
    for coeff, (a, b, c) in three_site_terms(dp.eta, dp.beta, phi, scale):
        h += coeff * kron(kron(a, b), c)
    return h


def zero_energy_states(beta) -> np.ndarray:
    """Columns: the four closed-form zero-energy states (not orthogonal)."""
    sb, cb = np.sin(beta), np.cos(beta)
    norm = np.sqrt(1.0 + sb ** 2)
    cols = np.zeros((8, 4), dtype=complex)
    cols[3, 0], cols[6, 0] = -1 / SQRT2, 1 / SQRT2          # |011>, |110>
    cols[1, 1], cols[4, 1] = -1 / SQRT2, 1 / SQRT2          # |001>, |100>
    cols[3, 2], cols[5, 2] = -SQRT2 * sb / norm, cb / norm  # |011>, |101>
    cols[1, 3], cols[2, 3] = SQRT2 * sb / norm, cb / norm   # |001>, |010>
    return cols


def _band_parts(eta, beta, sign: int):
    """(u, w) pairs for the two band members, psi = u + exp(2i*phi) w.

    sign +1 is the band at +2*hbar*phi_rate*sin(eta), -1 the opposite one.
    d = 1 - sign*sin(eta) controls the closed forms; below LIMIT_TOL the
    exact limit eigenvectors are returned (w = 0 there).
    """
    se, ce = np.sin(eta), np.cos(eta)
    sb, cb = np.sin(beta), np.cos(beta)
    if abs(cb) <= E0_DEG_TOL:
        raise ValueError("band states need |cos(beta)| > 1e-8")
    tb = sb / cb
    d = 1.0 - sign * se

    trip = np.zeros(8, dtype=complex)
    trip[1], trip[2], trip[4] = 1.0, -SQRT2 * tb, 1.0       # |001>, |010>, |100>
    quad = np.zeros(8, dtype=complex)
    quad[3], quad[5], quad[6] = 1.0, SQRT2 * tb, 1.0        # |011>, |101>, |110>

    if d < LIMIT_TOL:
        u_a = basis_ket(7, 3)
        u_b = (cb / SQRT2) * quad
        zero = np.zeros(8, dtype=complex)
        return (u_a, zero), (u_b, zero.copy())

    sqd = np.sqrt(d)
    u_a = (ce / np.sqrt(2 * d)) * basis_ket(7, 3)
    w_a = -sign * (cb * sqd / 2) * trip
    u_b = (cb * ce / (2 * sqd)) * quad
    w_b = -sign * (SQRT2 / 2) * sqd * basis_ket(0, 3)
    return (u_a, w_a), (u_b, w_b)


def band_states(eta, beta, band: str, phi: float = 0.0):
    """The two closed-form eigenvectors of the band, as given.

    band is 'plus' or 'minus'.  Norms are exactly 1; the two members are
    orthogonal.  Phases follow the printed forms (no re-gauging).
    """
    sign = {"plus": 1, "minus": -1}.get(band)
    if sign is None:
        raise ValueError("band must be 'plus' or 'minus'")
    (u_a, w_a), (u_b, w_b) = _band_parts(eta, beta, sign)
    bond = np.exp(2j * phi)
    return u_a + bond * w_a, u_b + bond * w_b


def eigenbasis3(dp: DriveParams, phi: float = 0.0) -> SpectrumReport:
    """Diagonalize the three-site generator and compare degenerate subspaces.

    Numeric projectors on the {0, E+, E-} subspaces are matched against
    the ones spanned by the closed-form eigenvectors (QR-orthonormalized,
    so the comparison is gauge invariant).
    """
    e_plus = 2 * dp.hbar * dp.phi_rate * np.sin(dp.eta)
    e_minus = -e_plus
    res = herm_eig(h3_local(dp, phi))

    degenerate = (abs(np.sin(dp.eta)) <= E0_DEG_TOL
                  or abs(np.cos(dp.eta)) <= E0_DEG_TOL
                  or abs(np.cos(dp.beta)) <= E0_DEG_TOL)

    targets = np.array([0.0, e_plus, e_minus])
    labels = np.argmin(np.abs(res.eigenvalues[:, None] - targets[None, :]), axis=1)
    mult = tuple(int(np.sum(labels == k)) for k in range(3))

    if degenerate:
        return SpectrumReport(res.eigenvalues, e_plus, e_minus, mult, None, True)

    def _proj(cols):
        q, _ = np.linalg.qr(cols)
        return q @ q.conj().T

    printed = [zero_energy_states(dp.beta),
               np.column_stack(band_states(dp.eta, dp.beta, "plus", phi)),
               np.column_stack(band_states(dp.eta, dp.beta, "minus", phi))]
    dist = []
    for k in range(3):
        num = _proj(res.eigenvectors[:, labels == k])
        dist.append(float(np.linalg.norm(num - _proj(printed[k]), ord=2)))
    return SpectrumReport(res.eigenvalues, e_plus, e_minus, mult, tuple(dist), False)


def _loop_phase(u, w, steps: int) -> float:
    # discrete Wilson loop over phi in [0, pi), closed by np.roll
    phis = np.linspace(0.0, np.pi, steps, endpoint=False)
    psi = u[:, None] + np.exp(2j * phis)[None, :] * w[:, None]
    nxt = np.roll(psi, -1, axis=1)
    overlaps = np.sum(psi.conj() * nxt, axis=0)
    return float(-np.sum(np.angle(overlaps)))


def berry_phase(dp: DriveParams, band: str, steps: int = 10000) -> float:
    """Discrete Berry phase of one driven band over phi from 0 to pi.

    Both band members are looped independently; the result must be stable
    under halving the step count and identical across members within
    BERRY_DRIFT_TOL, otherwise ConvergenceError is raised.  Closed form:
    -pi*(1 - sin(eta)) for 'plus', -pi*(1 + sin(eta)) for 'minus'.
    """
    if steps < 100:
        raise ValueError("steps must be at least 100")
    sign = {"plus": 1, "minus": -1}.get(band)
    if sign is None:
        raise ValueError("band must be 'plus' or 'minus'")
    gammas = []
    for u, w in _band_parts(dp.eta, dp.beta, sign):
        full = _loop_phase(u, w, steps)
        half = _loop_phase(u, w, steps // 2)
        if abs(full - half) > BERRY_DRIFT_TOL:
            raise ConvergenceError("Berry phase not stable under step halving")
        gammas.append(full)
    if abs(gammas[0] - gammas[1]) > BERRY_DRIFT_TOL:
        raise ConvergenceError("band members disagree on the Berry phase")
    return float(np.mean(gammas))
