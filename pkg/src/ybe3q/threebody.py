"""Three-body scattering operator, factorized and exponential forms.

The factorized form is R12(theta1) R23(theta2) R12(theta3) with the
middle angle fixed by the Lorentz-type additivity that the Yang-Baxter
equation imposes.  The same operator equals exp(i eta n.Sigma) on the
chart (eta, beta), with n = (cos b/sqrt2, cos b/sqrt2, sin b) and the
Sigma triple built from phase-dressed Pauli factors.  All three-body
phases enter as chi = 2*phi in the two-qubit kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .qlinalg import I2, kron
from .rmatrix import lorentz_add, r12, r23

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)
SQRT6 = np.sqrt(6.0)


@dataclass(frozen=True)
class ThreeBodyAngles:
    theta1: float
    theta3: float
    phi: float = 0.0

    @property
    def theta2(self) -> float:
        return lorentz_add(self.theta1, self.theta3).theta2


@dataclass(frozen=True)
class EtaBeta:
    eta: float
    beta: float
    phi: float = 0.0


class SigmaTriple(NamedTuple):
    s1: np.ndarray
    s2: np.ndarray
    s3: np.ndarray


# Chart points generating the maximally entangled states (phi = 0):
# cos(beta) = -sqrt6/3 and sin(beta) = -sqrt3/3 at both of them.
_BETA_STAR = float(np.arctan2(-SQRT3 / 3.0, -SQRT6 / 3.0))
GHZ_POINT = EtaBeta(np.pi / 3.0, _BETA_STAR, 0.0)
W_POINT = EtaBeta(np.pi / 2.0, _BETA_STAR, 0.0)


def pauli_phases(phi: float = 0.0):
    """Phase-dressed Pauli matrices s1, s2, s3 with off-diagonals e^{+-i phi}."""
    c = np.exp(1j * phi)
    s1 = np.array([[0, c], [np.conj(c), 0]], dtype=complex)
    s2 = np.array([[0, -1j * c], [1j * np.conj(c), 0]], dtype=complex)
    s3 = np.array([[1, 0], [0, -1]], dtype=complex)
    return s1, s2, s3


def sigma_algebra(phi: float = 0.0) -> SigmaTriple:
    """Sigma triple (s2 s1 I, I s2 s1, s2 s3 s1) obeying [S_i, S_j] = 2i e_ijk S_k."""
    s1, s2, s3 = pauli_phases(phi)
    return SigmaTriple(
        kron(kron(s2, s1), I2),
        kron(kron(I2, s2), s1),
        kron(kron(s2, s3), s1),
    )


def axis(beta: float) -> np.ndarray:
    """Unit axis (cos b/sqrt2, cos b/sqrt2, sin b)."""
    cb, sb = np.cos(beta), np.sin(beta)
    return np.array([cb / SQRT2, cb / SQRT2, sb])


def eta_beta_from(angles: ThreeBodyAngles) -> EtaBeta:
    """Chart (eta, beta) of a theta-parametrized operator.

    cos eta = cos t2 cos(t1+t3), sin eta = sin t2 sqrt(1 + cos^2(t1-t3)),
    cos b = sqrt2 cos(t1-t3)/sqrt(1 + cos^2(t1-t3)),
    sin b = -sin(t1-t3)/sqrt(1 + cos^2(t1-t3)).
    """
    t1, t3 = angles.theta1, angles.theta3
    t2 = angles.theta2
    d = t1 - t3
    root = np.sqrt(1.0 + np.cos(d) ** 2)
    ce = np.cos(t2) * np.cos(t1 + t3)
    se = np.sin(t2) * root
    cb = SQRT2 * np.cos(d) / root
    sb = -np.sin(d) / root
    if abs(ce * ce + se * se - 1.0) > 1e-13:
        raise ValueError("middle angle breaks the additivity constraint")
    return EtaBeta(float(np.arctan2(se, ce)), float(np.arctan2(sb, cb)), angles.phi)


def r123_factorized(angles: ThreeBodyAngles) -> np.ndarray:
    """R12(t1) R23(t2) R12(t3) on three qubits, all kernels at chi = 2*phi."""
    chi = 2.0 * angles.phi
    return (r12(angles.theta1, chi)
            @ r23(angles.theta2, chi)
            @ r12(angles.theta3, chi))


def r123_exponential(eb: EtaBeta) -> np.ndarray:
    """cos(eta) I + i sin(eta) n.Sigma, equal to the factorized form on the chart."""
    s = sigma_algebra(eb.phi)
    n = axis(eb.beta)
    ndots = n[0] * s.s1 + n[1] * s.s2 + n[2] * s.s3
    return np.cos(eb.eta) * np.eye(8, dtype=complex) + 1j * np.sin(eb.eta) * ndots


def generate_states(eb: EtaBeta) -> list:
    """The eight states produced from the basis kets, columns of the operator."""
    r = r123_exponential(eb)
    return [r[:, j].copy() for j in range(8)]


def hadamard3(state) -> np.ndarray:
    """Apply the Hadamard on every one of the three qubits."""
    h1 = np.array([[1, 1], [1, -1]], dtype=complex) / SQRT2
    h = kron(kron(h1, h1), h1)
    return h @ np.asarray(state, dtype=complex)
