"""Two-qubit braid and R matrices of the factorized scattering model.

Basis order is |00>, |01>, |10>, |11>.  chi is the literal phase on the
corner entries, R[0,3] = sin(theta) e^{+i chi} and R[3,0] = -sin(theta)
e^{-i chi}.  The three-body sector feeds chi = 2*phi into these kernels.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .qlinalg import I2, kron

SQRT2 = np.sqrt(2.0)


class LorentzBranch(NamedTuple):
    theta2: float
    pole: bool


class YbeResidual(NamedTuple):
    lhs_rhs_norm: float
    satisfied: bool


def braid_b(chi: float = 0.0) -> np.ndarray:
    """Braid generator (1/sqrt2)(I + M) with M*M = -I."""
    c = np.exp(1j * chi)
    return np.array(
        [[1, 0, 0, c],
         [0, 1, 1, 0],
         [0, -1, 1, 0],
         [-np.conj(c), 0, 0, 1]], dtype=complex) / SQRT2


def rmat(theta: float, chi: float = 0.0) -> np.ndarray:
    """Unitary R(theta, chi); reduces to braid_b at theta = pi/4."""
    ct, st = np.cos(theta), np.sin(theta)
    c = np.exp(1j * chi)
    return np.array(
        [[ct, 0, 0, st * c],
         [0, ct, st, 0],
         [0, -st, ct, 0],
         [-st * np.conj(c), 0, 0, ct]], dtype=complex)


def two_qubit_states(theta: float, chi: float = 0.0) -> list:
    """The four states R|kl>, returned as the columns of R(theta, chi)."""
    r = rmat(theta, chi)
    return [r[:, j].copy() for j in range(4)]


def r12(theta: float, chi: float = 0.0) -> np.ndarray:
    """R acting on qubits (1,2) of three."""
    return kron(rmat(theta, chi), I2)


def r23(theta: float, chi: float = 0.0) -> np.ndarray:
    """R acting on qubits (2,3) of three."""
    return kron(I2, rmat(theta, chi))


def ybe_residual(theta1: float, theta2: float, theta3: float,
                 chi: float = 0.0, tol: float = 1e-12) -> YbeResidual:
    """Frobenius norm of R12(t1)R23(t2)R12(t3) - R23(t3)R12(t2)R23(t1)."""
    lhs = r12(theta1, chi) @ r23(theta2, chi) @ r12(theta3, chi)
    rhs = r23(theta3, chi) @ r12(theta2, chi) @ r23(theta1, chi)
    res = float(np.linalg.norm(lhs - rhs))
    return YbeResidual(res, bool(res <= tol))


def lorentz_add(theta1: float, theta3: float) -> LorentzBranch:
    """Middle angle with tan(theta2) = (tan t1 + tan t3)/(1 + tan t1 tan t3).

    Branch fixed by theta2 = atan2(sin(t1+t3), cos(t1-t3)), which is
    smooth through the tan poles; pole marks cos(t1-t3) = 0 with
    sin(t1+t3) != 0, where theta2 = +-pi/2.
    """
    s, c = np.sin(theta1 + theta3), np.cos(theta1 - theta3)
    pole = bool(abs(c) < 1e-12 and abs(s) >= 1e-12)
    return LorentzBranch(float(np.arctan2(s, c)), pole)
