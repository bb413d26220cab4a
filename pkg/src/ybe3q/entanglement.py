"""Bipartite concurrences and entanglement classification for three qubits.

Squared concurrences are normalized so the maximum is 1/4 (GHZ point);
the partial-trace equivalent is C^2 = (1 - tr rho_i^2)/2 for the cut
i|jk.  Amplitudes a_{klm} are indexed with site 1 as the leftmost bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qlinalg import partial_trace
from .rmatrix import lorentz_add
from .threebody import EtaBeta


@dataclass(frozen=True)
class ConcurrenceTriple:
    c1_23_sq: float
    c2_13_sq: float
    c3_12_sq: float

    def as_array(self) -> np.ndarray:
        return np.array([self.c1_23_sq, self.c2_13_sq, self.c3_12_sq])


@dataclass(frozen=True)
class PolytopeCoords:
    lam1: float
    lam2: float
    lam3: float


@dataclass(frozen=True)
class EntanglementClass:
    tag: str          # 'genuine', 'biseparable', 'fully-separable'
    zero_count: int


def _cut_sq(a: np.ndarray, site: int) -> float:
    # move the cut site to the front, C^2 = p0 p1 - |q|^2 for the 2 x 4 matrix
    m = np.moveaxis(a.reshape(2, 2, 2), site - 1, 0).reshape(2, 4)
    p0 = float(np.sum(np.abs(m[0]) ** 2))
    p1 = float(np.sum(np.abs(m[1]) ** 2))
    q = np.sum(m[0] * m[1].conj())
    return p0 * p1 - float(np.abs(q) ** 2)


def concurrence3(state, tol: float = 1e-10) -> ConcurrenceTriple:
    """Squared concurrences (C^2_1|23, C^2_2|13, C^2_3|12) of a pure state.

    Each value is cross-checked against (1 - tr rho^2)/2 from the
    reduced density matrix; a mismatch flags a numerical problem.
    """
    a = np.asarray(state, dtype=complex).ravel()
    if a.size != 8:
        raise ValueError("state must live on three qubits")
    if abs(np.linalg.norm(a) - 1.0) > 1e-9:
        raise ValueError("state is not normalized")
    vals = []
    for site in (1, 2, 3):
        c2 = _cut_sq(a, site)
        rho = partial_trace(a, [site])
        alt = (1.0 - float(np.trace(rho @ rho).real)) / 2.0
        if abs(c2 - alt) > tol:
            raise ValueError("concurrence cross-check failed")
        vals.append(c2)
    return ConcurrenceTriple(*vals)


def concurrence_closed(eb: EtaBeta) -> ConcurrenceTriple:
    """Closed-form squared concurrences on the (eta, beta) chart."""
    ce2 = np.cos(eb.eta) ** 2
    se2 = np.sin(eb.eta) ** 2
    cb2 = np.cos(eb.beta) ** 2
    sb2 = np.sin(eb.beta) ** 2
    outer = (ce2 + 0.5 * cb2 * se2) * (0.5 * cb2 * se2 + sb2 * se2)
    middle = (ce2 + sb2 * se2) * (cb2 * se2)
    return ConcurrenceTriple(float(outer), float(middle), float(outer))


def concurrence_from_thetas(theta1: float, theta3: float) -> ConcurrenceTriple:
    """Squared concurrences from the two free scattering angles.

    The middle angle comes from the Lorentz branch, so sin(2 t2) =
    (sin 2t1 + sin 2t3)/(1 + sin 2t1 sin 2t3).
    """
    t2 = lorentz_add(theta1, theta3).theta2
    s1, s2, s3 = np.sin(2 * theta1), np.sin(2 * t2), np.sin(2 * theta3)
    outer = 0.25 * s2 ** 2
    middle = 0.25 - 0.25 * (s2 * (s1 + s3) - 1.0) ** 2
    return ConcurrenceTriple(float(outer), float(middle), float(outer))


def polytope_lambdas(state) -> PolytopeCoords:
    """Smallest eigenvalue of each one-site reduced density matrix.

    The triple always satisfies lam_k <= sum of the other two for a
    pure state; violation beyond 1e-12 flags a numerical problem.
    """
    a = np.asarray(state, dtype=complex).ravel()
    if a.size != 8:
        raise ValueError("state must live on three qubits")
    lams = []
    for site in (1, 2, 3):
        w = np.linalg.eigvalsh(partial_trace(a, [site]))
        lams.append(float(w[0]))
    for k in range(3):
        if lams[k] > lams[(k + 1) % 3] + lams[(k + 2) % 3] + 1e-12:
            raise ValueError("polytope inequality violated")
    return PolytopeCoords(*lams)


def classify(triple: ConcurrenceTriple, tol: float = 1e-9) -> EntanglementClass:
    """Entanglement class from the number of vanishing concurrences.

    Two zeros cannot occur for an exact pure state; numerically it is
    reported as biseparable with the honest zero_count.
    """
    zeros = int(np.sum(triple.as_array() <= tol))
    if zeros == 0:
        tag = "genuine"
    elif zeros == 3:
        tag = "fully-separable"
    else:
        tag = "biseparable"
    return EntanglementClass(tag, zeros)


def wootters2(rho, tol: float = 1e-10) -> float:
    """Wootters concurrence of a two-qubit density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("density matrix must be 4 x 4")
    if np.linalg.norm(rho - rho.conj().T) > 1e-10:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-10:
        raise ValueError("density matrix trace is not 1")
    w, v = np.linalg.eigh(rho)
    if w[0] < -max(tol, 1e-10):
        raise ValueError("density matrix is not positive")
    yy = np.zeros((4, 4), dtype=complex)
    yy[0, 3], yy[1, 2], yy[2, 1], yy[3, 0] = -1, 1, 1, -1
    # the Wootters lambdas are the singular values of sqrt(rho) YY sqrt(rho)*,
    # which the SVD resolves far better than eigenvalues of rho YY rho* YY
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    lam = np.linalg.svd(root @ yy @ root.conj(), compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))
