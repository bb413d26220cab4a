"""Dense complex linear algebra shared by the scattering and chain modules.

Conventions used across the package: qubit sites are numbered 1..n from
the left, site 1 is the most significant bit, so the basis index of
|klm> is the binary number klm.  |0> is spin up, |1> is spin down.
Problem sizes stay at or below 2**12 states, so everything is dense.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

import numpy as np

ATOL_ALG = 1e-12   # algebraic identities
ATOL_EIG = 1e-10   # eigensolver residuals

I2 = np.eye(2, dtype=complex)
S3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)       # diag(+1,-1)
S_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
S_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)


class HermEigResult(NamedTuple):
    eigenvalues: np.ndarray   # ascending, real
    eigenvectors: np.ndarray  # orthonormal columns, paired with eigenvalues


def basis_ket(index: int, n_qubits: int) -> np.ndarray:
    """Computational basis column vector |index> on n_qubits qubits."""
    dim = 2 ** n_qubits
    if not 0 <= index < dim:
        raise ValueError("basis index out of range")
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def kron(a, b) -> np.ndarray:
    """Kronecker product, left factor on the more significant bits."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _qubit_count(dim: int, what: str) -> int:
    n = int(round(np.log2(dim)))
    if 2 ** n != dim:
        raise ValueError(f"{what} dimension {dim} is not a power of two")
    return n


def embed(op, first_site: int, n_sites: int) -> np.ndarray:
    """Embed op on consecutive sites first_site..first_site+k-1 of an n-site register.

    Parameters
    ----------
    op : array_like
        2**k x 2**k matrix acting on k consecutive sites.
    first_site : int
        1-based index of the leftmost site op acts on.
    n_sites : int
        Total number of sites.

    Returns
    -------
    numpy.ndarray
        2**n_sites x 2**n_sites matrix I (x) op (x) I.
    """
    op = np.asarray(op, dtype=complex)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValueError("operator must be square")
    k = _qubit_count(op.shape[0], "operator")
    if n_sites > 12:
        raise ValueError("register larger than 12 sites")
    if first_site < 1 or first_site + k - 1 > n_sites:
        raise ValueError("embedding window out of range")
    left = np.eye(2 ** (first_site - 1), dtype=complex)
    right = np.eye(2 ** (n_sites - first_site - k + 1), dtype=complex)
    return np.kron(np.kron(left, op), right)


def matexp_skew(g, t: float = 1.0, tol: float = ATOL_ALG) -> np.ndarray:
    """Unitary exp(t*G) of an anti-Hermitian G via the Hermitian eigenbasis of iG.

    Raises ValueError if ||G + G^dag|| exceeds tol * ||G||.
    """
    g = np.asarray(g, dtype=complex)
    gnorm = np.linalg.norm(g)
    if np.linalg.norm(g + g.conj().T) > tol * gnorm:
        raise ValueError("matrix is not anti-Hermitian")
    w, v = np.linalg.eigh(1j * g)
    return (v * np.exp(-1j * t * w)) @ v.conj().T


def herm_eig(h, tol: float = ATOL_ALG) -> HermEigResult:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises ValueError if ||H - H^dag|| exceeds tol * ||H||.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("matrix must be square")
    if np.linalg.norm(h - h.conj().T) > tol * max(np.linalg.norm(h), 1e-300):
        raise ValueError("matrix is not Hermitian")
    w, v = np.linalg.eigh(h)
    return HermEigResult(w, v)


def partial_trace(state, keep: Iterable[int]) -> np.ndarray:
    """Reduced density matrix of a pure state on the kept sites.

    Parameters
    ----------
    state : array_like
        State vector on n qubits (length 2**n).
    keep : iterable of int
        1-based site labels to keep, any order; the reduced matrix is
        indexed by the kept sites in ascending site order.
    """
    psi = np.asarray(state, dtype=complex).ravel()
    n = _qubit_count(psi.size, "state")
    kept = sorted(set(int(s) for s in keep))
    if not kept or kept[0] < 1 or kept[-1] > n:
        raise ValueError("keep must be a nonempty subset of 1..n")
    axes = [s - 1 for s in kept]
    rest = [i for i in range(n) if i not in axes]
    m = psi.reshape((2,) * n).transpose(axes + rest).reshape(2 ** len(axes), -1)
    return m @ m.conj().T


def check_unitary(a, tol: float = ATOL_ALG):
    """Return (ok, residual) with residual = ||A A^dag - I||_F."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    res = np.linalg.norm(a @ a.conj().T - np.eye(a.shape[0]))
    return bool(res <= tol), float(res)


def check_hermitian(a, tol: float = ATOL_ALG):
    """Return (ok, residual) with residual = ||A - A^dag||_F."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    res = np.linalg.norm(a - a.conj().T)
    return bool(res <= tol), float(res)
