"""Homogeneous chain from the three-site generator and its Kitaev reduction.

The chain H = sum_n H_{n,n+1,n+2} with hbar*phi_rate = 1 throughout.  After
fermionization (occupied = up spin) the chain is a Kitaev wire with next
nearest neighbour hopping and pairing; the six parameters depend on (eta,
beta) only.  Under the simplifying assumption omega2 = delta2 the whole
Majorana matrix is fixed by b = tan(beta), and the end-mode analysis reduces
to a cubic in the decay factor x plus four boundary equations.

Sign conventions: the quadratic table keeps the spin-faithful pairing
orientation (coefficient of a_j^dag a_k^dag with j < k); the Majorana matrix
follows the b-parametrized entries, which absorb a global gauge a -> ia.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .hamiltonian import three_site_terms
from .qlinalg import I2, embed, kron

SQRT2 = np.sqrt(2.0)

EXACT_DIAG_MAX = 12    # spin-matrix paths stop here (2^12 x 2^12 already 268 MB)
INSIDE_TOL = 1e-10     # |x| <= 1 + INSIDE_TOL counts as a decaying mode
GAP_TOL = 1e-8         # | |x| - 1 | below this closes the bulk gap
CLUSTER_TOL = 1e-6     # root pairs closer than this are polished as a double root


@dataclass(frozen=True)
class ChainSpec:
    n_sites: int
    eta: float
    beta: float
    phi: float = 0.0
    boundary: str = "open"

    def __post_init__(self):
        if self.n_sites < 3:
            raise ValueError("chain needs at least 3 sites")
        if self.boundary not in ("open", "periodic"):
            raise ValueError("boundary must be 'open' or 'periodic'")


class KitaevParams(NamedTuple):
    mu1: float
    mu2: float
    omega1: float
    omega2: float
    delta1: float
    delta2: float


@dataclass(frozen=True)
class FermionQuadratic:
    """Coefficient table of the fermionized open chain.

    onsite[j] multiplies (a_j^dag a_j - 1/2); hops multiply
    (a_j^dag a_k + a_k^dag a_j); pair entries are the complex coefficients
    of a_j^dag a_k^dag (j < k), the conjugate acting on a_k a_j.
    """

    onsite: np.ndarray
    nn_hop: np.ndarray
    nn_pair: np.ndarray
    nnn_hop: np.ndarray
    nnn_pair: np.ndarray

    def vacuum_energy(self) -> float:
        return float(-np.sum(self.onsite) / 2.0)


@dataclass(frozen=True)
class ZeroModeReport:
    """Outcome of the end-mode analysis at one beta."""

    roots: np.ndarray
    moduli: np.ndarray
    inside_count: int
    boundary_rank: int
    unpaired_mf: bool
    gap_closed: bool
    smin: float = field(default=np.nan)


def _place(factors: dict, n_sites: int) -> np.ndarray:
    # kron up single-site factors, site 1 on the most significant bits
    out = factors.get(1, I2)
    for site in range(2, n_sites + 1):
        out = kron(out, factors.get(site, I2))
    return out


def spin_chain_matrix(spec: ChainSpec) -> np.ndarray:
    """Full 2^N x 2^N chain matrix, wrapping the last two bonds if periodic."""
    n = spec.n_sites
    if n > EXACT_DIAG_MAX:
        raise ValueError("exact diagonalization is capped at 12 sites")
    terms = three_site_terms(spec.eta, spec.beta, spec.phi)
    h3 = np.zeros((8, 8), dtype=complex)
    for coeff, (a, b, c) in terms:
        h3 += coeff * kron(kron(a, b), c)

    h = np.zeros((2 ** n, 2 ** n), dtype=complex)
    last = n if spec.boundary == "periodic" else n - 2
    for start in range(1, last + 1):
        if start <= n - 2:
            h += embed(h3, start, n)
            continue
        sites = (start, start % n + 1, (start + 1) % n + 1)
        for coeff, ops in terms:
            h += coeff * _place(dict(zip(sites, ops)), n)
    return h


def kitaev_params(eta, beta) -> KitaevParams:
    """The six wire parameters in units hbar*phi_rate = 1."""
    se, ce = np.sin(eta), np.cos(eta)
    sb, cb = np.sin(beta), np.cos(beta)
    return KitaevParams(
        mu1=float(se ** 2 * (1 + sb ** 2)),
        mu2=float(2 * se ** 2 * cb ** 2),
        omega1=float(-SQRT2 * se ** 2 * cb * sb),
        omega2=float(-se ** 2 * cb ** 2),
        delta1=float(-SQRT2 * se * ce * cb),
        delta2=float(2 * se * ce * sb),
    )


def fermion_quadratic(spec: ChainSpec) -> FermionQuadratic:
    """Accumulate the three bracketed sums of the open fermionized chain.

    Each bracket is a Kitaev wire on part of the chain; bonds covered twice
    pick up doubled coefficients, which is what shapes the boundary rows of
    the Majorana matrix.
    """
    if spec.boundary != "open":
        raise ValueError("fermionization covers the open chain only")
    n = spec.n_sites
    p = kitaev_params(spec.eta, spec.beta)
    bond = np.exp(2j * spec.phi)

    onsite = np.zeros(n)
    nn_hop = np.zeros(n - 1)
    nn_pair = np.zeros(n - 1, dtype=complex)
    nnn_hop = np.zeros(n - 2)
    nnn_pair = np.zeros(n - 2, dtype=complex)

    for start in range(n - 2):            # brackets at sites (start, +1, +2), 0-based
        onsite[start] += -p.mu1
        onsite[start + 1] += -p.mu2
        onsite[start + 2] += -p.mu1
        nn_hop[start] += -p.omega1
        nn_hop[start + 1] += -p.omega1
        nn_pair[start] += p.delta1 * bond
        nn_pair[start + 1] += p.delta1 * bond
        nnn_hop[start] += -p.omega2
        nnn_pair[start] += p.delta2 * bond
    return FermionQuadratic(onsite, nn_hop, nn_pair, nnn_hop, nnn_pair)


def band_spectrum(eta, beta, k, phi: float = 0.0):
    """Bulk quasiparticle bands (epsilon_plus, epsilon_minus) at momentum k."""
    se, ce = np.sin(eta), np.cos(eta)
    sb, cb = np.sin(beta), np.cos(beta)
    k = np.asarray(k, dtype=float)
    x = -se ** 2 * (6.0 - (SQRT2 * sb + 2 * cb * np.cos(k)) ** 2)
    y = 1j * 2 * se * ce * (SQRT2 * cb * np.sin(k) - sb * np.sin(2 * k)) * np.exp(2j * phi)
    eps = np.sqrt(x ** 2 / 4.0 + np.abs(y) ** 2)
    return eps, -eps


def eta_for_equal_nnn(beta) -> float:
    """The eta with omega2 = delta2 (tan eta = -2 sin beta / cos^2 beta)."""
    return float(np.arctan2(-2 * np.sin(beta), np.cos(beta) ** 2))


def majorana_matrix(spec: ChainSpec, tol: float = 1e-10) -> np.ndarray:
    """The 2N x 2N real antisymmetric matrix A with H = (i*omega2/4) sum A c c.

    Only defined under omega2 = delta2, which makes every entry a function
    of b = tan(beta) alone.  The upper triangle follows the printed rows:
    onsite (2j-1, 2j), even-odd bonds (2j, 2j+1), odd-even pairs
    (2j-1, 2j+2), and the uniform next-nearest entries (2j, 2j+3); the
    remaining next-nearest family vanishes identically when omega2 = delta2.
    """
    p = kitaev_params(spec.eta, spec.beta)
    if abs(p.omega2 - p.delta2) > tol:
        raise ValueError(
            "majorana_matrix assumes omega2 = delta2; use fermion_quadratic "
            "for the general coefficients")
    if abs(p.omega2) < 1e-12:
        raise ValueError("omega2 vanishes, the b-parametrized matrix is undefined")
    n = spec.n_sites
    b = np.tan(spec.beta)
    onsite_edge = 1 + 2 * b ** 2                  # -mu1 / omega2
    onsite_next = 3 + 2 * b ** 2                  # -(mu1 + mu2) / omega2
    onsite_bulk = 4 + 4 * b ** 2                  # -(2 mu1 + mu2) / omega2
    hop = (2 * b ** 2 - 1) / (SQRT2 * b)          # (delta1 + omega1) / omega2
    pair = -(2 * b ** 2 + 1) / (SQRT2 * b)        # (delta1 - omega1) / omega2

    a = np.zeros((2 * n, 2 * n))
    for j in range(1, n + 1):                     # 1-based sites
        if j in (1, n):
            a[2 * j - 2, 2 * j - 1] = onsite_edge
        elif j in (2, n - 1):
            a[2 * j - 2, 2 * j - 1] = onsite_next
        else:
            a[2 * j - 2, 2 * j - 1] = onsite_bulk
    for j in range(1, n):                         # (2j, 2j+1) and (2j-1, 2j+2)
        factor = 1.0 if j in (1, n - 1) else 2.0
        a[2 * j - 1, 2 * j] = factor * hop
        a[2 * j - 2, 2 * j + 1] = factor * pair
    for j in range(1, n - 1):                     # (2j, 2j+3), uniform
        a[2 * j - 1, 2 * j + 2] = 2.0
    return a - a.T


def zero_mode_cubic(beta) -> np.ndarray:
    """Roots of the end-mode decay cubic, ascending modulus.

    (2b^2+1) x^3 - 2 sqrt(2) (b^3+b) x^2 + (2b^2-1) x + sqrt(2) b = 0 with
    b = tan(beta).  Companion-matrix roots are polished by Newton steps;
    pairs closer than CLUSTER_TOL collapse to the nearby root of the
    derivative, which keeps the double root at beta = arccos(sqrt(6)/3)
    accurate where plain Newton would divide 0/0.
    """
    if abs(np.cos(beta)) <= 1e-12:
        raise ValueError("tan(beta) pole, the cubic is undefined")
    b = np.tan(beta)
    coeffs = np.array([2 * b ** 2 + 1, -2 * SQRT2 * (b ** 3 + b), 2 * b ** 2 - 1, SQRT2 * b])
    roots = np.roots(coeffs)

    def newton(cfs, x):
        dcfs = np.polyder(cfs)
        for _ in range(2):
            fp = np.polyval(dcfs, x)
            if abs(fp) < 1e-30:
                return x
            x = x - np.polyval(cfs, x) / fp
        return x

    pairs = [(i, j) for i in range(3) for j in range(i + 1, 3)
             if abs(roots[i] - roots[j]) < CLUSTER_TOL]
    if pairs:
        # the cluster center is a simple, well conditioned root of f'
        i, j = pairs[0]
        m = newton(np.polyder(coeffs), (roots[i] + roots[j]) / 2.0)
        roots[i] = roots[j] = m
        rest = 3 - i - j
        roots[rest] = newton(coeffs, roots[rest])
    else:
        roots = np.array([newton(coeffs, x) for x in roots])
    return roots[np.argsort(np.abs(roots))]


def _boundary_rows(beta, x):
    # first/last boundary rows of A contracted with the mode ansatz,
    # scaled by sqrt(2) b so beta -> 0 stays regular
    b = np.tan(beta)
    g1 = SQRT2 * b * (1 + 2 * b ** 2) * x - (2 * b ** 2 + 1) * x ** 2
    g2 = -2 * SQRT2 * b + (1 - 2 * b ** 2) * x + SQRT2 * b * (1 + 2 * b ** 2) * x ** 2
    return g1, g2


def boundary_nullspace(beta, roots, tol: float = 1e-10) -> ZeroModeReport:
    """Check whether decaying end modes satisfy the four boundary equations.

    The two smallest-modulus roots are admissible on each end; the
    second pair of equations equals the first up to sign and per-column
    scales of x^(-N-1), which do not change nullspace existence, so both
    2 x 2 blocks are built from the same rows.  unpaired_mf needs a
    nontrivial nullspace AND an open bulk gap; per the underlying claim
    it is false for every beta.
    """
    roots = np.asarray(roots, dtype=complex)
    moduli = np.abs(roots)
    order = np.argsort(moduli)
    roots, moduli = roots[order], moduli[order]
    inside = roots[moduli <= 1.0 + INSIDE_TOL]
    gap_closed = bool(np.any(np.abs(moduli - 1.0) <= GAP_TOL))

    if inside.size == 0:
        return ZeroModeReport(roots, moduli, 0, 0, False, gap_closed)

    g1, g2 = _boundary_rows(beta, inside[:2])
    m_prime = np.array([g1, g2])
    m_second = np.array([-g1, g2])
    rank = 0
    smin = np.inf
    for block in (m_prime, m_second):
        s = np.linalg.svd(block, compute_uv=False)
        rank += int(np.sum(s > tol * s[0])) if s[0] > 0 else 0
        smin = min(smin, s[-1] / s[0] if s[0] > 0 else 0.0)
    # a nontrivial solution needs rank below the number of unknowns per block
    has_nullspace = rank < 2 * min(2, inside.size)
    return ZeroModeReport(roots, moduli, int(inside.size), rank,
                          bool(inside.size >= 2 and has_nullspace and not gap_closed),
                          gap_closed, float(smin))


def mf_inequalities(eta, beta) -> tuple:
    """Truth of the three per-wire unpaired-mode conditions (2|w| > |mu|).

    The common factor sin^2(eta) cancels; eta must keep it nonzero.  At
    most one condition holds at any beta, and at beta = arccos(sqrt(6)/3)
    all three saturate simultaneously.
    """
    if abs(np.sin(eta)) <= 1e-12:
        raise ValueError("conditions are empty at sin(eta) = 0")
    sb, cb = np.sin(beta), np.cos(beta)
    lhs = SQRT2 * abs(2 * sb * cb)
    return (bool(lhs > 1 + sb ** 2),
            bool(lhs > 2 * cb ** 2),
            bool(2 * cb ** 2 > 1 + sb ** 2))


def fig1_data(beta_grid) -> np.ndarray:
    """Rows (beta, |x1|, |x2|, |x3|) with ascending moduli per grid point."""
    beta_grid = np.asarray(beta_grid, dtype=float)
    if np.any(beta_grid <= 0.0) or np.any(beta_grid >= np.pi / 2):
        raise ValueError("beta grid must stay inside (0, pi/2)")
    rows = np.empty((beta_grid.size, 4))
    for i, beta in enumerate(beta_grid):
        rows[i, 0] = beta
        rows[i, 1:] = np.abs(zero_mode_cubic(beta))
    return rows


def fig1_csv(rows, path) -> None:
    """Write fig1_data rows as CSV, 12 significant digits."""
    np.savetxt(path, rows, fmt="%.12g", delimiter=",",
               header="beta,abs_x1,abs_x2,abs_x3", comments="")
