"""Yang-Baxter constrained three-body scattering and its induced models.

Modules: qlinalg (dense qubit linear algebra), rmatrix (two-body R-matrix
and the Lorentz-type angle constraint), threebody (factorized three-body
operator and generated states), entanglement (concurrence and state
classes), hamiltonian (three-site generator, spectrum, Berry phases),
chain (fermionized open chain, zero modes, band), transfer (one-magnon
entanglement transfer with an AC phase), cli (command line front end).
"""

__version__ = "0.1.0"

from .chain import (ChainSpec, FermionQuadratic, KitaevParams, ZeroModeReport,
                    band_spectrum, boundary_nullspace, eta_for_equal_nnn,
                    fermion_quadratic, fig1_data, kitaev_params, majorana_matrix,
                    mf_inequalities, spin_chain_matrix, zero_mode_cubic)
from .entanglement import (ConcurrenceTriple, classify, concurrence3,
                           concurrence_closed, concurrence_from_thetas,
                           polytope_lambdas, wootters2)
from .hamiltonian import (DriveParams, SpectrumReport, band_states, berry_phase,
                          eigenbasis3, h2_local, h3_local, three_site_terms,
                          zero_energy_states)
from .qlinalg import basis_ket, embed, herm_eig, kron, partial_trace
from .rmatrix import braid_b, lorentz_add, rmat, two_qubit_states, ybe_residual
from .threebody import (GHZ_POINT, W_POINT, EtaBeta, ThreeBodyAngles,
                        eta_beta_from, generate_states, hadamard3,
                        r123_exponential, r123_factorized)
from .transfer import (BETA_BLOCKADE, TransferSpec, alpha_t, concurrence_t,
                       concurrence_timeline, ej_spectrum, magnon_state,
                       n4_frequency, one_magnon_h, one_magnon_indices, sweep)
