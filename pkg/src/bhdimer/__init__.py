"""Exact simulation of the two-site Bose-Hubbard hopping Hamiltonian."""

from .coherent import (
    CoherentParams,
    Convention,
    EnergyDistribution,
    TruncationFailure,
    TruncationPolicy,
    coherent_state,
    convert_params,
    energy_distribution_closed,
    energy_distribution_numeric,
    expected_energy,
    expected_energy_closed,
)
from .dynamics import EvolutionReport, ZeroVector, cat_check, evolve_h, evolve_h2, fidelity, predicted_cat
from .eigensystem import (
    EigenBasisCoeffs,
    EigenIndex,
    EmptyBlock,
    IndexOutOfRange,
    eigenvalue,
    eigenvector_normalized,
    eigenvector_raw,
    from_eigenbasis,
    immersion_matrix,
    to_eigenbasis_cascade,
    to_eigenbasis_direct,
)
from .fock import BasisState, FockVector, KVector, integer_label
from .hamiltonian import HoppingMatrix, apply_hopping, apply_hopping_full, build_hopping_matrix, spin_x_matrix
from .oracle import DenseEigenResult, NoConvergence, dense_evolve, dense_symmetric_eig

__version__ = "0.1.0"
