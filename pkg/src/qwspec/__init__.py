"""Spectral analysis of the two-phase gain-loss split-step quantum walk.

The package computes, in closed form, the transfer matrices of the walk's
eigenvalue equation, the complete point spectrum with its branch labels,
the explicit bound-state profiles, and the chiral index; and it checks all
of it against a dense truncated-operator oracle that never touches the
transfer-matrix code.
"""

from .model import ModelParams, Window, apply_u, coin_at, make_params, require_valid, validate
from .transfer import (
    LambdaMembership,
    TransferData,
    in_lambda_set,
    interface_matrix,
    transfer_data,
    transfer_matrix,
)
from .spectrum import (
    CandidateEigenvalue,
    Eigenstate,
    HypothesisReport,
    MatchReport,
    SpectralPoint,
    SpectrumResult,
    axis_bijection,
    candidate_eigenvalues,
    candidate_value,
    decay_rates,
    effective_shift,
    eigenstate,
    hypothesis_check,
    match_conditions,
    point_spectrum,
)
from .index import (
    AsymptoticData,
    IndexResult,
    ProtectionReport,
    chiral_index,
    essential_gap,
    walk_asymptotics,
    protection_check,
)
from .oracle import (
    EigenDecomposition,
    TruncatedOperator,
    assemble_shift,
    assemble_truncated,
    dense_spectrum,
    dump_csv,
    localization,
    residual,
)
from .sweep import SweepAxis, SweepRow, SweepSpec, load_sweep_spec, run_sweep
from .verify import VerifyReport, run_battery

__version__ = "0.1.0"
