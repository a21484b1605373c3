"""Chiral index of the split-step walk and the numerically checked
protection bound.

The index depends only on the asymptotic shift and coin amplitudes at the
two lattice ends.  It is well defined exactly when |p| differs from |a| at
both ends (the spectral gap at +-1 stays open), and in the unitary case its
absolute value lower-bounds the number of localized eigenstates at
eigenvalue +1 or -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, require_valid
from . import oracle

__all__ = [
    "AsymptoticData",
    "IndexResult",
    "ProtectionReport",
    "walk_asymptotics",
    "essential_gap",
    "chiral_index",
    "protection_check",
]

#: strictness tolerance for the gap condition |p| != |a|
GAP_TOL = 1e-12


@dataclass(frozen=True)
class AsymptoticData:
    """Limiting shift and coin amplitudes at -infinity and +infinity."""

    p_minus: float
    p_plus: float
    a_minus: float
    a_plus: float

    def __post_init__(self):
        for name in ("p_minus", "p_plus", "a_minus", "a_plus"):
            v = getattr(self, name)
            if not (math.isfinite(v) and -1.0 <= v <= 1.0):
                raise ValueError(f"{name} = {v!r} outside [-1, 1]")


def walk_asymptotics(params: ModelParams) -> AsymptoticData:
    """Asymptotics of the two-phase model: uniform p, coin a_m / a_p."""
    require_valid(params)
    return AsymptoticData(params.p, params.p, params.a_m, params.a_p)


def essential_gap(asym: AsymptoticData) -> tuple[bool, bool]:
    """Whether the gap condition |p| != |a| holds at each end."""
    gm = abs(abs(asym.p_minus) - abs(asym.a_minus)) > GAP_TOL
    gp = abs(abs(asym.p_plus) - abs(asym.a_plus)) > GAP_TOL
    return gm, gp


def _sgn(x: float) -> int:
    if x > 0.0:
        return 1
    if x < 0.0:
        return -1
    return 0


@dataclass(frozen=True)
class IndexResult:
    defined: bool
    value: int | None
    gap_minus: bool
    gap_plus: bool


def chiral_index(asym: AsymptoticData) -> IndexResult:
    """Evaluate the four-case index table; undefined when a gap fails."""
    gm, gp = essential_gap(asym)
    if not (gm and gp):
        return IndexResult(False, None, gm, gp)
    shift_dominates_minus = abs(asym.p_minus) > abs(asym.a_minus)
    shift_dominates_plus = abs(asym.p_plus) > abs(asym.a_plus)
    if not shift_dominates_minus and not shift_dominates_plus:
        value = 0
    elif not shift_dominates_minus and shift_dominates_plus:
        value = _sgn(asym.p_plus)
    elif shift_dominates_minus and not shift_dominates_plus:
        value = -_sgn(asym.p_minus)
    else:
        value = _sgn(asym.p_plus) - _sgn(asym.p_minus)
    return IndexResult(True, value, gm, gp)


@dataclass(frozen=True)
class ProtectionReport:
    """Count of localized truncated eigenvalues near +-1 against |index|."""

    index: IndexResult
    count_plus: int
    count_minus: int
    satisfied: bool
    half_width: int
    eig_tol: float
    localization_threshold: float


def protection_check(
    params: ModelParams,
    half_width: int,
    eig_tol: float = 1e-3,
    localization_threshold: float = 0.99,
) -> ProtectionReport:
    """Verify |index| <= (number of localized eigenvalues near +-1).

    Only the unitary walk (gamma = 0) is accepted, and the index must be
    defined.  Eigenvalues of the dense truncation within ``eig_tol`` of +1
    or -1 are counted when their eigenvector keeps at least
    ``localization_threshold`` of its mass in the inner half of the window,
    which excludes artifacts pinned to the truncation boundary.
    """
    require_valid(params)
    if params.gamma != 0.0:
        raise ValueError("protection_check requires gamma = 0 (unitary walk)")
    result = chiral_index(walk_asymptotics(params))
    if not result.defined:
        raise ValueError(
            "protection_check requires a defined index "
            f"(gap_minus={result.gap_minus}, gap_plus={result.gap_plus})"
        )

    op = oracle.assemble_truncated(params, half_width)
    decomp = oracle.dense_spectrum(op)
    counts = {1.0: 0, -1.0: 0}
    for target in counts:
        near = np.where(np.abs(decomp.values - target) <= eig_tol)[0]
        for j in near:
            if oracle.localization(decomp.vectors[:, j], op) >= localization_threshold:
                counts[target] += 1
    satisfied = counts[1.0] + counts[-1.0] >= abs(result.value)
    return ProtectionReport(
        index=result,
        count_plus=counts[1.0],
        count_minus=counts[-1.0],
        satisfied=satisfied,
        half_width=half_width,
        eig_tol=eig_tol,
        localization_threshold=localization_threshold,
    )
