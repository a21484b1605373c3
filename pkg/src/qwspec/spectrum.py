"""Closed-form point spectrum of the two-phase walk and explicit bound states.

The point spectrum is confined to at most four real candidate values

    lam(s1, s2) = s1*p*sinh(2*gamma) + s2*sqrt(1 + p^2*sinh(2*gamma)^2),

one positive and one negative of which can actually be eigenvalues.  Which
ones are is decided by where the effective shift parameter

    p_gamma' = p / sqrt(p^2 + |q|^2 / cosh(2*gamma)^2)

falls relative to the two coin amplitudes a_m, a_p.  Every classification
this module emits is re-validated through an independent geometric test:
the left phase's growing eigenvector, pushed through the interface, must
land in the right phase's decaying eigenspace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, Window, require_valid
from .transfer import (
    in_lambda_set,
    interface_matrix,
    normalize_eigenvector,
    transfer_data,
    transfer_matrix,
)

__all__ = [
    "CandidateEigenvalue",
    "HypothesisReport",
    "MatchReport",
    "SpectralPoint",
    "SpectrumResult",
    "Eigenstate",
    "axis_bijection",
    "effective_shift",
    "candidate_eigenvalues",
    "candidate_value",
    "hypothesis_check",
    "match_conditions",
    "point_spectrum",
    "eigenstate",
    "decay_rates",
]

#: margin under which a case inequality counts as a boundary coincidence
BOUNDARY_TOL = 1e-10
#: degeneracy threshold for the candidate-admissibility hypothesis
HYPOTHESIS_TOL = 1e-12
#: relative threshold for the matching conditions and the kernel test
CONDITION_TOL = 1e-9

_BRANCH_NAMES = {
    (1, 1): "plus_plus",
    (1, -1): "plus_minus",
    (-1, 1): "minus_plus",
    (-1, -1): "minus_minus",
}


def axis_bijection(x: float, sign: int) -> float:
    """The increasing bijection x -> x + sign*sqrt(1 + x^2) onto the
    positive (sign=+1) or negative (sign=-1) real half-line."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return x + sign * math.sqrt(1.0 + x * x)


def effective_shift(params: ModelParams) -> float:
    """The effective shift parameter governing the classification; it lies
    in (-1, 1) and reduces to p at gamma = 0."""
    require_valid(params)
    c = math.cosh(2.0 * params.gamma)
    return params.p / math.sqrt(params.p**2 + abs(params.q) ** 2 / c**2)


@dataclass(frozen=True)
class CandidateEigenvalue:
    s1: int
    s2: int
    value: float


def candidate_value(params: ModelParams, s1: int, s2: int) -> float:
    x = params.p * math.sinh(2.0 * params.gamma)
    return s1 * x + s2 * math.sqrt(1.0 + x * x)


def candidate_eigenvalues(params: ModelParams) -> list[CandidateEigenvalue]:
    """The four real candidate eigenvalues, ordered
    (-1,-1), (+1,-1), (-1,+1), (+1,+1)."""
    require_valid(params)
    order = ((-1, -1), (1, -1), (-1, 1), (1, 1))
    return [CandidateEigenvalue(s1, s2, candidate_value(params, s1, s2)) for s1, s2 in order]


@dataclass(frozen=True)
class HypothesisReport:
    """Margins of the candidate-admissibility hypothesis for a fixed s2.

    The candidate values lie in the admissible set unless
    p*cosh(2*gamma)/|q| equals s2*a/|b| on some side; ``ok`` is False when
    either margin falls below :data:`HYPOTHESIS_TOL`.
    """

    s2: int
    margin_m: float
    margin_p: float

    @property
    def ok(self) -> bool:
        return min(self.margin_m, self.margin_p) > HYPOTHESIS_TOL


def hypothesis_check(params: ModelParams, s2: int) -> HypothesisReport:
    require_valid(params)
    if s2 not in (1, -1):
        raise ValueError("s2 must be +1 or -1")
    lhs = params.p * math.cosh(2.0 * params.gamma) / abs(params.q)
    margins = {}
    for side in ("m", "p"):
        a, b = params.side_values(side)
        margins[side] = abs(lhs - s2 * a / abs(b))
    return HypothesisReport(s2, margins["m"], margins["p"])


def _tolerant_sign(x: float, tol: float) -> int:
    if x > tol:
        return 1
    if x < -tol:
        return -1
    return 0


@dataclass(frozen=True)
class MatchReport:
    """Outcome of the three algebraic matching conditions at a real lambda,
    together with the independent geometric kernel test.

    The residuals are relative to the largest term of each condition.  The
    kernel dimension is 1 when the interface image of the left growing
    eigenvector lies in the right decaying eigenspace, else 0.
    """

    lam: float
    cond_i: bool
    cond_ii: bool
    cond_iii: bool
    res_i: float
    res_ii: float
    res_iii: float
    kernel_dim: int

    @property
    def all_conditions(self) -> bool:
        return self.cond_i and self.cond_ii and self.cond_iii


def match_conditions(params: ModelParams, lam: float) -> MatchReport:
    """Evaluate the three matching conditions and the geometric kernel test.

    Only real lambda inside the admissible set are accepted.  All three
    conditions are sign comparisons between two real expressions; values
    within CONDITION_TOL of the dominant scale count as zero, and the two
    sides must produce the same tolerant sign.
    """
    require_valid(params)
    lam = float(lam)
    membership = in_lambda_set(params, lam)
    if not membership.in_set:
        raise ValueError(
            f"lambda = {lam} is outside the admissible set "
            f"(side m {'in' if membership.in_m else 'out'}, "
            f"side p {'in' if membership.in_p else 'out'}); "
            "the matching conditions are undefined there"
        )

    dm = transfer_data(params, "m", lam)
    dp = transfer_data(params, "p", lam)
    # real lambda inside the admissible set: every ingredient is real and
    # both discriminants are strictly positive
    am, bm, em = dm.alpha.real, dm.beta.real, dm.delta.real
    ap, bp, ep = dp.alpha.real, dp.beta.real, dp.delta.real
    wm = math.sqrt(dm.disc.real)
    wp = math.sqrt(dp.disc.real)
    sm, sp = dm.sign, dp.sign

    tiny = 2.2250738585072014e-308  # smallest normal double, guards 0/0

    t1 = (am * ep - ap * em) * (bm * ep - bp * em)
    t2 = (am * bp - bm * ap) ** 2
    scale_i = max(abs(t1), abs(t2))
    res_i = abs(t1 + t2) / max(scale_i, tiny)
    cond_i = abs(t1 + t2) <= CONDITION_TOL * scale_i or scale_i == 0.0

    lhs_ii = sp * am * wp + sm * ap * wm
    rhs_ii = am * ep - ap * em
    scale_ii = max(abs(sp * am * wp), abs(sm * ap * wm), abs(am * ep), abs(ap * em))
    res_ii = abs(lhs_ii - rhs_ii) / max(scale_ii, tiny)
    cond_ii = _tolerant_sign(lhs_ii, CONDITION_TOL * scale_ii) == _tolerant_sign(
        rhs_ii, CONDITION_TOL * scale_ii
    )

    lhs_iii = 2.0 * am * bp + 2.0 * ap * bm - ep * em
    rhs_iii = sp * sm * wp * wm
    scale_iii = max(abs(2.0 * am * bp), abs(2.0 * ap * bm), abs(ep * em), abs(wp * wm))
    res_iii = abs(lhs_iii - rhs_iii) / max(scale_iii, tiny)
    cond_iii = _tolerant_sign(lhs_iii, CONDITION_TOL * scale_iii) == _tolerant_sign(
        rhs_iii, CONDITION_TOL * scale_iii
    )

    # geometric route, independent of the sign algebra above
    image = interface_matrix(params, lam) @ dm.v_gt
    norm_image = np.linalg.norm(image)
    if norm_image <= 1e-12 * np.linalg.norm(dm.v_gt):
        # the interface annihilates the seed entirely; the right half of the
        # candidate eigenvector vanishes and the kernel condition is vacuous
        kernel_dim = 1
    else:
        defect = (transfer_matrix(params, "p", lam) - dp.zeta_lt * np.eye(2)) @ image
        kernel_dim = 1 if np.linalg.norm(defect) <= CONDITION_TOL * norm_image else 0

    return MatchReport(lam, cond_i, cond_ii, cond_iii, res_i, res_ii, res_iii, kernel_dim)


@dataclass(frozen=True, eq=False)
class SpectralPoint:
    """One classified eigenvalue with its branch labels and seed vector."""

    value: float
    s1: int
    s2: int
    branch: str
    phi: np.ndarray


@dataclass(frozen=True)
class SpectrumResult:
    """The classified point spectrum: zero to two real eigenvalues.

    ``reliable`` is False when some case inequality sits within
    :data:`BOUNDARY_TOL` of equality (or a candidate hypothesis degenerates),
    in which case the classification is withheld and ``entries`` is empty.
    """

    p_gamma_prime: float
    entries: tuple[SpectralPoint, ...]
    reliable: bool
    diagnostics: tuple[str, ...]


def point_spectrum(params: ModelParams) -> SpectrumResult:
    """Classify the point spectrum via the case table on the effective shift.

    Each emitted entry is re-validated through :func:`match_conditions`;
    strict inequalities are enforced with margin :data:`BOUNDARY_TOL`, and
    boundary coincidences yield an empty, unreliable result instead of a
    guess.
    """
    require_valid(params)
    shift = effective_shift(params)
    diagnostics: list[str] = []

    for s2 in (1, -1):
        target = s2 * shift
        for name, a in (("a_m", params.a_m), ("a_p", params.a_p)):
            if abs(target - a) <= BOUNDARY_TOL:
                diagnostics.append(
                    f"boundary: {'+' if s2 > 0 else '-'}p_gamma' coincides with {name} "
                    f"within {BOUNDARY_TOL:g}; classification unreliable"
                )
    if diagnostics:
        return SpectrumResult(shift, (), False, tuple(diagnostics))

    entries: list[SpectralPoint] = []
    for s2 in (1, -1):
        hyp = hypothesis_check(params, s2)
        target = s2 * shift
        if params.a_m < target < params.a_p:
            s1 = 1
        elif params.a_p < target < params.a_m:
            s1 = -1
        else:
            continue
        if not hyp.ok:
            diagnostics.append(
                f"candidate s2={s2:+d} excluded: admissibility hypothesis degenerate "
                f"(margins m={hyp.margin_m:.3e}, p={hyp.margin_p:.3e})"
            )
            return SpectrumResult(shift, (), False, tuple(diagnostics))
        lam = candidate_value(params, s1, s2)
        report = match_conditions(params, lam)
        if report.kernel_dim != 1:
            diagnostics.append(
                f"candidate (s1,s2)=({s1:+d},{s2:+d}) at lambda={lam!r} failed "
                "kernel re-validation; excluded"
            )
            return SpectrumResult(shift, (), False, tuple(diagnostics))
        phi = transfer_data(params, "m", lam).v_gt
        entries.append(SpectralPoint(lam, s1, s2, _BRANCH_NAMES[(s1, s2)], phi))

    entries.sort(key=lambda e: e.value)
    return SpectrumResult(shift, tuple(entries), True, tuple(diagnostics))


def decay_rates(params: ModelParams, lam: float) -> tuple[float, float]:
    """Geometric decay per site of a bound state at lambda, to the right
    (|zeta_<| of the right phase) and to the left (1/|zeta_>| of the left
    phase)."""
    dp = transfer_data(params, "p", lam)
    dm = transfer_data(params, "m", lam)
    return abs(dp.zeta_lt), 1.0 / abs(dm.zeta_gt)


@dataclass(frozen=True, eq=False)
class Eigenstate:
    """An explicit bound-state profile on a finite window.

    ``phi`` is the seed (the value at x = -1); both decay rates are < 1 for
    a genuine eigenvalue, which is what makes the full sequence square
    summable.
    """

    value: float
    phi: np.ndarray
    window: Window
    decay_plus: float
    decay_minus: float
    norm_sq: float


def eigenstate(params: ModelParams, entry: SpectralPoint, window: tuple[int, int]) -> Eigenstate:
    """Materialize the bound state of a classified entry on [x0, x1].

    The seed is the left phase's growing eigenvector, pushed through the
    interface by one matrix product; each tail is then built by one scalar
    multiplication per site with the exact transfer eigenvalue of its phase.
    Stepping with the matrices instead would feed roundoff into the growing
    mode and overwhelm the tails of fast-decaying states, so the scalar form
    is the stable one; the residual oracle checks the result either way.
    Entries that fail the kernel re-validation are refused.
    """
    require_valid(params)
    x0, x1 = int(window[0]), int(window[1])
    if x0 > -2 or x1 < 1:
        raise ValueError(f"window [{x0}, {x1}] must contain [-2, 1]")

    lam = float(entry.value)
    expected = candidate_value(params, entry.s1, entry.s2)
    if abs(lam - expected) > 1e-12 * max(1.0, abs(expected)):
        raise ValueError(
            f"entry value {lam!r} does not match the branch "
            f"({entry.s1:+d},{entry.s2:+d}) candidate {expected!r}"
        )
    report = match_conditions(params, lam)
    if report.kernel_dim != 1:
        raise ValueError(f"lambda = {lam!r} is not an eigenvalue (kernel test failed)")

    dm = transfer_data(params, "m", lam)
    dp = transfer_data(params, "p", lam)
    phi = normalize_eigenvector(dm.v_gt)

    values = np.zeros((x1 - x0 + 1, 2), dtype=complex)
    values[-1 - x0] = phi
    values[0 - x0] = interface_matrix(params, lam) @ phi
    step_right = dp.zeta_lt
    for x in range(1, x1 + 1):
        values[x - x0] = step_right * values[x - 1 - x0]
    step_left = 1.0 / dm.zeta_gt
    for x in range(-2, x0 - 1, -1):
        values[x - x0] = step_left * values[x + 1 - x0]

    win = Window(x0, values)
    return Eigenstate(
        value=lam,
        phi=phi,
        window=win,
        decay_plus=abs(dp.zeta_lt),
        decay_minus=1.0 / abs(dm.zeta_gt),
        norm_sq=float(np.sum(np.abs(values) ** 2)),
    )
