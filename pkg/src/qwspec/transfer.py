"""Transfer matrices of the eigenvalue equation and their spectral data.

For a trial eigenvalue lam, the lattice eigenvalue equation is equivalent
to the first-order recursion psi(x+1) = T psi(x) on site pairs, with a 2x2
matrix that is constant inside each phase and takes a distinguished value
across the interface (the step psi(-1) -> psi(0)).  A square-summable
solution must leave the interface along the decaying eigenvector on each
side, which is what the spectrum module's matching conditions encode.

Per side, everything needed downstream is bundled in :class:`TransferData`:
the auxiliary scalars

    alpha = p*lam - a*exp(-2*gamma)
    beta  = a*exp(+2*gamma) - p/lam
    delta = lam - 1/lam + 2*p*a*sinh(2*gamma)

the discriminant delta^2 - 4*alpha*beta (equal to
(lam + 1/lam - 2*p*a*cosh(2*gamma))^2 - 4*|b*q|^2), and the transfer
eigenpairs, ordered so |zeta_gt| >= |zeta_lt|.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, require_valid

__all__ = [
    "TransferData",
    "LambdaMembership",
    "transfer_matrix",
    "interface_matrix",
    "transfer_data",
    "in_lambda_set",
    "normalize_eigenvector",
]

#: relative threshold below which the two transfer eigenvalue moduli count as equal
DEGENERACY_TOL = 1e-12
#: relative threshold for the alpha = 0 (triangular) branch
ALPHA_TOL = 1e-12
#: tolerance used when cross-checking the closed-form membership criterion
#: against the direct modulus comparison
MEMBERSHIP_TOL = 1e-10


def _check_lambda(lam) -> complex:
    lam = complex(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    if not cmath.isfinite(lam):
        raise ValueError(f"lambda = {lam!r} is not finite")
    return lam


def transfer_matrix(params: ModelParams, side: str, lam) -> np.ndarray:
    """The 2x2 matrix propagating solutions one site to the right, inside
    the given phase.  Its determinant has modulus 1."""
    require_valid(params)
    lam = _check_lambda(lam)
    a, b = params.side_values(side)
    g, p, q = params.gamma, params.p, params.q
    eg, emg = math.exp(2.0 * g), math.exp(-2.0 * g)
    return (1.0 / (b * q * lam)) * np.array(
        [
            [lam * lam - 2.0 * a * p * math.cosh(2.0 * g) * lam + a * a, -np.conj(b) * (p * lam - a * eg)],
            [-b * (p * lam - a * emg), abs(b) ** 2],
        ],
        dtype=complex,
    )


def interface_matrix(params: ModelParams, lam) -> np.ndarray:
    """The 2x2 matrix carrying psi(-1) to psi(0) across the phase boundary.

    Coincides with the right-phase transfer matrix when the two phases
    share their coin values.
    """
    require_valid(params)
    lam = _check_lambda(lam)
    g, p, q = params.gamma, params.p, params.q
    am, ap = params.a_m, params.a_p
    bm, bp = params.b_m, params.b_p
    eg, emg = math.exp(2.0 * g), math.exp(-2.0 * g)
    return (1.0 / (bp * q * lam)) * np.array(
        [
            [lam * lam - (ap * eg + am * emg) * p * lam + am * ap, -np.conj(bm) * (p * lam - ap * eg)],
            [-bp * (p * lam - am * emg), np.conj(bm) * bp],
        ],
        dtype=complex,
    )


def normalize_eigenvector(v: np.ndarray) -> np.ndarray:
    """Scale to unit norm with the first nonzero component real positive."""
    v = np.asarray(v, dtype=complex)
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("cannot normalize the zero vector")
    v = v / n
    big = np.max(np.abs(v))
    for comp in v:
        if abs(comp) > 1e-12 * big:
            v = v * (np.conj(comp) / abs(comp))
            break
    return v


@dataclass(frozen=True, eq=False)
class TransferData:
    """Spectral data of one phase's transfer matrix at a fixed lambda.

    ``sign`` is +1 or -1 according to which square-root branch produces the
    larger-modulus eigenvalue, and 0 when the two moduli agree to within
    :data:`DEGENERACY_TOL` (the lambda-outside-the-admissible-set case); the
    eigenvectors are then undefined and left as None.
    """

    side: str
    lam: complex
    alpha: complex
    beta: complex
    delta: complex
    disc: complex
    sign: int
    zeta_gt: complex
    zeta_lt: complex
    v_gt: np.ndarray | None
    v_lt: np.ndarray | None

    @property
    def degenerate(self) -> bool:
        return self.sign == 0


def transfer_data(params: ModelParams, side: str, lam) -> TransferData:
    require_valid(params)
    lam = _check_lambda(lam)
    a, b = params.side_values(side)
    g, p, q = params.gamma, params.p, params.q
    eg, emg = math.exp(2.0 * g), math.exp(-2.0 * g)

    alpha = p * lam - a * emg
    beta = a * eg - p / lam
    delta = lam - 1.0 / lam + 2.0 * p * a * math.sinh(2.0 * g)
    disc = delta * delta - 4.0 * alpha * beta
    trace_num = lam + 1.0 / lam - 2.0 * p * a * math.cosh(2.0 * g)

    root = cmath.sqrt(disc)
    denom = 2.0 * b * q
    z_plus = (trace_num + root) / denom
    z_minus = (trace_num - root) / denom

    scale = max(abs(z_plus), abs(z_minus), 1.0)
    if abs(abs(z_plus) - abs(z_minus)) <= DEGENERACY_TOL * scale:
        return TransferData(side, lam, alpha, beta, delta, disc, 0, z_plus, z_minus, None, None)

    sign = 1 if abs(z_plus) > abs(z_minus) else -1
    zeta_gt = z_plus if sign == 1 else z_minus
    zeta_lt = z_minus if sign == 1 else z_plus

    # for real lambda with a real positive discriminant, the modulus ordering
    # must reproduce the explicit sign of the trace numerator
    if lam.imag == 0.0 and disc.imag == 0.0 and disc.real > 0.0 and trace_num.real != 0.0:
        assert sign == (1 if trace_num.real > 0.0 else -1)

    alpha_scale = max(1.0, abs(p * lam), abs(a * emg))
    if abs(alpha) > ALPHA_TOL * alpha_scale:
        signed = sign * root
        common = -(lam / (2.0 * b))
        v_gt = normalize_eigenvector(
            [common * (delta + signed - 2.0 * a * eg * alpha / lam), alpha]
        )
        v_lt = normalize_eigenvector(
            [common * (delta - signed - 2.0 * a * eg * alpha / lam), alpha]
        )
    else:
        # alpha = 0 makes the matrix upper triangular; its eigenpairs are exact
        z_diag = (lam * delta + abs(b) ** 2) / (b * q * lam)  # eigenvector (1, 0)
        z_off = abs(b) ** 2 / (b * q * lam)  # eigenvector below
        v_diag = np.array([1.0, 0.0], dtype=complex)
        v_off = normalize_eigenvector([2.0 * a * np.conj(b) * math.sinh(2.0 * g), -lam * delta])
        if abs(z_diag) >= abs(z_off):
            zeta_gt, v_gt, zeta_lt, v_lt = z_diag, v_diag, z_off, v_off
        else:
            zeta_gt, v_gt, zeta_lt, v_lt = z_off, v_off, z_diag, v_diag
        sign = 1 if abs(zeta_gt - z_plus) <= abs(zeta_gt - z_minus) else -1

    return TransferData(side, lam, alpha, beta, delta, disc, sign, zeta_gt, zeta_lt, v_gt, v_lt)


@dataclass(frozen=True)
class LambdaMembership:
    """Per-side and combined verdicts for membership in the admissible set
    (both transfer matrices must have eigenvalues of distinct modulus)."""

    in_m: bool
    in_p: bool
    in_set: bool


def in_lambda_set(params: ModelParams, lam) -> LambdaMembership:
    """Decide lambda's membership in the admissible set.

    Per side, the closed-form criterion says the side degenerates exactly
    when lam + 1/lam is real and the squared trace numerator does not exceed
    4|b*q|^2.  The combined verdict comes from the direct modulus comparison
    of the transfer eigenvalues; the two routes are cross-asserted whenever
    the modulus comparison is decisive at :data:`MEMBERSHIP_TOL`.
    """
    require_valid(params)
    lam = _check_lambda(lam)
    s = lam + 1.0 / lam
    s_is_real = abs(s.imag) <= 1e-12 * max(1.0, abs(s))

    verdicts: dict[str, bool] = {}
    mag_in: dict[str, bool] = {}
    for side in ("m", "p"):
        a, b = params.side_values(side)
        tr = s.real - 2.0 * params.p * a * math.cosh(2.0 * params.gamma)
        crit = tr * tr - 4.0 * abs(b * params.q) ** 2
        lemma_out = s_is_real and crit <= 0.0
        verdicts[side] = not lemma_out

        data = transfer_data(params, side, lam)
        mag_in[side] = not data.degenerate
        gap = abs(abs(data.zeta_gt) - abs(data.zeta_lt))
        # cross-assert only when both routes are decisively signed; right at
        # a band edge the two may round a true zero to opposite sides
        decisive = gap > MEMBERSHIP_TOL * max(abs(data.zeta_gt), 1.0) and abs(
            crit
        ) > 1e-12 * max(1.0, tr * tr, 4.0 * abs(b * params.q) ** 2)
        if decisive and verdicts[side] != mag_in[side]:
            raise RuntimeError(
                f"membership criteria disagree on side {side} at lambda={lam}: "
                f"closed-form says {'in' if verdicts[side] else 'out'}, "
                f"moduli gap {gap:.3e} says {'in' if mag_in[side] else 'out'}"
            )

    return LambdaMembership(verdicts["m"], verdicts["p"], mag_in["m"] and mag_in["p"])
