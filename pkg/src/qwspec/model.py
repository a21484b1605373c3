"""Walk parameters and the explicit lattice action of the one-step operator.

The walk acts on two-component complex sequences over the integer lattice.
One step is shift-after-coin: the local coin mixes the two components at
each site, carrying a gain/loss factor exp(-2*gamma) (resp. -exp(+2*gamma))
on its diagonal, and the shift moves the upper component left and the lower
component right with amplitudes (p, q).  Coin amplitudes take one constant
value on x < 0 and another on x >= 0, so the origin hosts an interface.
All shift parameters (gamma, p, q) are uniform in x.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ModelParams",
    "Window",
    "make_params",
    "validate",
    "require_valid",
    "coin_at",
    "apply_u",
]

#: tolerance for the normalization constraints p^2+|q|^2 = a^2+|b|^2 = 1
NORM_TOL = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """All parameters of the two-phase walk.

    gamma is the gain/loss strength (the walk is unitary iff gamma == 0),
    (p, q) the shift amplitudes with p real in (-1, 1) and p^2 + |q|^2 = 1,
    (a_m, b_m) the coin amplitudes on x < 0 and (a_p, b_p) those on x >= 0,
    each with a real in (-1, 1) and a^2 + |b|^2 = 1.
    """

    gamma: float
    p: float
    q: complex
    a_m: float
    a_p: float
    b_m: complex
    b_p: complex

    def coin_values(self, x: int) -> tuple[float, complex]:
        """The pair (a, b) in force at site x."""
        return (self.a_p, self.b_p) if x >= 0 else (self.a_m, self.b_m)

    def side_values(self, side: str) -> tuple[float, complex]:
        """The pair (a, b) of the left ('m') or right ('p') phase."""
        if side == "m":
            return self.a_m, self.b_m
        if side == "p":
            return self.a_p, self.b_p
        raise ValueError(f"side must be 'm' or 'p', got {side!r}")


def make_params(gamma, p, a_m, a_p, q=None, b_m=None, b_p=None) -> ModelParams:
    """Build :class:`ModelParams`, filling omitted moduli by convention.

    A missing q is set to +sqrt(1 - p^2) and a missing b to +sqrt(1 - a^2),
    so the normalization constraints hold by construction.
    """
    if q is None:
        q = math.sqrt(max(0.0, 1.0 - p * p))
    if b_m is None:
        b_m = math.sqrt(max(0.0, 1.0 - a_m * a_m))
    if b_p is None:
        b_p = math.sqrt(max(0.0, 1.0 - a_p * a_p))
    return ModelParams(
        float(gamma), float(p), complex(q), float(a_m), float(a_p), complex(b_m), complex(b_p)
    )


def validate(params: ModelParams) -> list[str]:
    """Return every violated parameter constraint with its measured defect.

    An empty list means the parameters are valid.  This reports rather than
    raises; callers that need valid parameters use :func:`require_valid`.
    """
    problems: list[str] = []
    for name in ("gamma", "p", "a_m", "a_p"):
        v = getattr(params, name)
        if not (isinstance(v, (int, float)) and math.isfinite(v)):
            problems.append(f"{name} = {v!r} is not a finite real number")
    for name in ("q", "b_m", "b_p"):
        v = getattr(params, name)
        try:
            ok = cmath.isfinite(complex(v))
        except (TypeError, ValueError):
            ok = False
        if not ok:
            problems.append(f"{name} = {v!r} is not a finite complex number")
    if problems:
        return problems

    for name in ("p", "a_m", "a_p"):
        v = float(getattr(params, name))
        if not -1.0 < v < 1.0:
            problems.append(f"{name} = {v} outside open interval (-1, 1)")

    d = params.p**2 + abs(params.q) ** 2 - 1.0
    if abs(d) > NORM_TOL:
        problems.append(f"p^2 + |q|^2 = {params.p**2 + abs(params.q)**2} differs from 1 by {d:.3e}")
    for side, a, b in (("m", params.a_m, params.b_m), ("p", params.a_p, params.b_p)):
        d = a**2 + abs(b) ** 2 - 1.0
        if abs(d) > NORM_TOL:
            problems.append(f"a_{side}^2 + |b_{side}|^2 = {a**2 + abs(b)**2} differs from 1 by {d:.3e}")

    # divisions by b*q*lambda occur downstream, so zero moduli are rejected
    # even though the open intervals plus normalization already preclude them
    if abs(params.q) == 0.0:
        problems.append("q must be nonzero")
    if abs(params.b_m) == 0.0:
        problems.append("b_m must be nonzero")
    if abs(params.b_p) == 0.0:
        problems.append("b_p must be nonzero")
    return problems


def require_valid(params: ModelParams) -> None:
    problems = validate(params)
    if problems:
        raise ValueError("invalid walk parameters: " + "; ".join(problems))


def coin_at(params: ModelParams, x: int) -> np.ndarray:
    """The local 2x2 coin matrix at site x.

    Its determinant is -a^2 - |b|^2 = -1 for any gamma; at gamma = 0 the
    matrix is unitary and self-adjoint.
    """
    require_valid(params)
    a, b = params.coin_values(x)
    g = params.gamma
    return np.array(
        [[math.exp(-2.0 * g) * a, np.conj(b)], [b, -math.exp(2.0 * g) * a]], dtype=complex
    )


@dataclass(frozen=True, eq=False)
class Window:
    """Two-component amplitudes on the closed site interval [x0, x1].

    ``values[i]`` holds the pair (upper, lower) at site ``x0 + i``.
    """

    x0: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] == 0:
            raise ValueError("window values must be a nonempty (n, 2) complex array")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "x0", int(self.x0))

    def __len__(self) -> int:
        return self.values.shape[0]

    @property
    def x1(self) -> int:
        return self.x0 + len(self) - 1

    def sites(self) -> np.ndarray:
        return np.arange(self.x0, self.x1 + 1)

    def site(self, x: int) -> np.ndarray:
        if not self.x0 <= x <= self.x1:
            raise IndexError(f"site {x} outside window [{self.x0}, {self.x1}]")
        return self.values[x - self.x0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


def apply_u(params: ModelParams, window: Window) -> Window:
    """One walk step, restricted to the window interior [x0+1, x1-1].

    Sites whose update would reference a neighbour outside the window are
    dropped, so the result is two sites shorter.  The action is exactly
    linear in the input.
    """
    require_valid(params)
    if len(window) < 3:
        raise ValueError("window must span at least 3 sites")
    psi = window.values
    sites = window.sites()
    a = np.where(sites >= 0, params.a_p, params.a_m)
    b = np.where(sites >= 0, params.b_p, params.b_m)
    eg, emg = math.exp(2.0 * params.gamma), math.exp(-2.0 * params.gamma)
    # coin first ...
    coin_up = emg * a * psi[:, 0] + np.conj(b) * psi[:, 1]
    coin_dn = b * psi[:, 0] - eg * a * psi[:, 1]
    # ... then shift: upper picks up the right neighbour, lower the left one
    out_up = params.p * coin_up[1:-1] + params.q * coin_dn[2:]
    out_dn = np.conj(params.q) * coin_up[:-2] - params.p * coin_dn[1:-1]
    return Window(window.x0 + 1, np.stack([out_up, out_dn], axis=1))
