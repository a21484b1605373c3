"""Parameter sweeps over one or two axes of the classification.

Each grid point evaluates the closed-form point spectrum; rows come out in
row-major grid order (axis1 outer, axis2 inner) regardless of how many
worker threads evaluate them.  Sweeping p (or a coin amplitude) recomputes
the paired modulus q (or b) by the +sqrt(1 - .^2) convention per grid
point, so the normalization constraints stay exact along the axis.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, make_params
from .serialize import InputError
from .spectrum import SpectrumResult, point_spectrum

__all__ = ["SweepAxis", "SweepSpec", "SweepRow", "run_sweep", "sweep_threads"]

SWEEPABLE = ("gamma", "p", "a_m", "a_p")
#: moduli recomputed when their paired amplitude is swept
_PAIRED = {"p": ("q_re", "q_im"), "a_m": ("b_m_re", "b_m_im"), "a_p": ("b_p_re", "b_p_im")}


@dataclass(frozen=True)
class SweepAxis:
    name: str
    lo: float
    hi: float
    steps: int

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    axis1: SweepAxis
    axis2: SweepAxis | None
    fixed: dict


def _check_axis(raw, label: str) -> SweepAxis:
    if not isinstance(raw, dict):
        raise InputError(f"{label} must be an object with name, lo, hi, steps")
    try:
        name = raw["name"]
        lo, hi = float(raw["lo"]), float(raw["hi"])
        steps = raw["steps"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{label} is malformed: {exc}") from exc
    if name not in SWEEPABLE:
        raise InputError(f"{label}.name must be one of {', '.join(SWEEPABLE)}; got {name!r}")
    if not isinstance(steps, int) or steps < 2:
        raise InputError(f"{label}.steps must be an integer >= 2, got {steps!r}")
    if not lo <= hi:
        raise InputError(f"{label} range is empty: lo={lo} > hi={hi}")
    if name != "gamma" and not (-1.0 < lo and hi < 1.0):
        raise InputError(f"{label} range [{lo}, {hi}] leaves the open interval (-1, 1)")
    return SweepAxis(name, lo, hi, steps)


def load_sweep_spec(data: dict) -> SweepSpec:
    if not isinstance(data, dict):
        raise InputError("sweep document must be a JSON object")
    unknown = sorted(set(data) - {"axis1", "axis2", "fixed"})
    if unknown:
        raise InputError(f"unknown sweep keys: {', '.join(unknown)}")
    if "axis1" not in data:
        raise InputError("sweep document needs an axis1")
    axis1 = _check_axis(data["axis1"], "axis1")
    axis2 = _check_axis(data["axis2"], "axis2") if data.get("axis2") is not None else None
    if axis2 is not None and axis2.name == axis1.name:
        raise InputError("axis1 and axis2 must sweep different parameters")
    fixed = data.get("fixed", {})
    if not isinstance(fixed, dict):
        raise InputError("fixed must be an object of parameter values")

    swept = {axis1.name} | ({axis2.name} if axis2 else set())
    for axis_name in swept:
        if axis_name in fixed:
            raise InputError(f"swept parameter {axis_name!r} must not appear in fixed")
        for paired in _PAIRED.get(axis_name, ()):
            if paired in fixed:
                raise InputError(
                    f"{paired!r} cannot be fixed while sweeping {axis_name!r}; "
                    "the modulus is recomputed by the +sqrt(1-x^2) convention"
                )
    return SweepSpec(axis1, axis2, dict(fixed))


def _params_at(spec: SweepSpec, assignment: dict) -> ModelParams:
    merged = dict(spec.fixed)
    merged.update(assignment)
    kwargs = {}
    for key in ("gamma", "p", "a_m", "a_p"):
        if key not in merged:
            raise InputError(f"parameter {key!r} is neither fixed nor swept")
        kwargs[key] = float(merged[key])
    if "q_re" in merged:
        kwargs["q"] = complex(float(merged["q_re"]), float(merged.get("q_im", 0.0)))
    if "b_m_re" in merged or "b_m_im" in merged:
        kwargs["b_m"] = complex(float(merged.get("b_m_re", 0.0)), float(merged.get("b_m_im", 0.0)))
    if "b_p_re" in merged or "b_p_im" in merged:
        kwargs["b_p"] = complex(float(merged.get("b_p_re", 0.0)), float(merged.get("b_p_im", 0.0)))
    return make_params(**kwargs)


@dataclass(frozen=True)
class SweepRow:
    assignment: dict
    result: SpectrumResult | None
    error: str | None

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        return "ok" if self.result.reliable else "boundary"


def sweep_threads() -> int:
    """Worker count for grid evaluation, capped by QWSPEC_THREADS."""
    cap = os.environ.get("QWSPEC_THREADS")
    if cap is not None:
        try:
            cap_val = int(cap)
        except ValueError as exc:
            raise InputError(f"QWSPEC_THREADS must be an integer, got {cap!r}") from exc
        if cap_val < 1:
            raise InputError("QWSPEC_THREADS must be >= 1")
        return cap_val
    return min(8, os.cpu_count() or 1)


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate the grid; rows in row-major order, failures contained."""
    grid1 = spec.axis1.grid()
    grid2 = spec.axis2.grid() if spec.axis2 is not None else None

    assignments = []
    for v1 in grid1:
        if grid2 is None:
            assignments.append({spec.axis1.name: float(v1)})
        else:
            for v2 in grid2:
                assignments.append({spec.axis1.name: float(v1), spec.axis2.name: float(v2)})

    def evaluate(assignment: dict) -> SweepRow:
        try:
            params = _params_at(spec, assignment)
            return SweepRow(assignment, point_spectrum(params), None)
        except (ValueError, InputError) as exc:
            return SweepRow(assignment, None, str(exc))

    workers = sweep_threads()
    if workers == 1 or len(assignments) < 4:
        return [evaluate(a) for a in assignments]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(evaluate, assignments))
