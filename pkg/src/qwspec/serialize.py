"""Deterministic text output and parameter-file handling.

Every float written by the command-line tools goes through :func:`fmt`
(17 significant digits, lowercase scientific when needed), so identical
inputs produce byte-identical outputs.
"""

from __future__ import annotations

import json
import math

from .model import ModelParams

__all__ = [
    "InputError",
    "fmt",
    "dumps",
    "load_params_data",
    "params_echo",
]

PARAM_KEYS = (
    "gamma",
    "p",
    "q_re",
    "q_im",
    "a_m",
    "a_p",
    "b_m_re",
    "b_m_im",
    "b_p_re",
    "b_p_im",
)
_REQUIRED_KEYS = ("gamma", "p", "q_re", "a_m", "a_p")


class InputError(Exception):
    """Malformed or invalid input; the CLI maps this to exit code 2."""


def fmt(x: float) -> str:
    """Fixed 17-significant-digit representation of a finite float."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    return format(x, ".17g")


def _dump(obj, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(fmt(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.append(f"{pad}  {json.dumps(str(k))}: ")
            _dump(v, indent + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad + "  ")
            _dump(v, indent + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Deterministic JSON text (insertion-ordered keys, fixed float format)."""
    out: list[str] = []
    _dump(obj, 0, out)
    out.append("\n")
    return "".join(out)


def _get_number(data: dict, key: str) -> float:
    v = data[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InputError(f"parameter {key!r} must be a number, got {v!r}")
    if not math.isfinite(float(v)):
        raise InputError(f"parameter {key!r} must be finite, got {v!r}")
    return float(v)


def load_params_data(data: dict) -> tuple[ModelParams, dict]:
    """Build parameters from a flat key-value document.

    Missing b fields fall back to the +sqrt(1 - a^2) convention; the
    returned meta dict records which sides were defaulted so outputs can
    echo the convention.  Unknown keys and missing required keys are input
    errors.
    """
    if not isinstance(data, dict):
        raise InputError("parameter document must be a JSON object")
    unknown = sorted(set(data) - set(PARAM_KEYS))
    if unknown:
        raise InputError(f"unknown parameter keys: {', '.join(unknown)}")
    missing = sorted(k for k in _REQUIRED_KEYS if k not in data)
    if missing:
        raise InputError(f"missing required parameter keys: {', '.join(missing)}")

    gamma = _get_number(data, "gamma")
    p = _get_number(data, "p")
    q = complex(_get_number(data, "q_re"), _get_number(data, "q_im") if "q_im" in data else 0.0)
    a_m = _get_number(data, "a_m")
    a_p = _get_number(data, "a_p")

    meta = {"b_m_defaulted": False, "b_p_defaulted": False}
    if "b_m_re" in data or "b_m_im" in data:
        b_m = complex(
            _get_number(data, "b_m_re") if "b_m_re" in data else 0.0,
            _get_number(data, "b_m_im") if "b_m_im" in data else 0.0,
        )
    else:
        b_m = complex(math.sqrt(max(0.0, 1.0 - a_m * a_m)))
        meta["b_m_defaulted"] = True
    if "b_p_re" in data or "b_p_im" in data:
        b_p = complex(
            _get_number(data, "b_p_re") if "b_p_re" in data else 0.0,
            _get_number(data, "b_p_im") if "b_p_im" in data else 0.0,
        )
    else:
        b_p = complex(math.sqrt(max(0.0, 1.0 - a_p * a_p)))
        meta["b_p_defaulted"] = True

    return ModelParams(gamma, p, q, a_m, a_p, b_m, b_p), meta


def params_echo(params: ModelParams, meta: dict | None = None) -> dict:
    """Resolved parameter values (defaults filled in) for output documents."""
    meta = meta or {}
    echo = {
        "gamma": params.gamma,
        "p": params.p,
        "q_re": params.q.real,
        "q_im": params.q.imag,
        "a_m": params.a_m,
        "a_p": params.a_p,
        "b_m_re": params.b_m.real,
        "b_m_im": params.b_m.imag,
        "b_p_re": params.b_p.real,
        "b_p_im": params.b_p.imag,
    }
    echo["b_m_defaulted"] = bool(meta.get("b_m_defaulted", False))
    echo["b_p_defaulted"] = bool(meta.get("b_p_defaulted", False))
    return echo
