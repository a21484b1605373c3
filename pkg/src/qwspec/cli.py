"""Command-line front end: spectrum, eigenstate, sweep, index, verify.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 empty
result where output was mandatory.  All numeric output is formatted with
17 significant digits so identical inputs give byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import index as index_mod
from .model import ModelParams, validate
from .serialize import InputError, dumps, fmt, load_params_data, params_echo
from .spectrum import Eigenstate, eigenstate, point_spectrum
from .sweep import load_sweep_spec, run_sweep
from .verify import run_battery

__all__ = ["main"]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_EMPTY_RESULT = 3


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_valid_params(path: str) -> tuple[ModelParams, dict]:
    params, meta = load_params_data(_load_json(path))
    problems = validate(params)
    if problems:
        raise InputError("invalid parameters: " + "; ".join(problems))
    return params, meta


def _write_text(out_path: str | None, text: str) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        Path(out_path).write_text(text, encoding="utf-8")


def cmd_spectrum(args) -> int:
    params, meta = _load_valid_params(args.params)
    result = point_spectrum(params)
    for line in result.diagnostics:
        print(f"qwspec spectrum: {line}", file=sys.stderr)
    doc = {
        "p_gamma_prime": result.p_gamma_prime,
        "entries": [
            {
                "lambda": e.value,
                "s1": e.s1,
                "s2": e.s2,
                "branch": e.branch,
                "phi": [e.phi[0].real, e.phi[0].imag, e.phi[1].real, e.phi[1].imag],
            }
            for e in result.entries
        ],
        "reliable": result.reliable,
        "diagnostics": list(result.diagnostics),
        "params": params_echo(params, meta),
        "seed": args.seed,
    }
    _write_text(args.out, dumps(doc))
    return EXIT_OK


def _eigenstate_csv(params: ModelParams, meta: dict, state: Eigenstate, entry, seed=None) -> str:
    lines = ["# qwspec eigenstate"]
    if seed is not None:
        lines.append(f"# seed = {seed}")
    lines.append(f"# lambda = {fmt(state.value)}")
    lines.append(f"# s1 = {entry.s1}")
    lines.append(f"# s2 = {entry.s2}")
    lines.append(f"# branch = {entry.branch}")
    phi = state.phi
    lines.append(
        "# phi = " + ",".join(fmt(v) for v in (phi[0].real, phi[0].imag, phi[1].real, phi[1].imag))
    )
    lines.append(f"# decay_plus = {fmt(state.decay_plus)}")
    lines.append(f"# decay_minus = {fmt(state.decay_minus)}")
    lines.append(f"# norm_sq = {fmt(state.norm_sq)}")
    lines.append(f"# window = {state.window.x0},{state.window.x1}")
    for key, value in params_echo(params, meta).items():
        if isinstance(value, bool):
            lines.append(f"# {key} = {'true' if value else 'false'}")
        else:
            lines.append(f"# {key} = {fmt(value)}")
    lines.append("x,re_up,im_up,re_down,im_down")
    for offset, (up, dn) in enumerate(state.window.values):
        x = state.window.x0 + offset
        lines.append(f"{x},{fmt(up.real)},{fmt(up.imag)},{fmt(dn.real)},{fmt(dn.imag)}")
    return "\n".join(lines) + "\n"


def cmd_eigenstate(args) -> int:
    params, meta = _load_valid_params(args.params)
    half = args.window
    if half is None:
        half = 150
    if half < 2:
        raise InputError(f"--window {half} too small: the window [-N, N] must contain [-2, 1]")
    result = point_spectrum(params)
    for line in result.diagnostics:
        print(f"qwspec eigenstate: {line}", file=sys.stderr)
    if not result.entries:
        print("qwspec eigenstate: no bound state for these parameters", file=sys.stderr)
        return EXIT_EMPTY_RESULT

    texts = []
    for entry in result.entries:
        state = eigenstate(params, entry, (-half, half))
        texts.append(_eigenstate_csv(params, meta, state, entry, seed=args.seed))

    if args.out is None:
        for text in texts:
            sys.stdout.write(text)
    elif len(texts) == 1:
        _write_text(args.out, texts[0])
    else:
        base = Path(args.out)
        for i, text in enumerate(texts, start=1):
            _write_text(str(base.with_name(f"{base.stem}_{i}{base.suffix}")), text)
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = load_sweep_spec(_load_json(args.params))
    rows = run_sweep(spec)

    lines = ["# qwspec sweep"]
    if args.seed is not None:
        lines.append(f"# seed = {args.seed}")
    lines.append(
        f"# axis1 = {spec.axis1.name},{fmt(spec.axis1.lo)},{fmt(spec.axis1.hi)},{spec.axis1.steps}"
    )
    if spec.axis2 is not None:
        lines.append(
            f"# axis2 = {spec.axis2.name},{fmt(spec.axis2.lo)},{fmt(spec.axis2.hi)},{spec.axis2.steps}"
        )
    fixed_desc = ",".join(
        f"{k}={fmt(float(v))}" for k, v in sorted(spec.fixed.items())
    )
    lines.append(f"# fixed = {fixed_desc}")
    header = [spec.axis1.name]
    if spec.axis2 is not None:
        header.append(spec.axis2.name)
    header += [
        "p_gamma_prime",
        "n_eigenvalues",
        "lambda_1",
        "s1_1",
        "s2_1",
        "lambda_2",
        "s1_2",
        "s2_2",
        "status",
    ]
    lines.append(",".join(header))

    for row in rows:
        cells = [fmt(row.assignment[spec.axis1.name])]
        if spec.axis2 is not None:
            cells.append(fmt(row.assignment[spec.axis2.name]))
        if row.result is None:
            cells += ["", "0", "", "", "", "", "", "", "error"]
        else:
            cells.append(fmt(row.result.p_gamma_prime))
            cells.append(str(len(row.result.entries)))
            for k in range(2):
                if k < len(row.result.entries):
                    e = row.result.entries[k]
                    cells += [fmt(e.value), str(e.s1), str(e.s2)]
                else:
                    cells += ["", "", ""]
            cells.append(row.status)
        lines.append(",".join(cells))
    _write_text(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


_ASYM_KEYS = {"p_minus", "p_plus", "a_minus", "a_plus"}


def cmd_index(args) -> int:
    data = _load_json(args.params)
    protection = None
    if isinstance(data, dict) and set(data) == _ASYM_KEYS:
        try:
            asym = index_mod.AsymptoticData(
                float(data["p_minus"]), float(data["p_plus"]),
                float(data["a_minus"]), float(data["a_plus"]),
            )
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad asymptotics file: {exc}") from exc
        if args.protect:
            raise InputError("--protect needs a full parameter file, not bare asymptotics")
    else:
        params, _ = _load_valid_params(args.params)
        asym = index_mod.walk_asymptotics(params)
        if args.protect:
            try:
                protection = index_mod.protection_check(params, args.half_width)
            except ValueError as exc:
                raise InputError(str(exc)) from exc

    result = index_mod.chiral_index(asym)
    doc = {
        "defined": result.defined,
        "value": result.value,
        "gap_minus": result.gap_minus,
        "gap_plus": result.gap_plus,
    }
    if protection is not None:
        doc["protection"] = {
            "count_plus": protection.count_plus,
            "count_minus": protection.count_minus,
            "satisfied": protection.satisfied,
            "half_width": protection.half_width,
            "eig_tol": protection.eig_tol,
            "localization_threshold": protection.localization_threshold,
        }
    _write_text(args.out, dumps(doc))
    return EXIT_OK


def cmd_verify(args) -> int:
    params, meta = _load_valid_params(args.params)
    window_half = args.window if args.window is not None else 150
    if window_half < 8:
        raise InputError("--window must be at least 8 for the residual checks")
    report = run_battery(
        params,
        half_width=args.half_width,
        window_half=window_half,
        seed=args.seed if args.seed is not None else 0,
        tol=args.tol,
    )
    doc = {
        "seed": report.seed,
        "half_width": report.half_width,
        "window_half": report.window_half,
        "tol": report.tol,
        "all_pass": report.all_pass,
        "params": params_echo(params, meta),
        "checks": [
            {"name": c.name, "status": c.status, "worst": c.worst, "note": c.note}
            for c in report.checks
        ],
    }
    _write_text(args.out, dumps(doc))
    return EXIT_OK if report.all_pass else EXIT_VERIFY_FAILED


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--params", required=True, metavar="FILE",
                        help="JSON input file (model parameters, or the sweep/asymptotics document)")
    common.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    common.add_argument("--half-width", type=int, default=60, metavar="N",
                        help="half-width of the dense truncation window (default 60)")
    common.add_argument("--window", type=int, default=None, metavar="N",
                        help="half-width of eigenstate/residual windows (default 150)")
    common.add_argument("--seed", type=int, default=None, metavar="S",
                        help="seed for randomized checks; echoed in output")
    common.add_argument("--tol", type=float, default=1e-9, metavar="T",
                        help="residual tolerance override (default 1e-9)")

    parser = argparse.ArgumentParser(
        prog="qwspec",
        description="Spectral analysis of the two-phase gain-loss split-step quantum walk.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common],
                   help="classify the point spectrum, JSON to stdout").set_defaults(func=cmd_spectrum)
    sub.add_parser("eigenstate", parents=[common],
                   help="materialize bound states as CSV profiles").set_defaults(func=cmd_eigenstate)
    sub.add_parser("sweep", parents=[common],
                   help="grid sweep over one or two parameters, CSV phase diagram").set_defaults(func=cmd_sweep)
    p_index = sub.add_parser("index", parents=[common],
                             help="chiral index from parameters or bare asymptotics, JSON")
    p_index.add_argument("--protect", action="store_true",
                         help="at gamma = 0, also count localized eigenvalues near +-1")
    p_index.set_defaults(func=cmd_index)
    sub.add_parser("verify", parents=[common],
                   help="run the cross-validation battery, JSON report").set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"qwspec {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
