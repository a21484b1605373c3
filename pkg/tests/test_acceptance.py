"""Acceptance battery: one test per criterion, each printing one PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines and headline numbers.  The dense-oracle criteria pin half-width 60
and tolerance 1e-6, the residual criteria half-width 150 and 1e-9.
"""

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

try:
    from threadpoolctl import threadpool_limits
except ImportError:  # pragma: no cover - then the battery just runs slower
    import contextlib

    def threadpool_limits(n):
        return contextlib.nullcontext()

from qwspec import (
    AsymptoticData,
    assemble_shift,
    assemble_truncated,
    candidate_eigenvalues,
    candidate_value,
    chiral_index,
    decay_rates,
    dense_spectrum,
    eigenstate,
    hypothesis_check,
    in_lambda_set,
    localization,
    make_params,
    match_conditions,
    point_spectrum,
    protection_check,
    residual,
    run_sweep,
    load_sweep_spec,
    transfer_data,
    transfer_matrix,
)
from qwspec.oracle import interior_site_mask

BRANCHES = ((1, 1), (-1, 1), (1, -1), (-1, -1))
DRAWS_PER_BRANCH = 500
DENSE_HALF_WIDTH = 60
STATE_HALF_WIDTH = 150


def _shift_value(gamma, p):
    return p / math.sqrt(p * p + (1.0 - p * p) / math.cosh(2.0 * gamma) ** 2)


def _random_phase_params(rng, g, p, a_m, a_p):
    if rng.integers(2):
        return make_params(g, p, a_m, a_p)
    q = math.sqrt(1.0 - p * p) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    b_m = math.sqrt(1.0 - a_m * a_m) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    b_p = math.sqrt(1.0 - a_p * a_p) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    return make_params(g, p, a_m, a_p, q=q, b_m=b_m, b_p=b_p)


def _sample_branch(rng, s1, s2, margin=1e-3, decay_limit=0.9):
    """A random draw whose classified spectrum contains the (s1, s2) branch,
    at least `margin` from the case boundaries and resolvable at the dense
    window (both decay rates below `decay_limit`)."""
    while True:
        g = rng.uniform(-0.6, 0.6)
        p = rng.uniform(-0.92, 0.92)
        target = s2 * _shift_value(g, p)
        if not -0.95 + margin < target < 0.95 - margin:
            continue
        below = rng.uniform(-0.95, target - margin)
        above = rng.uniform(target + margin, 0.95)
        a_m, a_p = (below, above) if s1 == 1 else (above, below)
        params = _random_phase_params(rng, g, p, a_m, a_p)
        result = point_spectrum(params)
        if not result.reliable:
            continue
        lam = candidate_value(params, s1, s2)
        matches = [e for e in result.entries if abs(e.value - lam) <= 1e-12]
        if not matches:
            continue
        entry = matches[0]
        dplus, dminus = decay_rates(params, entry.value)
        if max(dplus, dminus) >= decay_limit:
            continue
        return params, entry


def test_acceptance_1_theorem_reproduction_positive_branches():
    rng = np.random.default_rng(1001)
    jobs = []
    for s1, s2 in BRANCHES:
        for _ in range(DRAWS_PER_BRANCH):
            # the truncation gap behaves like C * decay^(2N) with C reaching
            # ~60 for the non-normal truncation, so decays are kept at 0.85
            # (inside the 0.9 filter) to hold N=60 within the 1e-6 tolerance
            jobs.append(_sample_branch(rng, s1, s2, decay_limit=0.85))

    def check(job):
        params, entry = job
        op = assemble_truncated(params, DENSE_HALF_WIDTH)
        decomp = dense_spectrum(op)
        dist = np.abs(decomp.values - entry.value)
        near = np.where(dist <= 1e-6)[0]
        localized = [j for j in near if localization(decomp.vectors[:, j], op) >= 0.99]
        best = float(np.min(dist[localized])) if localized else math.inf
        state = eigenstate(params, entry, (-STATE_HALF_WIDTH, STATE_HALF_WIDTH))
        return best, residual(params, entry.value, state.window)

    worst_gap = 0.0
    worst_res = 0.0
    with threadpool_limits(1):
        with ThreadPoolExecutor(max_workers=2) as pool:
            for best, res in pool.map(check, jobs):
                assert best <= 1e-6
                assert res <= 1e-9
                worst_gap = max(worst_gap, best)
                worst_res = max(worst_res, res)
    print(
        f"ACCEPTANCE 1 PASS: {len(jobs)} draws over 4 branches; "
        f"worst dense gap {worst_gap:.3e} (tol 1e-6), "
        f"worst state residual {worst_res:.3e} (tol 1e-9)"
    )


def _sample_otherwise(rng, gamma=None, margin=1e-3):
    while True:
        g = gamma if gamma is not None else rng.uniform(-0.6, 0.6)
        p = rng.uniform(-0.92, 0.92)
        a_m, a_p = rng.uniform(-0.95, 0.95, 2)
        shift = _shift_value(g, p)
        if min(abs(s2 * shift - a) for s2 in (1, -1) for a in (a_m, a_p)) < margin:
            continue
        lo, hi = min(a_m, a_p), max(a_m, a_p)
        if lo < shift < hi or lo < -shift < hi:
            continue
        params = _random_phase_params(rng, g, p, a_m, a_p)
        degenerate = any(
            min(hypothesis_check(params, s2).margin_m, hypothesis_check(params, s2).margin_p)
            < 1e-6
            for s2 in (1, -1)
        )
        if degenerate:
            continue
        result = point_spectrum(params)
        if not result.reliable or result.entries:
            continue
        return params


def test_acceptance_2_theorem_reproduction_empty_branch():
    rng = np.random.default_rng(1002)
    n_total, n_gamma0 = 500, 80
    draws = [_sample_otherwise(rng, gamma=0.0) for _ in range(n_gamma0)]
    draws += [_sample_otherwise(rng) for _ in range(n_total - n_gamma0)]

    for params in draws:
        for cand in candidate_eigenvalues(params):
            rep = match_conditions(params, cand.value)
            assert rep.all_conditions == (rep.kernel_dim == 1)  # two-route agreement
            assert not rep.all_conditions
            assert rep.kernel_dim == 0

    def no_localized_candidate(params):
        op = assemble_truncated(params, DENSE_HALF_WIDTH)
        decomp = dense_spectrum(op)
        for cand in candidate_eigenvalues(params):
            near = np.where(np.abs(decomp.values - cand.value) <= 1e-4)[0]
            if any(localization(decomp.vectors[:, j], op) >= 0.99 for j in near):
                return False
        return True

    with threadpool_limits(1):
        with ThreadPoolExecutor(max_workers=2) as pool:
            assert all(pool.map(no_localized_candidate, draws[:n_gamma0]))
    print(
        f"ACCEPTANCE 2 PASS: {n_total} empty-branch draws, all 4 candidates rejected "
        f"by both routes; {n_gamma0} gamma=0 draws show no localized dense candidate"
    )


def test_acceptance_3_algebraic_identities():
    rng = np.random.default_rng(1003)
    worst_det = 0.0
    worst_disc = 0.0
    for _ in range(10_000):
        g = rng.uniform(-0.7, 0.7)
        p = rng.uniform(-0.95, 0.95)
        a_m, a_p = rng.uniform(-0.95, 0.95, 2)
        params = _random_phase_params(rng, g, p, a_m, a_p)
        lam = np.exp(rng.uniform(np.log(0.1), np.log(10.0))) * np.exp(
            1j * rng.uniform(0, 2 * np.pi)
        )
        for side in ("m", "p"):
            worst_det = max(
                worst_det,
                abs(abs(np.linalg.det(transfer_matrix(params, side, lam))) - 1.0),
            )
            data = transfer_data(params, side, lam)
            a, b = params.side_values(side)
            tr = lam + 1.0 / lam - 2.0 * p * a * math.cosh(2.0 * g)
            other = tr * tr - 4.0 * abs(b * params.q) ** 2
            scale = max(1.0, abs(data.delta) ** 2, 4.0 * abs(data.alpha * data.beta))
            worst_disc = max(worst_disc, abs(data.disc - other) / scale)
    assert worst_det <= 1e-10
    assert worst_disc <= 1e-12

    worst_prod = 0.0
    for _ in range(10_000):
        # |p*sinh(2*gamma)| stays below ~4 here; beyond that the exact -1
        # product is no longer representable to 1e-14 in double arithmetic
        g = rng.uniform(-1.0, 1.0)
        p = rng.uniform(-0.99, 0.99)
        params = make_params(g, p, 0.0, 0.1)
        for s1 in (1, -1):
            prod = candidate_value(params, s1, 1) * candidate_value(params, s1, -1)
            worst_prod = max(worst_prod, abs(prod + 1.0))
    assert worst_prod <= 1e-14
    print(
        f"ACCEPTANCE 3 PASS: 1e4 draws; worst |det|-1 {worst_det:.3e} (tol 1e-10), "
        f"worst discriminant defect {worst_disc:.3e} (tol 1e-12), "
        f"worst candidate product defect {worst_prod:.3e} (tol 1e-14)"
    )


def test_acceptance_4_unitary_limit_structure():
    rng = np.random.default_rng(1004)
    worst_unitary = 0.0
    worst_chiral = 0.0
    eye = None
    for _ in range(100):
        p = rng.uniform(-0.92, 0.92)
        a_m, a_p = rng.uniform(-0.95, 0.95, 2)
        params = _random_phase_params(rng, 0.0, p, a_m, a_p)
        op = assemble_truncated(params, DENSE_HALF_WIDTH)
        shift = assemble_shift(params, DENSE_HALF_WIDTH)
        if eye is None:
            eye = np.eye(op.dim)
        mask = interior_site_mask(op, margin=2)
        gram = op.matrix.conj().T @ op.matrix - eye
        chiral = shift.matrix @ op.matrix @ shift.matrix - op.matrix.conj().T
        worst_unitary = max(worst_unitary, float(np.max(np.abs(gram[np.ix_(mask, mask)]))))
        worst_chiral = max(worst_chiral, float(np.max(np.abs(chiral[np.ix_(mask, mask)]))))
    assert worst_unitary < 1e-12
    assert worst_chiral < 1e-12
    print(
        f"ACCEPTANCE 4 PASS: 100 gamma=0 draws at N={DENSE_HALF_WIDTH}; "
        f"worst interior U*U-1 {worst_unitary:.3e}, worst chiral defect {worst_chiral:.3e} "
        "(tol 1e-12)"
    )


def _sample_protected(rng, decay_limit=0.85, margin=0.05):
    while True:
        p = float(rng.choice([-1.0, 1.0])) * rng.uniform(0.15, 0.9)
        small = rng.uniform(-(abs(p) - margin), abs(p) - margin)
        big = float(rng.choice([-1.0, 1.0])) * rng.uniform(abs(p) + margin, 0.97)
        a_m, a_p = (big, small) if rng.integers(2) else (small, big)
        params = make_params(0.0, p, a_m, a_p)
        result = chiral_index(
            AsymptoticData(params.p, params.p, params.a_m, params.a_p)
        )
        if not result.defined or result.value == 0:
            continue
        spectrum = point_spectrum(params)
        if not spectrum.reliable or not spectrum.entries:
            continue
        decays = [max(decay_rates(params, e.value)) for e in spectrum.entries]
        if max(decays) >= decay_limit:
            continue
        return params, result


def test_acceptance_5_index_table_and_protection():
    # the three tabulated examples
    assert chiral_index(AsymptoticData(0.5, 0.5, 0.8, 0.9)).value == 0
    assert chiral_index(AsymptoticData(0.5, 0.5, 0.8, 0.2)).value == 1
    assert chiral_index(AsymptoticData(0.5, 0.5, 0.2, 0.2)).value == 0

    rng = np.random.default_rng(1005)
    fired = [0, 0, 0, 0]
    for _ in range(10_000):
        pm, pp, am, ap = rng.uniform(-1.0, 1.0, 4)
        if abs(abs(pm) - abs(am)) < 1e-9 or abs(abs(pp) - abs(ap)) < 1e-9:
            continue
        result = chiral_index(AsymptoticData(pm, pp, am, ap))
        assert result.defined
        cases = [
            abs(pm) < abs(am) and abs(pp) < abs(ap),
            abs(pm) < abs(am) and abs(pp) > abs(ap),
            abs(pm) > abs(am) and abs(pp) < abs(ap),
            abs(pm) > abs(am) and abs(pp) > abs(ap),
        ]
        assert sum(cases) == 1
        which = cases.index(True)
        fired[which] += 1
        expected = [
            0,
            int(np.sign(pp)),
            -int(np.sign(pm)),
            int(np.sign(pp)) - int(np.sign(pm)),
        ][which]
        assert result.value == expected
    assert all(count > 0 for count in fired)

    protected = 0
    with threadpool_limits(1):
        for _ in range(50):
            params, result = _sample_protected(rng)
            report = protection_check(params, DENSE_HALF_WIDTH)
            assert report.satisfied
            assert report.count_plus + report.count_minus >= abs(result.value) >= 1
            protected += 1
    print(
        f"ACCEPTANCE 5 PASS: 3 tabulated cases, 1e4 random case firings {fired}, "
        f"protection bound verified on {protected} nonzero-index gamma=0 draws"
    )


def test_acceptance_6_membership_consistency():
    rng = np.random.default_rng(1006)
    checked = 0
    for kind in ("real", "circle"):
        n = 10_000 if kind == "real" else 1_000
        for _ in range(n):
            g = rng.uniform(-0.7, 0.7)
            p = rng.uniform(-0.95, 0.95)
            a_m, a_p = rng.uniform(-0.95, 0.95, 2)
            params = _random_phase_params(rng, g, p, a_m, a_p)
            if kind == "real":
                lam = float(
                    np.sign(rng.standard_normal())
                    * np.exp(rng.uniform(np.log(0.1), np.log(10.0)))
                )
            else:
                lam = complex(np.exp(1j * rng.uniform(0, 2 * np.pi)))
            verdict = in_lambda_set(params, lam)  # raises on a decisive mismatch
            direct = all(
                not transfer_data(params, side, lam).degenerate for side in ("m", "p")
            )
            assert verdict.in_set == direct
            assert verdict.in_set == (verdict.in_m and verdict.in_p)
            checked += 1
    print(
        f"ACCEPTANCE 6 PASS: closed-form membership criterion agrees with the "
        f"modulus comparison on all {checked} draws"
    )


def test_acceptance_7_sweep_continuity_through_gamma_zero():
    spec = load_sweep_spec(
        {
            "axis1": {"name": "gamma", "lo": -0.2, "hi": 0.199, "steps": 400},
            "fixed": {"p": 0.5, "a_m": 0.8, "a_p": 0.2},
        }
    )
    rows = run_sweep(spec)
    assert len(rows) == 400
    path = []
    for row in rows:
        assert row.status == "ok"
        assert len(row.result.entries) == 1
        entry = row.result.entries[0]
        assert entry.s2 == 1
        path.append(entry.value)
    step = (0.199 + 0.2) / 399
    jumps = np.abs(np.diff(path))
    assert float(np.max(jumps)) < 10.0 * step
    k0 = int(np.argmin([abs(r.assignment["gamma"]) for r in rows]))
    assert abs(path[k0] - 1.0) < 1e-12
    print(
        f"ACCEPTANCE 7 PASS: 400-point gamma sweep; max adjacent jump "
        f"{float(np.max(jumps)):.3e} < {10 * step:.3e}, path value at gamma~0 "
        f"within {abs(path[k0] - 1.0):.1e} of +1"
    )
