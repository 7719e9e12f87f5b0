"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines; the
-v test names alone give the per-criterion verdicts.  Tolerances are
pinned here and nowhere else.
"""

import dataclasses
import math
import time

import numpy as np
import pytest

import assimdyn as ad
from assimdyn import State
from assimdyn.dynamics import UNDECIDED

from conftest import A_STAR, A_STAR2, CA_BAR, CLAIM2_RHS, Q_STAR, Q_STAR2
from oracles import fd_jacobian, newton2d, payoff_gaps_oracle, scan_steady_states


def _passed(n, message):
    print(f"\n[criterion {n:02d}] PASS - {message}")


def test_c01_closed_economy_golden(example_params):
    th = ad.thresholds(example_params)
    assert abs(th.q_star - Q_STAR) < 1e-12
    t0 = time.perf_counter()
    for q0 in (0.1, 0.9):
        traj = ad.integrate_closed(example_params, q0, record_every=0)
        assert abs(traj.terminal - Q_STAR) < 1e-6
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    _passed(1, f"q* = 0.4 to 1e-12; both closed runs within 1e-6 in {elapsed:.3f}s")


def test_c02_open_economy_golden(example_params):
    th = ad.thresholds(example_params)
    assert abs(th.A_star - A_STAR) < 1e-12 * abs(A_STAR)
    assert abs(th.A_star2 - A_STAR2) < 1e-12 * abs(A_STAR2)
    assert abs(th.q_star2 - Q_STAR2) < 1e-12 * abs(Q_STAR2)
    stable = [
        s for s in ad.steady_states_open(example_params)
        if s.stability == "stable" and s.in_domain
    ]
    assert len(stable) == 2
    coords = sorted((s.state.p, s.state.q) for s in stable)
    assert coords[0][0] == 0.0 and abs(coords[0][1] - Q_STAR) < 1e-12
    assert coords[1][0] == 1.0 and abs(coords[1][1] - Q_STAR2) < 1e-12
    _passed(2, "A*, A**, q** match to 1e-12 relative; stable set is {(0,0.4),(1,22/57)}")


def test_c03_interior_saddle(example_params):
    interior = [
        s for s in ad.steady_states_open(example_params)
        if s.case_label.startswith("I") and s.in_domain
    ]
    assert len(interior) == 1
    saddle = interior[0]
    root = newton2d(
        lambda x: np.array(payoff_gaps_oracle(example_params, x[0], x[1])),
        np.array([0.65, 0.39]),
    )
    assert root is not None
    assert abs(saddle.state.p - root[0]) < 1e-8
    assert abs(saddle.state.q - root[1]) < 1e-8
    re = sorted(e.real for e in saddle.eigenvalues)
    assert saddle.stability == "unstable"
    assert re[0] < 0.0 < re[1]
    _passed(3, f"one case-(I) root at ({saddle.state.p:.4f}, {saddle.state.q:.4f}), "
               "matches Newton to 1e-8, mixed-sign eigenvalues")


def test_c04_threshold_ordering_property_suite():
    rng = np.random.default_rng(4)
    t0 = time.perf_counter()
    for _ in range(1000):
        p = ad.sample_params(rng)
        th = ad.thresholds(p)
        assert th.A_star2 < th.A_star < p.c_A
        assert th.q_star2 < th.q_star
        assert th.cA_bar > 0.0
        assert th.cA_bar == p.c_A - th.A_star
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0
    _passed(4, f"1000 samples satisfy A** < A* < c_A, q** < q*, cA_bar > 0, in {elapsed:.2f}s")


def test_c05_stability_bifurcation(example_params):
    a_grid = np.linspace(0.0, 0.19, 191)
    step = a_grid[1] - a_grid[0]
    rows = ad.stability_sweep(example_params, a_grid)
    flips = [i for i in range(1, len(rows)) if rows[i - 1].no_assim_stable and not rows[i].no_assim_stable]
    assert len(flips) == 1
    flip_a = rows[flips[0]].A
    assert abs(flip_a - 263.0 / 2200.0) <= step + 1e-12
    for row in rows:
        if 0.0 < row.A < A_STAR:
            assert row.no_assim_stable and row.full_assim_stable
    _passed(5, f"(0,q*) flips stable->not at A = {flip_a:.4f}, within one step of 263/2200; "
               "bistable throughout (0, A*)")


def test_c06_jacobian_oracle():
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(500):
        params = ad.sample_params(rng)
        x = rng.uniform(0.01, 0.99, size=2)
        J = ad.jacobian(params, State(x[0], x[1]))
        J_fd = fd_jacobian(lambda y: ad.rhs_open(params, State(y[0], y[1])), x)
        worst = max(worst, float(np.max(np.abs(J - J_fd) / np.maximum(1.0, np.abs(J)))))
    assert worst < 1e-6
    _passed(6, f"500 analytic-vs-central-difference Jacobians, max relative entry error {worst:.2e}")


def test_c07_grid_root_oracle(example_params):
    enumerated = [s.coords() for s in ad.steady_states_open(example_params) if s.in_domain]
    found = scan_steady_states(example_params, n=400)
    worst = 0.0
    for candidate in found:
        dmin = min(math.dist(candidate, e) for e in enumerated)
        worst = max(worst, dmin)
        assert dmin < 1e-3, f"unlisted steady state near {candidate}"
    _passed(7, f"400x400 scan: {len(found)} candidate roots, all within {worst:.2e} of the enumerated set")


def test_c08_welfare_theorem_check():
    rng = np.random.default_rng(8)
    kept = 0
    draws = 0
    while kept < 1000:
        draws += 1
        assert draws < 50_000
        params = ad.sample_params(rng)
        report = ad.policy_verdict(params)
        if not report.policy_needed:
            continue
        kept += 1
        diff = report.sw_natives_policy - report.sw_natives_baseline
        margin = report.cA_threshold_rhs - params.c_A
        if abs(diff) > 1e-10 and abs(margin) > 1e-10:
            assert (diff > 0.0) == (margin > 0.0)
        assert report.sw_migrants_policy > report.sw_migrants_baseline
    _passed(8, f"1000 samples with A* > 0 ({draws} draws): native sign test and "
               "strict migrant gain hold in every sample")


def test_c09_example_welfare_verdict(example_params):
    report = ad.policy_verdict(example_params)
    # independent evaluation of the cost cap: cA_bar + q* q** beta (c_HS - (1-beta) I_E) / ((1+m)(1-beta)^2)
    hand = CA_BAR + Q_STAR * Q_STAR2 * 0.5 * (0.7 - 0.5 * 0.35) / (1.1 * 0.25)
    assert abs(hand - CLAIM2_RHS) < 1e-15
    assert abs(report.cA_threshold_rhs - hand) < 1e-12
    assert report.cA_threshold_rhs > example_params.c_A
    assert report.claim2_condition_holds
    assert report.natives_better_off and report.sw_natives_policy > report.sw_natives_baseline
    assert report.migrants_better_off and report.sw_migrants_policy > report.sw_migrants_baseline
    _passed(9, f"cost cap {report.cA_threshold_rhs:.5f} > c_A = 0.2; natives and migrants both gain at A = A*")


def test_c10_basin_geometry(example_params):
    saddle = next(
        s for s in ad.steady_states_open(example_params)
        if s.case_label.startswith("I") and s.in_domain
    )
    saddle_xy = (saddle.state.p, saddle.state.q)
    t0 = time.perf_counter()
    grid = ad.basins(example_params, 21)
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    labels = grid.labels
    present = {str(v) for v in labels.ravel()}
    assert {"G", "H"} <= present
    best = math.inf
    R = grid.resolution
    for i in range(R):
        for j in range(R):
            if labels[i, j] == UNDECIDED:
                continue
            for di, dj in ((1, 0), (0, 1)):
                ni, nj = i + di, j + dj
                if ni >= R or nj >= R or labels[ni, nj] == UNDECIDED:
                    continue
                if labels[ni, nj] != labels[i, j]:
                    mid = (
                        0.5 * (grid.p_centers[i] + grid.p_centers[ni]),
                        0.5 * (grid.q_centers[j] + grid.q_centers[nj]),
                    )
                    best = min(best, math.dist(mid, saddle_xy))
    assert best <= math.sqrt(2.0) / R
    _passed(10, f"both basins present at 21x21 in {elapsed:.2f}s "
                f"(backend: {ad.backend()}); boundary within {best:.4f} of the saddle")
