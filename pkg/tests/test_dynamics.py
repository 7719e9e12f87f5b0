import dataclasses
import math

import numpy as np
import pytest

import assimdyn as ad
from assimdyn import State
from assimdyn.dynamics import UNDECIDED, attractors

from conftest import Q_STAR, Q_STAR2, SADDLE


class TestIntegrateOpen:
    def test_converges_to_full_assimilation(self, example_params):
        traj = ad.integrate(example_params, State(0.9, 0.4))
        assert traj.converged
        assert traj.converged_to is not None and traj.converged_to.case_label == "H"
        assert math.dist((traj.terminal.p, traj.terminal.q), (1.0, Q_STAR2)) < 1e-4

    def test_converges_to_no_assimilation(self, example_params):
        traj = ad.integrate(example_params, State(0.05, 0.4))
        assert traj.converged_to is not None and traj.converged_to.case_label == "G"
        assert math.dist((traj.terminal.p, traj.terminal.q), (0.0, Q_STAR)) < 1e-4

    def test_zero_assim_face_is_invariant(self, example_params):
        traj = ad.integrate(example_params, State(0.0, 0.5))
        assert np.all(traj.states[:, 0] == 0.0)
        assert traj.terminal.p == 0.0

    def test_samples_are_ordered_and_in_square(self, example_params):
        traj = ad.integrate(example_params, State(0.3, 0.7), t_max=50.0, record_every=10)
        assert np.all(np.diff(traj.t) > 0.0)
        assert np.all((traj.states >= 0.0) & (traj.states <= 1.0))
        assert float(traj.t[0]) == 0.0
        assert float(traj.t[-1]) == pytest.approx(traj.steps * 0.01, abs=1e-12)

    def test_record_every_zero_keeps_terminal_only(self, example_params):
        traj = ad.integrate(example_params, State(0.9, 0.4), record_every=0)
        assert traj.states.shape == (0, 2)
        assert traj.converged

    def test_budget_error(self, example_params):
        with pytest.raises(ad.BudgetError):
            ad.integrate(example_params, State(0.5, 0.5), t_max=1e7, dt=1e-4)

    def test_bad_inputs_rejected(self, example_params):
        with pytest.raises(ad.DomainError):
            ad.integrate(example_params, State(1.2, 0.5))
        with pytest.raises(ad.DomainError):
            ad.integrate(example_params, State(0.5, 0.5), dt=-0.01)
        with pytest.raises(ad.DomainError):
            ad.integrate(example_params, State(0.5, 0.5), t_max=0.001, dt=0.01)

    def test_forward_invariance_and_tiny_clamp(self, rng):
        for _ in range(200):
            params = ad.sample_params(rng)
            start = State(rng.uniform(0.01, 0.99), rng.uniform(0.01, 0.99))
            traj = ad.integrate(params, start, t_max=20.0, record_every=5)
            assert np.all((traj.states >= 0.0) & (traj.states <= 1.0))
            assert traj.max_clamp < 1e-9

    def test_step_halving_changes_terminal_below_tolerance(self, example_params):
        full = ad.integrate(example_params, State(0.9, 0.4), record_every=0)
        half = ad.integrate(example_params, State(0.9, 0.4), dt=0.005, record_every=0)
        assert full.converged and half.converged
        d = math.dist((full.terminal.p, full.terminal.q), (half.terminal.p, half.terminal.q))
        assert d < 1e-6
        # mid-flight comparison exercises the integrator order directly
        full = ad.integrate(example_params, State(0.5, 0.8), t_max=30.0, record_every=0)
        half = ad.integrate(example_params, State(0.5, 0.8), t_max=30.0, dt=0.005, record_every=0)
        d = math.dist((full.terminal.p, full.terminal.q), (half.terminal.p, half.terminal.q))
        assert d < 1e-6

    def test_stable_state_recovers_from_perturbation(self, example_params, rng):
        states = ad.steady_states_open(example_params)
        for s in states:
            if s.stability != "stable":
                continue
            eq = (s.state.p, s.state.q)
            angle = rng.uniform(0.0, 2.0 * math.pi)
            start = State(
                min(max(eq[0] + 1e-3 * math.cos(angle), 0.0), 1.0),
                min(max(eq[1] + 1e-3 * math.sin(angle), 0.0), 1.0),
            )
            traj = ad.integrate(example_params, start, record_every=0)
            assert math.dist((traj.terminal.p, traj.terminal.q), eq) < 1e-6

    def test_unstable_direction_escapes(self, example_params):
        saddle = next(
            s for s in ad.steady_states_open(example_params)
            if s.case_label.startswith("I") and s.in_domain
        )
        J = ad.jacobian(example_params, saddle.state)
        eigvals, eigvecs = np.linalg.eig(J)
        v = np.real(eigvecs[:, np.argmax(np.real(eigvals))])
        start = np.array([saddle.state.p, saddle.state.q]) + 1e-3 * v / np.linalg.norm(v)
        traj = ad.integrate(example_params, State(*start), record_every=0)
        d = math.dist((traj.terminal.p, traj.terminal.q), (saddle.state.p, saddle.state.q))
        assert d > 1e-2


class TestIntegrateClosed:
    @pytest.mark.parametrize("q0", [0.1, 0.9])
    def test_global_convergence_to_interior_root(self, example_params, q0):
        traj = ad.integrate_closed(example_params, q0)
        assert traj.converged
        assert traj.converged_to is not None and traj.converged_to.case_label == "closed-q*"
        assert traj.terminal == pytest.approx(Q_STAR, abs=1e-6)

    def test_boundary_fixed_point_stays(self, example_params):
        traj = ad.integrate_closed(example_params, 0.0, t_max=5.0)
        assert traj.terminal == 0.0
        assert np.all(traj.states == 0.0)

    def test_trajectory_shape(self, example_params):
        traj = ad.integrate_closed(example_params, 0.3, t_max=10.0, record_every=100)
        assert traj.states.shape[1] == 1
        assert np.all(np.diff(traj.t) > 0.0)


class TestBasins:
    def test_example_bistable_geometry(self, example_params):
        grid = ad.basins(example_params, 21)
        labels = grid.labels
        present = {str(v) for v in labels.ravel()}
        assert {"G", "H"} <= present
        assert present <= {"G", "H", UNDECIDED}
        # the separatrix passes within one cell of the interior saddle
        best = math.inf
        R = grid.resolution
        for i in range(R):
            for j in range(R):
                here = labels[i, j]
                if here == UNDECIDED:
                    continue
                for di, dj in ((1, 0), (0, 1)):
                    ni, nj = i + di, j + dj
                    if ni >= R or nj >= R or labels[ni, nj] == UNDECIDED:
                        continue
                    if labels[ni, nj] != here:
                        mid = (
                            0.5 * (grid.p_centers[i] + grid.p_centers[ni]),
                            0.5 * (grid.q_centers[j] + grid.q_centers[nj]),
                        )
                        best = min(best, math.dist(mid, SADDLE))
        assert best <= math.sqrt(2.0) / R
        assert grid.shares["G"] + grid.shares["H"] + grid.shares.get(UNDECIDED, 0.0) == pytest.approx(1.0)
        assert {s.case_label for s in attractors(grid)} == {"G", "H"}

    def test_all_cells_decided_above_threshold(self, example_params):
        params = dataclasses.replace(example_params, A=0.15)
        grid = ad.basins(params, 9)
        decided = [str(v) for v in grid.labels.ravel() if v != UNDECIDED]
        assert decided and set(decided) == {"H"}

    def test_degenerate_single_cell(self, example_params):
        grid = ad.basins(example_params, 1)
        assert grid.labels.shape == (1, 1)
        assert grid.p_centers[0] == 0.5
        assert str(grid.labels[0, 0]) in {"G", "H"}


class TestVectorField:
    def test_corners_are_fixed_points(self, example_params):
        vf = ad.vector_field(example_params, 5)
        assert vf.num_points == 25
        for k in range(vf.num_points):
            if vf.p[k] in (0.0, 1.0) and vf.q[k] in (0.0, 1.0):
                assert vf.dp[k] == 0.0 and vf.dq[k] == 0.0

    def test_nodes_match_direct_rhs(self, example_params):
        vf = ad.vector_field(example_params, 3)
        k = list(zip(vf.p, vf.q)).index((0.5, 0.5))
        assert (vf.dp[k], vf.dq[k]) == ad.rhs_open(example_params, State(0.5, 0.5))

    def test_closed_mode_grid(self, example_params):
        vf = ad.vector_field(example_params, 6, closed=True)
        assert vf.resolution == (6,)
        assert vf.p is None and vf.dp is None
        k = list(vf.q).index(0.2)
        assert vf.dq[k] == pytest.approx(0.016, abs=1e-15)

    def test_point_count_matches_resolution(self, example_params):
        vf = ad.vector_field(example_params, (4, 7))
        assert vf.num_points == 28 == len(vf.p) == len(vf.q)
