"""Trajectory integration, convergence attribution, basins, vector fields.

The integrator is fixed-step classical RK4 (default dt=0.01, horizon
t_max=2000): the field is smooth and bounded on the unit square, so
simplicity and reproducibility win over adaptive stepping.  States are
clamped into [0, 1] after each step; the faces are invariant, so the
clamp magnitude is numerical noise and is recorded for verification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import BACKEND, kernels
from .equilibria import STABLE, SteadyState, steady_states_closed, steady_states_open
from .errors import BudgetError, DomainError
from .model import State, rhs_closed, rhs_open
from .params import ModelParams, require_valid

#: early-stop once the RHS max-norm stays below this ...
RHS_EPS = 1e-10
#: ... for this many consecutive steps
CONV_STREAK = 10
#: terminal states farther than this from every equilibrium get no attribution
MATCH_RADIUS = 1e-4
#: hard cap on requested steps per trajectory
MAX_STEPS = 10_000_000

UNDECIDED = "undecided"


@dataclass
class Trajectory:
    """Recorded samples of one integration run.

    ``states`` has one column (q) for the closed economy and two (p, q)
    for the open one; sample i is (t[i], states[i]).
    """

    t: np.ndarray
    states: np.ndarray
    terminal: State | float
    steps: int
    converged: bool
    converged_to: SteadyState | None
    max_clamp: float


@dataclass
class VectorFieldGrid:
    """Replicator rates on a rectangular grid of unit-square nodes."""

    resolution: tuple[int, ...]
    q: np.ndarray
    dq: np.ndarray
    p: np.ndarray | None = None
    dp: np.ndarray | None = None

    @property
    def num_points(self) -> int:
        return int(np.prod(self.resolution))


@dataclass
class BasinGrid:
    """Converged-attractor label for every grid cell center.

    ``labels[i, j]`` is the case label reached from the cell centered at
    (p_centers[i], q_centers[j]), or "undecided".  Cells are independent
    work items; they are always reported in (i, j) input order.
    """

    resolution: int
    p_centers: np.ndarray
    q_centers: np.ndarray
    labels: np.ndarray
    shares: dict[str, float]
    equilibria: tuple[SteadyState, ...]


def _step_budget(t_max: float, dt: float) -> int:
    if not (math.isfinite(dt) and dt > 0.0):
        raise DomainError(f"dt must be positive, got {dt!r}")
    if not (math.isfinite(t_max) and t_max > dt):
        raise DomainError(f"t_max must exceed dt, got t_max={t_max!r}, dt={dt!r}")
    n = int(round(t_max / dt))
    if n > MAX_STEPS:
        raise BudgetError(f"{n} steps requested, cap is {MAX_STEPS}")
    return n


def _nearest(states: list[SteadyState], point: tuple[float, ...]) -> SteadyState | None:
    best, best_d = None, math.inf
    for s in states:
        d = math.dist(s.coords(), point)
        if d < best_d:
            best, best_d = s, d
    return best if best_d <= MATCH_RADIUS else None


def integrate(
    params: ModelParams,
    initial: State,
    t_max: float = 2000.0,
    dt: float = 0.01,
    *,
    record_every: int = 1,
    force: bool = False,
) -> Trajectory:
    """Integrate the coevolutionary system from ``initial``.

    Early-stops once the right-hand side stays below ``RHS_EPS`` in
    max-norm for ``CONV_STREAK`` consecutive steps; the terminal state
    is then attributed to the nearest enumerated steady state within
    ``MATCH_RADIUS`` (``converged_to`` is None when none is close).
    Set ``record_every=0`` to keep only the terminal state.
    """
    require_valid(params, force)
    if not 0.0 <= initial.p <= 1.0 or not 0.0 <= initial.q <= 1.0:
        raise DomainError(f"initial state must lie in the unit square, got {initial}")
    n_max = _step_budget(t_max, dt)
    cap = n_max // record_every + 2 if record_every > 0 else 1
    t_buf = np.empty(cap)
    p_buf = np.empty(cap)
    q_buf = np.empty(cap)
    n_rec, steps, p_end, q_end, conv, max_clamp = kernels.integrate_open(
        params.I_HS, params.I_LS, params.I_A, params.I_NA, params.I_E,
        params.c_HS, params.c_A, params.beta, params.m, params.A,
        initial.p, initial.q, dt, n_max, record_every, RHS_EPS, CONV_STREAK,
        t_buf, p_buf, q_buf,
    )
    target = None
    if conv:
        in_dom = [s for s in steady_states_open(params, force=force) if s.in_domain]
        target = _nearest(in_dom, (p_end, q_end))
    states = np.column_stack([p_buf[:n_rec], q_buf[:n_rec]]) if record_every > 0 else np.empty((0, 2))
    return Trajectory(
        t=t_buf[:n_rec].copy(),
        states=states,
        terminal=State(p_end, q_end),
        steps=steps,
        converged=bool(conv),
        converged_to=target,
        max_clamp=max_clamp,
    )


def integrate_closed(
    params: ModelParams,
    q0: float,
    t_max: float = 2000.0,
    dt: float = 0.01,
    *,
    record_every: int = 1,
    force: bool = False,
) -> Trajectory:
    """Integrate the closed benchmark from high-skill fraction ``q0``."""
    require_valid(params, force)
    if not 0.0 <= q0 <= 1.0:
        raise DomainError(f"q0 must lie in [0, 1], got {q0!r}")
    n_max = _step_budget(t_max, dt)
    cap = n_max // record_every + 2 if record_every > 0 else 1
    t_buf = np.empty(cap)
    q_buf = np.empty(cap)
    n_rec, steps, q_end, conv, max_clamp = kernels.integrate_closed(
        params.I_HS, params.I_LS, params.I_E, params.c_HS, params.beta,
        q0, dt, n_max, record_every, RHS_EPS, CONV_STREAK,
        t_buf, q_buf,
    )
    target = None
    if conv:
        in_dom = [s for s in steady_states_closed(params, force=force) if s.in_domain]
        target = _nearest(in_dom, (q_end,))
    states = q_buf[:n_rec].reshape(-1, 1).copy() if record_every > 0 else np.empty((0, 1))
    return Trajectory(
        t=t_buf[:n_rec].copy(),
        states=states,
        terminal=q_end,
        steps=steps,
        converged=bool(conv),
        converged_to=target,
        max_clamp=max_clamp,
    )


def basins(
    params: ModelParams,
    resolution: int,
    t_max: float = 2000.0,
    dt: float = 0.01,
    *,
    force: bool = False,
) -> BasinGrid:
    """Label every cell of a resolution x resolution grid by its attractor.

    Cell centers are ((i+0.5)/R, (j+0.5)/R).  Runs that do not converge
    within the horizon are labeled "undecided" (counted, not fatal).
    Shares are label counts over all cells.
    """
    require_valid(params, force)
    if resolution < 1:
        raise DomainError(f"resolution must be >= 1, got {resolution!r}")
    n_max = _step_budget(t_max, dt)
    in_dom = [s for s in steady_states_open(params, force=force) if s.in_domain]
    centers = (np.arange(resolution) + 0.5) / resolution
    labels = np.full((resolution, resolution), UNDECIDED, dtype=object)
    dummy = np.empty(1)
    for i, p0 in enumerate(centers):
        for j, q0 in enumerate(centers):
            _, _, p_end, q_end, conv, _ = kernels.integrate_open(
                params.I_HS, params.I_LS, params.I_A, params.I_NA, params.I_E,
                params.c_HS, params.c_A, params.beta, params.m, params.A,
                p0, q0, dt, n_max, 0, RHS_EPS, CONV_STREAK,
                dummy, dummy, dummy,
            )
            if conv:
                target = _nearest(in_dom, (p_end, q_end))
                if target is not None:
                    labels[i, j] = target.case_label
    total = resolution * resolution
    uniq, counts = np.unique(labels.astype(str), return_counts=True)
    shares = {str(u): int(c) / total for u, c in zip(uniq, counts)}
    return BasinGrid(resolution, centers, centers.copy(), labels, shares, tuple(in_dom))


def attractors(grid: BasinGrid) -> list[SteadyState]:
    """Stable equilibria that actually captured at least one cell."""
    hit = {lab for lab in grid.shares if lab != UNDECIDED}
    return [s for s in grid.equilibria if s.case_label in hit and s.stability == STABLE]


def vector_field(
    params: ModelParams,
    resolution,
    *,
    closed: bool = False,
    force: bool = False,
) -> VectorFieldGrid:
    """Replicator rates on grid nodes spanning [0, 1] including boundaries."""
    require_valid(params, force)
    if closed:
        (r,) = (resolution,) if isinstance(resolution, int) else tuple(resolution)
        if r < 2:
            raise DomainError("closed-economy grid needs at least 2 nodes")
        nodes = np.linspace(0.0, 1.0, r)
        rates = np.array([rhs_closed(params, q) for q in nodes])
        return VectorFieldGrid(resolution=(r,), q=nodes, dq=rates)
    r_p, r_q = (resolution, resolution) if isinstance(resolution, int) else tuple(resolution)
    if r_p < 2 or r_q < 2:
        raise DomainError("vector-field grid needs at least 2 nodes per axis")
    p_nodes = np.linspace(0.0, 1.0, r_p)
    q_nodes = np.linspace(0.0, 1.0, r_q)
    p_flat = np.empty(r_p * r_q)
    q_flat = np.empty(r_p * r_q)
    dp = np.empty(r_p * r_q)
    dq = np.empty(r_p * r_q)
    k = 0
    for p0 in p_nodes:
        for q0 in q_nodes:
            rp, rq = rhs_open(params, State(p0, q0))
            p_flat[k], q_flat[k], dp[k], dq[k] = p0, q0, rp, rq
            k += 1
    return VectorFieldGrid(resolution=(r_p, r_q), q=q_flat, dq=dq, p=p_flat, dp=dp)


def backend() -> str:
    """Name of the active integration backend ("c" or "python")."""
    return BACKEND
