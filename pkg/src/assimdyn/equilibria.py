"""Steady states, stability classification, and policy thresholds.

Every steady state of both systems has a closed form.  The open economy
has nine families: the four corners, one root on each horizontal face
(labels E and F), the interior-q states on the vertical faces (G at
p=0, H at p=1), and up to two roots of a quadratic where both payoff
gaps vanish simultaneously (labels I1, I2).  Stability is read off the
analytic Jacobian's eigenvalues, never hard-coded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AssumptionError
from .model import State, payoff_gaps
from .params import ModelParams, require_valid

#: eigenvalue real parts closer to zero than this give verdict "marginal"
STABILITY_TOL = 1e-9
#: slack of the closed-interval membership test for root coordinates
DOMAIN_SLACK = 1e-12

STABLE, UNSTABLE, MARGINAL = "stable", "unstable", "marginal"


@dataclass(frozen=True)
class SteadyState:
    """A located equilibrium with its local stability verdict.

    ``state`` is a :class:`State` for the open system and a bare float
    (the high-skill fraction) for the closed benchmark.  ``eigenvalues``
    holds one entry for the closed system, two for the open one.
    """

    state: State | float
    case_label: str
    in_domain: bool
    eigenvalues: tuple[complex, ...]
    stability: str

    def coords(self) -> tuple[float, ...]:
        if isinstance(self.state, State):
            return (self.state.p, self.state.q)
        return (self.state,)


@dataclass(frozen=True)
class Thresholds:
    """Derived allowance and composition thresholds.

    ``q_star``/``q_star2`` are the interior high-skill fractions at zero
    and full assimilation, ``p_star``/``p_star2`` the face roots of the
    migrant payoff gap at q=0 and q=1, ``A_star``/``A_star2`` the
    allowance levels at which the no-assimilation and full-assimilation
    equilibria change stability, and ``cA_bar`` the assimilation-cost
    level at which ``A_star`` reaches zero.
    """

    q_star: float
    q_star2: float
    p_star: float
    p_star2: float
    A_star: float
    A_star2: float
    cA_bar: float
    q_star_in: bool
    q_star2_in: bool
    p_star_in: bool
    p_star2_in: bool


def _interior(x: float) -> bool:
    return math.isfinite(x) and 0.0 < x < 1.0


def thresholds(params: ModelParams, *, force: bool = False) -> Thresholds:
    """Compute all closed-form thresholds for ``params``."""
    require_valid(params, force)
    pp = params
    one_b = 1.0 - pp.beta
    w = pp.beta / (1.0 + pp.m)
    d_i = pp.I_HS - pp.I_LS
    q_star = one_b * d_i / (pp.c_HS - pp.beta * d_i)
    q_star2 = one_b * d_i / (pp.c_HS - w * d_i)

    bump = pp.m / (1.0 + pp.m) * pp.A
    den_e = pp.beta * (bump + pp.I_A - pp.I_NA)
    num_e = w * (pp.I_LS - pp.I_A) + (pp.c_A - pp.A) - one_b * (pp.I_A - pp.I_NA)
    p_star = num_e / den_e if den_e != 0.0 else math.nan
    den_f = pp.beta * (bump + pp.I_A + pp.I_E - pp.I_NA)
    num_f = w * (pp.I_HS - pp.I_A) + (pp.c_A - pp.A) - one_b * (pp.I_A + pp.I_E - pp.I_NA)
    p_star2 = num_f / den_f if den_f != 0.0 else math.nan

    gap = w * d_i - one_b * pp.I_E
    A_star = pp.c_A + w * (pp.I_LS - pp.I_A) - one_b * (pp.I_A - pp.I_NA) + q_star * gap
    A_star2 = (
        pp.c_A + w * (pp.I_LS - pp.I_A) - (pp.I_A - pp.I_NA) + q_star2 * (w * d_i - pp.I_E)
    ) / (1.0 + pp.m / (1.0 + pp.m) * pp.beta)

    return Thresholds(
        q_star=q_star,
        q_star2=q_star2,
        p_star=p_star,
        p_star2=p_star2,
        A_star=A_star,
        A_star2=A_star2,
        cA_bar=pp.c_A - A_star,
        q_star_in=_interior(q_star),
        q_star2_in=_interior(q_star2),
        p_star_in=_interior(p_star),
        p_star2_in=_interior(p_star2),
    )


def jacobian(params: ModelParams, state: State, *, force: bool = False) -> np.ndarray:
    """Analytic Jacobian of the coevolutionary system at ``state``.

    Valid at any (p, q) with 1 + p*m != 0, including points outside the
    unit square (needed to classify out-of-domain roots).
    """
    require_valid(params, force)
    pp = params
    p, q = state.p, state.q
    d_i = pp.I_HS - pp.I_LS
    one_pm = 1.0 + p * pp.m
    h1, h2 = payoff_gaps(pp, p, q)
    dh1_dp = pp.beta * (pp.I_A + q * pp.I_E - pp.I_NA) + pp.m / (1.0 + pp.m) * pp.beta * pp.A
    dh1_dq = (1.0 - pp.beta) * pp.I_E + pp.beta * p * pp.I_E - pp.beta / (1.0 + pp.m) * d_i
    dh2_dp = -(1.0 / one_pm) ** 2 * pp.beta * pp.m * q * d_i
    dh2_dq = pp.beta / one_pm * d_i - pp.c_HS
    return np.array(
        [
            [(1.0 - 2.0 * p) * h1 + p * (1.0 - p) * dh1_dp, p * (1.0 - p) * dh1_dq],
            [q * (1.0 - q) * dh2_dp, (1.0 - 2.0 * q) * h2 + q * (1.0 - q) * dh2_dq],
        ]
    )


def eigenvalues_2x2(J) -> tuple[complex, complex]:
    """Eigenvalues of a real 2x2 matrix from trace and determinant."""
    tr = J[0][0] + J[1][1]
    det = J[0][0] * J[1][1] - J[0][1] * J[1][0]
    disc = tr * tr - 4.0 * det
    if disc >= 0.0:
        s = math.sqrt(disc)
        return complex((tr - s) / 2.0), complex((tr + s) / 2.0)
    s = math.sqrt(-disc)
    return complex(tr / 2.0, -s / 2.0), complex(tr / 2.0, s / 2.0)


def classify(eigenvalues, tol: float = STABILITY_TOL) -> str:
    """Stability verdict from eigenvalue real parts.

    Within ``tol`` of the imaginary axis no verdict is claimed
    ("marginal"): the allowance level at which an eigenvalue crosses
    zero is a genuine bifurcation.
    """
    re = [complex(e).real for e in eigenvalues]
    if all(r < -tol for r in re):
        return STABLE
    if any(r > tol for r in re):
        return UNSTABLE
    return MARGINAL


def case_i_coefficients(params: ModelParams, A: float | None = None) -> tuple[float, float, float]:
    """Coefficients (a, b, c) of the interior-root quadratic in p.

    Equating the two payoff-gap zero curves eliminates q and leaves
    a*p^2 + b*p + c = 0; a is structurally positive, and c vanishes
    exactly at the allowance threshold of the no-assimilation state.
    """
    pp = params
    a_pol = pp.A if A is None else float(A)
    one_b = 1.0 - pp.beta
    d_i = pp.I_HS - pp.I_LS
    w = pp.beta / (1.0 + pp.m)
    gap = w * d_i - one_b * pp.I_E
    bump = pp.I_A - pp.I_NA + pp.m / (1.0 + pp.m) * a_pol
    a = pp.beta * pp.m * (one_b * d_i * pp.I_E + pp.c_HS * bump)
    b = (
        pp.beta * one_b * d_i * pp.I_E
        + pp.beta * (pp.c_HS - pp.beta * d_i) * bump
        - one_b * pp.m * d_i * gap
        - pp.m * pp.c_HS * (w * (pp.I_LS - pp.I_A) + (pp.c_A - a_pol) - one_b * (pp.I_A - pp.I_NA))
    )
    c = (pp.c_HS - pp.beta * d_i) * (
        one_b * (pp.I_A - pp.I_NA) - w * (pp.I_LS - pp.I_A) - pp.c_A + a_pol
    ) - one_b * d_i * gap
    return a, b, c


def _solve_quadratic(a: float, b: float, c: float) -> list[float]:
    # Numerically stable form: u = -(b + sign(b)*sqrt(disc))/2, roots u/a and c/u.
    disc = b * b - 4.0 * a * c
    if disc < -1e-12:
        return []
    if disc <= 1e-12:
        return [-b / (2.0 * a)]
    s = math.sqrt(disc)
    u = -(b + math.copysign(s, b if b != 0.0 else 1.0)) / 2.0
    return sorted((u / a, c / u))


def _q_on_native_gap_curve(params: ModelParams, p: float) -> float:
    """q solving u_HS = u_LS for a given p (well-defined whenever finite)."""
    den = params.c_HS - params.beta / (1.0 + p * params.m) * (params.I_HS - params.I_LS)
    if den == 0.0:
        return math.nan
    return (1.0 - params.beta) * (params.I_HS - params.I_LS) / den


def _located(params: ModelParams, p: float, q: float, label: str) -> SteadyState:
    # out-of-square roots can be degenerate (singular comparison-group
    # weight at 1 + p*m = 0); report them unclassified rather than crash
    if not (math.isfinite(p) and math.isfinite(q)) or 1.0 + p * params.m == 0.0:
        eig = (complex(math.nan), complex(math.nan))
        return SteadyState(State(p, q), label, False, eig, MARGINAL)
    J = jacobian(params, State(p, q), force=True)
    eig = eigenvalues_2x2(J)
    in_dom = -DOMAIN_SLACK <= p <= 1.0 + DOMAIN_SLACK and -DOMAIN_SLACK <= q <= 1.0 + DOMAIN_SLACK
    return SteadyState(State(p, q), label, in_dom, eig, classify(eig))


def steady_states_open(params: ModelParams, *, force: bool = False) -> list[SteadyState]:
    """Enumerate and classify all steady states of the open economy.

    Returns the four corners, the face roots E/F when interior, the
    vertical-face states G/H, and every real root of the interior
    quadratic (flagged ``in_domain`` when it falls inside the unit
    square; out-of-square roots are reported too, flagged False).
    """
    require_valid(params, force)
    th = thresholds(params, force=force)
    out = [
        _located(params, 0.0, 0.0, "A"),
        _located(params, 0.0, 1.0, "B"),
        _located(params, 1.0, 0.0, "C"),
        _located(params, 1.0, 1.0, "D"),
    ]
    if _interior(th.p_star):
        out.append(_located(params, th.p_star, 0.0, "E"))
    if _interior(th.p_star2):
        out.append(_located(params, th.p_star2, 1.0, "F"))
    out.append(_located(params, 0.0, th.q_star, "G"))
    out.append(_located(params, 1.0, th.q_star2, "H"))

    a, b, c = case_i_coefficients(params)
    if a <= 0.0:
        raise AssumptionError(f"interior quadratic must have a > 0, got a = {a!r}")
    for i, p_bar in enumerate(_solve_quadratic(a, b, c)):
        out.append(_located(params, p_bar, _q_on_native_gap_curve(params, p_bar), f"I{i + 1}"))
    return out


def _rate_slope_closed(params: ModelParams, q: float) -> float:
    # d/dq of q(1-q)(u_HS - u_LS); the gap's own slope is constant in q
    d_i = params.I_HS - params.I_LS
    drift = params.beta * d_i - params.c_HS
    gap = (1.0 - params.beta) * d_i + q * drift
    return (1.0 - 2.0 * q) * gap + q * (1.0 - q) * drift


def steady_states_closed(params: ModelParams, *, force: bool = False) -> list[SteadyState]:
    """Steady states {0, 1, q*} of the closed benchmark with stability."""
    require_valid(params, force)
    th = thresholds(params, force=force)
    out = []
    for r, label in ((0.0, "closed-0"), (1.0, "closed-1"), (th.q_star, "closed-q*")):
        eig = (complex(_rate_slope_closed(params, r)),)
        in_dom = math.isfinite(r) and -DOMAIN_SLACK <= r <= 1.0 + DOMAIN_SLACK
        # 1-D stability: negative slope attracts, positive repels
        out.append(SteadyState(r, label, in_dom, eig, classify(eig)))
    return out


@dataclass(frozen=True)
class SweepRow:
    """Stability of the two candidate equilibria at one allowance level."""

    A: float
    no_assim_stable: bool
    full_assim_stable: bool
    regime: str


REGIME_NO_ASSIM = "only-no-assim"
REGIME_BISTABLE = "bistable"
REGIME_FULL_ASSIM = "only-full-assim"
REGIME_NONE = "none-stable"


def stability_sweep(params: ModelParams, a_values, *, force: bool = False) -> list[SweepRow]:
    """Classify (0, q*) and (1, q**) for each allowance in ``a_values``."""
    rows = []
    for a_val in a_values:
        pr = params.with_allowance(float(a_val))
        require_valid(pr, force)
        th = thresholds(pr, force=force)
        no_assim = _located(pr, 0.0, th.q_star, "G").stability == STABLE
        full_assim = _located(pr, 1.0, th.q_star2, "H").stability == STABLE
        if no_assim and full_assim:
            regime = REGIME_BISTABLE
        elif no_assim:
            regime = REGIME_NO_ASSIM
        elif full_assim:
            regime = REGIME_FULL_ASSIM
        else:
            regime = REGIME_NONE
        rows.append(SweepRow(float(a_val), no_assim, full_assim, regime))
    return rows
