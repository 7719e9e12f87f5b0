"""Utilitarian social welfare of natives and migrants, and policy verdicts.

The canonical policy comparison is between the no-assimilation
equilibrium with no allowance, (0, q*, A=0), and the full-assimilation
equilibrium at the minimal allowance that makes it the unique stable
outcome, (1, q**, A=A*).  Arbitrary (state, A) welfare is exposed
separately for exploration.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .equilibria import thresholds
from .errors import AssumptionError
from .model import State, _profile_open, _require_unit
from .params import ModelParams, require_valid

#: sign comparisons inside this band are treated as ties, not violations
SIGN_BAND = 1e-12

NO_POLICY_VERDICT = "assimilation occurs without policy"
POLICY_VERDICT = "policy evaluated at minimal allowance A*"


@dataclass(frozen=True)
class WelfareReport:
    """Welfare totals of the canonical comparison plus policy verdicts."""

    policy_needed: bool
    verdict: str
    A_star: float
    sw_natives_baseline: float | None = None
    sw_natives_policy: float | None = None
    sw_migrants_baseline: float | None = None
    sw_migrants_policy: float | None = None
    cA_threshold_rhs: float | None = None
    natives_better_off: bool | None = None
    migrants_better_off: bool | None = None
    claim2_condition_holds: bool | None = None


def sw_natives(params: ModelParams, state: State, A: float | None = None, *, force: bool = False) -> float:
    """Total native utility N*[q*(u_HS - u_LS) + u_LS] at allowance ``A``.

    ``A`` overrides the allowance in ``params`` without re-validating
    it, so out-of-range allowances can be explored deliberately.
    """
    require_valid(params, force)
    _require_unit("p", state.p)
    _require_unit("q", state.q)
    pp = params if A is None else replace(params, A=float(A))
    prof = _profile_open(pp, state.p, state.q)
    return pp.N * (state.q * (prof.u_HS - prof.u_LS) + prof.u_LS)


def sw_migrants(params: ModelParams, state: State, A: float | None = None, *, force: bool = False) -> float:
    """Total migrant utility M*[p*u_A + (1-p)*u_NA] at allowance ``A``."""
    require_valid(params, force)
    _require_unit("p", state.p)
    _require_unit("q", state.q)
    pp = params if A is None else replace(params, A=float(A))
    prof = _profile_open(pp, state.p, state.q)
    return pp.M * (state.p * prof.u_A + (1.0 - state.p) * prof.u_NA)


def policy_condition_rhs(params: ModelParams, *, force: bool = False) -> float:
    """Assimilation-cost cap below which the policy benefits natives."""
    th = thresholds(params, force=force)
    pp = params
    one_b = 1.0 - pp.beta
    extra = (
        th.q_star
        * th.q_star2
        * pp.beta
        * (pp.c_HS - one_b * pp.I_E)
        / ((1.0 + pp.m) * one_b * one_b)
    )
    return th.cA_bar + extra


def policy_verdict(params: ModelParams, *, force: bool = False) -> WelfareReport:
    """Welfare verdict for the minimal full-assimilation policy A = A*.

    When A* <= 0 no policy is needed (full assimilation is already the
    unique stable outcome at A=0) and the report carries only that
    verdict.  Otherwise the report compares both populations' welfare
    across the canonical pair and cross-checks the natives' verdict
    against the closed-form cost condition.
    """
    require_valid(params, force)
    th = thresholds(params, force=force)
    if th.A_star <= 0.0:
        return WelfareReport(policy_needed=False, verdict=NO_POLICY_VERDICT, A_star=th.A_star)

    base_state = State(0.0, th.q_star)
    policy_state = State(1.0, th.q_star2)
    swn_base = sw_natives(params, base_state, 0.0, force=force)
    swn_pol = sw_natives(params, policy_state, th.A_star, force=force)
    swm_base = sw_migrants(params, base_state, 0.0, force=force)
    swm_pol = sw_migrants(params, policy_state, th.A_star, force=force)
    rhs = policy_condition_rhs(params, force=force)

    natives_better = swn_pol > swn_base
    condition = params.c_A < rhs
    swn_diff = swn_pol - swn_base
    margin = rhs - params.c_A
    if abs(margin) > SIGN_BAND and abs(swn_diff) > SIGN_BAND and (swn_diff > 0.0) != (margin > 0.0):
        raise AssumptionError(
            "cost condition and direct welfare comparison disagree: "
            f"SW_N difference {swn_diff!r} vs condition margin {margin!r}"
        )
    return WelfareReport(
        policy_needed=True,
        verdict=POLICY_VERDICT,
        A_star=th.A_star,
        sw_natives_baseline=swn_base,
        sw_natives_policy=swn_pol,
        sw_migrants_baseline=swm_base,
        sw_migrants_policy=swm_pol,
        cA_threshold_rhs=rhs,
        natives_better_off=natives_better,
        migrants_better_off=swm_pol > swm_base,
        claim2_condition_holds=condition,
    )
