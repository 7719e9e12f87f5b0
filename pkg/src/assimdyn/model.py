"""Incomes, relative deprivation, utilities, and replicator right-hand sides.

Two economies are covered: the closed benchmark, where only the fraction
``q`` of high-skill natives evolves, and the open economy, where ``q``
coevolves with the fraction ``p`` of assimilating migrants.  All
functions here are pure transcriptions of the model equations; states
outside the unit square are rejected, never clamped (clamping is the
integrator's concern).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .params import ModelParams


@dataclass(frozen=True)
class State:
    """A point (p, q): fractions of assimilating migrants and high-skill natives."""

    p: float
    q: float


@dataclass(frozen=True)
class UtilityProfile:
    """Utilities, relative-deprivation indices and incomes at one state.

    Migrant fields are ``None`` for the closed economy.
    """

    u_HS: float
    u_LS: float
    rd_LS: float
    i_HS: float
    i_LS: float
    u_A: float | None = None
    u_NA: float | None = None
    rd_A: float | None = None
    rd_NA: float | None = None
    i_A: float | None = None
    i_NA: float | None = None


def _require_unit(name: str, x: float) -> None:
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {x!r}")


def utilities_closed(params: ModelParams, q: float) -> UtilityProfile:
    """Utilities of high- and low-skill natives in the closed economy."""
    _require_unit("q", q)
    pp = params
    one_b = 1.0 - pp.beta
    i_hs = pp.I_HS + q * pp.I_E
    i_ls = pp.I_LS + q * pp.I_E
    rd_ls = q * (pp.I_HS - pp.I_LS)
    return UtilityProfile(
        u_HS=one_b * i_hs - q * pp.c_HS,
        u_LS=one_b * i_ls - pp.beta * rd_ls,
        rd_LS=rd_ls,
        i_HS=i_hs,
        i_LS=i_ls,
    )


def _profile_open(pp: ModelParams, p: float, q: float) -> UtilityProfile:
    # No domain checks: equilibria analysis evaluates this at roots that
    # may fall outside the unit square.
    one_b = 1.0 - pp.beta
    d_i = pp.I_HS - pp.I_LS
    tax = p * pp.m * pp.A
    i_hs = pp.I_HS + q * pp.I_E - tax
    i_ls = pp.I_LS + q * pp.I_E - tax
    i_a = pp.I_A + q * pp.I_E
    rd_ls = q / (1.0 + p * pp.m) * d_i
    rd_a = (q * d_i + (pp.I_LS - pp.I_A - tax)) / (1.0 + pp.m)
    rd_na = p * (i_a - pp.I_NA)
    return UtilityProfile(
        u_HS=one_b * i_hs - q * pp.c_HS,
        u_LS=one_b * i_ls - pp.beta * rd_ls,
        rd_LS=rd_ls,
        i_HS=i_hs,
        i_LS=i_ls,
        u_A=one_b * i_a - (pp.c_A - pp.A) - pp.beta * rd_a,
        u_NA=one_b * pp.I_NA - pp.beta * rd_na,
        rd_A=rd_a,
        rd_NA=rd_na,
        i_A=i_a,
        i_NA=pp.I_NA,
    )


def utilities_open(params: ModelParams, state: State) -> UtilityProfile:
    """Utilities of all four groups in the open economy at ``state``."""
    _require_unit("p", state.p)
    _require_unit("q", state.q)
    return _profile_open(params, state.p, state.q)


def payoff_gaps(params: ModelParams, p: float, q: float) -> tuple[float, float]:
    """(u_A - u_NA, u_HS - u_LS) without domain checks on (p, q)."""
    prof = _profile_open(params, p, q)
    return prof.u_A - prof.u_NA, prof.u_HS - prof.u_LS


def rhs_closed(params: ModelParams, q: float) -> float:
    """Replicator rate of the high-skill fraction in the closed economy."""
    _require_unit("q", q)
    prof = utilities_closed(params, q)
    return q * (1.0 - q) * (prof.u_HS - prof.u_LS)


def rhs_open(params: ModelParams, state: State) -> tuple[float, float]:
    """Replicator rates (dp/dt, dq/dt) of the coevolutionary system."""
    _require_unit("p", state.p)
    _require_unit("q", state.q)
    gap_m, gap_n = payoff_gaps(params, state.p, state.q)
    return state.p * (1.0 - state.p) * gap_m, state.q * (1.0 - state.q) * gap_n
