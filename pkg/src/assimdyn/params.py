"""Model parameters: container, admissibility checks, config loading, sampling.

Every analytical result of the model is established only under a set of
strict parameter inequalities.  ``validate`` evaluates all of them and
analysis entry points refuse parameter sets that fail (a ``force`` escape
hatch exists for exploration, results are then unsupported).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields, replace
from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import ConfigError, DomainError, InvalidParamsError

#: strict comparisons closer than this are flagged "marginal" in the report
MARGINAL_TOL = 1e-12

REQUIRED_KEYS = ("I_HS", "I_LS", "I_A", "I_NA", "I_E", "c_HS", "c_A", "beta", "m")
OPTIONAL_KEYS = {"N": 1.0, "A": 0.0}


@dataclass(frozen=True)
class ModelParams:
    """All economic parameters of the assimilation game.

    Incomes and costs are money per period.  ``beta`` weighs relative
    deprivation against absolute income, ``m`` is the migrant-to-native
    population ratio M/N, ``N`` only scales welfare totals, and ``A`` is
    the per-assimilating-migrant allowance funded by taxing natives.
    """

    I_HS: float
    I_LS: float
    I_A: float
    I_NA: float
    I_E: float
    c_HS: float
    c_A: float
    beta: float
    m: float
    N: float = 1.0
    A: float = 0.0

    def with_allowance(self, A: float) -> "ModelParams":
        return replace(self, A=float(A))

    @property
    def M(self) -> float:
        return self.m * self.N


@dataclass(frozen=True)
class Check:
    """One evaluated inequality: ``lhs op rhs`` with both sides recorded."""

    name: str
    text: str
    lhs: float
    rhs: float
    op: str
    passed: bool
    marginal: bool


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]
    overall: bool

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def _check(name: str, text: str, lhs: float, rhs: float, op: str = ">") -> Check:
    lhs, rhs = float(lhs), float(rhs)
    passed = lhs >= rhs if op == ">=" else lhs > rhs
    return Check(name, text, lhs, rhs, op, passed, abs(lhs - rhs) < MARGINAL_TOL)


def validate(params: ModelParams) -> ValidationReport:
    """Evaluate every admissibility condition of the model.

    Pure and deterministic.  Non-finite fields are an input error
    (raised), not a failed check.
    """
    for f in fields(ModelParams):
        v = getattr(params, f.name)
        if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
            raise DomainError(f"parameter {f.name} must be a finite number, got {v!r}")
    p = params
    d_i = p.I_HS - p.I_LS
    checks = (
        _check("ordering:I_HS>I_LS", "I_HS > I_LS", p.I_HS, p.I_LS),
        _check("ordering:I_LS>0", "I_LS > 0", p.I_LS, 0.0),
        _check("ordering:I_A>I_NA", "I_A > I_NA", p.I_A, p.I_NA),
        _check("ordering:I_NA>0", "I_NA > 0", p.I_NA, 0.0),
        _check("ordering:I_E>0", "I_E > 0", p.I_E, 0.0),
        _check("ordering:I_LS-m*c_A>I_A", "I_LS - m*c_A > I_A", p.I_LS - p.m * p.c_A, p.I_A),
        _check("range:beta>0", "beta > 0", p.beta, 0.0),
        _check("range:beta<1", "beta < 1", 1.0, p.beta),
        _check("range:m>0", "m > 0", p.m, 0.0),
        _check("range:m<1", "m < 1", 1.0, p.m),
        _check("range:N>0", "N > 0", p.N, 0.0),
        _check("range:A>=0", "A >= 0", p.A, 0.0, op=">="),
        _check("range:A<c_A", "A < c_A", p.c_A, p.A),
        _check("Eq5", "c_HS > I_HS - I_LS", p.c_HS, d_i),
        _check(
            "Eq8",
            "beta/(1+m)*(I_HS-I_LS) > (1-beta)*I_E",
            p.beta / (1.0 + p.m) * d_i,
            (1.0 - p.beta) * p.I_E,
        ),
        _check("Eq9", "c_HS > (1-beta)*I_E", p.c_HS, (1.0 - p.beta) * p.I_E),
        _check(
            "Eq10",
            "(1-beta)*(I_A+I_E-I_NA) > beta/(1+m)*(I_HS-I_A)",
            (1.0 - p.beta) * (p.I_A + p.I_E - p.I_NA),
            p.beta / (1.0 + p.m) * (p.I_HS - p.I_A),
        ),
    )
    return ValidationReport(checks, all(c.passed for c in checks))


@lru_cache(maxsize=512)
def _cached_report(params: ModelParams) -> ValidationReport:
    return validate(params)


def require_valid(params: ModelParams, force: bool = False) -> ValidationReport:
    """Gate used by analysis entry points; raises unless the report passes."""
    report = _cached_report(params)
    if not report.overall and not force:
        raise InvalidParamsError(report)
    return report


def load_params(source) -> ModelParams:
    """Build ``ModelParams`` from a JSON document (path, JSON text, or dict).

    Performs structural checks only (keys, types, finiteness); economic
    validation is a separate, explicit step.
    """
    if isinstance(source, dict):
        doc = source
    else:
        if isinstance(source, Path) or (isinstance(source, str) and "{" not in source):
            try:
                text = Path(source).read_text()
            except OSError as e:
                raise ConfigError(f"cannot read parameter file {source!r}: {e}") from e
        else:
            text = source
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"parameter document is not valid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise ConfigError("parameter document must be a JSON object of key-value pairs")

    known = set(REQUIRED_KEYS) | set(OPTIONAL_KEYS)
    unknown = sorted(set(doc) - known)
    if unknown:
        raise ConfigError(f"unknown parameter keys: {', '.join(unknown)}")
    missing = sorted(k for k in REQUIRED_KEYS if k not in doc)
    if missing:
        raise ConfigError(f"missing required parameter keys: {', '.join(missing)}")

    values = {}
    for key in known:
        v = doc.get(key, OPTIONAL_KEYS.get(key))
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise ConfigError(f"parameter {key} must be a number, got {v!r}")
        v = float(v)
        if not math.isfinite(v):
            raise ConfigError(f"parameter {key} must be finite, got {v!r}")
        values[key] = v
    return ModelParams(**values)


def sample_params(rng=None, max_tries: int = 10_000) -> ModelParams:
    """Draw one admissible parameter set by rejection sampling.

    Ranges bracket desk-scale incomes; the externality strength is drawn
    below the bound that keeps relative-deprivation pressure dominant, so
    only the no-free-assimilation condition (Eq10) needs rejection.
    """
    rng = np.random.default_rng(rng)
    for _ in range(max_tries):
        i_hs = rng.uniform(0.5, 2.0)
        i_ls = rng.uniform(0.0, i_hs)
        beta = rng.uniform(0.05, 0.95)
        m = rng.uniform(0.01, 0.9)
        c_a = rng.uniform(0.0, 0.5)
        d_i = i_hs - i_ls
        c_hs = rng.uniform(d_i, 3.0 * d_i)
        i_na = rng.uniform(0.0, 0.8 * i_ls)
        i_a_hi = i_ls - m * c_a
        if i_a_hi <= i_na:
            continue
        i_a = rng.uniform(i_na, i_a_hi)
        i_e = rng.uniform(0.0, beta / ((1.0 + m) * (1.0 - beta)) * d_i)
        cand = ModelParams(i_hs, i_ls, i_a, i_na, i_e, c_hs, c_a, beta, m)
        if validate(cand).overall:
            return cand
    raise RuntimeError(f"rejection sampler found no admissible parameter set in {max_tries} tries")
