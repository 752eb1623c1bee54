"""Predicted decay exponents, empirical rate fits, and the theorem suite.

The suite evaluates solution, profile, and difference norms on a dyadic
time grid, fits the solution decay rate on the trailing window, and runs
four checks per query:

  rate      fitted exponent within tolerance of the predicted one
  little_o  difference norm scaled by the predicted rate tends to zero
  window    solution / profile ratio stays in a narrow band on the tail
  zero_mass rerunning with zero-mass first-order data improves the rate

Everything is deterministic: no timestamps, no randomness, fixed row
ordering, so repeated runs of the same configuration serialize to
byte-identical reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .data import DataSpec, catalog_lookup
from .errors import DegenerateFit, DomainError
from .quadrature import NormQuery, NormResult, Target, plancherel_norm
from .spectral import ModelParams, ProfileKind, profile_kind_for

__all__ = [
    "ExponentSpec",
    "theoretical_exponent",
    "profile_decay_rate",
    "TimeGrid",
    "default_time_grid",
    "RateFit",
    "fit_rate",
    "LittleOReport",
    "little_o_diagnostic",
    "QueryRecord",
    "SuiteReport",
    "run_theorem_suite",
    "THEOREM_IDS",
]


def _frac(x) -> Fraction:
    """Exact rational from a float's shortest decimal representation.

    Parameters are interpreted at decimal face value (0.3 means 3/10),
    so predicted exponents come out as the expected small fractions.
    """
    return Fraction(str(float(x)))


@dataclass(frozen=True)
class ExponentSpec:
    """A predicted decay exponent together with the hypothesis it needs."""

    value: Fraction
    condition: str

    @property
    def as_float(self) -> float:
        return float(self.value)


def theoretical_exponent(p: ModelParams, m: float, s: float, j: int) -> ExponentSpec:
    """Predicted t-exponent of the weighted solution norm.

    ``m`` in [1, 2] is the Lebesgue exponent of the extra data
    integrability; m = 2 means plain square-integrable data and carries
    no dimension condition.  For m < 2 the dominant term requires a
    strict lower bound on n, and violating it raises DomainError.
    """
    if not 1.0 <= m <= 2.0:
        raise DomainError(f"m must lie in [1, 2], got {m}")
    if j not in (0, 1):
        raise DomainError(f"j must be 0 or 1, got {j}")
    if s < 0.0:
        raise DomainError(f"s must be nonnegative, got {s}")
    sg, d1, d2 = _frac(p.sigma), _frac(p.delta1), _frac(p.delta2)
    nf, sf, jf, mf = Fraction(p.n), _frac(s), Fraction(j), _frac(m)
    half_gap = Fraction(1, 1) / mf - Fraction(1, 2)

    if p.case in ("A1B0", "A1B1"):
        if mf < 2:
            m0 = 2 * mf / (2 - mf)
            if not nf > 2 * m0 * d1:
                raise DomainError(
                    f"dominant low-frequency term needs n > 2 m0 delta1 = {float(2 * m0 * d1)}, "
                    f"got n = {p.n}"
                )
            condition = f"n > {float(2 * m0 * d1)}"
        else:
            condition = "none (m = 2)"
        sd = sg - d1
        value = -nf / (2 * sd) * half_gap - sf / (2 * sd) - jf + d1 / sd
    else:
        if mf < 2:
            m0 = 2 * mf / (2 - mf)
            if not nf > m0 * sg:
                raise DomainError(
                    f"dominant low-frequency term needs n > m0 sigma = {float(m0 * sg)}, "
                    f"got n = {p.n}"
                )
            condition = f"n > {float(m0 * sg)}"
        else:
            condition = "none (m = 2)"
        value = -nf / (2 * d2) * half_gap - (sf + (jf - 1) * sg) / (2 * d2)
    return ExponentSpec(value, condition)


def profile_decay_rate(p: ModelParams, kind: ProfileKind, s: float) -> Fraction:
    """Exact t-exponent of the weighted norm of a single profile."""
    sg, d1, d2 = _frac(p.sigma), _frac(p.delta1), _frac(p.delta2)
    nf, sf = Fraction(p.n), _frac(s)
    if kind in (ProfileKind.DIFFUSION_J0, ProfileKind.DIFFUSION_J1):
        j = kind.derivative_order
        sd = sg - d1
        gamma = 2 * sf - 4 * d1 + 4 * j * sd + nf
        if not gamma > 0:
            raise DomainError(f"profile norm diverges at r = 0 (gamma = {float(gamma)})")
        return -nf / (4 * sd) - sf / (2 * sd) - j + d1 / sd
    if kind is ProfileKind.OSC_SIN:
        if not nf + 2 * sf > 2 * sg:
            raise DomainError(
                f"sine profile rate needs n + 2 s > 2 sigma, got {p.n} + {2 * s} <= {2 * p.sigma}"
            )
        return -nf / (4 * d2) - (sf - sg) / (2 * d2)
    return -nf / (4 * d2) - sf / (2 * d2)


@dataclass(frozen=True)
class TimeGrid:
    """Dyadic evaluation times 2^e with a trailing fit window."""

    exponents: tuple = tuple(range(6, 17))
    fit_tail: int = 6

    def __post_init__(self):
        if len(self.exponents) < 3:
            raise DomainError("time grid needs at least 3 points")
        if any(b <= a for a, b in zip(self.exponents, self.exponents[1:])):
            raise DomainError("time grid exponents must be strictly increasing")
        if not 3 <= self.fit_tail <= len(self.exponents):
            raise DomainError(
                f"fit window must cover 3..{len(self.exponents)} points, got {self.fit_tail}"
            )

    @property
    def times(self) -> tuple:
        return tuple(2.0**e for e in self.exponents)

    @property
    def tail_times(self) -> tuple:
        return self.times[-self.fit_tail :]


def default_time_grid() -> TimeGrid:
    return TimeGrid()


@dataclass(frozen=True)
class RateFit:
    rate: float
    intercept: float
    max_log_residual: float
    times: tuple


def fit_rate(times, values) -> RateFit:
    """Least-squares slope of log value against log time."""
    t = np.asarray(times, dtype=float)
    v = np.asarray(values, dtype=float)
    if t.size < 3:
        raise DegenerateFit(f"need at least 3 points to fit a rate, got {t.size}")
    if not (np.all(np.isfinite(v)) and np.all(v > 0.0)):
        raise DegenerateFit("rate fit needs positive finite norm values")
    if not np.all(np.diff(t) > 0.0):
        raise DegenerateFit("rate fit needs strictly increasing times")
    lt, lv = np.log(t), np.log(v)
    slope, intercept = np.polyfit(lt, lv, 1)
    resid = float(np.max(np.abs(lv - (slope * lt + intercept))))
    return RateFit(float(slope), float(intercept), resid, tuple(float(x) for x in t))


@dataclass(frozen=True)
class LittleOReport:
    """Difference norms scaled by the predicted main rate.

    If the profile really is the leading term, the scaled sequence must
    tend to zero; ``ratio_last_first`` compresses that into one number
    and ``monotone_tail`` checks the trailing half is nonincreasing.
    """

    scaled: tuple
    ratio_last_first: float
    monotone_tail: bool


def little_o_diagnostic(times, diff_values, rate: float) -> LittleOReport:
    t = np.asarray(times, dtype=float)
    v = np.asarray(diff_values, dtype=float)
    scaled = v * t ** (-rate)
    if scaled[0] <= 0.0:
        # difference already at zero: vacuously little-o
        return LittleOReport(tuple(float(x) for x in scaled), 0.0, True)
    tail = scaled[scaled.size // 2 :]
    mono = bool(np.all(np.diff(tail) <= 1e-9 * np.abs(tail[:-1])))
    return LittleOReport(
        tuple(float(x) for x in scaled), float(scaled[-1] / scaled[0]), mono
    )


THEOREM_IDS = ("1.1", "1.2", "1.3")

# per theorem: required (a, b), rate tolerance, little-o ratio ceiling
_THEOREM_POLICY = {
    "1.1": ((1, 0), 0.02, 0.15),
    "1.2": ((0, 1), 0.03, 0.5),
    "1.3": ((1, 1), 0.02, 0.3),
}
_WINDOW_BAND = 1.5
_ZERO_MASS_GAIN = 0.1


def _validate_theorem(p: ModelParams, theorem_id: str) -> None:
    if theorem_id not in _THEOREM_POLICY:
        raise DomainError(f"unknown theorem id {theorem_id!r}, expected one of {THEOREM_IDS}")
    ab, _, _ = _THEOREM_POLICY[theorem_id]
    if (p.a, p.b) != ab:
        raise DomainError(
            f"claim {theorem_id} applies to (a, b) = {ab}, got ({p.a}, {p.b})"
        )
    if theorem_id in ("1.1", "1.3") and not p.n > 4.0 * p.delta1:
        raise DomainError(f"claim {theorem_id} needs n > 4 delta1, got n = {p.n}")
    if theorem_id == "1.2" and not p.n > 2.0 * p.sigma:
        raise DomainError(f"claim 1.2 needs n > 2 sigma, got n = {p.n}")
    if theorem_id == "1.3" and not p.delta1 + p.delta2 > p.sigma:
        raise DomainError(
            "claim 1.3 needs delta1 + delta2 > sigma for the diffusion profile to lead"
        )


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class NormRow:
    t: float
    s: float
    j: int
    target: str
    value: float
    abs_error: float
    nodes: int
    converged: bool


@dataclass(frozen=True)
class QueryRecord:
    s: float
    j: int
    kind: ProfileKind
    theoretical: Fraction
    fitted: RateFit | None
    little_o: LittleOReport | None
    checks: tuple
    rows: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


@dataclass(frozen=True)
class SuiteReport:
    theorem_id: str
    params: ModelParams
    data0: str
    data1: str
    grid: TimeGrid
    records: tuple

    @property
    def passed(self) -> bool:
        return all(rec.passed for rec in self.records)

    @property
    def all_converged(self) -> bool:
        return all(row.converged for rec in self.records for row in rec.rows)

    def rows(self):
        out = []
        for rec in self.records:
            out.extend(rec.rows)
        return out

    def to_json_dict(self) -> dict:
        return {
            "claim": self.theorem_id,
            "params": {
                "sigma": self.params.sigma,
                "delta1": self.params.delta1,
                "delta2": self.params.delta2,
                "a": self.params.a,
                "b": self.params.b,
                "n": self.params.n,
            },
            "data0": self.data0,
            "data1": self.data1,
            "times": list(self.grid.times),
            "fit_tail": self.grid.fit_tail,
            "passed": self.passed,
            "queries": [
                {
                    "s": rec.s,
                    "j": rec.j,
                    "profile": rec.kind.value,
                    "theoretical_exponent": float(rec.theoretical),
                    "theoretical_exponent_exact": str(rec.theoretical),
                    "fitted_rate": rec.fitted.rate if rec.fitted else None,
                    "fit_residual": rec.fitted.max_log_residual if rec.fitted else None,
                    "little_o_ratio": rec.little_o.ratio_last_first if rec.little_o else None,
                    "passed": rec.passed,
                    "checks": [
                        {"name": c.name, "passed": c.passed, "detail": c.detail}
                        for c in rec.checks
                    ],
                    "norms": [
                        {
                            "t": row.t,
                            "s": row.s,
                            "j": row.j,
                            "target": row.target,
                            "value": row.value,
                            "abs_error": row.abs_error,
                            "nodes": row.nodes,
                            "converged": row.converged,
                        }
                        for row in rec.rows
                    ],
                }
                for rec in self.records
            ],
        }


def _norm_rows(p, s, j, kind, targets, data0, data1, times, tol):
    rows = []
    values = {}
    for label, target, d1 in targets:
        per_t = []
        for t in times:
            q = NormQuery(t=t, s=s, j=j, target=target, kind=kind)
            nr = plancherel_norm(p, q, data0, d1, tol=tol)
            rows.append(
                NormRow(t, s, j, label, nr.value, nr.abs_error_estimate, nr.nodes_used, nr.converged)
            )
            per_t.append(nr)
        values[label] = per_t
    return rows, values


def run_theorem_suite(
    p: ModelParams,
    theorem_id: str,
    data0: DataSpec,
    data1: DataSpec,
    queries,
    grid: TimeGrid | None = None,
    tol: float = 1e-10,
) -> SuiteReport:
    """Check one decay claim across the given (s, j) queries.

    Each query runs independently and never aborts the rest of the
    suite: hypothesis violations or degenerate fits are recorded as
    failed checks with the error message as detail.
    """
    _validate_theorem(p, theorem_id)
    grid = grid or default_time_grid()
    _, rate_tol, little_o_cap = _THEOREM_POLICY[theorem_id]
    times = grid.times
    tail = grid.fit_tail
    records = []
    for s, j in queries:
        kind = profile_kind_for(p, j)
        checks = []
        rows = ()
        fitted = None
        lo_rep = None
        theo = Fraction(0)
        try:
            theo = theoretical_exponent(p, 1.0, s, j).value
            targets = [
                ("solution", Target.SOLUTION, data1),
                ("profile", Target.PROFILE, data1),
                ("difference", Target.DIFFERENCE, data1),
            ]
            row_list, values = _norm_rows(p, s, j, kind, targets, data0, data1, times, tol)
            sol = [nr.value for nr in values["solution"]]
            prof = [nr.value for nr in values["profile"]]
            diff = [nr.value for nr in values["difference"]]

            fitted = fit_rate(times[-tail:], sol[-tail:])
            gap = abs(fitted.rate - float(theo))
            checks.append(
                CheckOutcome(
                    "rate",
                    gap <= rate_tol,
                    f"fitted {fitted.rate:.6f} vs predicted {float(theo):.6f}, "
                    f"|gap| = {gap:.4f} (tol {rate_tol})",
                )
            )

            lo_rep = little_o_diagnostic(times, diff, float(theo))
            checks.append(
                CheckOutcome(
                    "little_o",
                    lo_rep.ratio_last_first <= little_o_cap and lo_rep.monotone_tail,
                    f"scaled difference ratio {lo_rep.ratio_last_first:.4f} "
                    f"(cap {little_o_cap}), tail monotone: {lo_rep.monotone_tail}",
                )
            )

            ratios = [sv / pv for sv, pv in zip(sol[-tail:], prof[-tail:]) if pv > 0.0]
            if len(ratios) == len(sol[-tail:]) and min(ratios) > 0.0:
                band = max(ratios) / min(ratios)
                checks.append(
                    CheckOutcome(
                        "window",
                        band <= _WINDOW_BAND,
                        f"solution/profile spread {band:.4f} on the tail (cap {_WINDOW_BAND})",
                    )
                )
            else:
                checks.append(
                    CheckOutcome("window", False, "profile norm vanished on the fit window")
                )

            p1 = float(np.atleast_1d(data1.g_hat(np.array([0.0])))[0])
            if p1 == 0.0:
                checks.append(
                    CheckOutcome("zero_mass", True, "skipped: first-order data already has zero mass")
                )
                zm_rows = []
            else:
                zm = catalog_lookup("zero_mass")
                zm_rows, zm_values = _norm_rows(
                    p, s, j, kind, [("zero_mass", Target.SOLUTION, zm)], data0, zm, times, tol
                )
                zm_fit = fit_rate(times[-tail:], [nr.value for nr in zm_values["zero_mass"]][-tail:])
                gain = float(theo) - zm_fit.rate
                checks.append(
                    CheckOutcome(
                        "zero_mass",
                        gain >= _ZERO_MASS_GAIN,
                        f"zero-mass rate {zm_fit.rate:.4f} improves on {float(theo):.4f} "
                        f"by {gain:.4f} (need {_ZERO_MASS_GAIN})",
                    )
                )
            rows = tuple(row_list + zm_rows)
        except (DomainError, DegenerateFit) as exc:
            checks.append(CheckOutcome("setup", False, f"{type(exc).__name__}: {exc}"))
        records.append(
            QueryRecord(
                s=float(s),
                j=int(j),
                kind=kind,
                theoretical=theo,
                fitted=fitted,
                little_o=lo_rep,
                checks=tuple(checks),
                rows=rows,
            )
        )
    return SuiteReport(
        theorem_id=theorem_id,
        params=p,
        data0=data0.name,
        data1=data1.name,
        grid=grid,
        records=tuple(records),
    )
