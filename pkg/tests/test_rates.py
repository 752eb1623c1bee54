"""Predicted exponents, rate fitting, and the claim-verification suite."""

import math
from fractions import Fraction

import numpy as np
import pytest

from sigmadecay import (
    DegenerateFit,
    DomainError,
    ModelParams,
    ProfileKind,
    THEOREM_IDS,
    TimeGrid,
    catalog_lookup,
    default_time_grid,
    fit_rate,
    little_o_diagnostic,
    profile_decay_rate,
    run_theorem_suite,
    theoretical_exponent,
)

P10 = ModelParams(sigma=2.0, delta1=0.5, delta2=1.5, a=1, b=0, n=3)
P01 = ModelParams(sigma=1.0, delta1=0.25, delta2=0.75, a=0, b=1, n=3)
P11 = ModelParams(sigma=1.0, delta1=0.3, delta2=0.8, a=1, b=1, n=3)

GAUSS = catalog_lookup("gaussian")


class TestTheoreticalExponent:
    def test_exact_fractions_for_reference_configs(self):
        assert theoretical_exponent(P10, 1.0, 0.0, 0).value == Fraction(-1, 6)
        assert theoretical_exponent(P01, 1.0, 0.0, 0).value == Fraction(-1, 3)
        assert theoretical_exponent(P01, 1.0, 0.0, 1).value == Fraction(-1)
        assert theoretical_exponent(P11, 1.0, 0.0, 0).value == Fraction(-9, 14)

    def test_weight_and_derivative_shift(self):
        # each unit of s costs 1/(2 (sigma - delta1)), each j costs 1
        base = theoretical_exponent(P10, 1.0, 0.0, 0).value
        assert theoretical_exponent(P10, 1.0, 1.0, 0).value == base - Fraction(1, 3)
        assert theoretical_exponent(P10, 1.0, 0.0, 1).value == base - 1

    def test_intermediate_integrability(self):
        p = ModelParams(sigma=1.5, delta1=0.5, delta2=1.0, a=1, b=0, n=3)
        spec = theoretical_exponent(p, 1.1, 0.0, 0)
        assert spec.value == Fraction(-5, 44)
        assert spec.condition.startswith("n >")

    def test_square_integrable_data_has_no_condition(self):
        spec = theoretical_exponent(P10, 2.0, 0.0, 0)
        assert spec.condition == "none (m = 2)"
        assert spec.value == Fraction(1, 3)  # no decay from m = 2 data alone

    def test_dimension_condition_is_strict(self):
        # m = 1.2 gives m0 = 3 and the threshold 2 m0 delta1 = 3 = n exactly
        p = ModelParams(sigma=1.5, delta1=0.5, delta2=1.0, a=1, b=0, n=3)
        with pytest.raises(DomainError):
            theoretical_exponent(p, 1.2, 0.0, 0)

    def test_dimension_condition_upper_damping(self):
        # m = 1.5 gives m0 = 6, and n = 3 < m0 sigma = 6
        with pytest.raises(DomainError):
            theoretical_exponent(P01, 1.5, 0.0, 0)

    @pytest.mark.parametrize("m", [0.5, 2.5, -1.0])
    def test_rejects_integrability_outside_range(self, m):
        with pytest.raises(DomainError):
            theoretical_exponent(P10, m, 0.0, 0)

    def test_rejects_bad_query(self):
        with pytest.raises(DomainError):
            theoretical_exponent(P10, 1.0, 0.0, 2)
        with pytest.raises(DomainError):
            theoretical_exponent(P10, 1.0, -1.0, 0)


class TestProfileDecayRate:
    def test_diffusion_rates(self):
        assert profile_decay_rate(P10, ProfileKind.DIFFUSION_J0, 0.0) == Fraction(-1, 6)
        assert profile_decay_rate(P10, ProfileKind.DIFFUSION_J1, 0.0) == Fraction(-7, 6)
        assert profile_decay_rate(P10, ProfileKind.DIFFUSION_J0, 1.0) == Fraction(-1, 2)

    def test_oscillatory_rates(self):
        assert profile_decay_rate(P01, ProfileKind.OSC_SIN, 0.0) == Fraction(-1, 3)
        assert profile_decay_rate(P01, ProfileKind.OSC_COS, 0.0) == Fraction(-1)

    def test_sine_rate_needs_supercritical_dimension(self):
        p = ModelParams(sigma=1.0, delta1=0.25, delta2=0.75, a=0, b=1, n=2)
        with pytest.raises(DomainError):
            profile_decay_rate(p, ProfileKind.OSC_SIN, 0.0)

    def test_divergent_profile_weight_rejected(self):
        p = ModelParams(sigma=2.0, delta1=0.5, delta2=1.5, a=1, b=0, n=1)
        with pytest.raises(DomainError):
            profile_decay_rate(p, ProfileKind.DIFFUSION_J0, 0.0)


class TestTimeGrid:
    def test_default_grid(self):
        g = default_time_grid()
        assert g.times[0] == 64.0
        assert g.times[-1] == 65536.0
        assert len(g.tail_times) == g.fit_tail
        assert g.tail_times == g.times[-g.fit_tail :]

    def test_validation(self):
        with pytest.raises(DomainError):
            TimeGrid(exponents=(6, 7))
        with pytest.raises(DomainError):
            TimeGrid(exponents=(6, 6, 7))
        with pytest.raises(DomainError):
            TimeGrid(exponents=(6, 7, 8, 9), fit_tail=2)
        with pytest.raises(DomainError):
            TimeGrid(exponents=(6, 7, 8, 9), fit_tail=5)


class TestFitRate:
    def test_recovers_pure_power_law(self):
        t = np.array([16.0, 64.0, 256.0, 1024.0])
        v = 3.0 * t**-0.75
        fit = fit_rate(t, v)
        assert fit.rate == pytest.approx(-0.75, abs=1e-12)
        assert math.exp(fit.intercept) == pytest.approx(3.0, rel=1e-12)
        assert fit.max_log_residual <= 1e-12

    def test_reports_residual_for_bent_data(self):
        t = np.array([1.0, 4.0, 16.0, 64.0])
        v = t**-1.0 + t**-0.25
        fit = fit_rate(t, v)
        assert fit.max_log_residual > 1e-3

    def test_degenerate_inputs(self):
        with pytest.raises(DegenerateFit):
            fit_rate([1.0, 2.0], [1.0, 0.5])
        with pytest.raises(DegenerateFit):
            fit_rate([1.0, 2.0, 4.0], [1.0, 0.0, 0.5])
        with pytest.raises(DegenerateFit):
            fit_rate([1.0, 2.0, 4.0], [1.0, np.inf, 0.5])
        with pytest.raises(DegenerateFit):
            fit_rate([1.0, 4.0, 2.0], [1.0, 0.5, 0.25])


class TestLittleODiagnostic:
    def test_detects_genuine_little_o(self):
        t = np.array([4.0, 16.0, 64.0, 256.0, 1024.0])
        diff = t**-1.5  # faster than the main rate -1
        rep = little_o_diagnostic(t, diff, -1.0)
        assert rep.ratio_last_first == pytest.approx((1024.0 / 4.0) ** -0.5, rel=1e-12)
        assert rep.monotone_tail

    def test_flags_saturating_difference(self):
        t = np.array([4.0, 16.0, 64.0, 256.0, 1024.0])
        diff = 0.7 * t**-1.0  # same order as the main rate
        rep = little_o_diagnostic(t, diff, -1.0)
        assert rep.ratio_last_first == pytest.approx(1.0, rel=1e-12)

    def test_vacuous_when_difference_vanishes(self):
        t = np.array([4.0, 16.0, 64.0])
        rep = little_o_diagnostic(t, np.zeros(3), -1.0)
        assert rep.ratio_last_first == 0.0
        assert rep.monotone_tail


class TestTheoremSuite:
    def test_theorem_ids(self):
        assert THEOREM_IDS == ("1.1", "1.2", "1.3")

    def test_claim_case_mismatch(self):
        with pytest.raises(DomainError):
            run_theorem_suite(P01, "1.1", GAUSS, GAUSS, [(0.0, 0)])
        with pytest.raises(DomainError):
            run_theorem_suite(P10, "1.2", GAUSS, GAUSS, [(0.0, 0)])

    def test_unknown_claim(self):
        with pytest.raises(DomainError):
            run_theorem_suite(P10, "9.9", GAUSS, GAUSS, [(0.0, 0)])

    def test_dimension_hypotheses(self):
        low_n = ModelParams(sigma=1.0, delta1=0.3, delta2=0.75, a=1, b=0, n=1)
        with pytest.raises(DomainError):
            run_theorem_suite(low_n, "1.1", GAUSS, GAUSS, [(0.0, 0)])
        low_n2 = ModelParams(sigma=1.0, delta1=0.25, delta2=0.75, a=0, b=1, n=2)
        with pytest.raises(DomainError):
            run_theorem_suite(low_n2, "1.2", GAUSS, GAUSS, [(0.0, 0)])

    def test_small_grid_suite_passes_and_serializes(self):
        # the little-o cap needs the full decade span; thin the interior
        grid = TimeGrid(exponents=(6, 8, 10, 12, 14, 16), fit_tail=3)
        rep = run_theorem_suite(P10, "1.1", GAUSS, GAUSS, [(0.0, 0)], grid=grid)
        assert rep.passed
        assert rep.all_converged
        rec = rep.records[0]
        assert rec.theoretical == Fraction(-1, 6)
        assert abs(rec.fitted.rate - (-1.0 / 6.0)) <= 0.02
        names = [c.name for c in rec.checks]
        assert names == ["rate", "little_o", "window", "zero_mass"]
        # solution + profile + difference + zero-mass rows for each time
        assert len(rep.rows()) == 4 * len(grid.times)
        d = rep.to_json_dict()
        assert d["claim"] == "1.1"
        assert d["passed"] is True
        assert d["queries"][0]["theoretical_exponent_exact"] == "-1/6"
        assert len(d["queries"][0]["norms"]) == len(rep.rows())

    def test_zero_mass_data_skips_gain_check(self):
        grid = TimeGrid(exponents=(6, 8, 10, 12), fit_tail=3)
        zm = catalog_lookup("zero_mass")
        rep = run_theorem_suite(P10, "1.1", GAUSS, zm, [(0.0, 0)], grid=grid)
        zm_check = [c for c in rep.records[0].checks if c.name == "zero_mass"][0]
        assert zm_check.passed
        assert "skipped" in zm_check.detail
        assert len(rep.rows()) == 3 * len(grid.times)

    def test_setup_failure_recorded_not_raised(self):
        # s < 0 violates the exponent hypothesis inside the query loop
        grid = TimeGrid(exponents=(6, 8, 10), fit_tail=3)
        rep = run_theorem_suite(P10, "1.1", GAUSS, GAUSS, [(-1.0, 0)], grid=grid)
        assert not rep.passed
        rec = rep.records[0]
        assert len(rec.checks) == 1
        assert rec.checks[0].name == "setup"
        assert not rec.checks[0].passed
