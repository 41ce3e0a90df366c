import math

import numpy as np
import pytest

from hhverify import (GateError, Interval, ParamError, Params, TestFunction,
                      bound_bop_am, bound_bop_m, bound_da, bound_hh, bound_sso,
                      bound_thm11, bound_thm211, bound_thm22, corpus_by_id,
                      deviation, lemma21_residual, reflect, verify)
from hhverify.bounds import thm11_rhs

POW2 = corpus_by_id()["pow2"]
EXP = corpus_by_id()["exp"]
RECIP = corpus_by_id()["recip"]

CONST = TestFunction("const", lambda x: np.ones_like(np.asarray(x, dtype=float)),
                     lambda x: np.zeros_like(np.asarray(x, dtype=float)))


class TestDeviation:
    def test_symmetric_weights(self):
        dev = deviation(POW2, Interval(0, 1), 1.0, 1.0)
        assert math.isclose(dev.lhs_abs, 1.0 / 6.0, abs_tol=1e-12)
        assert dev.weighted_endpoint_value == 0.5

    def test_asymmetric_weights(self):
        dev = deviation(POW2, Interval(1, 2), 2.0, 1.0)
        assert math.isclose(dev.lhs_abs, 1.0 / 3.0, abs_tol=1e-12)
        assert math.isclose(dev.weighted_endpoint_value, 2.0, abs_tol=1e-15)

    def test_linear_function_equal_weights(self):
        lin = TestFunction("lin", lambda x: 3.0 * x + 1.0,
                           lambda x: 3.0 * np.ones_like(np.asarray(x, dtype=float)))
        dev = deviation(lin, Interval(0, 2), 1.0, 1.0)
        assert dev.lhs_abs <= 1e-12
        # with unequal weights the trapezoid is no longer exact for linear f
        dev2 = deviation(lin, Interval(0, 2), 3.0, 1.0)
        assert dev2.lhs_abs > 0.1

    def test_zero_weights_rejected(self):
        with pytest.raises(ParamError):
            deviation(POW2, Interval(0, 1), 0.0, 0.0)


class TestLemmaResidual:
    def test_square_symmetric(self):
        assert lemma21_residual(POW2, Interval(0, 1), 1.0, 1.0) <= 1e-10

    def test_exp_asymmetric(self):
        assert lemma21_residual(EXP, Interval(0, 1), 1.0, 3.0) <= 1e-9

    def test_constant(self):
        assert lemma21_residual(CONST, Interval(0, 1), 2.0, 5.0) <= 1e-14

    @pytest.mark.parametrize("lam,mu", [(0.0, 1.0), (1.0, 0.0), (0.5, 2.0), (5.0, 5.0)])
    def test_weight_grid(self, lam, mu):
        for fn in (POW2, EXP, RECIP):
            iv = Interval(1.0, 2.0)
            assert lemma21_residual(fn, iv, lam, mu) <= 1e-9


class TestBaselineBounds:
    def test_hh_bracket(self):
        lower, upper = bound_hh(POW2, Interval(0, 1))
        assert (lower, upper) == (0.25, 0.5)
        assert lower <= 1.0 / 3.0 <= upper

    def test_hh_recip(self):
        lower, upper = bound_hh(RECIP, Interval(1, 2))
        assert math.isclose(lower, 2.0 / 3.0)
        assert math.isclose(upper, 0.75)
        assert lower <= math.log(2.0) <= upper

    def test_hh_linear_equality(self):
        lin = TestFunction("lin", lambda x: 2.0 * x,
                           lambda x: 2.0 * np.ones_like(np.asarray(x, dtype=float)))
        lower, upper = bound_hh(lin, Interval(1, 3))
        assert lower == upper == 4.0

    def test_da(self):
        report = bound_da(POW2, Interval(0, 1))
        assert math.isclose(report.rhs, 0.25)
        assert math.isclose(report.lhs, 1.0 / 6.0, abs_tol=1e-12)
        assert report.holds

    def test_da_shifted(self):
        report = bound_da(POW2, Interval(1, 2))
        assert math.isclose(report.rhs, 0.75)
        assert math.isclose(report.lhs, 1.0 / 6.0, abs_tol=1e-12)

    def test_sso(self):
        report = bound_sso(POW2, Interval(0, 1), 1.0, 1.0)
        assert math.isclose(report.rhs, 0.5)
        assert math.isclose(report.lhs, 1.0 / 3.0, abs_tol=1e-12)
        assert report.holds

    def test_sso_shifted(self):
        report = bound_sso(POW2, Interval(1, 2), 1.0, 1.0)
        assert math.isclose(report.rhs, 2.5)
        assert math.isclose(report.lhs, 7.0 / 3.0, abs_tol=1e-12)


class TestMConvexBound:
    def test_tight_and_loose(self):
        report = bound_bop_m(POW2, Interval(1, 2), 1.0, 2.0)
        loose = (math.sqrt(6.5) + math.sqrt(12.5)) / 4.0
        tight = loose * math.sqrt(1.0 / 3.0)
        assert math.isclose(report.branches["loose"], loose, rel_tol=1e-14)
        assert math.isclose(report.rhs, tight, rel_tol=1e-14)
        assert report.rhs <= report.branches["loose"]
        assert report.holds


class TestEqualWeightPowerMeanBound:
    def test_unit_case(self):
        report = bound_bop_am(POW2, Interval(1, 2), 1.0, 1.0, 1.0)
        assert math.isclose(report.rhs, 0.75, rel_tol=1e-14)
        assert report.holds

    def test_linear_function(self):
        lin = TestFunction("lin", lambda x: 2.0 * x,
                           lambda x: 2.0 * np.ones_like(np.asarray(x, dtype=float)))
        report = bound_bop_am(lin, Interval(1, 2), 1.0, 1.0, 1.0)
        assert report.lhs <= 1e-12
        assert report.holds


class TestWeightedPowerMeanBound:
    def test_worked_value(self):
        report = bound_thm11(POW2, Interval(1, 2), Params(lam=2.0, mu=1.0))
        assert math.isclose(report.rhs, 61.0 / 81.0, abs_tol=1e-12)
        assert math.isclose(report.lhs, 1.0 / 3.0, abs_tol=1e-12)
        assert report.holds
        assert math.isclose(report.branches["branch1"], report.branches["branch2"],
                            rel_tol=1e-14)

    def test_reduces_to_equal_weight_form(self):
        r1 = bound_thm11(POW2, Interval(1, 2), Params(lam=1.0, mu=1.0))
        r2 = bound_bop_am(POW2, Interval(1, 2), 1.0, 1.0, 1.0)
        assert math.isclose(r1.rhs, r2.rhs, rel_tol=1e-12)
        assert math.isclose(r1.rhs, 0.75, rel_tol=1e-14)

    def test_reduces_to_endpoint_slope_form(self):
        r1 = bound_thm11(POW2, Interval(1, 2), Params(lam=3.0, mu=3.0))
        r2 = bound_da(POW2, Interval(1, 2))
        assert math.isclose(r1.rhs, r2.rhs, rel_tol=1e-12)
        assert math.isclose(r1.rhs, 0.75, rel_tol=1e-14)

    def test_q1_prefactor_is_one(self):
        # at q = 1 the power-mean prefactor drops out entirely
        rhs, branches = thm11_rhs(POW2, Interval(1, 2), Params(lam=2.0, mu=1.0, q=1.0))
        assert math.isclose(rhs, min(branches.values()) / 3.0, rel_tol=1e-15)


class TestHoelderSplitBound:
    def test_symmetric_weights(self):
        report = bound_thm211(POW2, Interval(1, 2), Params(q=2.0))
        expected = 0.25 * math.sqrt(1.0 / 3.0) * (math.sqrt(6.5) + math.sqrt(12.5))
        assert math.isclose(report.rhs, expected, rel_tol=1e-14)
        assert report.holds

    def test_matches_m_convex_tight_bound(self):
        r1 = bound_thm211(POW2, Interval(1, 2), Params(q=2.0))
        r2 = bound_bop_m(POW2, Interval(1, 2), 1.0, 2.0)
        assert math.isclose(r1.rhs, r2.rhs, rel_tol=1e-12)

    def test_asymmetric_weights(self):
        report = bound_thm211(POW2, Interval(1, 2), Params(lam=2.0, mu=1.0, q=2.0))
        expected = (1.0 / 9.0) * math.sqrt(1.0 / 3.0) * (
            4.0 * math.sqrt(68.0 / 9.0) + math.sqrt(122.0 / 9.0))
        assert math.isclose(report.rhs, expected, rel_tol=1e-14)

    def test_q1_rejected(self):
        with pytest.raises(ParamError):
            bound_thm211(POW2, Interval(1, 2), Params(q=1.0))


class TestGlobalHoelderBound:
    def test_symmetric_unit_case(self):
        report = bound_thm22(POW2, Interval(1, 2), Params(q=2.0))
        # (1/2) * (1/3)^(1/2) * (1/2)^(1/2) * sqrt(20)
        assert math.isclose(report.rhs, math.sqrt(5.0 / 6.0), abs_tol=1e-12)
        assert report.holds

    def test_equal_weight_closed_form(self):
        p = Params(lam=2.0, mu=2.0, q=2.0)
        report = bound_thm22(POW2, Interval(1, 2), p)
        conj = p.p
        expected = (0.5 * (1.0 / (conj + 1.0)) ** (1.0 / conj)
                    * (0.5) ** (1.0 / p.q) * 20.0 ** (1.0 / p.q))
        assert math.isclose(report.rhs, expected, rel_tol=1e-12)

    def test_q1_rejected(self):
        with pytest.raises(ParamError):
            bound_thm22(POW2, Interval(1, 2), Params(q=1.0))


class TestVerify:
    def test_dispatch_and_holds(self):
        report = verify(POW2, Interval(1, 2), Params(lam=2.0, mu=1.0), "thm11")
        assert report.holds
        assert math.isclose(report.slack, 61.0 / 81.0 - 1.0 / 3.0, abs_tol=1e-9)

    def test_da_dispatch(self):
        report = verify(POW2, Interval(0, 1), Params(), "da")
        assert report.holds and math.isclose(report.rhs, 0.25)

    def test_constant_function_trivially_holds(self):
        for theorem in ("da", "bop_am", "thm11"):
            report = verify(CONST, Interval(1, 2), Params(), theorem)
            assert report.lhs <= 1e-12 and report.holds

    def test_gate_failure_raises_with_witness(self):
        # e^(qx) is not (1, 0.5)-convex near 0
        with pytest.raises(GateError) as err:
            verify(EXP, Interval(0, 1), Params(m=0.5), "bop_am")
        assert err.value.witness is not None
        assert err.value.worst_violation > 1e-9

    def test_unknown_theorem(self):
        with pytest.raises(ParamError):
            verify(POW2, Interval(0, 1), Params(), "nope")

    def test_swap_symmetry_sample(self):
        iv = Interval(1.0, 2.0)
        p = Params(alpha=0.75, m=1.0, lam=2.0, mu=0.5, q=2.0)
        swapped = Params(alpha=0.75, m=1.0, lam=0.5, mu=2.0, q=2.0)
        rhs_orig, _ = thm11_rhs(POW2, iv, p)
        rhs_reflected, _ = thm11_rhs(reflect(POW2, iv), iv, swapped)
        assert math.isclose(rhs_orig, rhs_reflected, rel_tol=1e-12)
