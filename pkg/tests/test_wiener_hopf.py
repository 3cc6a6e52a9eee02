"""Factor ratios/products by three methods against closed-form oracles."""

import cmath
import math

import numpy as np
import pytest

from levycm import (
    DomainError,
    LevyAtomic,
    MethodUnsupportedError,
    PhiRep,
    PhiTable,
    eval_f,
)
from levycm.numerics import make_rng
from levycm.wiener_hopf import (
    FactorHandle,
    closed_form_factors,
    factor_pair,
    factorization_check,
    get_phi_table,
    get_spine_engine,
    wh_eval_from_phi,
    wh_product,
    wh_ratio,
)

from conftest import half_plane_samples, showcase, upper_half_samples

SYMMETRIC = LevyAtomic(a=1.0)  # f = xi^2, factors c xi on both sides
# BM with drift b and constant shift 1: quadratic factorization oracle
F_SIG = LevyAtomic(a=0.5, b=1.0, c=1.0)
R_PLUS = math.sqrt(3.0) - 1.0
R_MINUS = math.sqrt(3.0) + 1.0


class TestPhiEval:
    def test_square_plus_factor_is_identity(self):
        # phi = pi on both sides: f+ = c+ xi with c+ = sqrt(c) = 1
        handle = FactorHandle(SYMMETRIC, "plus")
        assert complex(wh_eval_from_phi(handle, 3.0 + 0.0j)).real == pytest.approx(
            3.0, rel=1e-8
        )

    def test_drift_minus_factor_constant(self):
        handle = FactorHandle(LevyAtomic(b=1.0), "minus")
        v5 = complex(handle.eval(5.0 + 0.0j)).real
        v1 = complex(handle.eval(1.0 + 0.0j)).real
        assert v5 / v1 == pytest.approx(1.0, abs=1e-9)

    def test_stable_power_ratio(self, fig_b):
        handle = FactorHandle(fig_b, "plus")
        got = complex(handle.eval(2.0 + 0.0j)).real / complex(handle.eval(1.0 + 0.0j)).real
        assert got == pytest.approx(2.0 ** (math.atan(2.0) / math.pi), rel=1e-6)

    def test_cut_rejected(self):
        handle = FactorHandle(SYMMETRIC, "plus")
        with pytest.raises(DomainError):
            handle.eval(-1.0 + 0.0j)


class TestRatio:
    @pytest.mark.parametrize("method", ["bd", "spine", "phi"])
    def test_square(self, method):
        assert wh_ratio(SYMMETRIC, method, "plus", 2.0, 1.0) == pytest.approx(
            2.0, rel=1e-8
        )

    @pytest.mark.parametrize("method,tol", [("bd", 1e-9), ("spine", 1e-8), ("phi", 1e-6)])
    def test_shifted_bm_quadratic_oracle(self, method, tol):
        want = (1.0 + R_PLUS) / (2.0 + R_PLUS)
        got = wh_ratio(F_SIG, method, "plus", 1.0, 2.0)
        assert got == pytest.approx(want, rel=tol)

    @pytest.mark.parametrize("method,tol", [("bd", 1e-9), ("spine", 1e-8), ("phi", 1e-5)])
    def test_stable_positivity_exponent(self, fig_b, method, tol):
        want = 2.0 ** (math.atan(2.0) / math.pi)
        got = wh_ratio(fig_b, method, "plus", 2.0, 1.0)
        assert got == pytest.approx(want, rel=tol)

    def test_minus_side_oracle(self):
        want = (1.0 + R_MINUS) / (2.0 + R_MINUS)
        for method in ("bd", "spine"):
            assert wh_ratio(F_SIG, method, "minus", 1.0, 2.0) == pytest.approx(
                want, rel=1e-8
            )

    def test_arguments_validated(self):
        with pytest.raises(DomainError):
            wh_ratio(SYMMETRIC, "bd", "plus", -1.0, 2.0)
        with pytest.raises(ValueError):
            wh_ratio(SYMMETRIC, "nope", "plus", 1.0, 2.0)

    def test_spine_rejects_degenerate(self):
        with pytest.raises(MethodUnsupportedError):
            wh_ratio(LevyAtomic(b=1.0), "spine", "plus", 1.0, 2.0)


class TestProduct:
    @pytest.mark.parametrize("method", ["bd", "spine"])
    def test_square(self, method):
        assert wh_product(SYMMETRIC, method, 2.0, 3.0) == pytest.approx(6.0, rel=1e-8)

    @pytest.mark.parametrize("method", ["bd", "spine"])
    def test_quadratic_oracle(self, method):
        want = 0.5 * (1.0 + R_PLUS) * (1.0 + R_MINUS)
        assert wh_product(F_SIG, method, 1.0, 1.0) == pytest.approx(want, rel=1e-8)

    def test_split_radius_free(self):
        base = wh_product(F_SIG, "spine", 1.0, 2.0)
        for R in (0.0, 0.17, 3.0):
            assert wh_product(F_SIG, "spine", 1.0, 2.0, R=R) == pytest.approx(
                base, rel=1e-9
            )

    def test_zero_split_needs_positive_origin_value(self, fig_b):
        with pytest.raises(Exception):
            get_spine_engine(fig_b).product(1.0, 1.0, 0.0)

    def test_consistency_with_direct_value(self):
        # f(xi) = f+(-i xi) f-(i xi) at xi = i x links product and eval
        plus, minus = factor_pair(F_SIG)
        x = 1.3
        prod = wh_product(F_SIG, "bd", x, x)
        direct = complex(plus.eval(x + 0.0j) * minus.eval(x + 0.0j)).real
        assert prod == pytest.approx(direct, rel=1e-5)


class TestFactorizationCheck:
    def test_bm_drift(self, fig_a):
        rng = make_rng(4)
        rep = factorization_check(fig_a, half_plane_samples(rng, 20, 0.1, 5.0), tol=1e-4)
        assert rep.passed, rep.failures()

    def test_square_algebraic_identity(self):
        # (1+i)^2 = (-i(1+i)) (i(1+i)) exactly; the table carries phi = pi
        plus, minus = factor_pair(SYMMETRIC)
        xi = 1.0 + 1.0j
        lhs = eval_f(SYMMETRIC, xi)
        rhs = plus.eval(-1j * xi) * minus.eval(1j * xi)
        assert abs(lhs - rhs) / abs(lhs) < 1e-12

    def test_tempered_stable(self, fig_c):
        rng = make_rng(4)
        rep = factorization_check(fig_c, half_plane_samples(rng, 20, 0.1, 5.0), tol=1e-3)
        assert rep.passed, rep.failures()

    def test_samples_validated(self, fig_a):
        with pytest.raises(DomainError):
            factorization_check(fig_a, [-1.0 + 0.0j])


class TestClosedForms:
    def test_bm_plus_factor(self):
        assert closed_form_factors("bm_drift", "plus", 2.0, b=0.0, sigma=0.0) == (
            pytest.approx(math.sqrt(0.5) * 2.0)
        )

    def test_bm_with_drift(self):
        got = closed_form_factors("bm_drift", "plus", 1.0, b=1.0, sigma=1.0)
        assert got == pytest.approx(math.sqrt(0.5) * (1.0 + R_PLUS))
        got = closed_form_factors("bm_drift", "minus", 1.0, b=1.0, sigma=1.0)
        assert got == pytest.approx(math.sqrt(0.5) * (1.0 + R_MINUS))

    def test_stable_power(self):
        r = closed_form_factors("stable", "plus", 4.0, c=1.0, alpha=1.2)
        r /= closed_form_factors("stable", "plus", 1.0, c=1.0, alpha=1.2)
        assert r == pytest.approx(4.0**0.6)

    def test_stable_positivity_parameter(self):
        # the asymmetric half-stable case in disguise
        c = cmath.rect(1.0, -math.atan(1.0 / 3.0))
        rho = 0.5 - cmath.phase(c) / (0.5 * math.pi)
        assert rho == pytest.approx(0.5 + 2.0 / math.pi * math.atan(1.0 / 3.0))
        assert rho == pytest.approx(0.704833, abs=1e-6)

    def test_inadmissible_rejected(self):
        with pytest.raises(DomainError):
            closed_form_factors("stable", "plus", 1.0, c=1j, alpha=1.8)


class TestCrossMethodInvariants:
    @pytest.mark.parametrize("letter", ["a", "b", "e"])
    def test_method_agreement(self, letter):
        spec = showcase(letter)
        rng = make_rng(ord(letter))
        for _ in range(10):
            x1 = math.exp(rng.uniform(math.log(0.3), math.log(4.0)))
            x2 = math.exp(rng.uniform(math.log(0.3), math.log(4.0)))
            side = "plus" if rng.random() < 0.5 else "minus"
            bd = wh_ratio(spec, "bd", side, x1, x2)
            assert abs(wh_ratio(spec, "spine", side, x1, x2) - bd) <= 1e-4 * abs(bd)
            assert abs(wh_ratio(spec, "phi", side, x1, x2) - bd) <= 1e-4 * abs(bd)

    def test_method_agreement_phirep(self):
        table = PhiTable((-2.0, 0.0, 3.0), (0.4 * math.pi, 0.7 * math.pi), "piecewise-constant")
        spec = PhiRep(1.3, table)
        for x1, x2 in ((2.0, 0.7), (5.0, 1.0)):
            bd = wh_ratio(spec, "bd", "plus", x1, x2)
            assert abs(wh_ratio(spec, "spine", "plus", x1, x2) - bd) <= 1e-4 * abs(bd)
            assert abs(wh_ratio(spec, "phi", "plus", x1, x2) - bd) <= 1e-4 * abs(bd)

    def test_cbf_sampling(self, fig_a):
        plus, minus = factor_pair(fig_a)
        rng = make_rng(55)
        for handle in (plus, minus):
            for z in upper_half_samples(rng, 50):
                val = complex(handle.eval(complex(z)))
                arg_h = cmath.phase(val)
                assert -1e-9 <= arg_h <= cmath.phase(complex(z)) + 1e-9

    def test_normalization_independence(self, fig_a):
        base_p, base_m = factor_pair(fig_a)
        alt_p, alt_m = factor_pair(fig_a, kappa=7.0)
        ratio0 = complex(base_p.eval(2.0 + 0j) / base_p.eval(1.0 + 0j)).real
        ratio1 = complex(alt_p.eval(2.0 + 0j) / alt_p.eval(1.0 + 0j)).real
        assert ratio0 == pytest.approx(ratio1, rel=1e-12)
        prod0 = complex(base_p.eval(2.0 + 0j) * base_m.eval(3.0 + 0j)).real
        prod1 = complex(alt_p.eval(2.0 + 0j) * alt_m.eval(3.0 + 0j)).real
        assert prod0 == pytest.approx(prod1, rel=1e-12)

    def test_symmetric_sides_coincide(self):
        for x1, x2 in ((2.0, 1.0), (0.4, 3.0)):
            p = wh_ratio(SYMMETRIC, "bd", "plus", x1, x2)
            m = wh_ratio(SYMMETRIC, "bd", "minus", x1, x2)
            assert p == pytest.approx(m, rel=1e-10)

    def test_phi_table_cached(self, fig_a):
        assert get_phi_table(fig_a) is get_phi_table(fig_a)
