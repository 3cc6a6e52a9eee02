"""Quadrature, bisection and principal-branch kernels."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levycm.errors import DomainError, QuadratureError
from levycm.numerics import (
    QuadratureConfig,
    bisect_monotone,
    integrate_adaptive,
    make_rng,
    principal_log,
    richardson_zero,
)


class TestIntegrateAdaptive:
    def test_cauchy_kernel_full_line(self):
        val, err = integrate_adaptive(lambda s: 1.0 / (1.0 + s * s), (-math.inf, math.inf))
        assert abs(val - math.pi) < 1e-12
        assert abs(val - math.pi) <= 10 * err + 1e-15

    def test_half_gamma(self):
        """Integrable inverse-square-root endpoint on a half line."""
        cfg = QuadratureConfig(singular_points=(0.0,))
        val, _ = integrate_adaptive(
            lambda s: np.exp(-s) * s**-0.5, (0.0, math.inf), cfg
        )
        assert abs(val - math.sqrt(math.pi)) < 1e-12

    def test_poles_on_opposite_sides(self):
        """1/(z-i) - 1/(z+i) integrates to 2 pi i along the real line."""
        val, _ = integrate_adaptive(
            lambda z: 1.0 / (z - 1j) - 1.0 / (z + 1j), (-math.inf, math.inf)
        )
        assert abs(val - 2j * math.pi) < 1e-12

    def test_finite_interval(self):
        val, _ = integrate_adaptive(lambda s: s * s, (0.0, 2.0))
        assert abs(val - 8.0 / 3.0) < 1e-13

    def test_randomized_rationals_error_estimate(self):
        """Achieved error stays within 10x the reported estimate."""
        rng = make_rng(1234)
        for _ in range(50):
            n_terms = rng.integers(1, 4)
            cs = rng.uniform(-3.0, 3.0, n_terms)
            ps = rng.uniform(-5.0, 5.0, n_terms)
            qs = rng.uniform(0.2, 4.0, n_terms)

            def f(s, cs=cs, ps=ps, qs=qs):
                out = np.zeros_like(np.asarray(s, dtype=float))
                for c, p, q in zip(cs, ps, qs):
                    out = out + c / ((s - p) ** 2 + q * q)
                return out

            exact = float(np.sum(cs * math.pi / qs))
            val, err = integrate_adaptive(f, (-math.inf, math.inf))
            assert abs(val.real - exact) <= 10.0 * err + 1e-13
            assert abs(val.real - exact) < 1e-8 * (1.0 + abs(exact))

    def test_nonconvergence_carries_partial_value(self):
        cfg = QuadratureConfig(rel_tol=1e-15, abs_tol=0.0, max_subdivisions=3)
        with pytest.raises(QuadratureError) as exc:
            integrate_adaptive(
                lambda s: np.abs(s - 0.1234567) ** -0.5, (0.0, 1.0), cfg
            )
        assert math.isfinite(exc.value.err_estimate)
        assert abs(exc.value.value) > 0.0


class TestBisectMonotone:
    def test_linear(self):
        assert abs(bisect_monotone(lambda x: x - 1.0, 0.0, 2.0, 1e-12) - 1.0) < 1e-12

    def test_cubic_flat_root(self):
        assert abs(bisect_monotone(lambda x: x**3, -1.0, 1.0, 1e-12)) < 1e-12

    def test_constant_sign_returns_endpoints(self):
        assert bisect_monotone(lambda x: 1.0 + x * x, 0.0, 1.0) == 0.0
        assert bisect_monotone(lambda x: -1.0 - x * x, 0.0, 1.0) == 1.0

    def test_bad_interval(self):
        with pytest.raises(ValueError):
            bisect_monotone(lambda x: x, 1.0, 1.0)

    @given(st.floats(-5, 5), st.floats(0.1, 5))
    @settings(max_examples=50, deadline=None)
    def test_bracketing(self, root, width):
        got = bisect_monotone(
            lambda x: math.tanh(x - root), root - width, root + width, 1e-10
        )
        assert abs(got - root) <= 1e-9


class TestPrincipalLog:
    def test_unit(self):
        assert principal_log(1.0 + 0.0j) == 0.0

    def test_imaginary_unit(self):
        assert abs(principal_log(1j) - 0.5j * math.pi) < 1e-15

    def test_branch_continuity_from_above(self):
        val = principal_log(-1.0 + 1e-12j)
        assert abs(val.imag - math.pi) < 1e-9

    def test_cut_rejected(self):
        with pytest.raises(DomainError):
            principal_log(-2.0 + 0.0j)
        with pytest.raises(DomainError):
            principal_log(0.0j)

    @given(st.floats(-10, 10), st.floats(-10, 10))
    @settings(max_examples=100, deadline=None)
    def test_conjugation(self, re, im):
        z = complex(re, im)
        if z.imag == 0.0 and z.real <= 0.0:
            return
        assert principal_log(z.conjugate()) == complex(principal_log(z)).conjugate()

    def test_exp_roundtrip(self):
        rng = make_rng(5)
        z = rng.uniform(-3, 3, 50) + 1j * rng.uniform(-3, 3, 50)
        z = z[~((z.imag == 0) & (z.real <= 0))]
        np.testing.assert_allclose(np.exp(principal_log(z)), z, rtol=1e-14)


class TestRichardson:
    def test_exact_for_quadratics(self):
        ts = np.array([1e-2, 1e-3, 1e-4])
        ys = 3.0 + 2.0 * ts - 7.0 * ts * ts
        assert abs(richardson_zero(ts, ys) - 3.0) < 1e-12


class TestRng:
    def test_reproducible(self):
        a = make_rng(99).standard_normal(8)
        b = make_rng(99).standard_normal(8)
        np.testing.assert_array_equal(a, b)
