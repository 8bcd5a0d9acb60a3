import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fractorus import (
    KernelSpec,
    NonPositiveTime,
    dirichlet_nd,
    fejer1_closed,
    fejer1_sum,
    fejer_nd,
    frac_order_new,
    grid_spec,
    heat_kernel,
    poisson_closed_1d,
    poisson_kernel,
)
from fractorus.kernels import (
    fejer1_sum_complex,
    heat_kernel_values,
    kernel_profile_csv,
    poisson_kernel_values,
)

ALPHAS = [math.pi / 6, math.pi / 3, 2 * math.pi / 5, -math.pi / 4]


class TestFejer1:
    def test_order_zero_is_csc(self, order):
        xs = np.linspace(-order.period / 2, order.period / 2, 9)
        assert np.allclose(fejer1_closed(0, xs, order), abs(order.csc_a), atol=1e-12)
        assert fejer1_sum(0, 0.1 * order.period, order) == pytest.approx(
            abs(order.csc_a)
        )

    def test_peak_value(self, order):
        for N in (1, 7, 32):
            assert fejer1_closed(N, 0.0, order) == pytest.approx(
                abs(order.csc_a) * (N + 1)
            )

    def test_classical_point(self):
        o = frac_order_new(math.pi / 2)
        assert fejer1_closed(1, 0.25, o) == pytest.approx(1.0)

    def test_closed_vs_sum_randomized(self):
        rng = np.random.default_rng(42)
        for alpha in ALPHAS:
            o = frac_order_new(alpha)
            xs = rng.uniform(-o.period / 2, o.period / 2, size=250)
            for N in (1, 16, 128):
                diff = np.abs(fejer1_closed(N, xs, o) - fejer1_sum(N, xs, o))
                assert np.max(diff) < 1e-10

    def test_imaginary_part_of_sum_vanishes(self, order):
        xs = np.linspace(-order.period / 2, order.period / 2, 33)
        vals = fejer1_sum_complex(17, xs, order)
        assert np.max(np.abs(np.imag(vals))) < 1e-12

    def test_removable_singularity(self, order):
        # x*csc = 1 is a zero of the denominator away from the peak
        x = 1.0 / order.csc_a
        for N in (3, 9):
            assert fejer1_closed(N, x, order) == pytest.approx(
                abs(order.csc_a) * (N + 1), rel=1e-10
            )

    @given(
        x=st.floats(-0.5, 0.5),
        N=st.integers(0, 64),
        alpha=st.sampled_from(ALPHAS),
    )
    @settings(max_examples=80, deadline=None)
    def test_identity_property(self, x, N, alpha):
        o = frac_order_new(alpha)
        assert abs(fejer1_closed(N, x, o) - fejer1_sum(N, x, o)) < 1e-9


class TestFejerNd:
    def test_peak_2d(self, order):
        for N in (0, 4):
            want = (abs(order.csc_a) * (N + 1)) ** 2
            assert fejer_nd(N, [0.0, 0.0], order) == pytest.approx(want)

    def test_nonnegative(self, order):
        rng = np.random.default_rng(7)
        pts = rng.uniform(-order.period / 2, order.period / 2, size=(200, 2))
        assert np.min(fejer_nd(13, pts, order)) >= 0.0

    @pytest.mark.parametrize("dim,M", [(1, 256), (2, 160)])
    def test_unit_mass(self, order, dim, M):
        g = grid_spec(order, M, dim=dim)
        for N in (0, 17, 64):
            mass = np.sum(fejer_nd(N, g.points(), order)) * g.spacing**dim
            assert abs(mass - 1.0) < 1e-12

    def test_mass_outside_delta_bound(self, order):
        g = grid_spec(order, 512)
        delta = order.period / 8
        pts = g.points()
        outside = np.abs(pts[:, 0]) >= delta
        for N in (8, 32, 64):
            mass = np.sum(fejer_nd(N, pts[outside], order)) * g.spacing
            assert mass <= 1.0 / (4 * delta**2 * (N + 1)) + 1e-10


class TestDirichlet:
    def test_peak(self, order):
        assert dirichlet_nd(5, 0.0, order) == pytest.approx(11.0)
        assert dirichlet_nd(0, 0.123, order) == pytest.approx(1.0)

    def test_matches_exponential_sum(self, order):
        rng = np.random.default_rng(3)
        xs = rng.uniform(-order.period / 2, order.period / 2, size=64)
        for N in (1, 9, 33):
            j = np.arange(-N, N + 1)
            brute = np.real(
                np.exp(
                    2j * np.pi * order.csc_a * np.multiply.outer(xs, j.astype(float))
                ).sum(axis=1)
            )
            got = dirichlet_nd(N, xs.reshape(-1, 1), order)
            assert np.max(np.abs(got - brute)) < 1e-10

    def test_product_2d(self, order):
        x = np.array([0.07, -0.11]) * order.period
        want = dirichlet_nd(4, x[0], order) * dirichlet_nd(4, x[1], order)
        assert dirichlet_nd(4, x, order) == pytest.approx(want)


class TestHeatKernel:
    def test_positive_time_required(self, order):
        with pytest.raises(NonPositiveTime):
            heat_kernel(0.0, 1.0, 0.1, order)
        with pytest.raises(NonPositiveTime):
            heat_kernel(1.0, -1.0, 0.1, order)

    def test_large_time_limit(self, order):
        val, tail = heat_kernel(50.0, 1.0, 0.2, order)
        assert abs(val - 1.0) <= tail + 1e-14

    def test_reflection_symmetry(self, order):
        v1, _ = heat_kernel(0.3, 0.5, 0.17, order)
        v2, _ = heat_kernel(0.3, 0.5, -0.17, order)
        assert abs(v1 - np.conj(v2)) < 1e-14
        assert abs(v1.imag) < 1e-14  # real for symmetric truncation

    def test_theta_brute_force(self):
        # alpha = pi/2, k = 1/(4 pi^2): multipliers reduce to exp(-m^2 t)
        o = frac_order_new(math.pi / 2)
        k = 1.0 / (4.0 * math.pi**2)
        x, t = 0.31, 1.0
        val, _ = heat_kernel(t, k, x, o, trunc=12)
        m = np.arange(-60, 61)
        brute = np.sum(np.exp(-(m.astype(float) ** 2) * t) * np.exp(2j * np.pi * m * x))
        assert abs(val - brute) < 1e-12

    def test_tail_estimate_conservative(self, order):
        val_small, tail = heat_kernel(0.05, 0.2, 0.1, order, trunc=3)
        val_big, _ = heat_kernel(0.05, 0.2, 0.1, order, trunc=30)
        assert abs(val_small - val_big) <= tail + 1e-14

    def test_values_vectorized(self, order):
        pts = np.linspace(-0.2, 0.2, 5)
        vals, _ = heat_kernel_values(0.1, 0.3, pts, order, trunc=6)
        singles = [heat_kernel(0.1, 0.3, x, order, trunc=6)[0] for x in pts]
        assert np.max(np.abs(vals - singles)) < 1e-14


class TestPoissonKernel:
    def test_positive_time_required(self, order):
        with pytest.raises(NonPositiveTime):
            poisson_kernel(-0.1, 0.0, order)

    def test_matches_closed_form(self, order):
        for t in (0.05, 0.2):
            for x in (0.0, 0.11, -0.31):
                val, _ = poisson_kernel(t, x, order, trunc=400)
                assert abs(val - poisson_closed_1d(t, x, order)) < 1e-12

    def test_large_time_limit(self, order):
        val, tail = poisson_kernel(40.0, 0.3, order)
        assert abs(val - 1.0) <= tail + 1e-12

    def test_positive_on_grid(self, order):
        g = grid_spec(order, 64)
        vals, _ = poisson_kernel_values(0.07, g.points(), order, trunc=500)
        assert np.min(vals.real) > 0.0
        assert np.max(np.abs(vals.imag)) < 1e-12

    def test_scaled_kernels_unit_mass(self, order):
        # |csc|^n-scaled, csc-dilated heat and Poisson kernels integrate to 1
        g = grid_spec(order, 256)
        u = g.axis_points() * order.csc_a
        csc = abs(order.csc_a)
        hv, _ = heat_kernel_values(0.02, 0.5, u, order, trunc=None)
        mass_h = np.sum(csc * hv) * g.spacing
        assert abs(mass_h - 1.0) < 1e-8
        pv, _ = poisson_kernel_values(0.05, u, order, trunc=2000)
        mass_p = np.sum(csc * pv) * g.spacing
        assert abs(mass_p - 1.0) < 1e-8


class TestKernelSpec:
    def test_validation(self, order):
        with pytest.raises(ValueError):
            KernelSpec(kind="fejer", order=order)
        with pytest.raises(NonPositiveTime):
            KernelSpec(kind="heat", order=order, t=-1.0, k=1.0)
        with pytest.raises(ValueError):
            KernelSpec(kind="nope", order=order, N=1)

    def test_evaluate_dispatch(self, order):
        spec = KernelSpec(kind="fejer", order=order, N=4)
        assert spec.evaluate(0.0) == pytest.approx(abs(order.csc_a) * 5)
        spec_p = KernelSpec(kind="poisson", order=order, t=0.1, trunc=300)
        assert abs(spec_p.evaluate(0.2) - poisson_closed_1d(0.1, 0.2, order)) < 1e-10

    def test_profile_csv(self, order, tmp_path):
        spec = KernelSpec(kind="fejer", order=order, N=3)
        path = tmp_path / "fejer.csv"
        xs = np.linspace(-order.period / 2, order.period / 2, 9)
        kernel_profile_csv(spec, xs, path)
        lines = path.read_text().strip().split("\n")
        assert lines[0] == "x,value"
        assert len(lines) == 10
        heat_path = tmp_path / "heat.csv"
        kernel_profile_csv(
            KernelSpec(kind="heat", order=order, t=0.1, k=0.3), xs, heat_path
        )
        assert heat_path.read_text().splitlines()[0] == "x,re,im"
