import math

import numpy as np
import pytest

from fractorus import (
    DimensionUnsupported,
    RadiusExceeded,
    analyze,
    approx_identity_scan,
    fejer_mean_grid,
    fejer_mean_spectral,
    frac_convolve,
    frac_order_new,
    grid_spec,
    jump_convergence,
    kernel_K,
    maximal_fejer,
    synthesize_grid,
)
from fractorus.approx import fejer_weights, reports_to_csv
from fractorus.kernels import (
    classical_dirichlet_evaluator,
    classical_fejer_evaluator,
)
from fractorus.signals import (
    constant,
    gaussian_periodized,
    random_bandlimited,
    random_coefficients,
    sawtooth,
    sawtooth_jump_limits,
)


class TestFracConvolve:
    def test_order_zero_kernel_gives_mean_mode(self, order):
        # F_0 is the constant 1; the convolution collapses to coeff(0) K_{-a}(0, x)
        grid = grid_spec(order, 128)
        f = random_bandlimited(grid, degree=6, seed=1)
        conv = frac_convolve(f, classical_fejer_evaluator(0))
        c0 = analyze(f, 6).coeff(0)
        want = np.array(
            [c0 * kernel_K(0, x, order.negated()) for x in grid.axis_points()]
        )
        assert np.max(np.abs(conv.values - want)) < 1e-12

    def test_dirichlet_kernel_gives_partial_sum(self, order):
        grid = grid_spec(order, 256)
        f = random_bandlimited(grid, degree=8, seed=2)
        co = analyze(f, 12)
        N = 10
        conv = frac_convolve(f, classical_dirichlet_evaluator(N))
        mask = np.abs(np.arange(-12, 13)) <= N
        partial = synthesize_grid(co.with_data(np.where(mask, co.data, 0.0)), grid)
        assert np.max(np.abs(conv.values - partial.values)) < 1e-8

    def test_fejer_kernel_matches_spectral_mean_1d(self, order):
        grid = grid_spec(order, 2048)
        f = random_bandlimited(grid, degree=24, seed=3)
        co = analyze(f, 48)
        for N in (0, 7, 33):
            conv = frac_convolve(f, classical_fejer_evaluator(N))
            spec = fejer_mean_grid(co, N, grid)
            assert np.max(np.abs(conv.values - spec.values)) < 1e-8

    def test_fejer_kernel_matches_spectral_mean_2d(self, order_pi6):
        grid = grid_spec(order_pi6, 64, dim=2)
        f = random_bandlimited(grid, degree=5, seed=4)
        co = analyze(f, 12)
        conv = frac_convolve(f, classical_fejer_evaluator(9))
        spec = fejer_mean_grid(co, 9, grid)
        assert np.max(np.abs(conv.values - spec.values)) < 1e-8


class TestFejerMean:
    def test_order_zero(self, order):
        co = random_coefficients(order, 5, 1, seed=5)
        x = 0.11 * order.period
        want = co.coeff(0) * kernel_K(0, x, order.negated())
        assert abs(fejer_mean_spectral(co, 0, x) - want) < 1e-13

    def test_radius_exceeded(self, order):
        co = random_coefficients(order, 3, 1, seed=6)
        with pytest.raises(RadiusExceeded):
            fejer_mean_spectral(co, 4, 0.0)

    def test_weights_cube(self):
        w = fejer_weights(2, 4, 1)
        assert w.shape == (9,)
        assert w[4] == 1.0 and w[4 + 2] == pytest.approx(1.0 / 3.0)
        assert w[0] == 0.0  # |m| = 4 beyond N = 2
        w2 = fejer_weights(1, 1, 2)
        assert w2[1, 1] == 1.0 and w2[0, 0] == pytest.approx(0.25)

    def test_bandlimited_error_bound(self, order):
        # exact finite-sum bound: sum of (1 - prod weights) |c_m| |csc|^(n/2)
        grid = grid_spec(order, 512)
        co = random_coefficients(order, 6, 1, seed=7)
        f = synthesize_grid(co, grid)
        root_csc = abs(order.csc_a) ** 0.5
        for N in (6, 12, 48):
            stored = analyze(f, max(N, 6))
            mean = fejer_mean_grid(stored, N, grid)
            err = np.max(np.abs(mean.values - f.values))
            w = fejer_weights(N, 6, 1)
            bound = np.sum((1.0 - w) * np.abs(co.data)) * root_csc
            assert err <= bound + 1e-10

    def test_convergence_on_bandlimited(self, order):
        grid = grid_spec(order, 512)
        f = random_bandlimited(grid, degree=4, seed=8)
        co = analyze(f, 200)
        errs = []
        for N in (8, 40, 200):
            mean = fejer_mean_grid(co, N, grid)
            errs.append(np.max(np.abs(mean.values - f.values)))
        assert errs[2] < errs[1] < errs[0]


class TestApproxIdentityScan:
    def test_smooth_l2_errors_decrease(self, order_pi6):
        grid = grid_spec(order_pi6, 2048)
        f = gaussian_periodized(grid, order_pi6.period / 4)
        reports = approx_identity_scan(f, [16, 64, 256], p=2.0)
        errs = [r.lp_error for r in reports]
        assert errs[2] < errs[1] < errs[0]
        assert errs[2] < 1e-3

    def test_trig_polynomial_sup_bound(self, order):
        grid = grid_spec(order, 256)
        d = 5
        co = random_coefficients(order, d, 1, seed=9)
        f = synthesize_grid(co, grid)
        root_csc = abs(order.csc_a) ** 0.5
        reports = approx_identity_scan(f, [8, 32], p=math.inf)
        for r in reports:
            bound = (1.0 - (1.0 - d / (r.N + 1.0))) * np.sum(np.abs(co.data)) * root_csc
            assert r.sup_error <= bound + 1e-10

    def test_mass_outside_delta(self, order):
        grid = grid_spec(order, 512)
        f = constant(grid)
        delta = order.period / 8
        reports = approx_identity_scan(f, [8, 64], p=2.0, delta=delta)
        for r in reports:
            assert r.mass_outside_delta <= 1.0 / (4 * delta**2 * (r.N + 1)) + 1e-10

    def test_parameter_validation(self, order):
        grid = grid_spec(order, 64)
        f = constant(grid)
        with pytest.raises(ValueError):
            approx_identity_scan(f, [4], p=0.5)
        with pytest.raises(ValueError):
            approx_identity_scan(f, [4], delta=order.period)

    def test_csv_export(self, order, tmp_path):
        grid = grid_spec(order, 128)
        reports = approx_identity_scan(constant(grid), [4, 8])
        path = tmp_path / "scan.csv"
        reports_to_csv(reports, path)
        lines = path.read_text().strip().split("\n")
        assert lines[0] == "N,lp_error,sup_error,mass_outside_delta"
        assert len(lines) == 3

    def test_weierstrass_uniform_approximation(self, order_pi6):
        # smooth periodic target: Fejer means converge uniformly
        grid = grid_spec(order_pi6, 4096)
        f = gaussian_periodized(grid, order_pi6.period / 8)
        co = analyze(f, 512)
        mean = fejer_mean_grid(co, 512, grid)
        assert np.max(np.abs(mean.values - f.values)) <= 1e-2


class TestMaximalFejer:
    def test_nonnegative_and_monotone(self, order):
        grid = grid_spec(order, 128)
        f = random_bandlimited(grid, degree=4, seed=10)
        h8 = maximal_fejer(f, 8)
        h16 = maximal_fejer(f, 16)
        assert np.min(h8.values.real) >= 0.0
        assert np.all(h16.values.real >= h8.values.real - 1e-14)

    def test_constant_dechirped(self, order):
        grid = grid_spec(order, 64)
        c = 0.8 - 0.3j
        f = constant(grid, c)
        h = maximal_fejer(f, 6)
        want = abs(analyze(f, 0).coeff(0)) * abs(order.csc_a) ** 0.5
        assert np.max(np.abs(h.values.real - want)) < 1e-12


class TestJumpConvergence:
    def test_continuous_point_degenerate_jump(self, order_pi6):
        grid = grid_spec(order_pi6, 1024)
        f = gaussian_periodized(grid, order_pi6.period / 6)
        x0 = grid.axis_points()[200]
        fx = f.values[200]
        rows = jump_convergence(f, x0, fx, fx, [4, 16, 128])
        devs = [d for _, d in rows]
        assert devs[-1] < devs[0] / 5  # roughly O(1/N) at a smooth point
        assert devs[-1] < 5e-3

    def test_sawtooth_midpoint(self, order_pi6):
        grid = grid_spec(order_pi6, 2048)
        f = sawtooth(grid)
        right, left = sawtooth_jump_limits(grid)
        rows = jump_convergence(f, 0.25, right, left, [10, 500])
        assert rows[1][1] <= 0.01

    def test_two_dimensional_rejected(self, order_pi6):
        grid = grid_spec(order_pi6, 16, dim=2)
        f = constant(grid)
        with pytest.raises(DimensionUnsupported):
            jump_convergence(f, 0.0, 0.0, 0.0, [2])


class TestEmpiricalAeConvergence:
    def test_sawtooth_fraction_below_threshold(self, order_pi6):
        grid = grid_spec(order_pi6, 2048)
        f = sawtooth(grid)
        co = analyze(f, 500)
        mean = fejer_mean_grid(co, 500, grid)
        err = np.abs(mean.values - f.values)
        M = grid.samples_per_axis
        keep = np.ones(M, dtype=bool)
        for off in range(-2, 3):  # 4-sample window centered at the jump node
            keep[off % M] = False
        assert np.mean(err[keep] > 0.01) <= 0.05
