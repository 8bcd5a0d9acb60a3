"""Spectral solutions of the heat and Dirichlet problems on the cell.

Evolution is exact per mode (no time stepping); finite differences enter
only in the independent residual verification, which differentiates the
chirped field ``e_alpha(x) * F(x, t)`` -- the object the equations govern
and the one that is genuinely periodic, so the 3-point stencil wraps
cleanly across the cell boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import GridSpec
from .errors import InsufficientTimeLevels, NegativeTime
from .kernels import heat_default_truncation, heat_evaluator, poisson_evaluator
from .spectral import FracCoefficients, _mode_norm_sq, synthesize_grid
from .approx import frac_convolve


@dataclass(frozen=True)
class Field:
    """Space-time samples of a solution, row-major space per time level."""

    grid: GridSpec
    times: tuple
    values: np.ndarray  # shape (len(times), M**n)
    k: float | None = None
    convolution_check: float | None = None

    def __post_init__(self):
        times = tuple(float(t) for t in self.times)
        if len(times) < 1 or times[0] < 0:
            raise ValueError("need times with times[0] >= 0")
        if any(t1 >= t2 for t1, t2 in zip(times, times[1:])):
            raise ValueError("times must be strictly increasing")
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (len(times), self.grid.size):
            raise ValueError(
                f"field values must have shape ({len(times)}, {self.grid.size})"
            )
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", vals)


def heat_evolve(coeffs: FracCoefficients, k: float, t: float) -> FracCoefficients:
    """Damp each mode by exp(-4 pi^2 |m|^2 csc^2 k t)."""
    if k <= 0:
        raise ValueError("diffusivity k must be positive")
    if t < 0:
        raise NegativeTime(f"evolution time must be >= 0, got {t}")
    rate = 4.0 * math.pi**2 * coeffs.order.csc_a**2 * k * t
    factors = np.exp(-rate * _mode_norm_sq(coeffs.radius, coeffs.dim))
    return coeffs.with_data(coeffs.data * factors)


def dirichlet_evolve(coeffs: FracCoefficients, t: float) -> FracCoefficients:
    """Damp each mode by exp(-2 pi |m| |csc| t), |m| Euclidean."""
    if t < 0:
        raise NegativeTime(f"evolution time must be >= 0, got {t}")
    rate = 2.0 * math.pi * abs(coeffs.order.csc_a) * t
    factors = np.exp(-rate * np.sqrt(_mode_norm_sq(coeffs.radius, coeffs.dim)))
    return coeffs.with_data(coeffs.data * factors)


def solve_field(coeffs: FracCoefficients, grid: GridSpec, times, evolver) -> Field:
    """Synthesize each evolved coefficient set onto the grid.

    ``evolver(coeffs, t)`` returns the mode-damped coefficients at time t;
    all time levels use the same synthesis code path.
    """
    levels = [synthesize_grid(evolver(coeffs, float(t)), grid).values for t in times]
    return Field(grid=grid, times=tuple(float(t) for t in times), values=np.array(levels))


def heat_solve_field(
    coeffs: FracCoefficients,
    grid: GridSpec,
    times,
    k: float,
    cross_check_index: int | None = None,
) -> Field:
    """Heat field; optionally cross-check one level against the convolution path."""
    field = solve_field(coeffs, grid, times, lambda c, t: heat_evolve(c, k, t))
    check = None
    if cross_check_index is not None:
        t = field.times[cross_check_index]
        if t <= 0:
            raise ValueError("convolution cross-check needs t > 0")
        trunc = heat_default_truncation(t, k, grid.order, grid.dim, tol=1e-14)
        initial = synthesize_grid(coeffs, grid)
        conv = frac_convolve(initial, heat_evaluator(t, k, grid.order, trunc))
        check = float(np.max(np.abs(conv.values - field.values[cross_check_index])))
    return Field(
        grid=grid, times=field.times, values=field.values, k=k, convolution_check=check
    )


def dirichlet_solve_field(
    coeffs: FracCoefficients,
    grid: GridSpec,
    times,
    cross_check_index: int | None = None,
    cross_check_trunc: int = 64,
) -> Field:
    """Dirichlet field; optionally cross-check one level via convolution."""
    field = solve_field(coeffs, grid, times, dirichlet_evolve)
    check = None
    if cross_check_index is not None:
        t = field.times[cross_check_index]
        if t <= 0:
            raise ValueError("convolution cross-check needs t > 0")
        initial = synthesize_grid(coeffs, grid)
        conv = frac_convolve(initial, poisson_evaluator(t, grid.order, cross_check_trunc))
        check = float(np.max(np.abs(conv.values - field.values[cross_check_index])))
    return Field(
        grid=grid, times=field.times, values=field.values, convolution_check=check
    )


def _periodic_laplacian(cube: np.ndarray, h: float) -> np.ndarray:
    out = np.zeros_like(cube)
    for axis in range(cube.ndim):
        out += np.roll(cube, 1, axis=axis) + np.roll(cube, -1, axis=axis) - 2.0 * cube
    return out / (h * h)


def pde_residual(field: Field, k: float | None = None) -> float:
    """Centered-difference residual of the governing equation, relative.

    ``k`` given: heat residual ``|d/dt - k Lap|``; ``k=None``: Dirichlet
    residual ``|d2/dt2 + Lap|``.  The stencils act on the chirped field at
    interior time levels; the maximum is reported relative to the field's
    sup modulus.  Requires >= 3 uniformly spaced time levels.
    """
    times = np.asarray(field.times)
    if times.size < 3:
        raise InsufficientTimeLevels("need >= 3 time levels for centered differences")
    steps = np.diff(times)
    dt = float(steps[0])
    if np.max(np.abs(steps - dt)) > 1e-9 * max(dt, 1.0):
        raise InsufficientTimeLevels("time levels must be uniformly spaced")
    grid = field.grid
    chirped = (grid.chirp_samples[None, :] * field.values).reshape(
        (times.size,) + grid.shape
    )
    h = grid.spacing
    sup = float(np.max(np.abs(field.values)))
    if sup == 0.0:
        return 0.0
    worst = 0.0
    for i in range(1, times.size - 1):
        lap = _periodic_laplacian(chirped[i], h)
        if k is not None:
            ddt = (chirped[i + 1] - chirped[i - 1]) / (2.0 * dt)
            res = ddt - k * lap
        else:
            ddtt = (chirped[i + 1] - 2.0 * chirped[i] + chirped[i - 1]) / (dt * dt)
            res = ddtt + lap
        worst = max(worst, float(np.max(np.abs(res))))
    return worst / sup


def field_manifest(field: Field, radius: int) -> dict:
    """Manifest dictionary for a field export."""
    return {
        "times": list(field.times),
        "k": field.k,
        "alpha": field.grid.order.alpha,
        "N": radius,
        "M": field.grid.samples_per_axis,
        "dim": field.grid.dim,
    }


def write_field_csv(field: Field, level: int, path) -> None:
    """One time level as CSV: columns x (or x1,x2), re, im."""
    grid = field.grid
    pts = grid.points()
    if grid.dim == 1:
        header = "x,re,im"
    else:
        header = ",".join(f"x{a + 1}" for a in range(grid.dim)) + ",re,im"
    lines = [header]
    vals = field.values[level]
    for p, v in zip(pts, vals):
        coords = ",".join(f"{c:.17g}" for c in p)
        lines.append(f"{coords},{v.real:.17g},{v.imag:.17g}")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
