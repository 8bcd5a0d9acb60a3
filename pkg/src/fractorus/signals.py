"""Built-in test signals.

Every builder returns a :class:`~fractorus.core.PeriodicSignal` whose
dechirped part (``e_alpha * f``) is the named periodic function.
"""

from __future__ import annotations

import math

import numpy as np

from .core import GridSpec, PeriodicSignal, chirp
from .errors import DimensionUnsupported
from .spectral import FracCoefficients, synthesize_grid


def constant(grid: GridSpec, value: complex = 1.0) -> PeriodicSignal:
    """Constant after dechirp: f = e_{-alpha} * value."""
    vals = np.conj(grid.chirp_samples) * complex(value)
    return PeriodicSignal(grid=grid, values=vals)


def sawtooth(grid: GridSpec, jump_value: float = 0.0) -> PeriodicSignal:
    """Chirped sawtooth: dechirped part g(x) = x on (-T/2, T/2].

    The jump sits at the node x = -T/2.  ``jump_value`` is the sample
    stored there; the default 0 is the midpoint of the one-sided limits
    -T/2 and T/2, which keeps the quadrature of odd integrands exactly
    symmetric (coefficient 0 vanishes to rounding).
    """
    if grid.dim != 1:
        raise DimensionUnsupported("sawtooth signal is one-dimensional")
    g = grid.axis_points().astype(complex)
    g[0] = complex(jump_value)
    return PeriodicSignal(grid=grid, values=np.conj(grid.chirp_samples) * g)


def sawtooth_jump_limits(grid: GridSpec) -> tuple[complex, complex]:
    """One-sided limits (right, left) of the full signal at the jump x0 = T/2."""
    T = grid.order.period
    e_neg = np.conj(chirp(T / 2.0, grid.order))
    return (complex(e_neg * (-T / 2.0)), complex(e_neg * (T / 2.0)))


def gaussian_periodized(
    grid: GridSpec, sigma: float, folds: int | None = None
) -> PeriodicSignal:
    """Dechirped part = periodization of exp(-|x|^2/(2 sigma^2))."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    T = grid.order.period
    if folds is None:
        folds = max(2, math.ceil(10.0 * sigma / T) + 1)
    ax = grid.axis_points()
    per_axis = np.zeros_like(ax)
    for k in range(-folds, folds + 1):
        per_axis += np.exp(-((ax + k * T) ** 2) / (2.0 * sigma * sigma))
    g = per_axis
    for _ in range(grid.dim - 1):
        g = np.multiply.outer(g, per_axis)
    return PeriodicSignal(grid=grid, values=np.conj(grid.chirp_samples) * g.ravel())


def random_coefficients(
    order, radius: int, dim: int = 1, seed: int = 0, scale: float = 1.0
) -> FracCoefficients:
    """Seeded complex-normal coefficient cube (band-limited test data)."""
    rng = np.random.default_rng(seed)
    shape = (2 * radius + 1,) * dim
    data = scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    return FracCoefficients(order=order, radius=radius, data=data)


def random_bandlimited(
    grid: GridSpec, degree: int, seed: int = 0, scale: float = 1.0
) -> PeriodicSignal:
    """Seeded trigonometric polynomial of the grid's order, degree <= degree."""
    coeffs = random_coefficients(grid.order, degree, grid.dim, seed, scale)
    return synthesize_grid(coeffs, grid)


def kernel_mode(grid: GridSpec, m0) -> PeriodicSignal:
    """Pure synthesis mode K_{-alpha}(m0, .) sampled on the grid."""
    order = grid.order
    m_arr = np.atleast_1d(np.asarray(m0, dtype=float))
    if m_arr.size != grid.dim:
        raise ValueError(f"mode {m0!r} has wrong dimension for n={grid.dim}")
    phases = np.exp(2j * math.pi * order.csc_a * (grid.points() @ m_arr))
    vals = (
        np.conj(order.scale_A) ** grid.dim
        * np.conj(grid.chirp_samples)
        * phases
        * np.conj(chirp(m_arr, order))
    )
    return PeriodicSignal(grid=grid, values=vals)
