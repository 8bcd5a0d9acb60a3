"""Fractional convolution and Cesaro (Fejer) approximation.

The fractional convolution of ``f`` with a classical kernel ``g`` is

    (f *_a g)(x) = |csc a|^n e_{-a}(x) int e_a(y) f(y) g((x-y) csc a) dy,

discretized with the same uniform rectangle rule as the coefficient
analysis, so the quadrature and spectral routes agree to rounding on
band-limited data.  Convolutions are evaluated by honest summation of the
quadrature (difference-table + gathered matrix products), never through
the coefficient path, so the two routes stay independent oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import GridSpec, PeriodicSignal
from .errors import DimensionUnsupported, RadiusExceeded
from .kernels import fejer_nd
from .spectral import FracCoefficients, analyze, synthesize, synthesize_grid


def frac_convolve(f: PeriodicSignal, g, chunk: int = 256) -> PeriodicSignal:
    """Fractional convolution of a sampled signal with a kernel evaluator.

    Parameters
    ----------
    f : PeriodicSignal
        Samples on a uniform grid of some order.
    g : callable
        Classical kernel evaluator taking points of shape (..., n); the
        dilation ``u -> u*csc(alpha)`` is applied here, and ``x - y`` wraps
        through the kernel's own 1-periodicity.
    chunk : int
        Output rows per gathered block (memory control for n >= 2).
    """
    grid = f.grid
    order = grid.order
    n, M = grid.dim, grid.samples_per_axis
    h = grid.spacing
    weights = f.dechirped() * (h**n * abs(order.csc_a) ** n)

    # pairwise differences on the uniform grid collapse to (i-j)*h per axis
    D = 2 * M - 1
    offsets = np.arange(-(M - 1), M) * (h * order.csc_a)
    if n == 1:
        table = np.asarray(g(offsets.reshape(-1, 1)))
        idx = np.arange(M).reshape(-1, 1) - np.arange(M).reshape(1, -1) + (M - 1)
        out = table[idx] @ weights
    else:
        mesh = np.meshgrid(*([offsets] * n), indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=-1)
        table = np.asarray(g(pts))
        strides = np.array([D ** (n - 1 - a) for a in range(n)])
        out_idx = np.indices(grid.shape).reshape(n, -1).T  # (M^n, n)
        in_idx = out_idx  # same enumeration for y
        base_in = (in_idx + (M - 1)) @ strides  # offset part of i-j+(M-1)
        shift_in = in_idx @ strides
        out = np.empty(grid.size, dtype=complex)
        for start in range(0, grid.size, chunk):
            stop = min(start + chunk, grid.size)
            rows = out_idx[start:stop] @ strides
            flat = rows.reshape(-1, 1) + (base_in - 2 * shift_in).reshape(1, -1)
            out[start:stop] = table[flat] @ weights
    vals = np.conj(grid.chirp_samples) * out
    return PeriodicSignal(grid=grid, values=vals)


def fejer_weights(N: int, radius: int, dim: int) -> np.ndarray:
    """Triangular product weights prod(1 - |m_j|/(N+1)), zero beyond N."""
    ax = np.arange(-radius, radius + 1)
    w = np.clip(1.0 - np.abs(ax) / (N + 1.0), 0.0, None)
    total = np.ones((2 * radius + 1,) * dim)
    for axis in range(dim):
        shape = [1] * dim
        shape[axis] = w.size
        total = total * w.reshape(shape)
    return total


def fejer_mean_spectral(coeffs: FracCoefficients, N: int, x) -> complex:
    """Fejer (Cesaro) mean of the coefficient series at a point."""
    if N > coeffs.radius:
        raise RadiusExceeded(f"mean order N={N} exceeds stored radius {coeffs.radius}")
    weighted = coeffs.with_data(coeffs.data * fejer_weights(N, coeffs.radius, coeffs.dim))
    return synthesize(weighted, x)


def fejer_mean_grid(coeffs: FracCoefficients, N: int, grid: GridSpec) -> PeriodicSignal:
    """Fejer mean sampled on a whole grid."""
    if N > coeffs.radius:
        raise RadiusExceeded(f"mean order N={N} exceeds stored radius {coeffs.radius}")
    weighted = coeffs.with_data(coeffs.data * fejer_weights(N, coeffs.radius, coeffs.dim))
    return synthesize_grid(weighted, grid)


@dataclass(frozen=True)
class ApproxReport:
    """Approximation errors of one Fejer mean plus kernel mass leakage."""

    N: int
    lp_error: float
    sup_error: float
    mass_outside_delta: float
    delta: float

    def __post_init__(self):
        if min(self.lp_error, self.sup_error, self.mass_outside_delta, self.delta) < 0:
            raise ValueError("report fields must be non-negative")


def approx_identity_scan(
    f: PeriodicSignal, N_list, p: float = 2.0, delta: float | None = None
) -> list[ApproxReport]:
    """Errors ||f * F_N - f|| and kernel mass outside |x| >= delta, per N."""
    grid = f.grid
    order = grid.order
    if delta is None:
        delta = order.period / 8.0
    if not (0.0 < delta < order.period / 2.0):
        raise ValueError("delta must lie in (0, period/2)")
    if p != math.inf and p < 1.0:
        raise ValueError("p must be in [1, inf]")
    radius = int(max(N_list))
    coeffs = analyze(f, radius)
    pts = grid.points()
    outside = np.sqrt(np.sum(pts * pts, axis=-1)) >= delta
    cell = grid.spacing**grid.dim
    reports = []
    for N in N_list:
        mean = fejer_mean_grid(coeffs, int(N), grid)
        diff = np.abs(mean.values - f.values)
        sup_error = float(np.max(diff))
        if p == math.inf:
            lp = sup_error
        else:
            lp = float((np.sum(diff**p) * cell) ** (1.0 / p))
        kernel_vals = fejer_nd(int(N), pts[outside], order) if outside.any() else 0.0
        mass_out = float(np.sum(kernel_vals) * cell)
        reports.append(
            ApproxReport(
                N=int(N),
                lp_error=lp,
                sup_error=sup_error,
                mass_outside_delta=mass_out,
                delta=delta,
            )
        )
    return reports


def maximal_fejer(f: PeriodicSignal, N_max: int) -> PeriodicSignal:
    """Empirical maximal function: pointwise max over N <= N_max of |mean_N|."""
    if N_max < 1:
        raise ValueError("N_max must be >= 1")
    coeffs = analyze(f, N_max)
    best = np.zeros(f.grid.size)
    for N in range(N_max + 1):
        mean = fejer_mean_grid(coeffs, N, f.grid)
        best = np.maximum(best, np.abs(mean.values))
    return PeriodicSignal(grid=f.grid, values=best.astype(complex))


def jump_convergence(
    f: PeriodicSignal, x0: float, right_limit: complex, left_limit: complex, N_list
) -> list[tuple[int, float]]:
    """Deviation of Fejer means at a jump from the one-sided midpoint.

    The caller supplies the limits f(x0+) and f(x0-); the midpoint is their
    average.  One-dimensional only.
    """
    if f.grid.dim != 1:
        raise DimensionUnsupported("jump experiments are one-dimensional")
    midpoint = 0.5 * (complex(right_limit) + complex(left_limit))
    coeffs = analyze(f, int(max(N_list)))
    rows = []
    for N in N_list:
        mean = fejer_mean_spectral(coeffs, int(N), x0)
        rows.append((int(N), abs(mean - midpoint)))
    return rows


def reports_to_csv(reports, path) -> None:
    """CSV export: columns N, lp_error, sup_error, mass_outside_delta."""
    lines = ["N,lp_error,sup_error,mass_outside_delta"]
    for r in reports:
        lines.append(
            f"{r.N},{r.lp_error:.17g},{r.sup_error:.17g},{r.mass_outside_delta:.17g}"
        )
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
