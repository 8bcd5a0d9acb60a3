"""Coefficient analysis and synthesis on the fractional torus.

``analyze`` computes truncated coefficient maps by a dechirped DFT: the
uniform rectangle rule applied to ``e_alpha*f`` turns the defining
integral into a plain DFT because ``period*csc(alpha) = sign(sin(alpha))``
makes the frequencies integer.  The rule is exact (to rounding) whenever
the dechirped signal is a trigonometric polynomial with per-axis degree
below ``M - N``.  A negative ``sin(alpha)`` flips the DFT frequency sign
and is handled purely by bin indexing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from .core import FracOrder, GridSpec, PeriodicSignal, chirp
from .errors import DimensionMismatch, GridMismatch, GridTooCoarse


def _mode_axis(radius: int) -> np.ndarray:
    return np.arange(-radius, radius + 1)


def _mode_norm_sq(radius: int, dim: int) -> np.ndarray:
    """|m|^2 over the mode cube, shape (2N+1,)*dim."""
    sq = _mode_axis(radius).astype(float) ** 2
    total = np.zeros((2 * radius + 1,) * dim)
    for axis in range(dim):
        shape = [1] * dim
        shape[axis] = 2 * radius + 1
        total = total + sq.reshape(shape)
    return total


def _mode_chirp(order: FracOrder, radius: int, dim: int) -> np.ndarray:
    """e_alpha(m) over the mode cube."""
    return np.exp(1j * math.pi * order.cot_a * _mode_norm_sq(radius, dim))


def _mode_parity(radius: int, dim: int) -> np.ndarray:
    """(-1)^(m_1+...+m_n) over the mode cube (grid offset by -period/2)."""
    par = np.where(_mode_axis(radius) % 2 == 0, 1.0, -1.0)
    total = np.ones((2 * radius + 1,) * dim)
    for axis in range(dim):
        shape = [1] * dim
        shape[axis] = 2 * radius + 1
        total = total * par.reshape(shape)
    return total


@dataclass(frozen=True)
class FracCoefficients:
    """Dense coefficient cube over ``|m_j| <= radius`` at a fixed order.

    ``data`` has shape ``(2*radius+1,)*dim`` with index offset ``+radius``
    per axis, row-major like the grids.
    """

    order: FracOrder
    radius: int
    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=complex)
        width = 2 * self.radius + 1
        if arr.ndim < 1 or any(s != width for s in arr.shape):
            raise ValueError(f"coefficient cube must have shape ({width},)*n")
        object.__setattr__(self, "data", arr)

    @property
    def dim(self) -> int:
        return self.data.ndim

    def coeff(self, m) -> complex:
        idx = np.atleast_1d(np.asarray(m, dtype=int))
        if idx.size != self.dim:
            raise DimensionMismatch(f"mode {m!r} has wrong dimension for n={self.dim}")
        if np.any(np.abs(idx) > self.radius):
            raise IndexError(f"mode {m!r} outside radius {self.radius}")
        return complex(self.data[tuple(idx + self.radius)])

    @cached_property
    def _modes_flat(self) -> np.ndarray:
        ax = _mode_axis(self.radius)
        if self.dim == 1:
            return ax.reshape(-1, 1)
        mesh = np.meshgrid(*([ax] * self.dim), indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)

    def modes_flat(self) -> np.ndarray:
        """All modes of the cube, shape (K, n) ints, row-major."""
        return self._modes_flat

    def with_data(self, data: np.ndarray) -> "FracCoefficients":
        return FracCoefficients(order=self.order, radius=self.radius, data=data)

    def sup_abs(self) -> float:
        return float(np.max(np.abs(self.data)))

    def l2_norm_sq(self) -> float:
        return float(np.sum(np.abs(self.data) ** 2))


def analyze(signal: PeriodicSignal, radius: int) -> FracCoefficients:
    """Coefficients of ``signal`` for all ``|m_j| <= radius``.

    Requires ``M >= 2*radius + 2`` so the truncation sits inside the grid
    Nyquist with headroom.

    Raises
    ------
    GridTooCoarse
        If the grid cannot resolve the requested radius.
    """
    grid = signal.grid
    order = grid.order
    n, M, N = grid.dim, grid.samples_per_axis, int(radius)
    if N < 0:
        raise ValueError("radius must be non-negative")
    if M < 2 * N + 2:
        raise GridTooCoarse(f"M={M} < 2N+2={2 * N + 2}")
    spec = np.fft.fftn(signal.dechirped().reshape(grid.shape))
    bins = (order.sign * _mode_axis(N)) % M
    data = spec[np.ix_(*([bins] * n))].astype(complex)
    data *= _mode_parity(N, n)
    data *= _mode_chirp(order, N, n)
    data *= order.scale_A**n * (order.period / M) ** n
    return FracCoefficients(order=order, radius=N, data=data)


def coefficient_single(signal: PeriodicSignal, m) -> complex:
    """One coefficient by direct quadrature (no FFT; self-check path).

    Unlike :func:`analyze` there is no truncation constraint on ``m``.
    """
    grid = signal.grid
    order = grid.order
    m_arr = np.atleast_1d(np.asarray(m, dtype=float))
    if m_arr.size != grid.dim:
        raise DimensionMismatch(f"mode {m!r} has wrong dimension for n={grid.dim}")
    phases = np.exp(-2j * math.pi * order.csc_a * (grid.points() @ m_arr))
    quad = np.sum(signal.dechirped() * phases) * grid.spacing**grid.dim
    return complex(order.scale_A**grid.dim * chirp(m_arr, order) * quad)


def synthesize(coeffs: FracCoefficients, x) -> complex:
    """Inversion series at a point: sum of coeff(m) * K_{-alpha}(m, x)."""
    order = coeffs.order
    n = coeffs.dim
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if x_arr.size != n:
        raise DimensionMismatch(f"point {x!r} has wrong dimension for n={n}")
    modes = coeffs.modes_flat()
    phases = np.exp(2j * math.pi * order.csc_a * (modes @ x_arr))
    mode_chirp = _mode_chirp(order, coeffs.radius, n).ravel()
    total = np.sum(coeffs.data.ravel() * np.conj(mode_chirp) * phases)
    scale_neg = np.conj(order.scale_A) ** n
    return complex(scale_neg * np.conj(chirp(x_arr, order)) * total)


def synthesize_grid(coeffs: FracCoefficients, grid: GridSpec) -> PeriodicSignal:
    """Inversion series sampled on a whole grid (inverse-FFT fast path)."""
    order = coeffs.order
    if grid.order.alpha != order.alpha:
        raise GridMismatch("grid order does not match coefficient order")
    n, M, N = grid.dim, grid.samples_per_axis, coeffs.radius
    if M < 2 * N + 1:
        raise GridTooCoarse(f"M={M} < 2N+1={2 * N + 1}")
    weighted = coeffs.data * np.conj(_mode_chirp(order, N, n)) * _mode_parity(N, n)
    buf = np.zeros((M,) * n, dtype=complex)
    bins = (order.sign * _mode_axis(N)) % M
    buf[np.ix_(*([bins] * n))] = weighted
    vals = np.fft.ifftn(buf).ravel() * M**n
    vals *= np.conj(order.scale_A) ** n * np.conj(grid.chirp_samples)
    return PeriodicSignal(grid=grid, values=vals)


def translate_dechirped(coeffs: FracCoefficients, y) -> FracCoefficients:
    """Coefficients after translating the dechirped signal by ``y``.

    Multiplies entry ``m`` by ``exp(-2i*pi*(m.y)*csc(alpha))``; moduli are
    unchanged.
    """
    order = coeffs.order
    y_arr = np.atleast_1d(np.asarray(y, dtype=float))
    if y_arr.size != coeffs.dim:
        raise DimensionMismatch(f"shift {y!r} has wrong dimension for n={coeffs.dim}")
    data = coeffs.data.copy()
    ax = _mode_axis(coeffs.radius).astype(float)
    for axis in range(coeffs.dim):
        factor = np.exp(-2j * math.pi * order.csc_a * ax * y_arr[axis])
        shape = [1] * coeffs.dim
        shape[axis] = ax.size
        data *= factor.reshape(shape)
    return coeffs.with_data(data)


def reflect(coeffs: FracCoefficients) -> FracCoefficients:
    """Coefficients of x -> f(-x): entry m becomes entry -m."""
    return coeffs.with_data(np.flip(coeffs.data))


def conjugate_transform(coeffs: FracCoefficients) -> FracCoefficients:
    """Coefficients of the conjugated signal, which live at order -alpha."""
    return FracCoefficients(
        order=coeffs.order.negated(), radius=coeffs.radius, data=np.conj(coeffs.data)
    )


def product_coefficients(
    f_coeffs: FracCoefficients, g_signal: PeriodicSignal, m
) -> complex:
    """Coefficient of ``e_alpha * f * g`` from f's coefficients and g samples.

    Evaluates the product formula
    ``scale_A^n * e_alpha(m)^2 * sum_j coeff_f(j) * exp(-2i*pi*(j.m)*cot)
    * F_{-alpha}(e_alpha^2 * g)(j - m)``
    with the j-sum truncated to f's stored cube.  Exact at grid level when
    the dechirped f is band-limited within the radius.
    """
    order = f_coeffs.order
    n = f_coeffs.dim
    grid = g_signal.grid
    if grid.dim != n:
        raise DimensionMismatch("signal dimension does not match coefficients")
    if grid.order.alpha != order.alpha:
        raise GridMismatch("signal order does not match coefficient order")
    m_arr = np.atleast_1d(np.asarray(m, dtype=int))
    if m_arr.size != n:
        raise DimensionMismatch(f"mode {m!r} has wrong dimension for n={n}")

    grid_neg = GridSpec(dim=n, samples_per_axis=grid.samples_per_axis, order=order.negated())
    h_sig = PeriodicSignal(grid=grid_neg, values=grid.chirp_samples**2 * g_signal.values)
    radius_h = f_coeffs.radius + int(np.max(np.abs(m_arr)))
    h_coeffs = analyze(h_sig, radius_h)

    jmodes = f_coeffs.modes_flat()
    shifted_idx = (jmodes - m_arr) + radius_h
    h_vals = h_coeffs.data[tuple(shifted_idx.T)] if n > 1 else h_coeffs.data[shifted_idx[:, 0]]
    phases = np.exp(-2j * math.pi * order.cot_a * (jmodes @ m_arr.astype(float)))
    total = np.sum(f_coeffs.data.ravel() * phases * h_vals)
    return complex(order.scale_A**n * chirp(m_arr, order) ** 2 * total)


def write_coefficients_csv(coeffs: FracCoefficients, path) -> None:
    """CSV export: columns m_1..m_n, re, im; header row; LF line endings."""
    n = coeffs.dim
    header = ",".join(f"m_{a + 1}" for a in range(n)) + ",re,im"
    lines = [header]
    ax = range(-coeffs.radius, coeffs.radius + 1)
    for idx in product(*([ax] * n)):
        c = coeffs.data[tuple(i + coeffs.radius for i in idx)]
        cols = [str(i) for i in idx] + [f"{c.real:.17g}", f"{c.imag:.17g}"]
        lines.append(",".join(cols))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
