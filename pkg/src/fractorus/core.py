"""Fractional-order bookkeeping, chirp factors, kernels and uniform grids.

The fractional torus of order alpha is the cube
``[-|sin(alpha)|/2, |sin(alpha)|/2]**n`` with opposite faces identified.
Everything in this module is immutable after construction and safe to
share between workers without synchronization.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DegenerateOrder, DimensionMismatch

#: Rejection threshold on |sin(alpha)|.  Below this the cell collapses and
#: csc/cot are no longer trustworthy in double precision.
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class FracOrder:
    """An admissible angle together with its derived constants.

    ``scale_A`` is the principal square root of ``1 - i*cot(alpha)``; its
    squared modulus equals ``|csc(alpha)|``.  ``period`` is ``|sin(alpha)|``,
    the side length of the fundamental cell.
    """

    alpha: float
    sin_a: float
    csc_a: float
    cot_a: float
    scale_A: complex
    period: float

    def __post_init__(self):
        if abs(self.sin_a) <= DEGENERACY_TOL:
            raise DegenerateOrder(
                f"degenerate fractional order: |sin({self.alpha!r})| <= {DEGENERACY_TOL}"
            )

    @property
    def sign(self) -> int:
        """Sign of sin(alpha); orients the integer frequencies of the cell."""
        return 1 if self.sin_a > 0 else -1

    def negated(self) -> "FracOrder":
        """The order for -alpha (conjugate kernels live there)."""
        return frac_order_new(-self.alpha)


def frac_order_new(alpha: float) -> FracOrder:
    """Build a :class:`FracOrder`, rejecting alpha within 1e-12 of pi*Z.

    The square-root branch for ``scale_A`` is unambiguous: the real part of
    ``1 - i*cot(alpha)`` is 1 > 0, so the principal branch never crosses a
    cut for any admissible alpha.
    """
    s = math.sin(alpha)
    if abs(s) <= DEGENERACY_TOL:
        raise DegenerateOrder(
            f"degenerate fractional order: alpha={alpha!r} is within "
            f"{DEGENERACY_TOL} of a multiple of pi"
        )
    cot = math.cos(alpha) / s
    csc = 1.0 / s
    scale = cmath.sqrt(1.0 - 1j * cot)
    return FracOrder(
        alpha=alpha, sin_a=s, csc_a=csc, cot_a=cot, scale_A=scale, period=abs(s)
    )


def _sum_sq(x) -> float:
    arr = np.asarray(x, dtype=float)
    return float(np.sum(arr * arr))


def chirp(x, order: FracOrder) -> complex:
    """The unimodular factor ``exp(i*pi*|x|^2*cot(alpha))`` at a point.

    ``x`` may be a scalar or a coordinate sequence; ``|x|`` is the
    Euclidean norm.  Multiplying a signal by this factor removes the
    quadratic phase ("dechirping").
    """
    return cmath.exp(1j * math.pi * _sum_sq(x) * order.cot_a)


def chirp_array(points: np.ndarray, order: FracOrder) -> np.ndarray:
    """Vectorized :func:`chirp` over points of shape (..., n) or (...,)."""
    pts = np.asarray(points, dtype=float)
    sq = pts * pts if pts.ndim <= 1 else np.sum(pts * pts, axis=-1)
    return np.exp(1j * math.pi * order.cot_a * sq)


def kernel_K(m, x, order: FracOrder) -> complex:
    """The analysis kernel scale_A^n * e(x) * exp(-2i*pi*(m.x)*csc) * e(m).

    ``m`` is an integer vector, ``x`` a point of the same dimension.  The
    modulus is ``|csc(alpha)|**(n/2)`` for every ``(m, x)``.
    """
    m_arr = np.atleast_1d(np.asarray(m, dtype=float))
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if m_arr.shape != x_arr.shape:
        raise DimensionMismatch(
            f"kernel_K: dim(m)={m_arr.shape} does not match dim(x)={x_arr.shape}"
        )
    n = m_arr.size
    phase = -2.0 * math.pi * float(m_arr @ x_arr) * order.csc_a
    return (
        order.scale_A**n
        * chirp(x_arr, order)
        * complex(math.cos(phase), math.sin(phase))
        * chirp(m_arr, order)
    )


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid on the fractional torus.

    Per axis the nodes are ``x_j = -period/2 + j*period/M`` for
    ``j = 0..M-1`` (right endpoint excluded by periodic identification).
    """

    dim: int
    samples_per_axis: int
    order: FracOrder

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("grid dimension must be >= 1")
        if self.samples_per_axis < 2:
            raise ValueError("need at least 2 samples per axis")

    @property
    def spacing(self) -> float:
        return self.order.period / self.samples_per_axis

    @property
    def size(self) -> int:
        return self.samples_per_axis**self.dim

    @property
    def shape(self) -> tuple:
        return (self.samples_per_axis,) * self.dim

    def axis_points(self) -> np.ndarray:
        M = self.samples_per_axis
        T = self.order.period
        return -T / 2.0 + np.arange(M) * (T / M)

    @cached_property
    def _points(self) -> np.ndarray:
        ax = self.axis_points()
        if self.dim == 1:
            return ax.reshape(-1, 1)
        mesh = np.meshgrid(*([ax] * self.dim), indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)

    def points(self) -> np.ndarray:
        """All grid points, shape (M**n, n), row-major over axes."""
        return self._points

    @cached_property
    def chirp_samples(self) -> np.ndarray:
        """e_alpha(x_j) at every grid point, shape (M**n,)."""
        return chirp_array(self.points(), self.order)


def grid_spec(alpha_or_order, samples_per_axis: int, dim: int = 1) -> GridSpec:
    """Convenience constructor taking either an angle or a FracOrder."""
    order = (
        alpha_or_order
        if isinstance(alpha_or_order, FracOrder)
        else frac_order_new(float(alpha_or_order))
    )
    return GridSpec(dim=dim, samples_per_axis=samples_per_axis, order=order)


@dataclass(frozen=True)
class PeriodicSignal:
    """Complex samples of a function over a :class:`GridSpec`.

    ``values`` is row-major over the axes and is treated as immutable.
    """

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.ndim != 1 or vals.size != self.grid.size:
            raise ValueError(
                f"signal needs {self.grid.size} row-major samples, got shape {vals.shape}"
            )
        object.__setattr__(self, "values", vals)

    def dechirped(self) -> np.ndarray:
        """Samples of e_alpha * f, the periodic part of the signal."""
        return self.grid.chirp_samples * self.values

    def l1_quadrature(self) -> float:
        return float(np.sum(np.abs(self.values))) * self.grid.spacing**self.grid.dim

    def l2_quadrature_sq(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2)) * self.grid.spacing**self.grid.dim
