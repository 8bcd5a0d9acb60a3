"""Dirichlet, Fejer, heat and Poisson kernels.

The fractional Fejer kernel of order alpha is the ``|csc(alpha)|``-scaled,
``csc(alpha)``-dilated classical Fejer kernel; the heat/Poisson kernels are
spectral multipliers with classical integer frequencies, picking up their
dilation inside the fractional convolution.  Closed forms and sum forms are
kept as mutually independent oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import FracOrder
from .errors import NonPositiveTime

#: Below this |sin(pi*u)| the closed forms switch to their analytic limits,
#: avoiding catastrophic cancellation near grid-aligned zeros.
SINGULARITY_TOL = 1e-8


def classical_fejer(N: int, u) -> np.ndarray:
    """1-periodic Fejer kernel (sin((N+1)pi u)/sin(pi u))^2 / (N+1)."""
    u_arr = np.asarray(u, dtype=float)
    s = np.sin(np.pi * u_arr)
    small = np.abs(s) < SINGULARITY_TOL
    num = np.sin((N + 1) * np.pi * u_arr)
    vals = (num / np.where(small, 1.0, s)) ** 2 / (N + 1)
    return np.where(small, float(N + 1), vals)


def classical_dirichlet(N: int, u) -> np.ndarray:
    """1-periodic Dirichlet kernel sin((2N+1)pi u)/sin(pi u)."""
    u_arr = np.asarray(u, dtype=float)
    s = np.sin(np.pi * u_arr)
    small = np.abs(s) < SINGULARITY_TOL
    num = np.sin((2 * N + 1) * np.pi * u_arr)
    vals = num / np.where(small, 1.0, s)
    return np.where(small, float(2 * N + 1), vals)


def _axis_product(fn, x) -> np.ndarray:
    """Apply a 1-d kernel per coordinate and multiply.

    A scalar or length-n vector is one point; higher-rank input is a batch
    with coordinates along the last axis.
    """
    pts = np.asarray(x, dtype=float)
    if pts.ndim == 0:
        return fn(pts)
    if pts.ndim == 1:
        out = fn(pts[0])
        for a in range(1, pts.size):
            out = out * fn(pts[a])
        return out
    out = fn(pts[..., 0])
    for axis in range(1, pts.shape[-1]):
        out = out * fn(pts[..., axis])
    return out


def fejer1_closed(N: int, x, order: FracOrder):
    """Fractional Fejer kernel, closed form; x scalar or array.

    At the removable singularities ``x*csc(alpha) in Z`` returns the limit
    ``|csc(alpha)|*(N+1)``.
    """
    vals = abs(order.csc_a) * classical_fejer(N, np.asarray(x, float) * order.csc_a)
    return float(vals) if np.ndim(x) == 0 else vals


def fejer1_sum_complex(N: int, x, order: FracOrder):
    """Weighted exponential sum form of the fractional Fejer kernel."""
    x_arr = np.asarray(x, dtype=float)
    j = np.arange(-N, N + 1)
    w = 1.0 - np.abs(j) / (N + 1.0)
    phases = np.exp(
        2j * np.pi * order.csc_a * np.multiply.outer(x_arr, j.astype(float))
    )
    vals = abs(order.csc_a) * phases @ w
    return complex(vals) if np.ndim(x) == 0 else vals


def fejer1_sum(N: int, x, order: FracOrder):
    """Real part of :func:`fejer1_sum_complex`; oracle for the closed form."""
    vals = fejer1_sum_complex(N, x, order)
    return vals.real if np.ndim(x) == 0 else np.real(vals)


def fejer_nd(N: int, x, order: FracOrder):
    """Product of 1-d fractional Fejer kernels, x of shape (n,) or (..., n)."""
    vals = _axis_product(lambda u: fejer1_closed(N, u, order), x)
    return float(vals) if np.ndim(vals) == 0 else vals


def dirichlet_nd(N: int, x, order: FracOrder):
    """Product of dilated classical Dirichlet kernels (no |csc| scaling)."""
    vals = _axis_product(
        lambda u: classical_dirichlet(N, np.asarray(u, float) * order.csc_a), x
    )
    return float(vals) if np.ndim(vals) == 0 else vals


def _mode_cube(trunc: int, dim: int) -> np.ndarray:
    ax = np.arange(-trunc, trunc + 1)
    if dim == 1:
        return ax.reshape(-1, 1)
    mesh = np.meshgrid(*([ax] * dim), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def heat_default_truncation(
    t: float, k: float, order: FracOrder, dim: int = 1, tol: float = 1e-12
) -> int:
    """Smallest truncation whose tail bound drops below ``tol``."""
    rate = 4.0 * math.pi**2 * order.csc_a**2 * k * t
    for trunc in range(1, 20000):
        if (2 * trunc + 1) ** dim * math.exp(-rate * trunc**2) < tol:
            return trunc
    return 20000


def poisson_default_truncation(t: float, order: FracOrder) -> int:
    return max(1, math.ceil(12.0 / (2.0 * math.pi * abs(order.csc_a) * t)))


def heat_kernel_values(
    t: float, k: float, x, order: FracOrder, trunc: int | None = None
) -> tuple[np.ndarray, float]:
    """Heat kernel at points of shape (..., n), plus its truncation tail bound."""
    if t <= 0:
        raise NonPositiveTime(f"heat kernel needs t > 0, got {t}")
    if k <= 0:
        raise NonPositiveTime(f"heat kernel needs k > 0, got {k}")
    pts = np.asarray(x, dtype=float)
    if pts.ndim == 0:
        pts = pts.reshape(1, 1)
    elif pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    dim = pts.shape[-1]
    if trunc is None:
        trunc = heat_default_truncation(t, k, order, dim)
    modes = _mode_cube(trunc, dim)
    rate = 4.0 * math.pi**2 * order.csc_a**2 * k * t
    decay = np.exp(-rate * np.sum(modes.astype(float) ** 2, axis=-1))
    phases = np.exp(2j * np.pi * (pts @ modes.T.astype(float)))
    vals = phases @ decay
    tail = (2 * trunc + 1) ** dim * math.exp(-rate * trunc**2)
    return vals, tail


def heat_kernel(
    t: float, k: float, x, order: FracOrder, trunc: int | None = None
) -> tuple[complex, float]:
    """Heat kernel at one point; returns (value, tail bound)."""
    pt = np.atleast_1d(np.asarray(x, dtype=float)).reshape(1, -1)
    vals, tail = heat_kernel_values(t, k, pt, order, trunc)
    return complex(vals[0]), tail


def _poisson_tail(trunc: int, dim: int, r: float) -> float:
    # lattice shells |m|_inf = l hold at most 2*dim*(2l+1)^(dim-1) points,
    # each decaying at least like r^l
    tail = 0.0
    term = 1.0
    l = trunc + 1
    while term > 1e-300 and l < trunc + 400:
        term = 2 * dim * (2 * l + 1) ** (dim - 1) * r**l
        tail += term
        l += 1
    return tail


def poisson_kernel_values(
    t: float, x, order: FracOrder, trunc: int | None = None
) -> tuple[np.ndarray, float]:
    """Poisson kernel at points of shape (..., n), plus its tail bound."""
    if t <= 0:
        raise NonPositiveTime(f"poisson kernel needs t > 0, got {t}")
    pts = np.asarray(x, dtype=float)
    if pts.ndim == 0:
        pts = pts.reshape(1, 1)
    elif pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    dim = pts.shape[-1]
    if trunc is None:
        trunc = poisson_default_truncation(t, order)
    modes = _mode_cube(trunc, dim)
    rate = 2.0 * math.pi * abs(order.csc_a) * t
    decay = np.exp(-rate * np.sqrt(np.sum(modes.astype(float) ** 2, axis=-1)))
    phases = np.exp(2j * np.pi * (pts @ modes.T.astype(float)))
    vals = phases @ decay
    tail = _poisson_tail(trunc, dim, math.exp(-rate))
    return vals, tail


def poisson_kernel(
    t: float, x, order: FracOrder, trunc: int | None = None
) -> tuple[complex, float]:
    """Poisson kernel at one point; returns (value, tail bound)."""
    pt = np.atleast_1d(np.asarray(x, dtype=float)).reshape(1, -1)
    vals, tail = poisson_kernel_values(t, pt, order, trunc)
    return complex(vals[0]), tail


def poisson_closed_1d(t: float, x, order: FracOrder):
    """Geometric-series closed form (1-r^2)/(1-2r cos(2 pi x)+r^2), n=1."""
    if t <= 0:
        raise NonPositiveTime(f"poisson kernel needs t > 0, got {t}")
    r = math.exp(-2.0 * math.pi * abs(order.csc_a) * t)
    x_arr = np.asarray(x, dtype=float)
    vals = (1.0 - r * r) / (1.0 - 2.0 * r * np.cos(2.0 * np.pi * x_arr) + r * r)
    return float(vals) if np.ndim(x) == 0 else vals


@dataclass(frozen=True)
class KernelSpec:
    """Parameterization of one kernel family for profiles and exports."""

    kind: str  # "dirichlet" | "fejer" | "heat" | "poisson"
    order: FracOrder
    dim: int = 1
    N: int | None = None
    t: float | None = None
    k: float | None = None
    trunc: int | None = None

    def __post_init__(self):
        if self.kind in ("dirichlet", "fejer"):
            if self.N is None or self.N < 0:
                raise ValueError(f"{self.kind} kernel needs N >= 0")
        elif self.kind == "heat":
            if self.t is None or self.t <= 0 or self.k is None or self.k <= 0:
                raise NonPositiveTime("heat kernel needs t > 0 and k > 0")
        elif self.kind == "poisson":
            if self.t is None or self.t <= 0:
                raise NonPositiveTime("poisson kernel needs t > 0")
        else:
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        if self.trunc is not None and self.trunc < 1:
            raise ValueError("truncation must be >= 1")

    def evaluate(self, x):
        if self.kind == "fejer":
            return fejer_nd(self.N, x, self.order)
        if self.kind == "dirichlet":
            return dirichlet_nd(self.N, x, self.order)
        if self.kind == "heat":
            return heat_kernel(self.t, self.k, x, self.order, self.trunc)[0]
        return poisson_kernel(self.t, x, self.order, self.trunc)[0]


def kernel_profile_csv(spec: KernelSpec, xs, path) -> None:
    """Dump a 1-d kernel profile: columns x,value or x,re,im."""
    xs = np.asarray(xs, dtype=float)
    vals = [spec.evaluate(x) for x in xs]
    complex_valued = spec.kind in ("heat", "poisson")
    header = "x,re,im" if complex_valued else "x,value"
    lines = [header]
    for x, v in zip(xs, vals):
        if complex_valued:
            lines.append(f"{x:.17g},{v.real:.17g},{v.imag:.17g}")
        else:
            lines.append(f"{x:.17g},{float(v):.17g}")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def classical_fejer_evaluator(N: int):
    """Classical Fejer kernel as a point evaluator for fractional convolution."""
    return lambda pts: _axis_product(lambda u: classical_fejer(N, u), pts)


def classical_dirichlet_evaluator(N: int):
    return lambda pts: _axis_product(lambda u: classical_dirichlet(N, u), pts)


def heat_evaluator(t: float, k: float, order: FracOrder, trunc: int | None = None):
    return lambda pts: heat_kernel_values(t, k, pts, order, trunc)[0]


def poisson_evaluator(t: float, order: FracOrder, trunc: int | None = None):
    return lambda pts: poisson_kernel_values(t, pts, order, trunc)[0]
