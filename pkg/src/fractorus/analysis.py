"""L^2 identities, Poisson summation, decay diagnostics, slow decay.

The slow-decay construction follows the telescoped Fejer-kernel series

    f(x) = e_{-a}(x) * sum_j (j+1) (c_j + c_{j+2} - 2 c_{j+1}) F_j(x)

built over the least convex non-increasing sequence dominating the target;
truncating the series at j <= J with the horizontal extension
``c_{J+1} = c_{J+2} = c_J`` leaves coefficient moduli
``|csc|^(1/2) * (c_|m| - c_J)``, and the deviation from the untruncated
closed form is reported, never hidden.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import FracOrder, GridSpec, PeriodicSignal, chirp
from .errors import (
    DimensionMismatch,
    DimensionUnsupported,
    GridMismatch,
    NotDecayingInput,
)
from .kernels import fejer1_closed
from .spectral import FracCoefficients, analyze


def plancherel_check(f: PeriodicSignal, coeffs: FracCoefficients) -> tuple[float, float]:
    """(grid L2 norm squared of f, sum of squared coefficient moduli)."""
    return f.l2_quadrature_sq(), coeffs.l2_norm_sq()


def parseval_check(f: PeriodicSignal, g: PeriodicSignal) -> tuple[complex, complex]:
    """(quadrature of f * conj(g), coefficient-side pairing) on one grid."""
    if (
        f.grid.dim != g.grid.dim
        or f.grid.samples_per_axis != g.grid.samples_per_axis
        or f.grid.order.alpha != g.grid.order.alpha
    ):
        raise GridMismatch("parseval needs both signals on the same grid")
    grid = f.grid
    lhs = complex(np.sum(f.values * np.conj(g.values)) * grid.spacing**grid.dim)
    radius = (grid.samples_per_axis - 2) // 2
    cf = analyze(f, radius)
    cg = analyze(g, radius)
    rhs = complex(np.sum(cf.data * np.conj(cg.data)))
    return lhs, rhs


def poisson_summation_check(
    f, f_hat, x, K: int, order: FracOrder
) -> tuple[complex, complex]:
    """Both sides of the lattice summation identity, truncated at fold K.

    ``f`` and ``f_hat`` are a closed-form transform pair on R^n (classical
    convention ``f_hat(xi) = int f(x) exp(-2 i pi x.xi) dx``); the
    coefficient side uses ``scale_A^n e_a(m) f_hat(m csc a)``.

    Returns (coefficient-side sum over |m_j| <= K,
             e_{-a}(x) * lattice fold sum over |k_j| <= K).
    """
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    n = x_arr.size
    ax = np.arange(-K, K + 1)
    if n == 1:
        modes = ax.reshape(-1, 1)
    else:
        mesh = np.meshgrid(*([ax] * n), indexing="ij")
        modes = np.stack([m.ravel() for m in mesh], axis=-1)

    lhs = 0.0 + 0.0j
    scale_neg = np.conj(order.scale_A) ** n
    for m in modes:
        coeff = (
            order.scale_A**n
            * chirp(m, order)
            * complex(f_hat(m.astype(float) * order.csc_a))
        )
        kern = (
            scale_neg
            * np.conj(chirp(x_arr, order))
            * np.exp(2j * math.pi * order.csc_a * float(m @ x_arr))
            * np.conj(chirp(m, order))
        )
        lhs += coeff * kern

    rhs = 0.0 + 0.0j
    for k in modes:
        rhs += complex(f(x_arr + k.astype(float) * order.period))
    rhs *= np.conj(chirp(x_arr, order))
    return complex(lhs), complex(rhs)


def gaussian_pair(sigma: float):
    """Closed-form transform pair exp(-pi x^2/s^2) <-> s exp(-pi s^2 xi^2), n=1."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")

    def f(x):
        return math.exp(-math.pi * float(np.sum(np.square(x))) / (sigma * sigma))

    def f_hat(xi):
        return sigma * math.exp(-math.pi * sigma * sigma * float(np.sum(np.square(xi))))

    return f, f_hat


def _shell_radii(coeffs: FracCoefficients) -> np.ndarray:
    modes = coeffs.modes_flat().astype(float)
    return np.rint(np.sqrt(np.sum(modes * modes, axis=-1))).astype(int)


def riemann_lebesgue_profile(coeffs: FracCoefficients) -> list[tuple[int, float]]:
    """Shell maxima of |coeff(m)| by rounded Euclidean |m|."""
    radii = _shell_radii(coeffs)
    mags = np.abs(coeffs.data.ravel())
    out = []
    for r in np.unique(radii):
        out.append((int(r), float(np.max(mags[radii == r]))))
    return out


def lipschitz_decay_bound_const(dim: int, s: int, gamma: float, order: FracOrder) -> float:
    """Multiplier in the smoothness decay bound (uses the n/2 csc exponent)."""
    return (math.sqrt(dim)) ** (s + gamma) / (
        (2.0 * math.pi) ** s
        * abs(order.csc_a) ** (s + gamma + dim / 2.0)
        * 2.0 ** (gamma + 1.0)
    )


def decay_vs_smoothness(
    coeffs: FracCoefficients, s: int, gamma: float, seminorm: float | None = None
) -> list[tuple[int, float, float, float]]:
    """Rows (shell radius, max |coeff|, max weighted |coeff|, bound).

    The weight is ``(1+|m|)^(s+gamma)``.  When ``0 < gamma < 1`` and a
    Lipschitz seminorm of the s-th dechirped derivative is supplied, the
    last column carries the comparable theoretical bound
    ``const * seminorm * ((1+r)/r)^(s+gamma)`` (nan otherwise, and at r=0).
    """
    if s < 0:
        raise ValueError("s must be >= 0")
    if not (gamma == 0.0 or 0.0 < gamma < 1.0):
        raise ValueError("gamma must be 0 or in (0, 1)")
    radii = _shell_radii(coeffs)
    modes = coeffs.modes_flat().astype(float)
    norms = np.sqrt(np.sum(modes * modes, axis=-1))
    mags = np.abs(coeffs.data.ravel())
    weighted = mags * (1.0 + norms) ** (s + gamma)
    const = (
        lipschitz_decay_bound_const(coeffs.dim, s, gamma, coeffs.order)
        if (seminorm is not None and 0.0 < gamma < 1.0)
        else None
    )
    rows = []
    for r in np.unique(radii):
        mask = radii == r
        bound = math.nan
        if const is not None and r > 0:
            bound = const * seminorm * ((1.0 + r) / r) ** (s + gamma)
        rows.append(
            (int(r), float(np.max(mags[mask])), float(np.max(weighted[mask])), bound)
        )
    return rows


def decay_table_csv(rows, path) -> None:
    """CSV export: shell_radius, max_abs_coeff, weighted_value, bound."""
    lines = ["shell_radius,max_abs_coeff,weighted_value,bound"]
    for r, mag, weighted, bound in rows:
        btxt = f"{bound:.17g}" if not math.isnan(bound) else ""
        lines.append(f"{r},{mag:.17g},{weighted:.17g},{btxt}")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def lipschitz_seminorm(f: PeriodicSignal, gamma: float) -> float:
    """Grid estimate of sup |f(x+h)-f(x)|/|h|^gamma, offsets up to period/2.

    A lower bound of the true sup; pair with two-resolution stability when
    an upper bound matters.
    """
    if not (0.0 < gamma < 1.0):
        raise ValueError("gamma must lie in (0, 1)")
    if f.grid.dim != 1:
        raise DimensionUnsupported("grid Lipschitz seminorm supports n=1")
    v = f.values
    M = f.grid.samples_per_axis
    h = f.grid.spacing
    best = 0.0
    for d in range(1, M // 2 + 1):
        diff = np.max(np.abs(np.roll(v, -d) - v))
        best = max(best, float(diff) / (d * h) ** gamma)
    return best


@dataclass(frozen=True)
class ConvexSeq:
    """Non-increasing convex sequence c_0..c_J of non-negative reals.

    The defining inequalities hold exactly on the stored doubles:
    ``c[j] >= c[j+1]`` and ``c[j] + c[j+2] - 2*c[j+1] >= 0``.
    """

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("need a non-empty 1-d sequence")
        if np.any(arr < 0.0):
            raise ValueError("sequence must be non-negative")
        for j in range(arr.size - 1):
            if not arr[j] >= arr[j + 1]:
                raise ValueError(f"not non-increasing at index {j}")
        for j in range(arr.size - 2):
            if not arr[j] + arr[j + 2] - 2.0 * arr[j + 1] >= 0.0:
                raise ValueError(f"not convex at index {j}")
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size

    def second_difference(self, j: int) -> float:
        """c_j + c_{j+2} - 2 c_{j+1} with horizontal extension past the end."""
        J = self.values.size - 1
        c = self.values
        cj1 = c[min(j + 1, J)]
        cj2 = c[min(j + 2, J)]
        return float(c[j] + cj2 - 2.0 * cj1)


def convex_minorant_dominating(a, J: int | None = None) -> ConvexSeq:
    """Least convex non-increasing sequence dominating ``a`` on 0..J.

    "Least" is taken right-lexicographically (minimize c_J, then c_{J-1},
    ...), which anchors the tail as low as the data allows; the result is
    the taut string pulled over the points from the right with a horizontal
    start.  Domination and the convexity inequalities hold exactly on the
    returned doubles.

    Raises
    ------
    NotDecayingInput
        If the max over the last quarter of ``a`` exceeds the max over the
        first quarter.
    """
    arr = np.asarray(a, dtype=float)
    if J is None:
        J = arr.size - 1
    if J < 0 or J >= arr.size:
        raise ValueError("J out of range")
    arr = arr[: J + 1]
    if np.any(arr <= 0.0):
        raise ValueError("target sequence must be positive")
    q = max(1, (J + 1) // 4)
    if np.max(arr[-q:]) > np.max(arr[:q]):
        raise NotDecayingInput(
            "last-quarter max exceeds first-quarter max; target does not decay"
        )
    c = np.empty(J + 1)
    c[J] = arr[J]
    delta = 0.0  # backward difference carried right-to-left; never decreases
    for j in range(J - 1, -1, -1):
        floor_val = c[j + 1] + delta
        if arr[j] >= floor_val:
            c[j] = arr[j]
            delta = arr[j] - c[j + 1]
        else:
            c[j] = floor_val
    # repair float rounding so the exact inequalities hold on the result
    for j in range(J - 1, -1, -1):
        if c[j] < c[j + 1]:
            c[j] = c[j + 1]
        if c[j] < arr[j]:
            c[j] = arr[j]
        if j + 2 <= J:
            while c[j] + c[j + 2] - 2.0 * c[j + 1] < 0.0:
                c[j] = max(2.0 * c[j + 1] - c[j + 2], math.nextafter(c[j], math.inf))
    return ConvexSeq(values=c)


@dataclass(frozen=True)
class SlowDecayResult:
    signal: PeriodicSignal
    seq: ConvexSeq
    remainder: float  # bound on | |coeff(m)| - |csc|^(1/2) c_|m| |


def slow_decay_construct(d, J: int, grid: GridSpec) -> SlowDecayResult:
    """Integrable signal whose coefficient moduli dominate a target decay.

    Parameters
    ----------
    d : array
        Centered targets d_m over m = -J..J (length 2J+1).
    J : int
        Series truncation; kernels F_0..F_J enter the sum.
    grid : GridSpec
        One-dimensional sampling grid (needs M large enough to resolve
        dechirped degree J if the result is to be analyzed exactly).
    """
    if grid.dim != 1:
        raise DimensionUnsupported("slow-decay construction is one-dimensional")
    if J < 4:
        raise ValueError("J must be >= 4")
    d_arr = np.asarray(d, dtype=float)
    if d_arr.size != 2 * J + 1:
        raise DimensionMismatch(f"need 2J+1={2 * J + 1} centered targets, got {d_arr.size}")
    sym = d_arr[J:] + d_arr[J::-1]  # d_m + d_{-m}, m = 0..J
    seq = convex_minorant_dominating(sym, J)

    c_ext = np.concatenate([seq.values, [seq.values[-1], seq.values[-1]]])
    second = c_ext[:-2] + c_ext[2:] - 2.0 * c_ext[1:-1]  # j = 0..J
    weights = (np.arange(J + 1) + 1.0) * second

    order = grid.order
    ax = grid.axis_points()
    vals = np.zeros(ax.size)
    for j in np.nonzero(weights)[0]:
        vals += weights[j] * fejer1_closed(int(j), ax, order)
    signal = PeriodicSignal(grid=grid, values=np.conj(grid.chirp_samples) * vals)

    root_csc = math.sqrt(abs(order.csc_a))
    tail = c_ext[J + 1] + (J + 1) * (c_ext[J + 1] - c_ext[J + 2])
    return SlowDecayResult(signal=signal, seq=seq, remainder=root_csc * tail)
