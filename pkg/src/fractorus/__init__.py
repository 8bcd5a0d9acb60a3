"""Fourier series on the fractional torus.

Coefficient analysis/synthesis with chirped kernels, fractional
convolution and Fejer approximation, summation identities, coefficient
decay diagnostics, and spectral solutions of the heat and Dirichlet
problems with periodic boundary conditions.
"""

from .core import (
    DEGENERACY_TOL,
    FracOrder,
    GridSpec,
    PeriodicSignal,
    chirp,
    chirp_array,
    frac_order_new,
    grid_spec,
    kernel_K,
)
from .errors import (
    DegenerateOrder,
    DimensionMismatch,
    DimensionUnsupported,
    FractorusError,
    GridMismatch,
    GridTooCoarse,
    InsufficientTimeLevels,
    NegativeTime,
    NonPositiveTime,
    NotDecayingInput,
    RadiusExceeded,
)
from .spectral import (
    FracCoefficients,
    analyze,
    coefficient_single,
    conjugate_transform,
    product_coefficients,
    reflect,
    synthesize,
    synthesize_grid,
    translate_dechirped,
    write_coefficients_csv,
)
from .kernels import (
    KernelSpec,
    dirichlet_nd,
    fejer1_closed,
    fejer1_sum,
    fejer_nd,
    heat_kernel,
    poisson_closed_1d,
    poisson_kernel,
)
from .approx import (
    ApproxReport,
    approx_identity_scan,
    fejer_mean_grid,
    fejer_mean_spectral,
    frac_convolve,
    jump_convergence,
    maximal_fejer,
)
from .analysis import (
    ConvexSeq,
    convex_minorant_dominating,
    decay_vs_smoothness,
    lipschitz_seminorm,
    parseval_check,
    plancherel_check,
    poisson_summation_check,
    riemann_lebesgue_profile,
    slow_decay_construct,
)
from .pde import (
    Field,
    dirichlet_evolve,
    dirichlet_solve_field,
    heat_evolve,
    heat_solve_field,
    pde_residual,
    solve_field,
)
from . import signals

__version__ = "0.1.0"
