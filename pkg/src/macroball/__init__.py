"""Hyperbolic ball-volume numerics, smoothing-kernel bounds, and the
dimensional constants pipeline, with a certified verification suite."""

from .constants import (
    ConstantsReport,
    ExternalConstants,
    ThresholdReport,
    compute_beta_n,
    compute_C_alpha,
    compute_c_n,
    compute_lambda_n,
    default_externals,
    ideal_simplex_volume,
    volume_thresholds,
)
from .errors import (
    ConfigError,
    DegenerateKernelError,
    DepthExceededError,
    InvalidDirectionError,
    InvalidPointError,
    MacroballError,
    MissingExternalError,
    MissingInputError,
    NonFiniteError,
    TailNeverDominatesError,
    UnsupportedDimError,
    VolumeOverflowError,
)
from .extremal import ExtremalResult, inf_on_ray, sup_on_ray
from .hypgeom import (
    HPoint,
    from_spatial,
    geodesic_point,
    hdistance,
    log_v_hyp,
    minkowski_inner,
    origin,
    tangent_vector,
    v_hyp,
    v_ratio_halved,
)
from .kernel import (
    ChainReport,
    FdCheck,
    KernelParams,
    chain_check,
    deriv_bound,
    f_of_R,
    fd_derivative_check,
    kernel_I,
    kernel_mass,
    lambda_min,
    tv_distance,
)
from .numerics import (
    QuadResult,
    Tolerance,
    integrate_adaptive,
    lobachevsky,
    log_integrate_exp,
    sphere_volume,
)

__version__ = "0.1.0"

__all__ = [
    "ChainReport",
    "ConfigError",
    "ConstantsReport",
    "DegenerateKernelError",
    "DepthExceededError",
    "ExternalConstants",
    "ExtremalResult",
    "FdCheck",
    "HPoint",
    "InvalidDirectionError",
    "InvalidPointError",
    "KernelParams",
    "MacroballError",
    "MissingExternalError",
    "MissingInputError",
    "NonFiniteError",
    "QuadResult",
    "TailNeverDominatesError",
    "ThresholdReport",
    "Tolerance",
    "UnsupportedDimError",
    "VolumeOverflowError",
    "chain_check",
    "compute_C_alpha",
    "compute_beta_n",
    "compute_c_n",
    "compute_lambda_n",
    "default_externals",
    "deriv_bound",
    "f_of_R",
    "fd_derivative_check",
    "from_spatial",
    "geodesic_point",
    "hdistance",
    "ideal_simplex_volume",
    "inf_on_ray",
    "integrate_adaptive",
    "kernel_I",
    "kernel_mass",
    "lambda_min",
    "lobachevsky",
    "log_integrate_exp",
    "log_v_hyp",
    "minkowski_inner",
    "origin",
    "sphere_volume",
    "sup_on_ray",
    "tangent_vector",
    "tv_distance",
    "v_hyp",
    "v_ratio_halved",
    "volume_thresholds",
]
