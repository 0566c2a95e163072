"""Desk-scale numerics for distributional k-Hessian pairings."""

from .besov import (
    BesovParams,
    NormReport,
    besov_norm,
    dyadic_blocks,
    dyadic_norm,
    dyadic_norm_sin2_products,
    embedding_case,
    gagliardo_seminorm,
    interpolation_report,
    w1p_norm,
)
from .bumps import Func1D, ramp_down_profile, quintic_ramp_down_profile, scaled_bump
from .constructions import (
    ConstructionSpec,
    RadialProfile,
    bump_field,
    cutoff,
    lacunary_field,
    make_profile,
    oscillatory_field,
    radial_g,
    radial_minor_identity,
    random_bump_field,
    make_test_function,
)
from .errors import ConfigError, ConstructionError, DomainError, EvaluationError
from .grid import (
    Box,
    GridField,
    GridSpec,
    gradient,
    hessian,
    integrate,
    load_field,
    lp_norm,
    sample,
    save_field,
)
from .minors import adj_entry, binet_sum, k_trace, minor, sym_func
from .multiindex import MultiIndex, indices, sign
from .operators import (
    PairingResult,
    cofactor_divergence,
    fk_pointwise,
    pair_direct,
    pair_extension,
    pair_weak2,
    tensor_minor,
)
from .separable import pair_separable

__version__ = "0.1.0"
