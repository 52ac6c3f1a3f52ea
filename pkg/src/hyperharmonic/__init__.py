"""Numerical verifier for hypergeometric series identities carrying
harmonic-number weights.

The package has three layers: scalar special functions (specialfn),
a weighted-series summation engine with epsilon acceleration (series),
and a registry of verifiable identities with closed-form right-hand
sides (catalog) fronted by the `hyperharmonic` command line tool (cli).
"""

from .errors import (
    AccelerationBreakdown,
    DomainError,
    HyperharmonicError,
    NonConvergentError,
    PoleError,
    UnknownIdentityError,
)
from .specialfn import (
    digamma,
    elliptic_K,
    gamma_ratio,
    generalized_harmonic,
    harmonic,
    ln_gamma,
    pochhammer,
)
from .series import (
    DigammaDiffSum,
    Harmonic,
    HarmonicSqPlusGen2,
    LinearCombo,
    PochhammerRatioSeries,
    ReciprocalShift,
    SeriesResult,
    Unit,
    eval_hyper,
    eval_weighted,
    finite_difference,
    hyp2f1,
    weight_value,
    wynn_epsilon,
)
from .catalog import (
    DEFAULT_SEED,
    Identity,
    PointCheck,
    REGISTRY,
    SeriesTerm,
    VerifyReport,
    boundary_asymptotic_check,
    build_registry,
    eval_lhs,
    eval_rhs,
    finite_sum_instance,
    get_identity,
    ode_residual,
    verify,
    with_perturbed_rhs,
)

__version__ = "0.1.0"

__all__ = [
    "AccelerationBreakdown",
    "DomainError",
    "HyperharmonicError",
    "NonConvergentError",
    "PoleError",
    "UnknownIdentityError",
    "digamma",
    "elliptic_K",
    "gamma_ratio",
    "generalized_harmonic",
    "harmonic",
    "ln_gamma",
    "pochhammer",
    "DigammaDiffSum",
    "Harmonic",
    "HarmonicSqPlusGen2",
    "LinearCombo",
    "PochhammerRatioSeries",
    "ReciprocalShift",
    "SeriesResult",
    "Unit",
    "eval_hyper",
    "eval_weighted",
    "finite_difference",
    "hyp2f1",
    "weight_value",
    "wynn_epsilon",
    "DEFAULT_SEED",
    "Identity",
    "PointCheck",
    "REGISTRY",
    "SeriesTerm",
    "VerifyReport",
    "boundary_asymptotic_check",
    "build_registry",
    "eval_lhs",
    "eval_rhs",
    "finite_sum_instance",
    "get_identity",
    "ode_residual",
    "verify",
    "with_perturbed_rhs",
    "__version__",
]
