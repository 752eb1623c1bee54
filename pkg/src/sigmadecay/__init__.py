"""Numerical laboratory for decay rates of structurally damped
sigma-evolution equations.

The model, in radial Fourier variables, is the damped oscillator family

    v'' + (a r^(2 delta1) + b r^(2 delta2)) v' + r^(2 sigma) v = 0

with sigma >= 1, 0 < delta1 < sigma/2 < delta2 < sigma and damping
switches (a, b) in {(1,0), (0,1), (1,1)}.  The package evaluates the
exact solution kernels, their asymptotic profiles, weighted Plancherel
norms, predicted and fitted decay rates, and validates the pointwise
kernel bounds and integral lemmas behind the decay claims.
"""

from .data import CATALOG_NAMES, DataSpec, catalog_lookup
from .errors import (
    DegenerateFit,
    DomainError,
    NonFiniteIntegrand,
    StepTooLarge,
    ToleranceNotMet,
    UnknownDatum,
    ZoneEmpty,
)
from .bounds import (
    BOUND_IDS,
    EXPANSION_IDS,
    BoundCheckReport,
    ConvolutionReport,
    ExpansionReport,
    L1LemmaReport,
    OracleComparison,
    RiemannLebesgueReport,
    check_convolution_lemma,
    check_expansion_bounds,
    check_kernel_bounds,
    check_l1_lemma,
    check_riemann_lebesgue,
    max_oracle_step,
    ode_oracle,
    oracle_comparison,
)
from .quadrature import (
    ClosedFormNorm,
    NormQuery,
    NormResult,
    QuadResult,
    Target,
    integrate_radial,
    plancherel_norm,
    profile_envelope,
    profile_norm_closed_form,
)
from .rates import (
    THEOREM_IDS,
    ExponentSpec,
    LittleOReport,
    RateFit,
    SuiteReport,
    TimeGrid,
    default_time_grid,
    fit_rate,
    little_o_diagnostic,
    profile_decay_rate,
    run_theorem_suite,
    theoretical_exponent,
)
from .spectral import (
    KernelSet,
    ModelParams,
    ProfileKind,
    RootPair,
    char_roots,
    damping_symbol,
    discriminant_radii,
    kernel_arrays,
    kernel_eval,
    lambda1_low_freq_expansion,
    phi1,
    profile_arrays,
    profile_hat,
    profile_kind_for,
    root_arrays,
    validate_params,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # model and kernels
    "ModelParams",
    "validate_params",
    "damping_symbol",
    "RootPair",
    "char_roots",
    "root_arrays",
    "discriminant_radii",
    "phi1",
    "KernelSet",
    "kernel_eval",
    "kernel_arrays",
    "lambda1_low_freq_expansion",
    "ProfileKind",
    "profile_kind_for",
    "profile_hat",
    "profile_arrays",
    # data catalog
    "DataSpec",
    "catalog_lookup",
    "CATALOG_NAMES",
    # quadrature and norms
    "QuadResult",
    "integrate_radial",
    "Target",
    "NormQuery",
    "NormResult",
    "plancherel_norm",
    "profile_envelope",
    "ClosedFormNorm",
    "profile_norm_closed_form",
    # rates and suites
    "ExponentSpec",
    "theoretical_exponent",
    "profile_decay_rate",
    "TimeGrid",
    "default_time_grid",
    "RateFit",
    "fit_rate",
    "LittleOReport",
    "little_o_diagnostic",
    "SuiteReport",
    "run_theorem_suite",
    "THEOREM_IDS",
    # bound checks and oracles
    "ode_oracle",
    "max_oracle_step",
    "oracle_comparison",
    "OracleComparison",
    "BOUND_IDS",
    "EXPANSION_IDS",
    "check_kernel_bounds",
    "check_expansion_bounds",
    "BoundCheckReport",
    "ExpansionReport",
    "check_l1_lemma",
    "L1LemmaReport",
    "check_convolution_lemma",
    "ConvolutionReport",
    "check_riemann_lebesgue",
    "RiemannLebesgueReport",
    # errors
    "DomainError",
    "UnknownDatum",
    "ToleranceNotMet",
    "NonFiniteIntegrand",
    "DegenerateFit",
    "StepTooLarge",
    "ZoneEmpty",
]
