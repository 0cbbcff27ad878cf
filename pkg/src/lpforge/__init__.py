"""lpforge: finite-dimensional l^p approximation in L^p spaces of simple
functions, the uniform-convexity modulus it yields, and a small toolkit for
finite-type formulas."""

from .measure import (
    Exponent,
    MeasureSpace,
    SimpleFunction,
    add,
    lp_norm,
    lp_norm_pow,
    normalize_tilde,
    pointwise_abs,
    scale,
    sub,
)
from .approx import (
    ApproximationWitness,
    LpBasisCertificate,
    PreconditionError,
    bm_distance_bound,
    build_approximation,
    build_approximation_normalized,
    build_approximation_unit,
    partition_labels,
    verify_axiom_instance,
    verify_certificate,
)
from .convexity import (
    brute_force_modulus,
    certify_uniform_convexity,
    check_clarkson,
    check_power_inequality,
    check_sigma_bound,
    delta_for,
    eta,
    sigma,
)

__version__ = "0.1.0"
