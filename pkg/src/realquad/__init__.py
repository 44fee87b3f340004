"""Realization of critically finite real quadratic maps from combinatorics.

Public surface: combinatorics parsing/classification, the PL model with its
Markov structure and obstruction certificates, quadratic-map numerics in
fixed-point and canonical coordinates, the pullback iteration, and kneading
invariants with entropy.
"""

from .combinatorics import (
    ClassificationReport,
    Combinatorics,
    DynamicType,
    Shape,
    check_admissible,
    check_minimal,
    classify,
    copolynomial_from_polynomial,
    copolynomial_polynomial_pair,
    enumerate_admissible,
    euler_characteristic,
    filom_pilgrim,
    from_mapping_pattern,
    orient_minus_plus,
    parse,
    polynomial_from_copolynomial,
    reverse_orientation,
    simplify,
)
from .doubledouble import DoubleDouble
from .errors import RealQuadError
from .kneading import (
    KneadingInvariants,
    TentMap,
    entropy_from_k1,
    entropy_of_combinatorics,
    invariants_of_combinatorics,
    k2_ordering_check,
    kneading_number,
    sigma,
    zero_entropy_threshold,
)
from .plmodel import (
    LevyCertificate,
    PLModel,
    build,
    find_levy_certificate,
    period_two_critical_shortcut,
    transfer_entropy,
)
from .pullback import (
    EXCEPTIONAL_COMBINATORICS,
    MarkedState,
    PullbackConfig,
    PullbackOutcome,
    Verdict,
    exceptional_normal_form,
    exceptional_start,
    exceptional_v,
    init_state,
    run,
    solve_branch,
    step,
)
from .quadmap import (
    CanonicalCoords,
    EpsteinParams,
    LiftedMap,
    ShiftLocus,
    asymptotic_check,
    canonical_form,
    critical_values,
    cross_ratio,
    discriminant,
    epstein_eval,
    fixed_points,
    lifted_eval,
    lifted_params_from_critical_values,
    logistic_mu_to_c,
    params_from_critical_values,
    shift_locus_membership,
    sigma_delta,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
