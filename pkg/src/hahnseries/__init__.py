"""Exact truncated Hahn/Puiseux series under the minimal-support valuation.

Exponents live in Q^k with the lexicographic order, coefficients in the
rational-function field Q(a1, ..., am), and every series carries a
precision bound.  On top of the exact arithmetic sit places and their
coefficientwise action, Hensel lifting, restricted exp/log on
infinitesimals and 1-units, Newton-Puiseux expansion, rational
reconstruction, and the valuation-basis machinery (independence
testing, optimal approximation, basis extension, skeletons, and the
inclusion-exclusion approximations).
"""

from .analytic import (
    OneUnit,
    exp,
    hensel_lift,
    log,
    newton_puiseux,
    rational_reconstruct,
    track_denominators,
    unit_pow,
    verify_root,
)
from .coeffs import (
    INFINITE,
    Coefficient,
    Place,
    apply_place,
    finite_place_for,
    variables_of,
)
from .errors import (
    DependenceError,
    HahnSeriesError,
    NotInValuationRingError,
    ParseError,
    PrecisionError,
    PreconditionError,
    RankMismatchError,
    SkeletonMismatchError,
)
from .exponents import Exponent, GroupSpec, arch_class, compare, reach_count
from .series import (
    AtLeast,
    SeriesPolynomial,
    TruncatedSeries,
    eval_poly,
    phi_P,
    residue,
    specialize_poly,
    split_neg,
    v_min,
)
from .valuation_spaces import (
    BasisFamily,
    IndependenceResult,
    InclusionExclusionResult,
    RestrictedExpMap,
    ScalarField,
    Skeleton,
    SkeletonClass,
    build_restricted_exp,
    chain_basis_build,
    extend_basis,
    inclusion_exclusion_approx,
    is_valuation_independent,
    mult_inclusion_exclusion,
    optimal_approx,
    skeleton_of,
    tensor_basis,
)

__version__ = "0.1.0"
