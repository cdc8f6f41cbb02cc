"""dynalg: exact computer algebra for the dynamics of rational maps.

Linearizing (Poincare-type) and Boettcher series solved as exact truncated
series, algebraic-dependency certificates between them, semiconjugacy and
commutation verifiers, degree/multiplier independence criteria, and sphere
orbifolds with the generalized-Lattes checks.  All arithmetic is exact over
Q or Q(i).
"""

from .algdep import (
    DependencyCertificate,
    find_relation,
    find_relation_boettcher,
    implicitize,
    is_generically_one_to_one,
    verify_invariant_curve,
)
from .bipoly import BivariatePolynomial
from .dynsys import (
    CommonIterateResult,
    CompatibilityReport,
    SemiconjugacyTriple,
    TheoremConditionReport,
    common_iterate_search,
    degree_compatibility,
    independence_check,
    multiplier_dependence,
    transport_boettcher_check,
    verify_commute,
    verify_semiconjugacy,
    verify_theorem_conditions,
)
from .errors import DynalgError
from .linalg import ExactMatrix, nullspace, rank
from .orbifold import (
    Orbifold,
    check_generalized_lattes,
    classify_special,
    detect_generalized_lattes,
    euler_char,
    is_covering_map,
    is_holomorphic_map,
    is_minimal_holomorphic,
)
from .parsing import parse_point, parse_ratfunc
from .poly import Polynomial
from .ratfunc import (
    FixedPointRecord,
    PointP1,
    RationalFunction,
    compose,
    critical_points,
    fixed_points,
    iterate,
    local_degree,
    multiplier_at,
    preimages,
)
from .scalars import ExactScalar, Field, QI, QQ, parse_scalar
from .series import (
    BoettcherSeries,
    TruncatedPowerSeries,
    boettcher_series,
    match_scale,
    poincare_series,
    poincare_residual,
    series_substitute_power,
    transport_poincare,
)

__version__ = "0.1.0"
