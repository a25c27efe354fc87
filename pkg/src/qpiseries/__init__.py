"""Exact and certified-precision verification of q-series identities.

The package evaluates both sides of every catalogued identity by
independent routes: terminating relations in exact rational arithmetic on
an exponent lattice, nonterminating ones as certified truncations whose
error bounds include the series and infinite-product tails, and q -> 1
limits by Richardson extrapolation against independently computed pi and
Gamma constants.
"""

from .errors import (
    ConvergenceError,
    DomainError,
    LatticeError,
    ModeError,
    PoleError,
    PrecisionError,
    QvError,
)
from .numerics import ApproxScalar, ExactScalar, approx_from_exact, exact_pow
from .qkernel import (
    INF,
    LatticeCtx,
    QPoint,
    qbinomial,
    qgamma,
    qpoch_falling,
    qpoch_multi,
    qpoch_rising,
)
from .carlitz import (
    PhiPolynomial,
    forward_matrix,
    forward_minus,
    forward_plus,
    inverse_matrix,
    inverse_minus,
    inverse_plus,
    phi_eval,
)
from .identities import (
    IdentityRecord,
    VerificationReport,
    catalog,
    catalog_text,
    check_pfaff_saalschutz,
    check_terminating,
    check_theorem,
    eval_theorem_lhs,
    eval_theorem_rhs,
    find,
    verify_all,
    verify_example,
)
from .bisection import (
    TermSeries,
    bisect_combine,
    check_bisection_pair,
    check_bracket_identity_c2,
)
from .limits import (
    ClassicalSeries,
    ConstantTarget,
    LimitReport,
    eval_classical,
    gamma_constant,
    pi_oracle,
    q_limit,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxScalar", "ClassicalSeries", "ConstantTarget", "ConvergenceError",
    "DomainError", "ExactScalar", "INF", "IdentityRecord", "LatticeCtx",
    "LatticeError", "LimitReport", "ModeError", "PhiPolynomial", "PoleError",
    "PrecisionError", "QPoint", "QvError", "TermSeries", "VerificationReport",
    "approx_from_exact", "bisect_combine", "catalog", "catalog_text",
    "check_bisection_pair", "check_bracket_identity_c2",
    "check_pfaff_saalschutz", "check_terminating", "check_theorem",
    "eval_classical", "eval_theorem_lhs", "eval_theorem_rhs", "exact_pow",
    "find", "forward_matrix", "forward_minus", "forward_plus",
    "gamma_constant", "inverse_matrix", "inverse_minus", "inverse_plus",
    "phi_eval", "pi_oracle", "q_limit", "qbinomial", "qgamma",
    "qpoch_falling", "qpoch_multi", "qpoch_rising", "verify_all",
    "verify_example",
]
