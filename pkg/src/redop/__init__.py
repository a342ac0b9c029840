"""Exact reduction operators: lattice operations, syzygies, completion, Gröbner front end."""

from .completion import (
    CompletionReport,
    complete_with_report,
    completing_operator,
    incremental_completion,
    is_confluent,
    obstruction_set,
    reduce_family,
    verify_completion,
)
from .groebner import (
    Monomial,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    TruncatedContext,
    complete_groebner,
    is_groebner,
    operator_from_polynomial,
    verify_syzygy_identity,
)
from .lattice import join, leq, meet, meet_family, vee_bar
from .linear import (
    OrderedBasis,
    ReducedBasis,
    Vector,
    leading_term,
    membership_coords,
    reduce_basis,
    subspace_intersection,
    subspace_sum,
)
from .operator import ReductionOperator, from_kernel, kernel_of
from .syzygy import (
    OperatorFamily,
    ProductIndex,
    canonical_decomposition,
    nullspace_oracle,
    pi_F,
    syzygy_basis,
    syzygy_leading_indices,
)

__version__ = "0.1.0"
