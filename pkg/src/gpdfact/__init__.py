"""Finite groupoids, their functors, and the factorization of a functor into a
final functor followed by a discrete fibration, all computed inside finite sets."""

from .dec import (
    FactorizationResult,
    comprehensive_factorize,
    dec,
    dec_functor,
    epsilon,
    exact_fork_check,
    is_final_corollary,
    is_final_lemma,
    is_final_theorem,
)
from .gpd import (
    ConsistencyError,
    Groupoid,
    InternalFunctor,
    InvalidFunctor,
    boff_factorize,
    cartesian_lift,
    comparison_map,
    is_discrete_fibration,
    is_essentially_surjective,
    is_faithful,
    is_full,
    pi0,
    pi0_map,
    psi,
    pullback_groupoid,
    support,
    validate_functor,
    validate_groupoid,
)
from .oracle import (
    EnumerationBounds,
    comma_groupoid,
    elements_factorization,
    enumerate_functors,
    enumerate_groupoids,
    is_final_comma,
    iso_search,
    orthogonal_fill,
)
from .setcore import BoundaryError, CompositionError, FinMap, FinSet

__version__ = "0.1.0"

__all__ = [
    "FactorizationResult",
    "comprehensive_factorize",
    "dec",
    "dec_functor",
    "epsilon",
    "exact_fork_check",
    "is_final_corollary",
    "is_final_lemma",
    "is_final_theorem",
    "ConsistencyError",
    "Groupoid",
    "InternalFunctor",
    "InvalidFunctor",
    "boff_factorize",
    "cartesian_lift",
    "comparison_map",
    "is_discrete_fibration",
    "is_essentially_surjective",
    "is_faithful",
    "is_full",
    "pi0",
    "pi0_map",
    "psi",
    "pullback_groupoid",
    "support",
    "validate_functor",
    "validate_groupoid",
    "EnumerationBounds",
    "comma_groupoid",
    "elements_factorization",
    "enumerate_functors",
    "enumerate_groupoids",
    "is_final_comma",
    "iso_search",
    "orthogonal_fill",
    "BoundaryError",
    "CompositionError",
    "FinMap",
    "FinSet",
]
