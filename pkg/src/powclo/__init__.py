"""Finite power algebras, their congruences and the corresponding closure operators."""

from .algebra import (
    FiniteAlgebra,
    FreePresentation,
    classify_mode,
    enumerate_endomorphisms,
    eval_term,
    generate_subalgebra,
    holds_identity,
    quotient_algebra,
)
from .closure import (
    ClosureOperator,
    ConditionReport,
    check_conditions,
    closed_set_algebra,
    closure_from_congruence,
    compare_closures,
    congruence_from_closure,
    join_closures,
)
from .congruences import (
    all_congruences,
    delta_lift,
    delta_quotient,
    is_congruence,
    is_fully_invariant,
    lift_equiv,
    principal_congruence,
    rho_congruence,
    tilde,
)
from .errors import PowcloError
from .parser import parse_identity
from .power import PowerAlgebra, build_extended_power, build_relational_power, complex_op
from .suites import VerificationSuite, run_suite
from .terms import App, Identity, Var, is_linear_identity

__all__ = [
    "App", "ClosureOperator", "ConditionReport", "FiniteAlgebra", "FreePresentation",
    "Identity", "PowcloError", "PowerAlgebra", "Var", "VerificationSuite",
    "all_congruences", "build_extended_power", "build_relational_power",
    "check_conditions", "classify_mode", "closed_set_algebra", "closure_from_congruence",
    "compare_closures", "complex_op", "congruence_from_closure", "delta_lift",
    "delta_quotient", "enumerate_endomorphisms", "eval_term", "generate_subalgebra",
    "holds_identity", "is_congruence", "is_fully_invariant", "is_linear_identity",
    "join_closures", "lift_equiv", "parse_identity", "principal_congruence",
    "quotient_algebra", "rho_congruence", "run_suite", "tilde",
]
