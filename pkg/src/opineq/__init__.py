"""Finite-dimensional numerical verification of Levin-Steckin type operator
inequalities for operator convex functions."""

from .errors import (
    DomainError,
    InvalidWeight,
    NotApplicable,
    NotDifferentiable,
    OpIneqError,
    SpectrumOutOfDomain,
)
from .frechet import (
    check_segment_monotonicity,
    gateaux,
    gateaux_fd_oracle,
    gateaux_log_integral,
)
from .funcs import OperatorFunction, classify, inverse, log, negate, parse_function, power, square, xlogx
from .harness import InstanceSpec, emit_report, random_pair, run_campaign
from .ineq import (
    THEOREMS,
    IneqReport,
    InequalityInstance,
    cebysev_functional,
    check_cebysev_reverse,
    check_gateaux_reverse,
    check_hermite_hadamard,
    check_ls_operator,
    check_lupas_reverse,
    check_ostrowski_reverse,
    run_example_suite,
    scalar_bounds,
    scalar_levin_steckin,
)
from .matcore import SymMatrix, apply_fn, eigh, loewner_leq, quadratic_form, segment_point
from .quad import gauss_legendre, integrate_matrix, integrate_scalar, integrate_semi_infinite_matrix
from .weights import WeightFunction, bump, constant, parse_weight, tabulated, vee

__version__ = "0.1.0"
