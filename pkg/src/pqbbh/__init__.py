"""Two-parameter Bleimann-Butzer-Hahn operators and their convergence apparatus."""

from .analysis import (
    ConvergenceReport,
    ConvergenceRow,
    GridSpec,
    HarmonicSchedule,
    LipschitzClass,
    ParamSchedule,
    PointSet,
    RatePoint,
    StancuBoundReport,
    convergence_report,
    delta_n,
    distance_to_set,
    korovkin_discrepancy,
    lipschitz_bound,
    lipschitz_constant_estimate,
    modulus_estimate,
    moment_closed,
    param_schedule,
    rate_bound_check,
    stancu_bound,
    stancu_bound_report,
    sup_delta,
)
from .expressions import (
    ExpressionDomainError,
    ExpressionError,
    ExpressionSyntaxError,
    as_function,
    eval_expression,
    format_expression,
    parse_expression,
)
from .functions import REGISTRY, registry_function
from .operators import (
    EvaluationError,
    NodeTable,
    OperatorSpec,
    RealFunction,
    StancuShift,
    WeightTable,
    divided_difference,
    evaluate,
    evaluate_stancu,
    nodes,
    representation_rhs,
    stancu_nodes,
    weights,
)
from .pq_core import (
    DomainError,
    PqParams,
    euler_coefficients,
    log_pochhammer_ell,
    pochhammer_ell,
    pq_binomial,
    pq_factorial,
    pq_integer,
    pq_integers,
    pq_log_factorial,
)

__all__ = [
    "ConvergenceReport",
    "ConvergenceRow",
    "DomainError",
    "EvaluationError",
    "ExpressionDomainError",
    "ExpressionError",
    "ExpressionSyntaxError",
    "GridSpec",
    "HarmonicSchedule",
    "LipschitzClass",
    "NodeTable",
    "OperatorSpec",
    "ParamSchedule",
    "PointSet",
    "PqParams",
    "RatePoint",
    "RealFunction",
    "REGISTRY",
    "StancuBoundReport",
    "StancuShift",
    "WeightTable",
    "as_function",
    "convergence_report",
    "delta_n",
    "distance_to_set",
    "divided_difference",
    "euler_coefficients",
    "eval_expression",
    "evaluate",
    "evaluate_stancu",
    "format_expression",
    "korovkin_discrepancy",
    "lipschitz_bound",
    "lipschitz_constant_estimate",
    "log_pochhammer_ell",
    "modulus_estimate",
    "moment_closed",
    "nodes",
    "param_schedule",
    "parse_expression",
    "pochhammer_ell",
    "pq_binomial",
    "pq_factorial",
    "pq_integer",
    "pq_integers",
    "pq_log_factorial",
    "rate_bound_check",
    "registry_function",
    "representation_rhs",
    "stancu_bound",
    "stancu_bound_report",
    "stancu_nodes",
    "sup_delta",
    "weights",
]
