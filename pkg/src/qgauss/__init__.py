"""Gaussian q-measure: q-calculus primitives, Jackson integration,
the Gaussian q-density and q-distribution, and q-weighted matchings."""

from .errors import ConsistencyError, DomainError, EvaluationError, QGaussError, TruncationError
from .gaussq import GaussQ, c_q_integral, c_q_series, pi_approx
from .jackson import Interval, indicator_measure, jackson_integral, q_measure, q_measure_union
from .matchcomb import Matching, QPolynomial, enumerate_matchings, weight, weighted_count
from .qcore import (
    Q_MAX,
    QParam,
    TruncationPolicy,
    q_bracket,
    q_derivative,
    q_double_factorial,
    q_factorial,
    q_pochhammer,
)
from .qexp import E_q, e_q, gauss_kernel, gauss_kernel_product

__version__ = "0.1.0"
