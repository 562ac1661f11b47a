"""q-number arithmetic and the q-derivative.

Everything here works in double precision.  ``q`` may be given either as a
plain float or as a :class:`QParam`; both are validated the same way.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

from .errors import DomainError

#: Largest deformation parameter the Gaussian q-measure code accepts (exclusive).
Q_MAX = 1.0 - 1e-5

# Above this n the bracket switches from the explicit sum to expm1/log1p.
_BRACKET_SUM_LIMIT = 64


@dataclass(frozen=True)
class QParam:
    """Validated deformation parameter ``0 <= q < 1``."""

    q: float

    def __post_init__(self):
        q = self.q
        if isinstance(q, QParam):
            q = q.q
        q = float(q)
        if not (0.0 <= q < 1.0) or math.isnan(q):
            raise DomainError(f"q must satisfy 0 <= q < 1, got {q!r}")
        object.__setattr__(self, "q", q)

    @property
    def nu(self) -> float:
        """Support endpoint ``(1-q)**-0.5``."""
        return 1.0 / math.sqrt(1.0 - self.q)

    def __float__(self) -> float:
        return self.q


QLike = Union[QParam, float]


def as_q(q: QLike) -> float:
    """Validate ``q`` and return it as a float."""
    if isinstance(q, QParam):
        return q.q
    return QParam(q).q


@dataclass(frozen=True)
class TruncationPolicy:
    """Stopping rule shared by every infinite-series evaluator.

    A series stops once a rigorous (or, for black-box integrands, heuristic)
    bound on its tail drops below ``abs_tol``; reaching ``max_terms`` first is
    an error.
    """

    abs_tol: float = 1e-12
    max_terms: int = 100_000

    def __post_init__(self):
        if not self.abs_tol > 0 or not math.isfinite(self.abs_tol):
            raise DomainError(f"abs_tol must be a positive finite number, got {self.abs_tol!r}")
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise DomainError(f"max_terms must be a positive integer, got {self.max_terms!r}")


DEFAULT_POLICY = TruncationPolicy()


def _check_n(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    return int(n)


def q_bracket(q: QLike, n: int) -> float:
    """The q-integer ``[n]_q = 1 + q + ... + q**(n-1)``."""
    q = as_q(q)
    n = _check_n(n)
    if n == 0:
        return 0.0
    if n <= _BRACKET_SUM_LIMIT:
        total = 0.0
        # smallest terms first
        for k in range(n - 1, -1, -1):
            total += q**k
        return total
    if q < 0.5:
        return (1.0 - q**n) / (1.0 - q)
    # (1 - q**n) / (1 - q) without cancellation near q = 1; q - 1 is exact here
    return -math.expm1(n * math.log1p(q - 1.0)) / (1.0 - q)


def q_factorial(q: QLike, n: int) -> float:
    """``[n]_q! = [n]_q [n-1]_q ... [1]_q``."""
    q = as_q(q)
    n = _check_n(n)
    result = 1.0
    for k in range(2, n + 1):
        result *= q_bracket(q, k)
    return result


def q_double_factorial(q: QLike, n: int) -> float:
    """``[2n-1]_q!! = [2n-1]_q [2n-3]_q ... [1]_q``; note ``n`` is the half-index."""
    q = as_q(q)
    n = _check_n(n)
    result = 1.0
    for k in range(1, n + 1):
        result *= q_bracket(q, 2 * k - 1)
    return result


def q_pochhammer(a: float, b: float, q: QLike, n: int) -> float:
    """The product ``(a + b)_q^n = prod_{i<n} (a + q**i * b)``."""
    q = as_q(q)
    n = _check_n(n)
    result = 1.0
    qi = 1.0
    for _ in range(n):
        result *= a + qi * b
        qi *= q
    return result


def q_derivative(f: Callable[[float], float], q: QLike, x: float) -> float:
    """Jackson q-difference quotient ``(f(qx) - f(x)) / ((q-1) x)``.

    At ``q = 0`` this is ``(f(x) - f(0)) / x``.  ``f`` is called exactly twice.
    """
    q = as_q(q)
    if x == 0:
        raise DomainError("the q-derivative is only defined for x != 0")
    if q == 0.0:
        return (f(x) - f(0.0)) / x
    return (f(q * x) - f(x)) / ((q - 1.0) * x)
