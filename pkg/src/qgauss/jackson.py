"""Jackson q-integration and the Jackson q-measure of intervals."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Tuple

from .errors import DomainError, EvaluationError, TruncationError
from .qcore import DEFAULT_POLICY, QLike, TruncationPolicy, as_q

# consecutive sub-tolerance terms required before stopping
_SMALL_RUN = 3
# window of recent |f| samples used as the running bound on f
_WINDOW = 8


@dataclass(frozen=True)
class Interval:
    """Integration limits ``[a, b]``; reversed limits are allowed."""

    a: float
    b: float

    def __iter__(self):
        return iter((self.a, self.b))


def _as_interval(iv) -> Interval:
    if isinstance(iv, Interval):
        return iv
    a, b = iv
    return Interval(float(a), float(b))


def _sample(f, x):
    y = f(x)
    if not math.isfinite(y):
        raise EvaluationError(f"integrand returned {y!r} at x={x!r}")
    return y


def jackson_integral(
    f: Callable[[float], float],
    q: QLike,
    iv,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> float:
    """``(1-q) sum_n q**n (b f(q**n b) - a f(q**n a))``.

    ``f`` is sampled on the geometric sequences ``q**n a`` and ``q**n b``.
    Summation stops once the tail bound ``q**(n+1) (|b| M_b + |a| M_a)``
    (``M`` the largest of the last few ``|f|`` samples) and the last three
    terms are all below ``policy.abs_tol``.
    """
    q = as_q(q)
    a, b = _as_interval(iv)
    if q == 0.0:
        fb = _sample(f, b) if b != 0 else 0.0
        fa = _sample(f, a) if a != 0 else 0.0
        return b * fb - a * fa

    recent_a: deque = deque(maxlen=_WINDOW)
    recent_b: deque = deque(maxlen=_WINDOW)
    total = 0.0
    qn = 1.0
    small_run = 0
    for n in range(policy.max_terms):
        fb = _sample(f, qn * b) if b != 0 else 0.0
        fa = _sample(f, qn * a) if a != 0 else 0.0
        recent_b.append(abs(fb))
        recent_a.append(abs(fa))
        term = (1.0 - q) * qn * (b * fb - a * fa)
        total += term
        small_run = small_run + 1 if abs(term) < policy.abs_tol else 0
        qn *= q
        tail = qn * (abs(b) * max(recent_b) + abs(a) * max(recent_a))
        if tail < policy.abs_tol and small_run >= _SMALL_RUN:
            return total
    raise TruncationError(f"Jackson sum did not converge within {policy.max_terms} terms")


def _indicator(intervals: Sequence[Tuple[float, float]]):
    def f(x):
        return 1.0 if any(lo <= x <= hi for lo, hi in intervals) else 0.0

    return f


def _exit_index(q: float, a: float, b: float) -> int:
    """Smallest l >= 0 with q**l * b < a, i.e. the first node to leave [a, b]."""
    l = 0
    node = b
    while node >= a:
        l += 1
        node = b * q**l
    return l


def q_measure(q: QLike, iv) -> float:
    """Jackson measure ``m_q[a, b] = (b - a) + q a - q**l b`` for ``0 <= a <= b``.

    ``l`` is the smallest integer with ``q**l b < a``; with ``a = 0`` the
    measure is ``b``.
    """
    q = as_q(q)
    a, b = _as_interval(iv)
    if a < 0:
        raise DomainError("q_measure is only supported for intervals with a >= 0")
    if b < a:
        raise DomainError(f"q_measure needs a <= b, got [{a!r}, {b!r}]")
    if a == 0:
        return b
    if q == 0.0:
        return b - a
    l = _exit_index(q, a, b)
    return (b - a) + q * a - q**l * b


def indicator_measure(q: QLike, iv, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """``m_q[a, b]`` evaluated directly as the Jackson integral of ``1_[a,b]``.

    The b-branch counts nodes ``q**n b`` inside ``[a, b]``; the a-branch only
    ever sees ``a`` itself.  Summed exactly rather than through the generic
    engine so no tail heuristics are involved.
    """
    q = as_q(q)
    a, b = _as_interval(iv)
    if b < a:
        raise DomainError(f"indicator_measure needs a <= b, got [{a!r}, {b!r}]")
    inside = _indicator([(a, b)])
    if q == 0.0:
        return b * inside(b) - a * inside(a)
    total = 0.0
    qn = 1.0
    for _ in range(policy.max_terms):
        xb, xa = qn * b, qn * a
        hit_b, hit_a = inside(xb), inside(xa)
        total += (1.0 - q) * qn * (b * hit_b - a * hit_a)
        qn *= q
        # once both sequences have dropped below a (a > 0), nothing more is counted;
        # with a == 0 the remaining b-nodes stay inside and sum to qn * b
        if a > 0 and xb < a and xa < a:
            return total
        if a == 0 and qn * abs(b) < policy.abs_tol:
            return total + qn * b
    raise TruncationError("indicator series did not terminate")


def q_measure_union(q: QLike, intervals: Iterable, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Jackson measure of a finite disjoint union of intervals in ``[0, inf)``.

    Each component is measured by the indicator series of that component.
    """
    parts = sorted(tuple(map(float, iv)) for iv in intervals)
    for (a0, b0), (a1, b1) in zip(parts, parts[1:]):
        if a1 <= b0:
            raise DomainError("intervals must be pairwise disjoint")
    if parts and parts[0][0] < 0:
        raise DomainError("q_measure_union is only supported on [0, inf)")
    return sum(indicator_measure(q, iv, policy) for iv in parts)
