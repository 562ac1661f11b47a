"""Summation engine for the q-series used throughout the package.

A series is described by a *term source*: a callable taking a number
constructor (``float`` or ``mpmath.mpf``) and yielding pairs
``(term, ratio_bound)``.  ``ratio_bound`` must bound ``|t[k+1] / t[k]|`` for
every ``k`` from the yielded term onwards; once it is below one the remaining
tail is bounded by a geometric series.

The first pass runs in double precision.  When the alternating series
cancels badly (sum of magnitudes large compared to the tolerance) the same
source is re-run in mpmath with enough decimal digits to absorb the loss.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator, Tuple

import mpmath

from .errors import TruncationError
from .qcore import TruncationPolicy

TermSource = Callable[[Callable], Iterator[Tuple[object, object]]]

# rounding error of a float pass, as a multiple of sum(|t|)
_ROUNDING_FACTOR = 2.0**-50
_GUARD_DIGITS = 10


@dataclass(frozen=True)
class SeriesEvalReport:
    """Result of a truncated series evaluation.

    ``digits`` is 0 for a double-precision pass, otherwise the mpmath working
    precision (decimal digits) that was needed.
    """

    value: float
    terms_used: int
    tail_bound: float
    digits: int = 0


def _accumulate(source: TermSource, num, policy: TruncationPolicy):
    total = num(0)
    abs_total = num(0)
    n = 0
    for term, ratio in source(num):
        total += term
        abs_total += abs(term)
        n += 1
        if abs_total == math.inf:
            raise OverflowError
        if ratio < 1:
            tail = abs(term) * ratio / (1 - ratio)
            if tail < policy.abs_tol:
                return total, abs_total, n, tail
        if n >= policy.max_terms:
            raise TruncationError(
                f"series did not reach abs_tol={policy.abs_tol:g} within {policy.max_terms} terms"
            )
    # finite source: exhausted means the remainder is exactly zero
    return total, abs_total, n, num(0)


def evaluate(source: TermSource, policy: TruncationPolicy) -> SeriesEvalReport:
    """Sum ``source`` to ``policy.abs_tol``, raising precision if needed."""
    try:
        total, abs_total, n, tail = _accumulate(source, float, policy)
        overflow = not (math.isfinite(abs_total) and math.isfinite(total))
    except OverflowError:
        overflow = True
    if overflow:
        with mpmath.workdps(20):
            _, abs_total, _, _ = _accumulate(source, mpmath.mpf, policy)
    elif abs_total * _ROUNDING_FACTOR <= 0.5 * policy.abs_tol:
        return SeriesEvalReport(float(total), n, float(tail), 0)

    lost = mpmath.log10(mpmath.mpf(abs_total) / policy.abs_tol)
    digits = max(20, int(mpmath.ceil(lost)) + _GUARD_DIGITS)
    with mpmath.workdps(digits):
        total, _, n, tail = _accumulate(source, mpmath.mpf, policy)
        return SeriesEvalReport(float(total), n, float(tail), digits)

