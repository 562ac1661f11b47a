"""The q-exponentials ``e_q``, ``E_q`` and the Gaussian kernel built on them.

Series are accumulated by term recurrence.  Each term source also reports a
nonincreasing bound on the ratio of consecutive terms, which the engine in
:mod:`qgauss._series` turns into a rigorous tail bound.
"""
from __future__ import annotations

import math

from ._series import SeriesEvalReport, evaluate
from .errors import DomainError
from .qcore import DEFAULT_POLICY, QLike, TruncationPolicy, as_q


def e_q(q: QLike, x: float, policy: TruncationPolicy = DEFAULT_POLICY) -> SeriesEvalReport:
    """``e_q^x = sum x**n / [n]_q!``, valid for ``|x (1-q)| < 1``."""
    q = as_q(q)
    x = float(x)
    if not abs(x * (1.0 - q)) < 1.0:
        raise DomainError(f"e_q diverges for |x(1-q)| >= 1 (q={q!r}, x={x!r})")
    if x == 0.0:
        return SeriesEvalReport(1.0, 1, 0.0)

    def terms(num):
        qq, xx = num(q), num(x)
        term, q_next = num(1), qq
        while True:
            step = xx * (1 - qq) / (1 - q_next)
            yield term, abs(step)
            term *= step
            q_next *= qq

    return evaluate(terms, policy)


def E_q(q: QLike, x: float, policy: TruncationPolicy = DEFAULT_POLICY) -> SeriesEvalReport:
    """``E_q^x = sum q**(n(n-1)/2) x**n / [n]_q!``; entire in ``x``."""
    q = as_q(q)
    x = float(x)
    if x == 0.0:
        return SeriesEvalReport(1.0, 1, 0.0)

    def terms(num):
        qq, xx = num(q), num(x)
        term, q_n, q_next = num(1), num(1), qq
        while True:
            step = q_n * xx * (1 - qq) / (1 - q_next)
            yield term, abs(step)
            term *= step
            q_n *= qq
            q_next *= qq

    return evaluate(terms, policy)


def gauss_kernel_report(q: QLike, x: float, policy: TruncationPolicy = DEFAULT_POLICY) -> SeriesEvalReport:
    """Gaussian kernel ``E_{q^2}^{-q^2 x^2/[2]_q}`` by its even-power series.

    Term ``n`` is ``(-1)**n q**(n(n+1)) (1-q)**n x**(2n) / prod_{i<=n}(1-q**(2i))``.
    """
    q = as_q(q)
    x = float(x)
    if x == 0.0 or q == 0.0:
        return SeriesEvalReport(1.0, 1, 0.0)

    def terms(num):
        qq, xx = num(q), num(x)
        scale = (1 - qq) * xx * xx
        q2 = qq * qq
        term, q_even = num(1), q2  # q_even = q**(2n+2)
        while True:
            step = -q_even * scale / (1 - q_even)
            yield term, abs(step)
            term *= step
            q_even *= q2

    return evaluate(terms, policy)


def gauss_kernel(q: QLike, x: float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Value of the Gaussian kernel, the q-analogue of ``exp(-x**2/2)``."""
    return gauss_kernel_report(q, x, policy).value


def gauss_kernel_product(q: QLike, x: float) -> float:
    """Gaussian kernel through its Euler product ``prod_{k>=1} (1 - (1-q) q**(2k) x**2)``.

    All factors are positive on ``|x| <= nu``, so this form is stable where the
    alternating series cancels.  Truncated once the neglected factors change
    the result by less than one ulp.
    """
    q = as_q(q)
    x = float(x)
    y = (1.0 - q) * x * x
    if y == 0.0 or q == 0.0:
        return 1.0
    q2 = q * q
    tail_scale = 1.0 / (1.0 - q2)
    result = 1.0
    yk = y * q2
    while yk * tail_scale > 1e-17:
        result *= 1.0 - yk
        yk *= q2
    return result
