"""The Gaussian q-measure: normalization, density, distribution and moments.

The measure lives on ``[-nu, nu]`` with ``nu = (1-q)**-0.5``.  Its
normalization ``c(q)`` is computed from the closed alternating series and
cross-checked against a direct Jackson sum of the kernel at construction.
"""
from __future__ import annotations

import math
from functools import cached_property

import numpy as np

from ._series import SeriesEvalReport, evaluate
from .errors import ConsistencyError, DomainError, TruncationError
from .qcore import DEFAULT_POLICY, Q_MAX, QLike, TruncationPolicy, as_q
from .qexp import gauss_kernel

C_Q_CROSSCHECK_RTOL = 1e-9
_BISECT_TOL = 1e-12
_BISECT_MAX_ITER = 200


def check_supported(q: QLike) -> float:
    """Validate ``q`` and enforce the ``q < Q_MAX`` cap of this module."""
    q = as_q(q)
    if not q < Q_MAX:
        raise DomainError(f"q={q!r} is outside the supported range 0 <= q < {Q_MAX!r}")
    return q


def _c_terms(q: float):
    # (-1)**m q**(m(m+1)) / ((1 - q**(2m+1)) prod_{i=1..m} (1 - q**(2i)))
    def terms(num):
        qq = num(q)
        q2 = qq * qq
        q_odd = qq  # q**(2m+1)
        term = 1 / (1 - qq)
        while True:
            q_even = q_odd * qq  # q**(2m+2)
            q_odd_next = q_even * qq
            step = -q_even * (1 - q_odd) / ((1 - q_odd_next) * (1 - q_even))
            yield term, q_even / (1 - q_even)
            term *= step
            q_odd = q_odd_next

    return terms


def c_q_series_report(q: QLike, policy: TruncationPolicy = DEFAULT_POLICY) -> SeriesEvalReport:
    q = as_q(q)
    inner = evaluate(_c_terms(q), policy)
    scale = 2.0 * math.sqrt(1.0 - q)
    return SeriesEvalReport(scale * inner.value, inner.terms_used, scale * inner.tail_bound, inner.digits)


def c_q_series(q: QLike, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Normalization ``c(q)`` from its closed alternating series."""
    return c_q_series_report(q, policy).value


def _kernel_halfline_sum(q: float, b: float, power: int, policy: TruncationPolicy) -> float:
    """Jackson integral of ``x**power * kernel(x)`` over ``[0, b]``, ``0 <= b <= nu``.

    Uses ``(1-q) b sum_j q**j f(q**j b)``.  Along the nodes ``q**j b`` the
    kernel's Euler product telescopes: ``K(q**j b) = prod_{m>j} (1 - y_m)``
    with ``y_m = (1-q) b**2 q**(2m)``, so every node value is a suffix
    product of one factor sequence.  All factors lie in ``(0, 1]``.
    """
    if b == 0.0:
        return 0.0
    if q == 0.0:
        return b ** (power + 1)
    nu = 1.0 / math.sqrt(1.0 - q)
    if b > nu * (1 + 1e-15):
        raise DomainError(f"b={b!r} exceeds the support endpoint nu={nu!r}")
    log_q = math.log(q)
    k = power + 1
    # terms are bounded by (1-q) b**k q**(j k); stop once the geometric tail is below tol
    head = (1.0 - q) * b**k / (1.0 - q**k)
    n_nodes = max(1, math.ceil(math.log(policy.abs_tol / head) / (k * log_q)) + 1) if head > policy.abs_tol else 1
    if n_nodes > policy.max_terms:
        raise TruncationError(f"{n_nodes} Jackson nodes needed, max_terms={policy.max_terms}")
    y1 = (1.0 - q) * b * b
    # factors beyond n_factors change the product by less than 1e-17
    n_factors = max(n_nodes, math.ceil(math.log(1e-17 * (1.0 - q * q) / y1) / (2 * log_q)) + 1)
    m = np.arange(1, n_factors + 1, dtype=float)
    logs = np.log1p(-y1 * np.exp(2.0 * log_q * m))
    suffix = np.cumsum(logs[::-1])[::-1]
    j = np.arange(n_nodes, dtype=float)
    weights = np.exp(log_q * j)
    nodes = weights * b
    terms = weights * nodes**power * np.exp(suffix[:n_nodes])
    return (1.0 - q) * b * math.fsum(terms)


def c_q_integral(q: QLike, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Normalization ``c(q) = 2 * int_0^nu kernel d_q x`` by direct Jackson summation."""
    q = as_q(q)
    return 2.0 * _kernel_halfline_sum(q, 1.0 / math.sqrt(1.0 - q), 0, policy)


def pi_approx(q: QLike, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """``c(q)**2 / 2``, which tends to pi as q -> 1."""
    return c_q_series(q, policy) ** 2 / 2.0


def _odd_coefficient_terms(q: float, a: float, b: float):
    # d_n (b**(2n+1) - a**(2n+1)) with
    # d_n = q**(n(n+1)) (q-1)**n / ((1 - q**(2n+1)) prod_{i<=n}(1 - q**(2i)))
    def terms(num):
        qq, aa, bb = num(q), num(a), num(b)
        one_minus_q = 1 - qq
        coeff = 1 / one_minus_q
        q_odd = qq
        pa, pb = aa, bb  # a**(2n+1), b**(2n+1)
        a2, b2 = aa * aa, bb * bb
        n = 0
        while True:
            q_even = q_odd * qq
            q_odd_next = q_even * qq
            ratio = one_minus_q * q_even / (1 - q_even) * b2 * (2 * n + 3) / (2 * n + 1)
            yield coeff * (pb - pa), ratio
            coeff *= -one_minus_q * q_even * (1 - q_odd) / ((1 - q_odd_next) * (1 - q_even))
            q_odd = q_odd_next
            pa *= a2
            pb *= b2
            n += 1

    return terms


class GaussQ:
    """Gaussian q-measure for a fixed ``q``.

    Immutable after construction; ``c_q`` is the closed-series normalization,
    verified against the Jackson-sum route to ``C_Q_CROSSCHECK_RTOL``.
    """

    def __init__(self, q: QLike, policy: TruncationPolicy = DEFAULT_POLICY):
        self._q = check_supported(q)
        self._policy = policy
        self._nu = 1.0 / math.sqrt(1.0 - self._q)
        self._c_report = c_q_series_report(self._q, policy)
        c_int = c_q_integral(self._q, policy)
        c = self._c_report.value
        gap = abs(c - c_int) / abs(c)
        if not (c > 0 and gap < C_Q_CROSSCHECK_RTOL):
            raise ConsistencyError(
                f"c(q) routes disagree at q={self._q!r}: series={c!r}, integral={c_int!r}"
            )
        self._c = c

    q = property(lambda self: self._q)
    nu = property(lambda self: self._nu)
    c_q = property(lambda self: self._c)
    policy = property(lambda self: self._policy)

    def __repr__(self):
        return f"GaussQ(q={self._q!r}, nu={self._nu!r}, c_q={self._c!r})"

    def density(self, x: float) -> float:
        """Gaussian q-density: ``kernel(x) / c(q)`` on ``[-nu, nu]``, zero outside."""
        if abs(x) > self._nu:
            return 0.0
        return gauss_kernel(self._q, x, self._policy) / self._c

    def cdf_partial_integral(self, a: float, b: float) -> float:
        """``(1/c) int_a^b kernel d_q t`` for ``0 <= a <= b <= nu`` via the closed series."""
        return self.cdf_partial_report(a, b).value

    def cdf_partial_report(self, a: float, b: float) -> SeriesEvalReport:
        a, b = float(a), float(b)
        if not (0.0 <= a <= b <= self._nu):
            raise DomainError(f"need 0 <= a <= b <= nu={self._nu!r}, got a={a!r}, b={b!r}")
        if a == b:
            return SeriesEvalReport(0.0, 0, 0.0)
        scale = (1.0 - self._q) / self._c
        policy = TruncationPolicy(self._policy.abs_tol / scale, self._policy.max_terms)
        inner = evaluate(_odd_coefficient_terms(self._q, a, b), policy)
        return SeriesEvalReport(scale * inner.value, inner.terms_used, scale * inner.tail_bound, inner.digits)

    def cdf_report(self, x: float) -> SeriesEvalReport:
        x = float(x)
        if x < -self._nu:
            return SeriesEvalReport(0.0, 0, 0.0)
        if x > self._nu:
            return SeriesEvalReport(1.0, 0, 0.0)
        if x == 0.0:
            return SeriesEvalReport(0.5, 0, 0.0)
        half = self.cdf_partial_report(0.0, abs(x))
        value = 0.5 + half.value if x > 0 else 0.5 - half.value
        return SeriesEvalReport(min(1.0, max(0.0, value)), half.terms_used, half.tail_bound, half.digits)

    def cdf(self, x: float) -> float:
        """Gaussian q-distribution ``G_q(x)``."""
        return self.cdf_report(x).value

    def moment(self, n: int) -> float:
        """``(1/c) int_{-nu}^{nu} x**n kernel(x) d_q x``; odd moments are exactly 0."""
        if isinstance(n, bool) or int(n) != n or n < 0:
            raise DomainError(f"moment order must be a nonnegative integer, got {n!r}")
        n = int(n)
        if n % 2:
            return 0.0
        return 2.0 * _kernel_halfline_sum(self._q, self._nu, n, self._policy) / self._c

    def inverse_cdf(self, u: float) -> float:
        """Smallest-bracket bisection solution of ``cdf(x) = u`` on ``[-nu, nu]``."""
        u = float(u)
        if not 0.0 < u < 1.0:
            raise DomainError(f"u must lie in (0, 1), got {u!r}")
        if u == 0.5:
            return 0.0
        if self._q == 0.0:
            return 2.0 * u - 1.0
        lo, hi = -self._nu, self._nu
        for _ in range(_BISECT_MAX_ITER):
            mid = 0.5 * (lo + hi)
            err = self.cdf(mid) - u
            if abs(err) < _BISECT_TOL or mid in (lo, hi):
                return mid
            if err < 0:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    @cached_property
    def _odd_coefficients(self):
        """Float coefficients of ``G_q(x) - 1/2`` in powers ``x**(2n+1)``, or None if ill-conditioned."""
        q, nu = self._q, self._nu
        scale = (1.0 - q) / self._c
        coeffs = []
        coeff = scale / (1.0 - q)
        q_odd = q
        abs_sum = 0.0
        for n in range(self._policy.max_terms):
            coeffs.append(coeff)
            size = abs(coeff) * nu ** (2 * n + 1)
            abs_sum += size
            q_even = q_odd * q
            q_odd_next = q_even * q
            ratio = (1.0 - q) * q_even / (1.0 - q_even) * nu * nu * (2 * n + 3) / (2 * n + 1)
            if ratio < 1 and size * ratio / (1 - ratio) < self._policy.abs_tol:
                break
            coeff *= -(1.0 - q) * q_even * (1.0 - q_odd) / ((1.0 - q_odd_next) * (1.0 - q_even))
            q_odd = q_odd_next
            if not math.isfinite(abs_sum):
                return None
        else:
            return None
        if abs_sum * 2.0**-50 > 0.5 * self._policy.abs_tol:
            return None
        return np.array(coeffs[::-1])

    def cdf_array(self, x) -> np.ndarray:
        """Vectorized :meth:`cdf`; falls back to the scalar path when float Horner is unsafe."""
        x = np.asarray(x, dtype=float)
        coeffs = self._odd_coefficients
        if coeffs is None:
            return np.vectorize(self.cdf, otypes=[float])(x)
        x2 = x * x
        acc = np.zeros_like(x)
        for c in coeffs:
            acc = acc * x2 + c
        out = np.clip(0.5 + acc * x, 0.0, 1.0)
        out = np.where(x < -self._nu, 0.0, out)
        return np.where(x > self._nu, 1.0, out)

    def sample(self, u) -> np.ndarray:
        """Inverse-CDF transform of an array of uniforms in (0, 1)."""
        u = np.asarray(u, dtype=float)
        if np.any((u <= 0.0) | (u >= 1.0)):
            raise DomainError("uniforms must lie strictly inside (0, 1)")
        if self._q == 0.0:
            return 2.0 * u - 1.0
        if self._odd_coefficients is None:
            return np.vectorize(self.inverse_cdf, otypes=[float])(u)
        lo = np.full_like(u, -self._nu)
        hi = np.full_like(u, self._nu)
        for _ in range(_BISECT_MAX_ITER):
            mid = 0.5 * (lo + hi)
            below = self.cdf_array(mid) < u
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
            if np.all((hi - lo) <= 4 * np.spacing(np.abs(mid) + 1e-300)):
                break
        return 0.5 * (lo + hi)
