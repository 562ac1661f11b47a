"""Property suite run by ``qgauss check``.

Each check returns a :class:`CheckResult` with the largest error observed on
its grid and the threshold it is held to.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from .gaussq import GaussQ
from .jackson import indicator_measure, jackson_integral, q_measure, q_measure_union
from .matchcomb import weighted_count
from .qcore import (
    TruncationPolicy,
    q_bracket,
    q_derivative,
    q_double_factorial,
    q_factorial,
    q_pochhammer,
)
from .qexp import E_q, e_q, gauss_kernel

_SEED = 20240611


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_error: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.max_error <= self.threshold


def _rel(a, b):
    return abs(a - b) / max(1.0, abs(b))


def _max(values) -> float:
    return max(values, default=0.0)


def check_qcore(q: float) -> List[CheckResult]:
    xs = [x for x in np.linspace(-2, 2, 9) if x != 0]
    mono = _max(
        _rel(q_derivative(lambda t, n=n: t**n, q, x), q_bracket(q, n) * x ** (n - 1))
        for n in range(1, 8)
        for x in xs
    )
    iterated = []
    for n in range(1, 7):
        f: Callable[[float], float] = lambda t, n=n: t**n
        for _ in range(n):
            f = lambda t, g=f: q_derivative(g, q, t) if t != 0 else 0.0
        iterated.append(_rel(f(1.3), q_factorial(q, n)))
    poch = _max(_rel(q_factorial(q, n) * (1 - q) ** n, q_pochhammer(1.0, -q, q, n)) for n in range(21))
    return [
        CheckResult("qcore.monomial_rule", mono, 1e-12),
        CheckResult("qcore.iterated_derivative", _max(iterated), 1e-8),
        CheckResult("qcore.pochhammer_identity", poch, 1e-12),
    ]


def check_qexp(q: float) -> List[CheckResult]:
    xs = np.linspace(-0.9, 0.9, 20)
    inverse = _max(abs(e_q(q, x).value * E_q(q, -x).value - 1.0) for x in xs)
    ev = lambda t: e_q(q, t).value
    Ev = lambda t: E_q(q, t).value
    d_e = _max(abs(q_derivative(ev, q, x) - ev(x)) for x in xs)
    d_E = _max(abs(q_derivative(Ev, q, x) - Ev(q * x)) for x in xs)
    tight = TruncationPolicy(abs_tol=1e-14)
    nu = 1 / math.sqrt(1 - q)
    two_form = _max(
        abs(gauss_kernel(q, x, tight) - E_q(q * q, -q * q * x * x / (1 + q), tight).value)
        for x in np.linspace(-nu, nu, 21)
    )
    return [
        CheckResult("qexp.inverse_identity", inverse, 1e-10),
        CheckResult("qexp.derivative_e_q", d_e, 1e-9),
        CheckResult("qexp.derivative_E_q", d_E, 1e-9),
        CheckResult("qexp.kernel_two_forms", two_form, 1e-12),
    ]


def check_jackson(q: float) -> List[CheckResult]:
    rng = np.random.default_rng(_SEED)
    tight = TruncationPolicy(abs_tol=1e-14)
    J = lambda f, a, b: jackson_integral(f, q, (a, b), tight)
    funcs = [lambda x: 1.0, lambda x: x, lambda x: x * x, lambda x: gauss_kernel(q, x)]
    errs = {k: [] for k in ("prop1", "antisymmetry", "scaling", "reflection", "additivity", "symmetrization")}
    for f in funcs:
        for _ in range(3):
            a, b, c = rng.uniform(-2, 2, size=3)
            s = rng.uniform(0.2, 1.5)
            bb = abs(b)
            direct = (1 - q) * bb * sum(q**n * f(q**n * bb) for n in range(2000)) if q else bb * f(bb)
            errs["prop1"].append(abs(J(f, 0.0, bb) - direct))
            errs["antisymmetry"].append(abs(J(f, a, b) + J(f, b, a)))
            errs["scaling"].append(abs(J(f, a * s, b * s) - s * J(lambda x: f(s * x), a, b)))
            errs["reflection"].append(abs(J(f, -bb, 0.0) - J(lambda x: f(-x), 0.0, bb)))
            errs["additivity"].append(abs(J(f, a, c) - J(f, a, b) - J(f, b, c)))
            errs["symmetrization"].append(abs(J(f, -bb, bb) - J(lambda x: f(x) + f(-x), 0.0, bb)))
    results = [CheckResult(f"jackson.{k}", _max(v), 1e-12) for k, v in errs.items()]

    ftc = []
    for x in np.linspace(0.1, 1.9, 10):
        F = lambda t: J(lambda u: gauss_kernel(q, u), 0.0, t)
        ftc.append(abs(q_derivative(F, q, x) - gauss_kernel(q, x)))
    results.append(CheckResult("jackson.fundamental_theorem", _max(ftc), 1e-9))

    meas, scale, add = [], [], []
    for _ in range(20):
        a, b = np.sort(rng.uniform(0.01, 2, size=2))
        meas.append(abs(q_measure(q, (a, b)) - indicator_measure(q, (a, b))))
        s = rng.uniform(0.2, 3)
        scale.append(abs(q_measure(q, (s * a, s * b)) - s * q_measure(q, (a, b))))
        p = np.sort(rng.uniform(0.01, 2, size=4))
        pieces = [(p[0], p[1]), (p[2], p[3])]
        add.append(abs(q_measure(q, pieces[0]) + q_measure(q, pieces[1]) - q_measure_union(q, pieces)))
    results += [
        CheckResult("jackson.measure_vs_indicator", _max(meas), 1e-12),
        CheckResult("jackson.measure_scaling", _max(scale), 1e-12),
        CheckResult("jackson.measure_additivity", _max(add), 1e-12),
    ]
    return results


def check_gaussq(q: float) -> List[CheckResult]:
    g = GaussQ(q)
    results = [CheckResult("gaussq.normalization", abs(g.moment(0) - 1.0), 1e-10)]
    bridge = []
    for n in range(6):
        routes = [g.moment(2 * n), q_double_factorial(q, n), weighted_count(2 * n)(q)]
        ref = routes[1]
        bridge.append(max(abs(r - ref) / ref for r in routes))
    results.append(CheckResult("gaussq.moment_bridge", _max(bridge), 1e-9))

    grid = np.linspace(-g.nu, g.nu, 1000)
    values = g.cdf_array(grid)
    drops = np.maximum(values[:-1] - values[1:], 0.0)
    results.append(CheckResult("gaussq.cdf_monotone", float(drops.max()), 0.0))
    sym = _max(abs(g.cdf(x) + g.cdf(-x) - 1.0) for x in np.linspace(0, g.nu, 41))
    results.append(CheckResult("gaussq.cdf_symmetry", sym, 1e-10))
    interior = [x for x in np.linspace(-0.95 * g.nu, 0.95 * g.nu, 20)]
    dens = _max(abs(q_derivative(g.cdf, q, x) - g.density(x)) for x in interior)
    results.append(CheckResult("gaussq.density_cdf_consistency", dens, 1e-8))
    if q == 0.0:
        xs = np.linspace(-1, 1, 101)
        lim = max(
            max(abs(g.density(x) - 0.5) for x in xs),
            max(abs(g.cdf(x) - (1 + x) / 2) for x in xs),
        )
        results.append(CheckResult("gaussq.q0_uniform_limit", lim, 1e-14))
    return results


def check_matchcomb(q: float) -> List[CheckResult]:
    err = _max(_rel(weighted_count(2 * n)(q), q_double_factorial(q, n)) for n in range(7))
    return [CheckResult("matchcomb.evaluation_bridge", err, 1e-12)]


SUITES = (check_qcore, check_qexp, check_jackson, check_gaussq, check_matchcomb)


def run_checks(q: float) -> List[CheckResult]:
    out: List[CheckResult] = []
    for suite in SUITES:
        out.extend(suite(q))
    return out
