"""q-weighted perfect matchings: the exact combinatorial side of the moments.

Matchings of ``{1, ..., n}`` are listed in canonical form: pairs ``(a_i, b_i)``
with ``a_i < b_i`` and ``a_1 < a_2 < ...``.  Weights are monomials in ``q``
and are aggregated as exact integer polynomials.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

from .errors import DomainError

MAX_POINTS = 16

Pair = Tuple[int, int]


@dataclass(frozen=True)
class QPolynomial:
    """Polynomial in ``q`` with nonnegative integer coefficients (``coeffs[k]`` multiplies ``q**k``)."""

    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        for v in c:
            if int(v) != v or v < 0:
                raise DomainError(f"coefficients must be nonnegative integers, got {v!r}")
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(v) for v in c))

    @classmethod
    def monomial(cls, k: int, coeff: int = 1) -> "QPolynomial":
        return cls((0,) * k + (coeff,))

    @classmethod
    def bracket(cls, n: int) -> "QPolynomial":
        """``[n]_q = 1 + q + ... + q**(n-1)``."""
        return cls((1,) * n)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return QPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other: "QPolynomial") -> "QPolynomial":
        if not self.coeffs or not other.coeffs:
            return QPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return QPolynomial(tuple(out))

    def __call__(self, q: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def at_one(self) -> int:
        """Exact value at ``q = 1`` (the unweighted count)."""
        return sum(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)


@dataclass(frozen=True)
class Matching:
    """A perfect matching of ``{1, ..., 2k}`` in canonical ordered-pair form."""

    pairs: Tuple[Pair, ...]

    def __post_init__(self):
        pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if any(a >= b for a, b in pairs):
            raise DomainError("each pair must satisfy a_i < b_i")
        lefts = [a for a, _ in pairs]
        if any(x >= y for x, y in zip(lefts, lefts[1:])):
            raise DomainError("left endpoints must be strictly increasing")
        points = sorted(p for pair in pairs for p in pair)
        if points != list(range(1, 2 * len(pairs) + 1)):
            raise DomainError("pairs must partition {1, ..., 2k}")

    @property
    def size(self) -> int:
        return 2 * len(self.pairs)


def _check_points(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    if n > MAX_POINTS:
        raise DomainError(f"enumeration is limited to n <= {MAX_POINTS}, got {n}")
    return int(n)


def iter_matchings(n: int) -> Iterator[Matching]:
    """Yield every perfect matching of ``{1, ..., n}`` in canonical form."""
    n = _check_points(n)
    if n % 2:
        return

    def rec(free: List[int], acc: List[Pair]):
        if not free:
            yield Matching(tuple(acc))
            return
        a = free[0]
        for idx in range(1, len(free)):
            b = free[idx]
            acc.append((a, b))
            yield from rec(free[1:idx] + free[idx + 1:], acc)
            acc.pop()

    yield from rec(list(range(1, n + 1)), [])


def enumerate_matchings(n: int) -> List[Matching]:
    """All perfect matchings of ``{1, ..., n}``; empty for odd ``n``."""
    return list(iter_matchings(n))


def weight_exponent(m: Matching) -> int:
    """Sum over pairs of ``|((a_i, b_i)) minus B_i(m)|``.

    ``((a, b))`` is the open integer span ``{j : a < j < b}``; ``B_i`` holds the
    right endpoints of the pairs before the i-th.
    """
    earlier_rights = set()
    total = 0
    for a, b in m.pairs:
        total += sum(1 for j in range(a + 1, b) if j not in earlier_rights)
        earlier_rights.add(b)
    return total


def weight(m: Matching) -> QPolynomial:
    """The monomial ``q**weight_exponent(m)``."""
    return QPolynomial.monomial(weight_exponent(m))


def weighted_count(n: int) -> QPolynomial:
    """``|M[n], omega|``: the sum of the weights of all matchings of ``{1, ..., n}``."""
    counts: List[int] = []
    for m in iter_matchings(n):
        k = weight_exponent(m)
        if k >= len(counts):
            counts.extend([0] * (k + 1 - len(counts)))
        counts[k] += 1
    return QPolynomial(tuple(counts))


def double_factorial_polynomial(half: int) -> QPolynomial:
    """Symbolic expansion of ``[2k-1]_q [2k-3]_q ... [1]_q`` for ``k = half``."""
    result = QPolynomial((1,))
    for i in range(1, half + 1):
        result = result * QPolynomial.bracket(2 * i - 1)
    return result
