"""Exact integer combinatorics behind the codimension count.

Everything here is exact: Python ints, ``Fraction`` for rationals, and n-th
roots by integer bisection at a fixed decimal scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import MultinomialMismatch


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(m: int, parts: Sequence[int]) -> int:
    """m! / (m_1! m_2! ...)."""
    if any(p < 0 for p in parts):
        raise MultinomialMismatch(f"negative part in {tuple(parts)}")
    if sum(parts) != m:
        raise MultinomialMismatch(f"parts {tuple(parts)} sum to {sum(parts)}, not {m}")
    out = math.factorial(m)
    for p in parts:
        out //= math.factorial(p)
    return out


def central_binomial(n: int) -> int:
    """C(2n-2, n-1), the polylinear dimension in degree n."""
    return binomial(2 * n - 2, n - 1)


def catalan(n: int) -> int:
    return binomial(2 * n, n) // (n + 1)


# -- partitions ----------------------------------------------------------------


def partitions_desc(d: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of d as weakly decreasing tuples, lexicographically decreasing."""
    if max_part is None:
        max_part = d
    if d == 0:
        yield ()
        return
    for first in range(min(d, max_part), 0, -1):
        for rest in partitions_desc(d - first, first):
            yield (first,) + rest


def partition_count(d: int) -> int:
    """p(d) by Euler's pentagonal-number recurrence (no enumeration)."""
    if d < 0:
        return 0
    p = [1] + [0] * d
    for m in range(1, d + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[d]


@dataclass(frozen=True)
class PartitionWithMultiplicities:
    """A partition stored as (part, multiplicity) pairs, largest part first."""

    multiplicities: tuple[tuple[int, int], ...]

    def __post_init__(self):
        parts = [p for p, _ in self.multiplicities]
        if any(m < 1 for _, m in self.multiplicities) or any(p < 1 for p in parts):
            raise ValueError("parts and multiplicities must be positive")
        if parts != sorted(set(parts), reverse=True):
            raise ValueError("parts must be distinct and listed in decreasing order")

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "PartitionWithMultiplicities":
        counts: dict[int, int] = {}
        for p in parts:
            counts[p] = counts.get(p, 0) + 1
        return cls(tuple(sorted(counts.items(), reverse=True)))

    @property
    def size(self) -> int:
        return sum(p * m for p, m in self.multiplicities)

    @property
    def length(self) -> int:
        """Number of parts, counted with multiplicity."""
        return sum(m for _, m in self.multiplicities)

    def multiplicity(self, part: int) -> int:
        return dict(self.multiplicities).get(part, 0)

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(p for p, m in self.multiplicities for _ in range(m))

    def __str__(self) -> str:
        if not self.multiplicities:
            return "{}"
        return "{" + " ".join(f"{p}^{m}" for p, m in self.multiplicities) + "}"


def partitions_of(d: int) -> list[PartitionWithMultiplicities]:
    if d < 0:
        raise ValueError("d must be nonnegative")
    return [PartitionWithMultiplicities.from_parts(p) for p in partitions_desc(d)]


# -- the convolution lemma and its ingredients ---------------------------------


def lemma1_terms(n: int) -> list[tuple[PartitionWithMultiplicities, int]]:
    """Per-partition summands multinomial(m; m_1, ...) * C(n, m) over partitions of n-1."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    for lam in partitions_of(n - 1):
        mults = [m for _, m in lam.multiplicities]
        out.append((lam, multinomial(lam.length, mults) * binomial(n, lam.length)))
    return out


def lemma1_lhs(n: int) -> int:
    return sum(v for _, v in lemma1_terms(n))


def multinomial_sum_identity(n: int, s: int) -> tuple[int, int]:
    """Sum of multinomial(s; m_i) over partitions of n-1 with s parts, against C(n-2, s-1)."""
    if not 1 <= s <= n - 1:
        raise ValueError("need 1 <= s <= n-1")
    lhs = sum(
        multinomial(s, [m for _, m in lam.multiplicities])
        for lam in partitions_of(n - 1)
        if lam.length == s
    )
    return lhs, binomial(n - 2, s - 1)


def vandermonde_check(n: int, p: int, m: int) -> tuple[int, int]:
    """C(n+p, m) against sum_s C(n, m-s) C(p, s)."""
    if min(n, p, m) < 0:
        raise ValueError("arguments must be nonnegative")
    rhs = sum(binomial(n, m - s) * binomial(p, s) for s in range(m + 1))
    return binomial(n + p, m), rhs


# -- growth bounds and the exponent ---------------------------------------------


def lemma2_bounds(n: int) -> tuple[Fraction, int, int]:
    """(2^(2n-3)/(n-1), C(2n-2, n-1), 2^(2n-2))."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return Fraction(2 ** (2 * n - 3), n - 1), central_binomial(n), 2 ** (2 * n - 2)


DEFAULT_SCALE = 10**6


def nth_root_floor(x, n: int, scale: int = DEFAULT_SCALE) -> int:
    """Largest integer y with (y/scale)^n <= x, for rational x >= 0, by bisection."""
    x = Fraction(x)
    if x < 0 or n < 1:
        raise ValueError("need x >= 0 and n >= 1")
    num, den = x.numerator, x.denominator
    target = num * scale**n

    def fits(y):
        return y**n * den <= target

    lo, hi = 0, scale
    while fits(hi):
        lo, hi = hi, hi * 2
    # invariant: fits(lo), not fits(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if fits(mid):
            lo = mid
        else:
            hi = mid
    return lo


def exponent_estimate(n: int, scale: int = DEFAULT_SCALE) -> Fraction:
    """C(2n-2, n-1)^(1/n) rounded down to a multiple of 1/scale."""
    if n < 1:
        raise ValueError("n must be positive")
    return Fraction(nth_root_floor(central_binomial(n), n, scale), scale)


@dataclass(frozen=True)
class ExponentBracket:
    n: int
    estimate: Fraction
    lower_root: Fraction  # rounded down
    upper_root: Fraction  # rounded up
    brackets: bool

    @property
    def width(self) -> Fraction:
        return self.upper_root - self.lower_root


def exponent_bracket(n: int, scale: int = DEFAULT_SCALE) -> ExponentBracket:
    """Compare the exponent estimate with the n-th roots of the growth bounds.

    ``brackets`` is decided exactly: lower <= ((y+1)/scale)^n and
    (y/scale)^n <= upper, so the true root is within 1/scale of the estimate
    and inside the bound interval.
    """
    lower, value, upper = lemma2_bounds(n)
    y = nth_root_floor(value, n, scale)
    est = Fraction(y, scale)
    ok = (
        lower <= Fraction(y + 1, scale) ** n
        and est**n <= upper
        and lower <= value <= upper
    )
    lo_root = Fraction(nth_root_floor(lower, n, scale), scale)
    up_y = nth_root_floor(upper, n, scale)
    if Fraction(up_y, scale) ** n != upper:
        up_y += 1
    return ExponentBracket(n, est, lo_root, Fraction(up_y, scale), ok)


# -- generating function ----------------------------------------------------------


def generalized_binomial(alpha, k: int) -> Fraction:
    """alpha (alpha-1) ... (alpha-k+1) / k! for rational alpha."""
    alpha = Fraction(alpha)
    out = Fraction(1)
    for i in range(k):
        out = out * (alpha - i) / (i + 1)
    return out


class PowerSeries:
    """Truncated power series c_0 + c_1 x + ... + c_N x^N with rational coefficients."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients, order: int | None = None):
        coeffs = [Fraction(c) for c in coefficients]
        if order is not None:
            coeffs = (coeffs + [Fraction(0)] * (order + 1))[: order + 1]
        if not coeffs:
            raise ValueError("a power series needs at least one coefficient")
        self.coefficients = tuple(coeffs)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def x(cls, order: int) -> "PowerSeries":
        return cls([0, 1], order)

    @classmethod
    def constant(cls, c, order: int) -> "PowerSeries":
        return cls([c], order)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i <= self.order:
            return self.coefficients[i]
        if i > self.order:
            raise IndexError(f"coefficient {i} is beyond the truncation order {self.order}")
        return Fraction(0)

    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return PowerSeries.constant(other, self.order)
        raise TypeError(f"cannot combine PowerSeries with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return PowerSeries([self[i] + other[i] for i in range(n + 1)])

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coefficients])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSeries([other * c for c in self.coefficients])
        other = self._coerce(other)
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coefficients[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coefficients[j]
        return PowerSeries(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, PowerSeries) and self.coefficients == other.coefficients

    def __repr__(self) -> str:
        return f"PowerSeries({[str(c) for c in self.coefficients]})"

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """self(inner(x)) for inner with zero constant term (Horner)."""
        if inner[0] != 0:
            raise ValueError("inner series must have zero constant term")
        n = min(self.order, inner.order)
        acc = PowerSeries.constant(self.coefficients[n], n)
        for c in reversed(self.coefficients[:n]):
            acc = acc * inner + c
        return acc

    def power(self, alpha) -> "PowerSeries":
        """self^alpha through the binomial series; requires constant term 1."""
        if self[0] != 1:
            raise ValueError("constant term must be 1 for a rational power")
        series = binomial_series(alpha, self.order)
        return series.compose(self - 1)


def binomial_series(alpha, order: int) -> PowerSeries:
    """(1 + x)^alpha truncated at x^order."""
    return PowerSeries([generalized_binomial(alpha, k) for k in range(order + 1)])


def gf_coefficients(order: int) -> PowerSeries:
    """x (1 - 4x)^(-1/2) up to x^order."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    x = PowerSeries.x(order) if order >= 1 else PowerSeries([0])
    base = PowerSeries([1, -4], order) if order >= 1 else PowerSeries([1])
    return x * base.power(Fraction(-1, 2))
