"""Statistic count tables, distances to uniformity, fixed-point and
cycle-structure statistics of the lazy shelf model.

Count tables satisfy short two-term recurrences (validated exhaustively in
the tests), so distances at n = 52 are exact rational arithmetic over a
few dozen statistic classes rather than 52! permutations.

The cycle machinery expands the product form of the lazy model's cycle
generating function

    1/(1 - z_1 u) * prod_i ((1 + z_i u^i)/(1 - z_i u^i))^f(i, m)

as a truncated series with integer coefficients indexed by cycle type;
scaling u by 1/(2m+1) turns degree-n coefficients into probabilities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .models import ShuffleSpec, exact_distribution
from .orderpoly import gf_coefficients, statistic_range
from .permutations import all_permutations, cycle_type_partition, left_peaks

__all__ = [
    "AsymptoticReport",
    "CountTable",
    "CycleSeries",
    "JointIdentityReport",
    "SERIES_CAP",
    "asymptotic_compare",
    "count_table",
    "cycle_count_series",
    "cycle_distribution",
    "des_counts",
    "expected_fixed_points",
    "f_im",
    "linf_distance",
    "lpk_counts",
    "pk_counts",
    "sep_distance",
    "tv_distance",
    "verify_joint_lpk_cycle",
]

# the truncated-series engine is exact but superexponential in memory; the
# partition count at degree 30 is still comfortable
SERIES_CAP = 30


@dataclass(frozen=True)
class CountTable:
    """counts[k] = number of permutations of {1..n} with statistic value k."""

    n: int
    kind: str
    counts: tuple[int, ...]

    def total(self) -> int:
        return sum(self.counts)


@lru_cache(maxsize=None)
def count_table(n: int, kind: str) -> CountTable:
    """Statistic class sizes via two-term recurrences on n.

    lpk: l(n,k) = (2k+1)   l(n-1,k) + (n+1-2k) l(n-1,k-1)
    pk:  p(n,k) = (2k+2)   p(n-1,k) + (n-2k)   p(n-1,k-1)
    des: A(n,k) = (k+1)    A(n-1,k) + (n-k)    A(n-1,k-1)
    """
    if n < 1:
        raise ValueError("n must be positive")
    if kind == "lpk":
        coef = lambda nn, k: (2 * k + 1, nn + 1 - 2 * k)
    elif kind == "pk":
        coef = lambda nn, k: (2 * k + 2, nn - 2 * k)
    elif kind == "des":
        coef = lambda nn, k: (k + 1, nn - k)
    else:
        raise ValueError(f"unknown statistic kind: {kind!r}")
    row = [1]
    for nn in range(2, n + 1):
        ks = statistic_range(kind, nn)
        prev = row + [0, 0]
        row = []
        for k in ks:
            stay, carry = coef(nn, k)
            below = prev[k - 1] if k >= 1 else 0
            here = prev[k] if k < len(prev) else 0
            row.append(stay * here + carry * below)
    return CountTable(n, kind, tuple(row))


def lpk_counts(n: int) -> CountTable:
    return count_table(n, "lpk")


def pk_counts(n: int) -> CountTable:
    return count_table(n, "pk")


def des_counts(n: int) -> CountTable:
    return count_table(n, "des")


# ---------------------------------------------------------------------------
# distances to the uniform distribution


def tv_distance(spec: ShuffleSpec) -> Fraction:
    """Total variation distance to uniform, exactly:
    half the count-weighted sum of |class probability - 1/n!|."""
    dist = exact_distribution(spec)
    uniform = Fraction(1, math.factorial(spec.n))
    total = sum(
        (count * abs(prob - uniform) for _, prob, count in dist.classes),
        start=Fraction(0),
    )
    return total / 2


def _extreme_probs(spec: ShuffleSpec) -> tuple[Fraction, Fraction]:
    dist = exact_distribution(spec)
    ks = statistic_range(dist.statistic, spec.n)
    return dist.prob(ks[0]), dist.prob(ks[-1])


def sep_distance(spec: ShuffleSpec) -> Fraction:
    """Separation distance; by monotonicity it is attained at the
    statistic extremes k = 0 or k = k_max."""
    p0, pmax = _extreme_probs(spec)
    nfact = math.factorial(spec.n)
    return max(1 - nfact * p0, 1 - nfact * pmax)


def linf_distance(spec: ShuffleSpec) -> Fraction:
    """l-infinity distance max |n! prob - 1|, again from the extremes."""
    p0, pmax = _extreme_probs(spec)
    nfact = math.factorial(spec.n)
    return max(abs(nfact * p0 - 1), abs(nfact * pmax - 1))


@dataclass(frozen=True)
class AsymptoticReport:
    """Exact distances at m = round(c n^(3/2)) next to the scaling-limit
    predictions; informational, no tolerance attached."""

    n: int
    c: float
    m: int
    tv: Fraction
    sep: Fraction
    linf: Fraction
    limit_sep: float
    limit_linf: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "c": self.c,
            "m": self.m,
            "tv": str(self.tv),
            "sep": str(self.sep),
            "linf": str(self.linf),
            "tv_float": float(self.tv),
            "sep_float": float(self.sep),
            "linf_float": float(self.linf),
            "limit_sep": self.limit_sep,
            "limit_linf": self.limit_linf,
        }


def asymptotic_compare(n: int, c: float) -> AsymptoticReport:
    """Lazy-model distances at shelf count m = round(c n^(3/2)), reported
    beside the limits exp(1/(12 c^2)) - 1 and 1 - exp(-1/(24 c^2))."""
    m = round(c * n**1.5)
    spec = ShuffleSpec(n, m, "shelf-lazy")
    return AsymptoticReport(
        n,
        c,
        m,
        tv_distance(spec),
        sep_distance(spec),
        linf_distance(spec),
        1 - math.exp(-1 / (24 * c * c)),
        math.exp(1 / (12 * c * c)) - 1,
    )


# ---------------------------------------------------------------------------
# cycle structure of the lazy model


def _mobius(d: int) -> int:
    mu, p = 1, 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            mu = -mu
        p += 1
    if d > 1:
        mu = -mu
    return mu


def f_im(i: int, m: int) -> int:
    """Exponent of the i-th factor in the cycle generating function:
    (1/2i) * sum over odd divisors d of i of mu(d) ((2m+1)^(i/d) - 1).

    Always a nonnegative integer (checked).

    >>> f_im(1, 5), f_im(2, 5), f_im(3, 1)
    (5, 30, 4)
    """
    if i < 1 or m < 0:
        raise ValueError("require i >= 1 and m >= 0")
    total = sum(
        _mobius(d) * ((2 * m + 1) ** (i // d) - 1)
        for d in range(1, i + 1, 2)
        if i % d == 0
    )
    quotient, remainder = divmod(total, 2 * i)
    if remainder or quotient < 0:
        raise ArithmeticError(f"f({i},{m}) = {total}/{2 * i} is not a nonnegative integer")
    return quotient


class CycleSeries:
    """Truncated series whose terms are cycle-type monomials.

    A monomial z_{i1} z_{i2} ... (a partition, stored largest part first)
    always carries u to the power of the partition's sum, so coefficients
    are keyed by partition alone; ``truncation`` bounds that sum.
    """

    __slots__ = ("truncation", "coeffs")

    def __init__(self, truncation: int, coeffs: dict[tuple[int, ...], int]):
        self.truncation = truncation
        self.coeffs = {k: v for k, v in coeffs.items() if v}

    @classmethod
    def one(cls, truncation: int) -> "CycleSeries":
        return cls(truncation, {(): 1})

    @classmethod
    def geometric_z1(cls, truncation: int) -> "CycleSeries":
        """1/(1 - z_1 u) = sum_j (z_1 u)^j."""
        return cls(truncation, {(1,) * j: 1 for j in range(truncation + 1)})

    @classmethod
    def two_sided_factor(cls, i: int, truncation: int) -> "CycleSeries":
        """(1 + z_i u^i)/(1 - z_i u^i) = 1 + 2 sum_{j>=1} z_i^j u^(ij)."""
        coeffs = {(): 1}
        for j in range(1, truncation // i + 1):
            coeffs[(i,) * j] = 2
        return cls(truncation, coeffs)

    def __mul__(self, other: "CycleSeries") -> "CycleSeries":
        if self.truncation != other.truncation:
            raise ValueError("truncation mismatch")
        out: dict[tuple[int, ...], int] = {}
        cap = self.truncation
        items = sorted(other.coeffs.items())
        for part_a, ca in self.coeffs.items():
            room = cap - sum(part_a)
            for part_b, cb in items:
                if sum(part_b) > room:
                    continue
                key = tuple(sorted(part_a + part_b, reverse=True))
                out[key] = out.get(key, 0) + ca * cb
        return CycleSeries(cap, out)

    def pow(self, exponent: int) -> "CycleSeries":
        """Repeated truncated multiplication (square and multiply)."""
        if exponent < 0:
            raise ValueError("exponent must be nonnegative")
        result = CycleSeries.one(self.truncation)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def degree_slice(self, d: int) -> dict[tuple[int, ...], int]:
        return {k: v for k, v in self.coeffs.items() if sum(k) == d}


def cycle_count_series(n: int, m: int) -> CycleSeries:
    """The integer-coefficient product series truncated at degree n; the
    coefficient of a partition of d, divided by (2m+1)^d, is the chance a
    lazy pass on d cards has that cycle type."""
    if n > SERIES_CAP:
        raise ValueError(f"series degree capped at {SERIES_CAP}")
    series = CycleSeries.geometric_z1(n)
    for i in range(1, n + 1):
        series = series * CycleSeries.two_sided_factor(i, n).pow(f_im(i, m))
    return series


def cycle_distribution(spec: ShuffleSpec) -> dict[tuple[int, ...], Fraction]:
    """Map cycle type (partition of n, largest part first) -> probability
    under one lazy pass.  Masses are nonnegative and sum to 1."""
    if spec.model != "shelf-lazy":
        raise ValueError("cycle structure is computed for the lazy model only")
    series = cycle_count_series(spec.n, spec.m)
    out = {
        part: Fraction(c, spec.total_outcomes)
        for part, c in sorted(series.degree_slice(spec.n).items())
    }
    if sum(out.values()) != 1:
        raise AssertionError("cycle-type masses do not sum to 1")
    return out


def expected_fixed_points(n: int, m: int) -> Fraction:
    """Mean number of fixed points after one lazy pass.

    >>> expected_fixed_points(2, 1)
    Fraction(10, 9)
    >>> expected_fixed_points(3, 1)
    Fraction(11, 9)
    """
    if n < 1 or m < 0:
        raise ValueError("require n >= 1 and m >= 0")
    q = Fraction(1, 2 * m + 1)
    if n % 2:
        return 1 + 2 * sum((q ** (2 * k) for k in range(1, (n - 1) // 2 + 1)), Fraction(0))
    return 1 + 2 * sum((q ** (2 * k) for k in range(1, n // 2)), Fraction(0)) + q**n


@dataclass(frozen=True)
class JointIdentityReport:
    """Comparison of the two routes to the joint (left peaks, cycle type)
    refinement: per-permutation statistic kernels vs the product series."""

    n: int
    m_max: int
    ok: bool
    checked_types: int
    first_mismatch: tuple[int, tuple[int, ...], int, int] | None = None

    def to_dict(self) -> dict:
        d = {
            "identity": "joint-lpk-cycle",
            "n": self.n,
            "m_max": self.m_max,
            "ok": self.ok,
            "checked_types": self.checked_types,
        }
        if self.first_mismatch is not None:
            m, part, lhs, rhs = self.first_mismatch
            d["first_mismatch"] = {
                "m": m,
                "type": list(part),
                "lhs": str(lhs),
                "rhs": str(rhs),
            }
        return d


def verify_joint_lpk_cycle(n: int, m_max: int) -> JointIdentityReport:
    """For each m <= m_max, group S_n by cycle type, total the left-peak
    generating kernel's t^m coefficient over each group, and compare with
    the degree-n slice of the product series.  Exact equality required."""
    if n > 6 or m_max > 4:
        raise ValueError("joint identity check capped at n <= 6, m_max <= 4")
    per_k = {
        k: gf_coefficients(n, k, "all", m_max + 1)
        for k in statistic_range("lpk", n)
    }
    by_type: dict[tuple[int, ...], list[int]] = {}
    for p in all_permutations(n):
        by_type.setdefault(cycle_type_partition(p), []).append(left_peaks(p))
    checked = 0
    for m in range(1, m_max + 1):
        rhs = cycle_count_series(n, m).degree_slice(n)
        for part in sorted(set(by_type) | set(rhs)):
            lhs = sum(per_k[k][m] for k in by_type.get(part, []))
            checked += 1
            if lhs != rhs.get(part, 0):
                return JointIdentityReport(
                    n, m_max, False, checked, (m, part, lhs, rhs.get(part, 0))
                )
    return JointIdentityReport(n, m_max, True, checked)
