"""The six shuffle models: Monte Carlo samplers, exact per-permutation
probabilities, compact exact distributions, and the repeated-shuffle
convolution rule.

Shelf machines deal n cards one at a time from the top of the deck onto m
shelves.  Per card the machine picks, uniformly:

    shelf-strict   a shelf; the card goes under that shelf's pile   (m ways)
    shelf-standard a shelf and a side, top or bottom                (2m ways)
    shelf-lazy     as standard, plus a bottom-only shelf 0          (2m+1 ways)

The shuffled deck reads shelf 0 (if any), then shelf 1, ..., shelf m, each
pile top to bottom.  Riffle machines cut the deck multinomially into
value-ordered piles (classic: m piles; down-up: 2m, odd piles flipped;
up-down: 2m+1, even piles flipped) and interleave by dropping from pile
bottoms with probability proportional to remaining pile size.

Each model's per-permutation law is carried by one statistic of the
permutation (shelf) or of its inverse (riffle):

    lazy/up-down: lpk   standard/down-up: pk   strict/classic: des
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import ppartitions as pp
from .orderpoly import (
    convolved_bound,
    mode_statistic,
    op_chain,
    statistic_range,
)
from .permutations import Perm, all_permutations, compose, inverse, statistic

__all__ = [
    "ConvolutionReport",
    "ExactDist",
    "MODELS",
    "RIFFLE_MODELS",
    "SHELF_MODELS",
    "ShuffleSpec",
    "convolve",
    "exact_dist_to_json_dict",
    "exact_distribution",
    "exact_prob",
    "group_algebra_product_check",
    "iter_shelf_placements",
    "simulate_riffle",
    "simulate_riffle_uniform",
    "simulate_shelf",
]

SHELF_MODELS = ("shelf-lazy", "shelf-standard", "shelf-strict")
RIFFLE_MODELS = ("riffle-updown", "riffle-downup", "riffle-classic")
MODELS = SHELF_MODELS + RIFFLE_MODELS

_MODEL_MODE = {
    "shelf-lazy": "all",
    "shelf-standard": "nonzero",
    "shelf-strict": "positive",
    "riffle-updown": "all",
    "riffle-downup": "nonzero",
    "riffle-classic": "positive",
}
_MODE_VARIANT = {"all": "up-down", "nonzero": "down-up", "positive": "classic"}
_FAMILY_MODEL = {
    "lazy": "shelf-lazy",
    "standard": "shelf-standard",
    "strict": "shelf-strict",
}


@dataclass(frozen=True)
class ShuffleSpec:
    """One pass of a shuffle machine: deck size n, parameter m, model name."""

    n: int
    m: int
    model: str

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model: {self.model!r}")
        if self.n < 1 or self.m < 0:
            raise ValueError("require n >= 1 and m >= 0")
        # m = 0 leaves no placements unless the alphabet keeps the 0 value
        if self.m == 0 and _MODEL_MODE[self.model] != "all":
            raise ValueError(f"m = 0 leaves {self.model!r} with no outcomes")

    @property
    def mode(self) -> str:
        return _MODEL_MODE[self.model]

    @property
    def statistic_kind(self) -> str:
        return mode_statistic(self.mode)

    @property
    def choices_per_card(self) -> int:
        """Placements per card; outcomes are uniform over choices^n."""
        return len(pp.alphabet(self.m, self.mode))

    @property
    def total_outcomes(self) -> int:
        return self.choices_per_card**self.n


def _require(spec: ShuffleSpec, models: tuple[str, ...]) -> None:
    if spec.model not in models:
        raise ValueError(f"model {spec.model!r} not in {models}")


def simulate_shelf(spec: ShuffleSpec, rng) -> tuple[pp.ShuffleOutcome, Perm]:
    """One machine pass: draw a uniform placement per card, return the
    (composition, deck order) outcome and the deck order.

    ``rng`` needs only randrange(k); random.Random works.
    """
    _require(spec, SHELF_MODELS)
    values = pp.alphabet(spec.m, spec.mode)
    width, randrange = len(values), rng.randrange
    draws = [randrange(width) for _ in range(spec.n)]
    counts = [0] * width
    for d in draws:
        counts[d] += 1
    perm = pp.sorting_permutation(tuple(values[d] for d in draws))
    return pp.ShuffleOutcome(tuple(counts), perm), perm


def iter_shelf_placements(spec: ShuffleSpec) -> Iterator[pp.PPartition]:
    """All choices^n placement maps of a shelf machine (small n only)."""
    _require(spec, SHELF_MODELS)
    import itertools

    values = pp.alphabet(spec.m, spec.mode)
    if len(values) ** spec.n > pp.ENUMERATION_CAP:
        raise ValueError("placement space exceeds enumeration cap")
    return itertools.product(values, repeat=spec.n)


def _riffle_cut(spec: ShuffleSpec, rng) -> list[int]:
    # multinomial cut = n independent uniform pile choices
    piles = spec.choices_per_card
    sizes = [0] * piles
    for _ in range(spec.n):
        sizes[rng.randrange(piles)] += 1
    return sizes


def _riffle_piles(spec: ShuffleSpec, sizes: list[int]) -> list[list[int]]:
    # consecutive blocks of the deck, flipped when the pile value is barred
    values = pp.alphabet(spec.m, spec.mode)
    piles = []
    start = 1
    for v, a in zip(values, sizes):
        block = list(range(start, start + a))
        piles.append(block[::-1] if v.barred else block)
        start += a
    return piles


def simulate_riffle(spec: ShuffleSpec, rng) -> tuple[pp.ShuffleOutcome, Perm]:
    """One riffle pass via proportional drops from pile bottoms."""
    _require(spec, RIFFLE_MODELS)
    sizes = _riffle_cut(spec, rng)
    piles = _riffle_piles(spec, sizes)
    remaining = list(sizes)
    total = spec.n
    bottom_up: list[int] = []
    while total:
        r = rng.randrange(total)
        for idx, count in enumerate(remaining):
            if r < count:
                break
            r -= count
        bottom_up.append(piles[idx].pop())
        remaining[idx] -= 1
        total -= 1
    deck = tuple(reversed(bottom_up))
    return pp.ShuffleOutcome(tuple(sizes), deck), deck


def simulate_riffle_uniform(spec: ShuffleSpec, rng) -> tuple[pp.ShuffleOutcome, Perm]:
    """Cross-check sampler: same cut, then a uniformly random interleaving
    (proportional dropping is equivalent; see the module tests)."""
    _require(spec, RIFFLE_MODELS)
    sizes = _riffle_cut(spec, rng)
    piles = _riffle_piles(spec, sizes)
    word = [idx for idx, a in enumerate(sizes) for _ in range(a)]
    for i in range(len(word) - 1, 0, -1):  # Fisher-Yates
        j = rng.randrange(i + 1)
        word[i], word[j] = word[j], word[i]
    deck = tuple(piles[idx].pop(0) for idx in word)
    return pp.ShuffleOutcome(tuple(sizes), deck), deck


def exact_prob(p: Perm, spec: ShuffleSpec) -> Fraction:
    """Exact probability that one pass produces deck order p.

    Shelf models read the statistic off p, riffle models off inverse(p).
    """
    if len(p) != spec.n:
        raise ValueError(f"size mismatch: {len(p)} vs {spec.n}")
    q = p if spec.model in SHELF_MODELS else inverse(p)
    k = statistic(q, spec.statistic_kind)
    return Fraction(op_chain(spec.n, k, spec.m, spec.mode), spec.total_outcomes)


@dataclass(frozen=True)
class ExactDist:
    """A shuffle law on S_n stored per statistic class.

    classes maps statistic value k -> (probability of each single
    permutation in the class, number of permutations in the class).
    """

    spec: ShuffleSpec
    statistic: str
    classes: tuple[tuple[int, Fraction, int], ...]  # (k, prob, class size)

    def __post_init__(self):
        total = sum(prob * count for _, prob, count in self.classes)
        if total != 1:
            raise ValueError(f"class probabilities sum to {total}, not 1")

    def prob(self, k: int) -> Fraction:
        for kk, prob, _ in self.classes:
            if kk == k:
                return prob
        raise KeyError(k)

    def class_size(self, k: int) -> int:
        for kk, _, count in self.classes:
            if kk == k:
                return count
        raise KeyError(k)


def exact_distribution(spec: ShuffleSpec) -> ExactDist:
    """The full law of one pass, one row per statistic class."""
    from .analysis import count_table

    kind = spec.statistic_kind
    counts = count_table(spec.n, kind).counts
    rows = tuple(
        (k, Fraction(op_chain(spec.n, k, spec.m, spec.mode), spec.total_outcomes), counts[k])
        for k in statistic_range(kind, spec.n)
    )
    return ExactDist(spec, kind, rows)


def exact_dist_to_json_dict(dist: ExactDist) -> dict:
    """JSON form with decimal strings for the big integers."""
    return {
        "model": dist.spec.model,
        "n": dist.spec.n,
        "m": dist.spec.m,
        "statistic": dist.statistic,
        "classes": [
            {
                "k": k,
                "count": str(count),
                "prob_num": str(prob.numerator),
                "prob_den": str(prob.denominator),
            }
            for k, prob, count in dist.classes
        ],
    }


def convolve(spec1: ShuffleSpec, spec2: ShuffleSpec) -> ShuffleSpec:
    """The single pass equivalent to spec1 followed by spec2.

    Both passes must be the same model on the same deck; the parameter
    combines as 2kl+k+l (lazy/up-down), 2kl (standard/down-up) or kl
    (strict/classic).
    """
    if spec1.n != spec2.n:
        raise ValueError("deck sizes differ")
    if spec1.model != spec2.model:
        raise ValueError("no combination rule across model families")
    return ShuffleSpec(
        spec1.n, convolved_bound(spec1.m, spec2.m, spec1.mode), spec1.model
    )


@dataclass(frozen=True)
class ConvolutionReport:
    """Result of the exact distribution-level convolution check."""

    n: int
    k: int
    l: int
    model: str
    ok: bool
    first_mismatch: tuple[Perm, Fraction, Fraction] | None = None

    def to_dict(self) -> dict:
        d = {
            "identity": "group-algebra-convolution",
            "n": self.n,
            "k": self.k,
            "l": self.l,
            "model": self.model,
            "ok": self.ok,
        }
        if self.first_mismatch is not None:
            p, lhs, rhs = self.first_mismatch
            d["first_mismatch"] = {"pi": list(p), "lhs": str(lhs), "rhs": str(rhs)}
        return d


def group_algebra_product_check(n: int, k: int, l: int, family: str) -> ConvolutionReport:
    """Convolve the exact n!-point laws of two passes (parameters k then l)
    and compare with the single convolved pass, exactly.

    ``family`` is "lazy", "standard" or "strict" (or a full model name).
    The two laws share the denominator of the convolved law, so the sum
    runs in integers; capped at n <= 6.
    """
    if n > 6:
        raise ValueError("exhaustive convolution check capped at n <= 6")
    model = _FAMILY_MODEL.get(family, family)
    a, b = ShuffleSpec(n, k, model), ShuffleSpec(n, l, model)
    c = convolve(a, b)
    assert a.total_outcomes * b.total_outcomes == c.total_outcomes
    kind = a.statistic_kind
    read = (lambda p: p) if model in SHELF_MODELS else inverse
    num_a = {
        p: op_chain(n, statistic(read(p), kind), k, a.mode)
        for p in all_permutations(n)
    }
    num_b = {p: op_chain(n, statistic(read(p), kind), l, a.mode) for p in num_a}
    acc = {p: 0 for p in num_a}
    for s, ns in num_a.items():
        if ns == 0:
            continue
        for t, nt in num_b.items():
            acc[compose(s, t)] += ns * nt
    for p in sorted(acc):
        lhs = Fraction(acc[p], c.total_outcomes)
        rhs = exact_prob(p, c)
        if lhs != rhs:
            return ConvolutionReport(n, k, l, model, False, (p, lhs, rhs))
    return ConvolutionReport(n, k, l, model, True)
