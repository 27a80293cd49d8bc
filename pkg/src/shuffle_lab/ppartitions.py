"""The barred-integer alphabet, P-partitions, the sorting permutation, and
the correspondences between shuffle outcomes and P-partitions.

Barred integers are ordered 0 < 1- < 1 < 2- < 2 < ... (``k-`` renders the
bar).  A P-partition is a map {1..n} -> barred integers, stored as a tuple
``f`` with ``f[i-1]`` the value at ``i``.  Order preservation along the
poset uses two relations: comparable pairs may share a value only when it
is nonbarred (naturally labeled pair) or only when it is barred
(unnaturally labeled pair).

Shelf-shuffler outcomes encode as P-partitions: card i on shelf k goes on
top of the pile when the value is k-barred, underneath when it is plain k,
and onto the bottom-dealt extra shelf when it is 0.  Riffle outcomes
encode through the pile poset of the cut.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, total_ordering

from .permutations import Perm, check_permutation, inverse
from .posets import Poset

__all__ = [
    "BarredInt",
    "MODES",
    "PPartition",
    "ShuffleOutcome",
    "WeakComposition",
    "alphabet",
    "bar",
    "bottom_deal_permutation",
    "enumerate_bounded",
    "format_two_line",
    "is_p_partition",
    "parse_two_line",
    "pile_poset",
    "ppartition_from_shelf_outcome",
    "rel_len",
    "rel_lp",
    "riffle_outcome_to_ppartition",
    "shelf_outcome_from_ppartition",
    "sorting_permutation",
    "variant_mode",
]

MODES = ("all", "nonzero", "positive")

# refuse exhaustive enumeration beyond this many candidate functions
ENUMERATION_CAP = 10**7


@total_ordering
@dataclass(frozen=True)
class BarredInt:
    """An element of the alphabet 0 < 1- < 1 < 2- < 2 < ...

    The total order is realized by rank(v) = 2|v| - (1 if barred).
    """

    magnitude: int
    barred: bool = False

    def __post_init__(self):
        if self.magnitude < 0:
            raise ValueError("magnitude must be nonnegative")
        if self.barred and self.magnitude == 0:
            raise ValueError("0 has no barred version")

    @property
    def rank(self) -> int:
        return 2 * self.magnitude - (1 if self.barred else 0)

    @classmethod
    def from_rank(cls, rank: int) -> "BarredInt":
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        return cls((rank + 1) // 2, rank % 2 == 1)

    def __lt__(self, other: "BarredInt") -> bool:
        return self.rank < other.rank

    def __str__(self) -> str:
        return f"{self.magnitude}-" if self.barred else str(self.magnitude)

    @classmethod
    def parse(cls, text: str) -> "BarredInt":
        text = text.strip()
        if text.endswith("-"):
            return cls(int(text[:-1]), True)
        return cls(int(text))


def bar(k: int) -> BarredInt:
    """Shorthand for the barred value k-."""
    return BarredInt(k, True)


PPartition = tuple[BarredInt, ...]
WeakComposition = tuple[int, ...]


def rel_lp(a: BarredInt, b: BarredInt) -> bool:
    """a < b, or a = b nonbarred (ties allowed on plain values)."""
    return a.rank < b.rank or (a.rank == b.rank and not a.barred)


def rel_len(a: BarredInt, b: BarredInt) -> bool:
    """a < b, or a = b barred (ties allowed on barred values)."""
    return a.rank < b.rank or (a.rank == b.rank and a.barred)


@lru_cache(maxsize=None)
def alphabet(m: int, mode: str) -> tuple[BarredInt, ...]:
    """The allowed values with magnitude at most m, in increasing order.

    mode "all" permits every value, "nonzero" drops 0, "positive" keeps
    only the plain values 1..m (a barred value can never satisfy the
    nonzero-image conditions alone, so positive mode forbids bars).
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if mode == "all":
        return tuple(BarredInt.from_rank(r) for r in range(2 * m + 1))
    if mode == "nonzero":
        return tuple(BarredInt.from_rank(r) for r in range(1, 2 * m + 1))
    if mode == "positive":
        return tuple(BarredInt(k) for k in range(1, m + 1))
    raise ValueError(f"unknown mode: {mode!r}")


def _image_allowed(v: BarredInt, mode: str) -> bool:
    if mode == "all":
        return True
    if mode == "nonzero":
        return v.magnitude >= 1
    if mode == "positive":
        return v.magnitude >= 1 and not v.barred
    raise ValueError(f"unknown mode: {mode!r}")


def _pair_ok(i: int, j: int, fi: BarredInt, fj: BarredInt) -> bool:
    # the condition for i < j in the poset, split on the natural order of i, j
    return rel_lp(fi, fj) if i < j else rel_len(fi, fj)


def is_p_partition(f: PPartition, poset: Poset, mode: str = "all") -> bool:
    """True when f is order preserving along the poset and its image obeys
    the mode restriction.  Covering pairs suffice by transitivity."""
    if len(f) != poset.n:
        raise ValueError(f"size mismatch: {len(f)} vs {poset.n}")
    if not all(_image_allowed(v, mode) for v in f):
        return False
    return all(_pair_ok(i, j, f[i - 1], f[j - 1]) for i, j in poset.covers())


def sorting_permutation(f: PPartition) -> Perm:
    """The unique permutation whose chain admits f: sort cards by value,
    breaking ties upward on plain values and downward on barred ones.

    >>> from shuffle_lab.permutations import format_permutation
    >>> f = (bar(1), BarredInt(0), BarredInt(0), bar(2), bar(1),
    ...      BarredInt(1), BarredInt(0), BarredInt(2), BarredInt(2))
    >>> format_permutation(sorting_permutation(f))
    '237516489'
    """
    return tuple(
        sorted(
            range(1, len(f) + 1),
            key=lambda i: (f[i - 1].rank, -i if f[i - 1].barred else i),
        )
    )


def bottom_deal_permutation(f: PPartition) -> Perm:
    """Sorting variant for a machine that deals cards to shelf bottoms:
    tie-breaking is reversed on each value class.

    >>> from shuffle_lab.permutations import format_permutation
    >>> f = (bar(1), BarredInt(0), BarredInt(0), bar(2), bar(1),
    ...      BarredInt(1), BarredInt(0), BarredInt(2), BarredInt(2))
    >>> format_permutation(bottom_deal_permutation(f))
    '732156498'
    """
    return tuple(
        sorted(
            range(1, len(f) + 1),
            key=lambda i: (f[i - 1].rank, i if f[i - 1].barred else -i),
        )
    )


def enumerate_bounded(poset: Poset, m: int, mode: str = "all") -> list[PPartition]:
    """All P-partitions of the poset with every magnitude at most m.

    Backtracks over elements 1..n, checking each covering pair once both
    endpoints are assigned.  Refuses instances with more than 10^7
    candidate functions.
    """
    n = poset.n
    if (2 * m + 1) ** n > ENUMERATION_CAP:
        raise ValueError(f"(2m+1)^n = {(2 * m + 1) ** n} exceeds enumeration cap")
    values = alphabet(m, mode)
    # covering pairs keyed by whichever endpoint is assigned later
    pending: list[list[tuple[int, int]]] = [[] for _ in range(n + 1)]
    for i, j in poset.covers():
        pending[max(i, j)].append((i, j))

    out: list[PPartition] = []
    if n == 0:
        return [()]
    if not values:
        return out
    f: list[BarredInt] = [values[0]] * n

    def assign(e: int) -> None:
        if e > n:
            out.append(tuple(f))
            return
        for v in values:
            f[e - 1] = v
            if all(_pair_ok(i, j, f[i - 1], f[j - 1]) for i, j in pending[e]):
                assign(e + 1)

    assign(1)
    return out


# ---------------------------------------------------------------------------
# shuffle outcomes


@dataclass(frozen=True)
class ShuffleOutcome:
    """A (pile composition, deck arrangement) pair.

    The composition counts cards per value of the mode alphabet in
    increasing value order; the permutation reads the shuffled deck top to
    bottom.  Each such pair admits at most one interleaving, so the pair
    pins down the machine's placement sequence exactly.
    """

    composition: WeakComposition
    permutation: Perm


def _mode_for_length(length: int) -> dict[str, int]:
    """Possible (mode -> m) readings of a composition length."""
    readings = {}
    if length % 2 == 1:
        readings["all"] = (length - 1) // 2
    else:
        readings["nonzero"] = length // 2
    readings["positive"] = length
    return readings


def shelf_outcome_from_ppartition(
    f: PPartition, m: int, mode: str = "all"
) -> ShuffleOutcome:
    """Encode a placement map as (composition, deck order).

    Card i goes to shelf |f(i)|: on top of that shelf's pile when barred,
    underneath when plain, and 0 means the bottom-dealt extra shelf.  The
    deck order is the sorting permutation of f.
    """
    values = alphabet(m, mode)
    index = {v: idx for idx, v in enumerate(values)}
    counts = [0] * len(values)
    for v in f:
        if v.magnitude > m:
            raise ValueError(f"value {v} exceeds shelf count m={m}")
        if v not in index:
            raise ValueError(f"value {v} not allowed in mode {mode!r}")
        counts[index[v]] += 1
    return ShuffleOutcome(tuple(counts), sorting_permutation(f))


def ppartition_from_shelf_outcome(
    outcome: ShuffleOutcome, mode: str = "all"
) -> PPartition:
    """Invert shelf_outcome_from_ppartition.

    The shelf count is read off the composition length; the permutation
    must be tie-consistent with the composition (exactly the arrangements
    the machine can produce), otherwise ValueError.
    """
    readings = _mode_for_length(len(outcome.composition))
    if mode not in readings:
        raise ValueError(
            f"composition of length {len(outcome.composition)} has no mode={mode!r} reading"
        )
    m = readings[mode]
    values = alphabet(m, mode)
    p = check_permutation(outcome.permutation)
    if sum(outcome.composition) != len(p):
        raise ValueError("composition does not sum to deck size")
    word: list[BarredInt] = []
    for v, a in zip(values, outcome.composition):
        word.extend([v] * a)
    f = [values[0]] * len(p)
    for slot, card in enumerate(p):
        f[card - 1] = word[slot]
    f = tuple(f)
    if sorting_permutation(f) != p:
        raise ValueError("permutation is not consistent with the composition")
    return f


def variant_mode(variant: str) -> str:
    """Mode of the value alphabet used by each riffle variant."""
    table = {"up-down": "all", "down-up": "nonzero", "classic": "positive"}
    if variant not in table:
        raise ValueError(f"unknown riffle variant: {variant!r}")
    return table[variant]


def pile_poset(A: WeakComposition, variant: str) -> Poset:
    """Chains forcing each pile's internal order after the cut.

    Pile j holds a consecutive block of cards; a pile carrying a barred
    value is flipped, so its chain runs downward through the labels.
    """
    mode = variant_mode(variant)
    n = sum(A)
    readings = _mode_for_length(len(A))
    if mode not in readings:
        raise ValueError(f"composition length {len(A)} invalid for variant {variant!r}")
    values = alphabet(readings[mode], mode)
    relations: list[tuple[int, int]] = []
    start = 1
    for v, a in zip(values, A):
        block = range(start, start + a)
        pairs = zip(block, list(block)[1:])
        if v.barred:
            relations.extend((j, i) for i, j in pairs)
        else:
            relations.extend(pairs)
        start += a
    return Poset(n, relations)


def riffle_outcome_to_ppartition(
    A: WeakComposition, s: Perm, variant: str
) -> PPartition:
    """The unique placement map behind a riffle outcome.

    ``A`` is the cut (cards per pile, piles in value order) and ``s`` the
    deck arrangement after interleaving.  The image multiset of the result
    is forced by A, and its sorting permutation is inverse(s).  Raises
    ValueError when s does not respect the pile order, i.e. is not a
    linear extension of pile_poset(A, variant).
    """
    mode = variant_mode(variant)
    s = check_permutation(s)
    if sum(A) != len(s) or any(a < 0 for a in A):
        raise ValueError("composition does not sum to deck size")
    readings = _mode_for_length(len(A))
    if mode not in readings:
        raise ValueError(f"composition length {len(A)} invalid for variant {variant!r}")
    values = alphabet(readings[mode], mode)
    word: list[BarredInt] = []
    for v, a in zip(values, A):
        word.extend([v] * a)
    f = tuple(word[s[i] - 1] for i in range(len(s)))
    if sorting_permutation(f) != inverse(s):
        raise ValueError("arrangement is not a linear extension of the pile poset")
    return f


# ---------------------------------------------------------------------------
# text format


def format_two_line(f: PPartition) -> str:
    """Two-line array: card indices over values, column aligned.

    >>> print(format_two_line((bar(1), BarredInt(0), BarredInt(2))))
    1  2 3
    1- 0 2
    """
    cards = [str(i) for i in range(1, len(f) + 1)]
    vals = [str(v) for v in f]
    widths = [max(len(c), len(v)) for c, v in zip(cards, vals)]
    top = " ".join(c.ljust(w) for c, w in zip(cards, widths))
    bottom = " ".join(v.ljust(w) for v, w in zip(vals, widths))
    return f"{top.rstrip()}\n{bottom.rstrip()}"


def parse_two_line(text: str) -> PPartition:
    """Inverse of format_two_line."""
    lines = [line for line in text.splitlines() if line.strip()]
    if len(lines) != 2:
        raise ValueError("expected two nonempty lines")
    cards = lines[0].split()
    vals = lines[1].split()
    if cards != [str(i) for i in range(1, len(cards) + 1)] or len(vals) != len(cards):
        raise ValueError("malformed two-line array")
    return tuple(BarredInt.parse(v) for v in vals)
