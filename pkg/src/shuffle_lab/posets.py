"""Strict partial orders on {1..n}, their linear extensions, and small-n
exhaustive generation.

The relation is stored transitively closed, so comparability queries are
set lookups; covering pairs are derived on demand.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

from .permutations import Perm, check_permutation, inverse

__all__ = ["Poset", "all_posets"]


def _transitive_closure(n: int, pairs: set[tuple[int, int]]) -> set[tuple[int, int]]:
    closure = set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(tuple(closure), repeat=2):
            if b == c and (a, d) not in closure:
                closure.add((a, d))
                changed = True
    return closure


class Poset:
    """A strict partial order on {1..n}.

    ``relations`` may be any generating set of pairs (i, j) meaning i < j;
    the constructor closes it transitively and rejects cycles.
    """

    __slots__ = ("n", "relation", "_covers")

    def __init__(self, n: int, relations: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("n must be nonnegative")
        pairs = set()
        for i, j in relations:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"relation ({i},{j}) out of range 1..{n}")
            if i == j:
                raise ValueError(f"reflexive relation ({i},{j})")
            pairs.add((i, j))
        closure = _transitive_closure(n, pairs)
        for i, j in closure:
            if (j, i) in closure or i == j:
                raise ValueError("relations contain a cycle")
        self.n = n
        self.relation = frozenset(closure)
        self._covers: tuple[tuple[int, int], ...] | None = None

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls(n)

    @classmethod
    def chain(cls, p: Perm) -> "Poset":
        """The chain p(1) < p(2) < ... < p(n)."""
        p = check_permutation(p)
        return cls(len(p), zip(p, p[1:]))

    def less(self, i: int, j: int) -> bool:
        return (i, j) in self.relation

    def covers(self) -> tuple[tuple[int, int], ...]:
        """Covering pairs (i, j): i < j with no element strictly between."""
        if self._covers is None:
            rel = self.relation
            self._covers = tuple(
                (i, j)
                for (i, j) in sorted(rel)
                if not any((i, k) in rel and (k, j) in rel for k in range(1, self.n + 1))
            )
        return self._covers

    def is_linear_extension(self, p: Perm) -> bool:
        """True when i < j in the poset implies i precedes j in p."""
        if len(p) != self.n:
            raise ValueError(f"size mismatch: {len(p)} vs {self.n}")
        position = inverse(p)
        return all(position[i - 1] < position[j - 1] for i, j in self.relation)

    def linear_extensions(self) -> list[Perm]:
        """All linear extensions, as permutations read off top-to-bottom."""
        succs: dict[int, list[int]] = {i: [] for i in range(1, self.n + 1)}
        npred = {i: 0 for i in range(1, self.n + 1)}
        for i, j in self.covers():
            succs[i].append(j)
            npred[j] += 1

        out: list[Perm] = []
        prefix: list[int] = []
        ready = sorted(i for i in npred if npred[i] == 0)

        def extend(ready: list[int]) -> None:
            if not ready:
                if len(prefix) == self.n:
                    out.append(tuple(prefix))
                return
            for idx, i in enumerate(ready):
                prefix.append(i)
                nxt = ready[:idx] + ready[idx + 1 :]
                for j in succs[i]:
                    npred[j] -= 1
                    if npred[j] == 0:
                        nxt.append(j)
                extend(nxt)
                for j in succs[i]:
                    npred[j] += 1
                prefix.pop()

        extend(ready)
        return sorted(out)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Poset)
            and self.n == other.n
            and self.relation == other.relation
        )

    def __hash__(self) -> int:
        return hash((self.n, self.relation))

    def __repr__(self) -> str:
        return f"Poset({self.n}, {sorted(self.relation)})"


def all_posets(n: int) -> Iterator[Poset]:
    """Every strict partial order on {1..n}, by brute force over orientations.

    Each unordered pair is incomparable, i<j, or j<i; a choice is kept when
    the resulting relation is already transitively closed.  Counts for
    n = 1..5 are 1, 3, 19, 219, 4231, so this is for small-n testing only.
    """
    if n > 5:
        raise ValueError("all_posets is exhaustive; capped at n <= 5")
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        rel = set()
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                rel.add((i, j))
            elif c == 2:
                rel.add((j, i))
        if all(
            (a, d) in rel
            for (a, b) in rel
            for (c, d) in rel
            if b == c
        ):
            yield Poset(n, rel)
