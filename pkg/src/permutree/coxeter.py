"""
Coxeter elements as explicit words, sorting words, and sortability.

A Coxeter word lists each generator exactly once.  Everything here depends
on the word, not just the group element it evaluates to, so the word is
carried around explicitly and group-element equality is never used.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .core import (
    Kind,
    Orientation,
    Permutation,
    Word,
    all_permutations,
    is_left_inversion,
    left_multiply,
)
from .automata import exists_accepted, exists_accepted_single, product_accepts
from .sorting import greedy_subword, is_minimal


@dataclass(frozen=True)
class CoxeterWord:
    """A word containing each generator index 1..n-1 exactly once."""

    word: Word

    def __post_init__(self):
        letters = self.word.letters
        if sorted(letters) != list(range(1, self.word.n)):
            raise ValueError(
                f"a Coxeter word must use each of 1..{self.word.n - 1} once, got {letters!r}"
            )

    @property
    def n(self) -> int:
        return self.word.n

    def __str__(self) -> str:
        return str(self.word)


@dataclass(frozen=True)
class CFactorization:
    """Blocks I_1, ..., I_p: the letters taken from each successive copy of c."""

    blocks: tuple[frozenset[int], ...]


def all_coxeter_words(n: int) -> Iterator[CoxeterWord]:
    """All (n-1)! orderings of the generators."""
    for letters in itertools.permutations(range(1, n)):
        yield CoxeterWord(Word(letters, n))


def orientation_of(c: CoxeterWord) -> Orientation:
    """The partition read off the word: j goes up iff s_j precedes s_{j-1}.

    >>> o = orientation_of(CoxeterWord(Word((2, 5, 4, 3, 1, 6), 7)))
    >>> sorted(o.u), sorted(o.d)
    ([2, 4, 5], [3, 6])
    """
    position = {letter: idx for idx, letter in enumerate(c.word)}
    up = frozenset(j for j in range(2, c.n) if position[j] < position[j - 1])
    down = frozenset(range(2, c.n)) - up
    return Orientation(up, down, c.n)


def c_sorting_word(pi: Permutation, c: CoxeterWord) -> Word:
    """The greedy reduced expression of pi inside c repeated forever."""
    word = greedy_subword(pi, c.word, repeat=True)
    assert word is not None
    return word


def c_factorization(pi: Permutation, c: CoxeterWord) -> CFactorization:
    """Which letters of each successive copy of c the greedy extraction takes."""
    residual = pi
    blocks: list[frozenset[int]] = []
    while not residual.is_identity():
        taken = set()
        for letter in c.word:
            if is_left_inversion(residual, letter):
                taken.add(letter)
                residual = left_multiply(letter, residual)
        blocks.append(frozenset(taken))
    return CFactorization(tuple(blocks))


def is_c_sortable(pi: Permutation, c: CoxeterWord) -> bool:
    """True iff the factorization blocks decrease: I_1 >= I_2 >= ... >= I_p.

    >>> is_c_sortable(Permutation.from_text("4213"), CoxeterWord(Word((2, 1, 3), 4)))
    False
    """
    blocks = c_factorization(pi, c).blocks
    return all(late <= early for early, late in zip(blocks, blocks[1:]))


@dataclass(frozen=True)
class EquivalenceReport:
    """Outcome of testing the five sortability characterizations on all of S_n.

    Each violation pairs a permutation with its five-condition vector:
    (sortable, sorting word accepted, some accepted reduced expression,
    per-automaton acceptance for every j, subword avoidance).
    """

    violations: tuple[tuple[Permutation, tuple[bool, bool, bool, bool, bool]], ...]
    sortable_count: int

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_lines(self) -> str:
        return "\n".join(
            f'{{"pi": "{pi}", "conditions": {list(conditions)!r}}}'.replace("True", "true").replace(
                "False", "false"
            )
            for pi, conditions in self.violations
        )


def verify_csorting_equivalences(n: int, c: CoxeterWord) -> EquivalenceReport:
    """Evaluate all five conditions on every permutation of S_n.

    Exhaustive; intended for small n.  An empty violation list means the
    five characterizations agree everywhere.
    """
    orientation = orientation_of(c)
    violations = []
    sortable = 0
    for pi in all_permutations(n):
        conditions = (
            is_c_sortable(pi, c),
            product_accepts(orientation, c_sorting_word(pi, c)),
            exists_accepted(pi, orientation, enumerate_all=True),
            all(exists_accepted_single(pi, Kind.UP, j) for j in orientation.u)
            and all(exists_accepted_single(pi, Kind.DOWN, j) for j in orientation.d),
            is_minimal(pi, orientation),
        )
        if all(conditions):
            sortable += 1
        if len(set(conditions)) > 1:
            violations.append((pi, conditions))
    return EquivalenceReport(tuple(violations), sortable)
