"""
Permutations of {1, ..., n}, words in the simple transpositions, and the
subword statistics everything else is tested against.

Conventions, used consistently across the package:

- Values and positions are both 1-indexed.  A ``Permutation`` stores its
  one-line notation ``pi(1) ... pi(n)``.
- The generator index ``l`` always means the simple transposition
  ``s_l = (l l+1)``.  Multiplying by ``s_l`` on the left swaps the entries
  with *values* ``l`` and ``l+1``; multiplying on the right swaps the
  entries at *positions* ``l`` and ``l+1``.
- A ``Word`` is a sequence of generator indices and is evaluated left to
  right by folding right multiplications over the identity, so that
  ``evaluate(Word((3, 5, 2, 1, 3), 6))`` is the permutation 413265.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator


class Kind(Enum):
    """Which of the two mirror-image automata/subword families is meant.

    UP is the family that forbids subwords j..k..i with i < j < k where j is
    the fixed middle value and appears first; DOWN forbids k..i..j where j
    appears last.
    """

    UP = "up"
    DOWN = "down"


# An inversion (high, low): high > low and high appears before low.
InversionPair = tuple[int, int]


@dataclass(frozen=True)
class Permutation:
    """A permutation in one-line notation, e.g. ``Permutation((3, 4, 2, 1))``."""

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        n = len(entries)
        if n < 1 or sorted(entries) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {entries!r}")

    @property
    def n(self) -> int:
        return len(self.entries)

    def value_at(self, position: int) -> int:
        """pi(position), 1-indexed."""
        return self.entries[position - 1]

    def position_of(self, value: int) -> int:
        """pi^{-1}(value), 1-indexed."""
        return self.entries.index(value) + 1

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for pos, val in enumerate(self.entries, start=1):
            inv[val - 1] = pos
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.entries, start=1))

    def length(self) -> int:
        """Number of inversions, i.e. the Coxeter length.

        >>> Permutation((4, 3, 2, 1)).length()
        6
        """
        return len(inversion_set(self))

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(str(v) for v in self.entries)
        return " ".join(str(v) for v in self.entries)

    @classmethod
    def from_text(cls, text: str) -> Permutation:
        """Parse one-line notation, either "3421" or "3 4 2 1" / "3,4,2,1".

        >>> Permutation.from_text("3421")
        Permutation(entries=(3, 4, 2, 1))
        """
        text = text.strip()
        if not text:
            raise ValueError("empty permutation")
        if any(sep in text for sep in (" ", ",")):
            parts = text.replace(",", " ").split()
        else:
            parts = list(text)
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise ValueError(f"cannot parse permutation from {text!r}") from exc


@dataclass(frozen=True)
class Word:
    """A word in the simple transpositions of S_n; letters lie in 1..n-1.

    >>> str(Word((2, 1, 3, 2, 3), 4))
    '2,1,3,2,3'
    """

    letters: tuple[int, ...]
    n: int

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if self.n < 1:
            raise ValueError("degree must be at least 1")
        for letter in letters:
            if not 1 <= letter <= self.n - 1:
                raise ValueError(f"letter {letter} out of range 1..{self.n - 1}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __str__(self) -> str:
        return ",".join(str(letter) for letter in self.letters)

    @classmethod
    def from_text(cls, text: str, n: int) -> Word:
        """Parse "2,1,3,2,3" (or space-separated); the empty string is the empty word."""
        text = text.strip()
        if not text:
            return cls((), n)
        parts = text.replace(",", " ").split()
        return cls(tuple(int(p) for p in parts), n)


@dataclass(frozen=True)
class Orientation:
    """A pair (u, d) of subsets of {2, ..., n-1}, the permutree parameter.

    The two sets may intersect; operations that need disjointness check it
    themselves.  The boundary automata at j = n and j = 1 are never part of
    an orientation.
    """

    u: frozenset[int]
    d: frozenset[int]
    n: int

    def __post_init__(self):
        u = frozenset(self.u)
        d = frozenset(self.d)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "d", d)
        allowed = set(range(2, self.n))
        for name, values in (("u", u), ("d", d)):
            if not values <= allowed:
                raise ValueError(
                    f"{name} must be a subset of {{2,..,{self.n - 1}}}, got {sorted(values)}"
                )

    @property
    def is_disjoint(self) -> bool:
        return not (self.u & self.d)

    def require_disjoint(self) -> None:
        if not self.is_disjoint:
            raise ValueError(f"u and d must be disjoint, both contain {sorted(self.u & self.d)}")


def identity(n: int) -> Permutation:
    """The identity permutation of S_n.

    >>> str(identity(4))
    '1234'
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    return Permutation(tuple(range(1, n + 1)))


def left_multiply(letter: int, pi: Permutation) -> Permutation:
    """s_letter * pi: swap the entries with values letter and letter+1.

    >>> str(left_multiply(4, Permutation.from_text("142536")))
    '152436'
    """
    _check_letter(letter, pi.n)
    p = pi.entries.index(letter)
    q = pi.entries.index(letter + 1)
    entries = list(pi.entries)
    entries[p], entries[q] = entries[q], entries[p]
    return Permutation(tuple(entries))


def right_multiply(pi: Permutation, letter: int) -> Permutation:
    """pi * s_letter: swap the entries at positions letter and letter+1.

    >>> str(right_multiply(identity(4), 2))
    '1324'
    """
    _check_letter(letter, pi.n)
    entries = list(pi.entries)
    entries[letter - 1], entries[letter] = entries[letter], entries[letter - 1]
    return Permutation(tuple(entries))


def inversion_set(pi: Permutation) -> frozenset[InversionPair]:
    """All pairs (high, low) with high > low and high before low.

    >>> sorted(inversion_set(Permutation.from_text("32145")))
    [(2, 1), (3, 1), (3, 2)]
    """
    entries = pi.entries
    return frozenset(
        (entries[p], entries[q])
        for p in range(pi.n)
        for q in range(p + 1, pi.n)
        if entries[p] > entries[q]
    )


def is_left_inversion(pi: Permutation, letter: int) -> bool:
    """True iff the values letter and letter+1 are reversed in pi.

    Equivalently, left multiplication by s_letter shortens pi.
    """
    _check_letter(letter, pi.n)
    return pi.entries.index(letter + 1) < pi.entries.index(letter)


def left_inversions(pi: Permutation) -> tuple[int, ...]:
    """All letters l with values l, l+1 reversed in pi, ascending."""
    positions = [0] * (pi.n + 1)
    for pos, val in enumerate(pi.entries):
        positions[val] = pos
    return tuple(l for l in range(1, pi.n) if positions[l + 1] < positions[l])


def contains_pattern(pi: Permutation, j: int, kind: Kind) -> bool:
    """Does pi contain a subword jki (UP) or kij (DOWN) with i < j < k?

    The value j is fixed; i and k range over all values below and above it.
    Single scan around the position of j.

    >>> contains_pattern(Permutation.from_text("42135"), 3, Kind.DOWN)
    True
    >>> contains_pattern(Permutation.from_text("42135"), 3, Kind.UP)
    False
    """
    if not 2 <= j <= pi.n - 1:
        raise ValueError(f"j must lie in 2..{pi.n - 1}, got {j}")
    pos_j = pi.entries.index(j)
    if kind is Kind.UP:
        # after j: some value above j, then some value below j
        seen_high = False
        for val in pi.entries[pos_j + 1 :]:
            if val > j:
                seen_high = True
            elif val < j and seen_high:
                return True
        return False
    # before j: some value above j, then some value below j
    seen_high = False
    for val in pi.entries[:pos_j]:
        if val > j:
            seen_high = True
        elif val < j and seen_high:
            return True
    return False


def pattern_witness(pi: Permutation, j: int, kind: Kind) -> tuple[int, int, int] | None:
    """Positions (p, q, r) of one jki (UP) / kij (DOWN) occurrence, or None."""
    if not 2 <= j <= pi.n - 1:
        raise ValueError(f"j must lie in 2..{pi.n - 1}, got {j}")
    pos_j = pi.entries.index(j) + 1
    if kind is Kind.UP:
        high_pos = None
        for pos in range(pos_j + 1, pi.n + 1):
            val = pi.value_at(pos)
            if val > j and high_pos is None:
                high_pos = pos
            elif val < j and high_pos is not None:
                return (pos_j, high_pos, pos)
        return None
    high_pos = None
    for pos in range(1, pos_j):
        val = pi.value_at(pos)
        if val > j and high_pos is None:
            high_pos = pos
        elif val < j and high_pos is not None:
            return (high_pos, pos, pos_j)
    return None


def is_aligned(pi: Permutation, orientation: Orientation) -> bool:
    """Alignment condition on the inversion set.

    For i < j < k with j in u: (k, i) inverted implies (k, j) inverted.
    For i < j < k with j in d: (k, i) inverted implies (j, i) inverted.
    """
    inv = inversion_set(pi)
    for j in orientation.u:
        for k in range(j + 1, pi.n + 1):
            for i in range(1, j):
                if (k, i) in inv and (k, j) not in inv:
                    return False
    for j in orientation.d:
        for k in range(j + 1, pi.n + 1):
            for i in range(1, j):
                if (k, i) in inv and (j, i) not in inv:
                    return False
    return True


def ninv_stats(pi: Permutation, j: int) -> tuple[int, int]:
    """(ninv_above, ninv_below) for the value j.

    ninv_above counts inversions (j, i) with i < j, i.e. j sits above a
    smaller value it precedes out of order; ninv_below counts inversions
    (k, j) with k > j.

    >>> ninv_stats(Permutation.from_text("4321"), 2)
    (1, 2)
    """
    if not 1 <= j <= pi.n:
        raise ValueError(f"j must lie in 1..{pi.n}, got {j}")
    pos_j = pi.entries.index(j)
    above = sum(1 for pos in range(pos_j + 1, pi.n) if pi.entries[pos] < j)
    below = sum(1 for pos in range(pos_j) if pi.entries[pos] > j)
    return (above, below)


def evaluate(word: Word) -> Permutation:
    """The permutation s_{i1} ... s_{ik}, letters multiplied left to right.

    >>> str(evaluate(Word((3, 5, 2, 1, 3), 6)))
    '413265'
    """
    pi = identity(word.n)
    for letter in word:
        pi = right_multiply(pi, letter)
    return pi


def is_reduced(word: Word) -> bool:
    """True iff the word has minimal length among expressions of its product."""
    return len(word) == evaluate(word).length()


def iter_reduced_words(pi: Permutation) -> Iterator[Word]:
    """Yield every reduced expression of pi, in ascending first-letter order.

    Peels left descents: every reduced expression starts with a letter l
    such that is_left_inversion(pi, l).  Memory per yielded word is O(length);
    nothing is cached.
    """
    n = pi.n

    def rec(p: Permutation) -> Iterator[tuple[int, ...]]:
        descents = left_inversions(p)
        if not descents:
            yield ()
            return
        for letter in descents:
            for rest in rec(left_multiply(letter, p)):
                yield (letter,) + rest

    for seq in rec(pi):
        yield Word(seq, n)


@lru_cache(maxsize=8)
def all_reduced_words(pi: Permutation) -> frozenset[Word]:
    """The set of reduced expressions of pi.

    Exponential in general; intended for n <= 6.  The handful of most recent
    results are cached so that scanning many orientations against one
    permutation enumerates only once.

    >>> len(all_reduced_words(Permutation.from_text("4312")))
    5
    """
    return frozenset(iter_reduced_words(pi))


def stack_sort(pi: Permutation) -> Permutation:
    """One pass of stack sorting: S(t n r) = S(t) S(r) n, recursively.

    pi is stack-sortable iff the result is the identity.

    >>> str(stack_sort(Permutation.from_text("231")))
    '213'
    """

    def rec(seq: tuple[int, ...]) -> tuple[int, ...]:
        if not seq:
            return ()
        top = max(seq)
        cut = seq.index(top)
        return rec(seq[:cut]) + rec(seq[cut + 1 :]) + (top,)

    return Permutation(rec(pi.entries))


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic order of one-line notation."""
    for entries in itertools.permutations(range(1, n + 1)):
        yield Permutation(entries)


def _check_letter(letter: int, n: int) -> None:
    if not 1 <= letter <= n - 1:
        raise ValueError(f"letter {letter} out of range 1..{n - 1}")
