"""
The executable sorting procedures.

Two algorithms, both of which try to write a permutation as a product of
simple transpositions while virtually walking the acceptance automata:

- single-automaton sorting: sort while refusing the one swap that would
  fall ill, entering the ill row at most once, then finish inside the two
  value blocks the ill row still allows;
- pair-of-sets sorting: the generalisation driven by an orientation (u, d),
  which moves the sets along as the automata advance and checks prefix
  fixedness before sacrificing a component.

Both return a trace that renders to the same table layout used to display
worked runs (columns pi | w | u | d | l | k, or pi | w | j | l for the
single-automaton form): one row per decision, a terminal row with the final
permutation.  A failed sort returns the partial word and the non-identity
remainder, never an exception.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .core import (
    Kind,
    Orientation,
    Permutation,
    Word,
    contains_pattern,
    is_left_inversion,
    left_inversions,
    left_multiply,
    pattern_witness,
)
from .automata import Status, classify, initial_state, run_product, step


@dataclass(frozen=True)
class PriorityOrder:
    """A total order on the generator indices 1..n-1; earlier means preferred."""

    order: tuple[int, ...]

    def __post_init__(self):
        order = tuple(self.order)
        object.__setattr__(self, "order", order)
        if sorted(order) != list(range(1, len(order) + 1)):
            raise ValueError(f"not an ordering of 1..{len(order)}: {order!r}")

    @property
    def n(self) -> int:
        return len(self.order) + 1

    def key(self, letter: int) -> int:
        return self.order.index(letter)

    def pick(self, candidates) -> int | None:
        candidates = list(candidates)
        if not candidates:
            return None
        return min(candidates, key=self.key)

    @classmethod
    def natural(cls, n: int) -> PriorityOrder:
        return cls(tuple(range(1, n)))

    @classmethod
    def shuffled(cls, n: int, rng: random.Random) -> PriorityOrder:
        letters = list(range(1, n))
        rng.shuffle(letters)
        return cls(tuple(letters))


@dataclass(frozen=True)
class TraceStep:
    """One decision row: the permutation and sets seen when the letter was chosen.

    checks holds the prefix-fixedness tests performed for this letter as
    (k, passed) pairs sorted by k; applied is False only on the rows of a
    stuck terminal decision, where the letter was considered and rejected.
    """

    pi: Permutation
    u: frozenset[int]
    d: frozenset[int]
    letter: int
    checks: tuple[tuple[int, bool], ...]
    phase: str
    applied: bool = True


@dataclass(frozen=True)
class SortTrace:
    steps: tuple[TraceStep, ...]
    word: Word
    result: Permutation
    final_u: frozenset[int]
    final_d: frozenset[int]
    kind: Kind | None = None  # None for the (u, d) algorithm

    @property
    def success(self) -> bool:
        return self.result.is_identity()

    def to_table(self) -> str:
        single = self.kind is not None
        header = ["pi", "w", "j", "l"] if single else ["pi", "w", "u", "d", "l", "k"]
        rows = [header]
        taken: list[int] = []
        for s in self.steps:
            word_cell = _word_cell(taken)
            if single:
                param = next(iter(s.u if self.kind is Kind.UP else s.d))
                rows.append([str(s.pi), word_cell, str(param), str(s.letter)])
            else:
                rows.append(
                    [
                        str(s.pi),
                        word_cell,
                        _set_cell(s.u),
                        _set_cell(s.d),
                        str(s.letter),
                        _checks_cell(s.checks),
                    ]
                )
            if s.applied:
                taken.append(s.letter)
        if self.success:
            final_word = _word_cell(list(self.word))
            if single:
                param = next(iter(self.final_u if self.kind is Kind.UP else self.final_d))
                rows.append([str(self.result), final_word, str(param), ""])
            else:
                rows.append([str(self.result), final_word, "", "", "", ""])
        widths = [max(len(r[c]) for r in rows) for c in range(len(header))]
        lines = []
        for i, row in enumerate(rows):
            lines.append(" | ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
            if i == 0:
                lines.append("-+-".join("-" * w for w in widths))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "steps": [
                {
                    "pi": str(s.pi),
                    "u": sorted(s.u),
                    "d": sorted(s.d),
                    "letter": s.letter,
                    "checks": [[k, ok] for k, ok in s.checks],
                    "phase": s.phase,
                    "applied": s.applied,
                }
                for s in self.steps
            ],
            "word": list(self.word),
            "result": str(self.result),
            "success": self.success,
        }
        return json.dumps(payload, sort_keys=True)


def _word_cell(letters: list[int]) -> str:
    return ".".join(f"s{l}" for l in letters) if letters else "e"


def _set_cell(values: frozenset[int]) -> str:
    return "{" + ",".join(str(v) for v in sorted(values)) + "}"


def _checks_cell(checks: tuple[tuple[int, bool], ...]) -> str:
    if not checks:
        return "."
    return ", ".join(str(k) if ok else f"x{k}" for k, ok in checks)


def move_u(u: frozenset[int], letter: int) -> frozenset[int]:
    """Advance the up-set along the letter: l in u becomes l+1."""
    if letter not in u:
        return u
    return (u - {letter}) | {letter + 1}


def move_d(d: frozenset[int], letter: int) -> frozenset[int]:
    """Advance the down-set along the letter: l+1 in d becomes l."""
    if letter + 1 not in d:
        return d
    return (d - {letter + 1}) | {letter}


def _fixes_prefix(pi: Permutation, k: int) -> bool:
    """pi([k]) == [k] setwise; vacuously true for k <= 0 and k >= n."""
    if k <= 0 or k >= pi.n:
        return True
    return max(pi.entries[:k]) == k


def sort_single(
    pi: Permutation, j: int, kind: Kind, priority: PriorityOrder | None = None
) -> SortTrace:
    """Sorting driven by a single automaton with start parameter j.

    Phase one takes any available swap except the one that would fall ill,
    moving the parameter along whenever the advancing letter is used.  Once
    only the ill-making swap remains it is taken, after which the two value
    blocks the ill row permits are sorted independently.  The returned word
    is always accepted by the automaton; the sort reaches the identity iff
    pi avoids the corresponding subword pattern.
    """
    n = pi.n
    if not 2 <= j <= n - 1:
        raise ValueError(f"j must lie in 2..{n - 1}, got {j}")
    if priority is None:
        priority = PriorityOrder.natural(n)
    up = kind is Kind.UP
    param = j
    steps: list[TraceStep] = []
    taken: list[int] = []

    def record(letter: int, phase: str) -> None:
        nonlocal pi
        sets = (frozenset({param}), frozenset()) if up else (frozenset(), frozenset({param}))
        steps.append(TraceStep(pi, sets[0], sets[1], letter, (), phase))
        taken.append(letter)
        pi = left_multiply(letter, pi)

    while True:
        forbidden = param - 1 if up else param
        letter = priority.pick(l for l in left_inversions(pi) if l != forbidden)
        if letter is None:
            break
        record(letter, "healthy")
        if up and letter == param:
            param += 1
        elif not up and letter == param - 1:
            param -= 1

    ill_letter = param - 1 if up else param
    if 1 <= ill_letter <= n - 1 and is_left_inversion(pi, ill_letter):
        record(ill_letter, "ill")
        # the ill row forbids exactly one letter; sort the two blocks it splits
        cut = param if up else param - 1
        for block in (range(1, cut), range(cut + 1, n)):
            allowed = set(block)
            while True:
                letter = priority.pick(l for l in left_inversions(pi) if l in allowed)
                if letter is None:
                    break
                record(letter, "block")

    final_sets = (frozenset({param}), frozenset()) if up else (frozenset(), frozenset({param}))
    return SortTrace(tuple(steps), Word(tuple(taken), n), pi, final_sets[0], final_sets[1], kind)


def permutree_sort(
    pi: Permutation, orientation: Orientation, priority: PriorityOrder | None = None
) -> SortTrace:
    """Sorting driven by a pair of sets (u, d).

    At each step, prefer a swap that keeps every component automaton healthy
    (available iff l+1 is not in u and l is not in d); otherwise take a swap
    whose endangered components provably accept everything, witnessed by the
    prefix checks pi([l+1]) = [l+1] for l+1 in u and pi([l-1]) = [l-1] for l
    in d, dropping those components.  If neither exists the sort is stuck.
    The moved sets may transiently contain n or 1; those components accept
    every word.
    """
    orientation.require_disjoint()
    n = pi.n
    if priority is None:
        priority = PriorityOrder.natural(n)
    u, d = orientation.u, orientation.d
    steps: list[TraceStep] = []
    taken: list[int] = []

    while True:
        descents = left_inversions(pi)
        if not descents:
            break
        letter = priority.pick(l for l in descents if l + 1 not in u and l not in d)
        if letter is not None:
            steps.append(TraceStep(pi, u, d, letter, (), "healthy"))
            taken.append(letter)
            pi = left_multiply(letter, pi)
            u, d = move_u(u, letter), move_d(d, letter)
            continue
        chosen = None
        attempts: list[TraceStep] = []
        for l in sorted(descents, key=priority.key):
            checks = []
            if l + 1 in u:
                checks.append((l + 1, _fixes_prefix(pi, l + 1)))
            if l in d:
                checks.append((l - 1, _fixes_prefix(pi, l - 1)))
            checks.sort()
            if all(ok for _, ok in checks):
                chosen = (l, tuple(checks))
                break
            attempts.append(TraceStep(pi, u, d, l, tuple(checks), "ill", applied=False))
        if chosen is None:
            steps.extend(attempts)
            break
        letter, checks = chosen
        steps.append(TraceStep(pi, u, d, letter, checks, "ill"))
        taken.append(letter)
        pi = left_multiply(letter, pi)
        u, d = move_u(u - {letter + 1}, letter), move_d(d - {letter}, letter)

    return SortTrace(tuple(steps), Word(tuple(taken), n), pi, u, d)


def is_minimal(pi: Permutation, orientation: Orientation) -> bool:
    """Subword-avoidance test: no jki for j in u, no kij for j in d."""
    return all(not contains_pattern(pi, j, Kind.UP) for j in orientation.u) and all(
        not contains_pattern(pi, j, Kind.DOWN) for j in orientation.d
    )


def minimality_witness(
    pi: Permutation, orientation: Orientation
) -> tuple[int, Kind, tuple[int, int, int]] | None:
    """A violating (j, kind, positions) triple, or None when minimal."""
    for kind, values in ((Kind.UP, orientation.u), (Kind.DOWN, orientation.d)):
        for j in sorted(values):
            witness = pattern_witness(pi, j, kind)
            if witness is not None:
                return (j, kind, witness)
    return None


def _greedy_extract(pi: Permutation, template: Word, cycle: bool) -> tuple[Word, Permutation]:
    """Scan the template, taking each letter that shortens the residual.

    With cycle the template is repeated until a full pass takes nothing
    (which for a residual other than the identity means it is stuck).
    Returns the taken word and the final residual.
    """
    residual = pi
    taken: list[int] = []
    while True:
        progressed = False
        for letter in template:
            if residual.is_identity():
                break
            if is_left_inversion(residual, letter):
                taken.append(letter)
                residual = left_multiply(letter, residual)
                progressed = True
        if not cycle or residual.is_identity() or not progressed:
            return Word(tuple(taken), pi.n), residual


def greedy_subword(pi: Permutation, template: Word, repeat: bool) -> Word | None:
    """Greedy extraction of a reduced expression of pi from the template.

    repeat=False scans once and returns the word only if the residual is
    sorted.  repeat=True cycles through the template until the residual is
    sorted, which requires every generator to occur in the template.
    """
    if template.n != pi.n:
        raise ValueError("template degree does not match permutation")
    if repeat:
        missing = set(range(1, pi.n)) - set(template)
        if missing:
            raise ValueError(f"template must contain every generator, missing {sorted(missing)}")
        word, _ = _greedy_extract(pi, template, cycle=True)
        return word
    word, residual = _greedy_extract(pi, template, cycle=False)
    return word if residual.is_identity() else None


def network_mismatch(template: Word, orientation: Orientation, pi: Permutation) -> bool:
    """Is pi a counterexample to the template deciding minimality?

    The template plays the role of an unbounded supply of its own copies:
    the greedy extraction cycles until it sorts pi or gets stuck.  The
    network answers yes iff the extraction terminates with a reduced
    expression of pi accepted by the intersection automaton.
    """
    word, residual = _greedy_extract(pi, template, cycle=True)
    decided = residual.is_identity() and classify(run_product(orientation, word)) is not Status.DEAD
    return decided != is_minimal(pi, orientation)


def check_sorting_network(template: Word, orientation: Orientation, n: int) -> Permutation | None:
    """First permutation (lexicographically) refuting the template, or None.

    None means the template is a valid sorting network for the orientation:
    its greedy extraction decides minimality for every permutation of S_n.
    """
    from .core import all_permutations

    if template.n != n or orientation.n != n:
        raise ValueError("template, orientation, and n must agree on the degree")
    for pi in all_permutations(n):
        if network_mismatch(template, orientation, pi):
            return pi
    return None


def network_candidate(kind: Kind, j: int, n: int, extension: Word | None = None) -> Word:
    """Experimental template read off the healthy row of one automaton.

    At each healthy state before the boundary, emit the looping letters
    repeated as many times as there are of them, then the advancing letter;
    append the extension (default: the decreasing staircase).  No claim is
    made beyond what check_sorting_network reports for the result.
    """
    if not 2 <= j <= n - 1:
        raise ValueError(f"j must lie in 2..{n - 1}, got {j}")
    letters: list[int] = []
    state = initial_state(kind, j, n)
    boundary = n if kind is Kind.UP else 1
    while state.param != boundary:
        advancing = state.param if kind is Kind.UP else state.param - 1
        ill_making = state.param - 1 if kind is Kind.UP else state.param
        loops = [l for l in range(1, n) if l not in (advancing, ill_making)]
        letters.extend(loops * len(loops))
        letters.append(advancing)
        state = step(state, advancing)
    if extension is None:
        extension = Word(tuple(range(n - 1, 0, -1)), n)
    letters.extend(extension)
    return Word(tuple(letters), n)
