import pytest

from permutree.core import (
    Kind,
    Orientation,
    Permutation,
    Word,
    all_permutations,
    contains_pattern,
    evaluate,
    identity,
    is_reduced,
)
from permutree.automata import Status, accepts, classify, run_product
from permutree.sorting import (
    PriorityOrder,
    check_sorting_network,
    greedy_subword,
    is_minimal,
    minimality_witness,
    move_d,
    move_u,
    network_candidate,
    network_mismatch,
    permutree_sort,
    sort_single,
)

P = Permutation.from_text


def orientations(n, disjoint=True):
    import itertools

    values = range(2, n)
    for assign in itertools.product((0, 1, 2), repeat=n - 2):
        u = frozenset(j for j, a in zip(values, assign) if a == 1)
        d = frozenset(j for j, a in zip(values, assign) if a == 2)
        if disjoint and (u & d):
            continue
        yield Orientation(u, d, n)


def test_priority_order():
    natural = PriorityOrder.natural(4)
    assert natural.pick([3, 1, 2]) == 1
    flipped = PriorityOrder((3, 1, 2))
    assert flipped.pick([1, 3]) == 3
    assert flipped.pick([]) is None
    with pytest.raises(ValueError):
        PriorityOrder((1, 3))


def test_move_operations():
    assert move_u(frozenset({2}), 2) == frozenset({3})
    assert move_u(frozenset({3}), 2) == frozenset({3})
    assert move_d(frozenset({4}), 3) == frozenset({3})
    assert move_d(frozenset({2}), 3) == frozenset({2})


def test_single_sort_golden_success():
    trace = sort_single(P("3421"), 2, Kind.UP)
    assert trace.word == Word((2, 1, 3, 2, 3), 4)
    assert trace.success
    assert [(str(s.pi), next(iter(s.u)), s.letter) for s in trace.steps] == [
        ("3421", 2, 2),
        ("2431", 3, 1),
        ("1432", 3, 3),
        ("1342", 4, 2),
        ("1243", 4, 3),
    ]


def test_single_sort_golden_failure():
    trace = sort_single(P("4231"), 2, Kind.UP)
    assert trace.word == Word((3, 2, 1, 2), 4)
    assert not trace.success
    assert str(trace.result) == "1243"
    assert [(str(s.pi), next(iter(s.u)), s.letter) for s in trace.steps] == [
        ("4231", 2, 3),
        ("3241", 2, 2),
        ("2341", 3, 1),
        ("1342", 3, 2),
    ]


def test_single_sort_identity():
    trace = sort_single(identity(5), 3, Kind.UP)
    assert trace.word == Word((), 5)
    assert trace.success and not trace.steps


def test_single_sort_table_rendering():
    table = sort_single(P("3421"), 2, Kind.UP).to_table()
    assert table.splitlines()[2].startswith("3421 | e")
    assert "s2.s1.s3.s2.s3" in table


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_single_sort_always_accepted_success_iff_avoids(n):
    for pi in all_permutations(n):
        for j in range(2, n):
            for kind in (Kind.UP, Kind.DOWN):
                trace = sort_single(pi, j, kind)
                assert is_reduced(trace.word)
                assert accepts(kind, j, n, trace.word)
                avoid = not contains_pattern(pi, j, kind)
                assert trace.success == avoid
                assert trace.success == (evaluate(trace.word) == pi)


def test_product_sort_golden_3214():
    trace = permutree_sort(P("3214"), Orientation({3}, {2}, 4))
    assert trace.word == Word((1, 2, 1), 4)
    assert trace.success
    rows = [(str(s.pi), tuple(sorted(s.u)), tuple(sorted(s.d)), s.letter, s.checks) for s in trace.steps]
    assert rows == [
        ("3214", (3,), (2,), 1, ()),
        ("3124", (3,), (1,), 2, ((3, True),)),
        ("2134", (), (1,), 1, ((0, True),)),
    ]


def test_product_sort_golden_1324():
    trace = permutree_sort(P("1324"), Orientation({3}, {2}, 4))
    assert trace.word == Word((2,), 4)
    assert trace.success
    assert trace.steps[0].checks == ((1, True), (3, True))


def test_product_sort_golden_1342_stuck():
    trace = permutree_sort(P("1342"), Orientation({3}, {2}, 4))
    assert trace.word == Word((), 4)
    assert not trace.success
    assert str(trace.result) == "1342"
    (step,) = trace.steps
    assert step.letter == 2 and not step.applied
    assert step.checks == ((1, True), (3, False))


def test_product_sort_golden_54213():
    trace = permutree_sort(P("54213"), Orientation({2}, {4}, 5))
    assert trace.word == Word((3, 2, 1, 4, 3, 2, 1, 3), 5)
    assert trace.success
    rows = [(str(s.pi), tuple(sorted(s.u)), tuple(sorted(s.d)), s.letter) for s in trace.steps]
    assert rows == [
        ("54213", (2,), (4,), 3),
        ("53214", (2,), (3,), 2),
        ("52314", (3,), (2,), 1),
        ("51324", (3,), (1,), 4),
        ("41325", (3,), (1,), 3),
        ("31425", (4,), (1,), 2),
        ("21435", (4,), (1,), 1),
        ("12435", (4,), (), 3),
    ]
    assert trace.steps[6].checks == ((0, True),)
    assert trace.steps[7].checks == ((4, True),)


def test_product_sort_golden_15342():
    trace = permutree_sort(P("15342"), Orientation({2}, {4}, 5))
    assert trace.word == Word((2, 3, 4), 5)
    assert not trace.success
    assert str(trace.result) == "14235"
    last = trace.steps[-1]
    assert not last.applied
    assert last.letter == 3 and last.checks == ((2, False),)
    # the moved sets may pick up the harmless extreme values
    assert tuple(sorted(last.u)) == (5,) and tuple(sorted(last.d)) == (3,)


def test_product_sort_rejects_overlap():
    with pytest.raises(ValueError):
        permutree_sort(P("3214"), Orientation({2}, {2}, 4))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_product_sort_accepted_and_decides_minimality(n):
    for orientation in orientations(n):
        for pi in all_permutations(n):
            trace = permutree_sort(pi, orientation)
            assert is_reduced(trace.word)
            assert classify(run_product(orientation, trace.word)) is not Status.DEAD
            assert trace.success == is_minimal(pi, orientation)
            assert trace.success == (evaluate(trace.word) == pi)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_product_sort_prefixes_accepted(n):
    for orientation in orientations(n):
        for pi in all_permutations(n):
            trace = permutree_sort(pi, orientation)
            for cut in range(len(trace.word) + 1):
                prefix = Word(trace.word.letters[:cut], n)
                assert classify(run_product(orientation, prefix)) is not Status.DEAD


@pytest.mark.parametrize("n", [3, 4, 5])
def test_product_sort_preserves_minimality_of_intermediates(n):
    # along a successful run, each intermediate is minimal for the moved sets
    for orientation in orientations(n):
        for pi in all_permutations(n):
            if not is_minimal(pi, orientation):
                continue
            trace = permutree_sort(pi, orientation)
            for step in trace.steps:
                inner = Orientation(
                    frozenset(j for j in step.u if 2 <= j <= n - 1),
                    frozenset(j for j in step.d if 2 <= j <= n - 1),
                    n,
                )
                assert is_minimal(step.pi, inner)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_descent_freedom(n):
    # a minimal permutation has an accepted reduced expression starting with
    # any descent other than the single ill-making letter
    from permutree.core import all_reduced_words, is_left_inversion

    for pi in all_permutations(n):
        for j in range(2, n):
            if contains_pattern(pi, j, Kind.UP):
                continue
            for letter in range(1, n):
                if letter == j - 1 or not is_left_inversion(pi, letter):
                    continue
                assert any(
                    w.letters[0] == letter and accepts(Kind.UP, j, n, w)
                    for w in all_reduced_words(pi)
                )


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_full_up_orientation_is_stack_sorting(n):
    from permutree.core import stack_sort

    orientation = Orientation(frozenset(range(2, n)), frozenset(), n)
    for pi in all_permutations(n):
        assert permutree_sort(pi, orientation).success == stack_sort(pi).is_identity()


def test_priority_changes_word_not_outcome():
    pi = P("54213")
    orientation = Orientation({2}, {4}, 5)
    reversed_priority = PriorityOrder((4, 3, 2, 1))
    trace = permutree_sort(pi, orientation, reversed_priority)
    assert trace.success
    assert evaluate(trace.word) == pi
    assert trace.word != permutree_sort(pi, orientation).word


def test_is_minimal_examples():
    assert is_minimal(P("42135"), Orientation({2, 3, 4}, frozenset(), 5))
    assert not is_minimal(P("42135"), Orientation(frozenset(), {3}, 5))
    assert is_minimal(P("4231"), Orientation(frozenset(), frozenset(), 4))


def test_minimality_witness():
    j, kind, positions = minimality_witness(P("42135"), Orientation(frozenset(), {3}, 5))
    assert (j, kind) == (3, Kind.DOWN)
    assert positions == (1, 2, 4)
    assert minimality_witness(identity(4), Orientation({2, 3}, frozenset(), 4)) is None


def test_greedy_subword_cycled():
    word = greedy_subword(P("4213"), Word((2, 1, 3), 4), repeat=True)
    assert word == Word((1, 3, 2, 1), 4)
    assert greedy_subword(identity(4), Word((1, 2, 3), 4), repeat=True) == Word((), 4)
    with pytest.raises(ValueError):
        greedy_subword(P("4213"), Word((1, 2), 4), repeat=True)


def test_greedy_subword_single_pass():
    # a template too short to finish returns nothing on one pass, and the
    # cycled extraction of this permutation is its sorting-procedure word
    template = Word((3, 2, 1, 3, 2, 1), 4)
    assert greedy_subword(P("3421"), template, repeat=False) is None
    cycled = greedy_subword(P("3421"), template, repeat=True)
    assert cycled == Word((2, 1, 3, 2, 3), 4)
    assert accepts(Kind.UP, 2, 4, cycled)
    # one pass is enough here
    assert greedy_subword(P("2314"), template, repeat=False) == Word((1, 2), 4)


def test_check_sorting_network_positive_cases():
    assert (
        check_sorting_network(
            Word((1, 2, 4, 3, 2, 1, 4, 3, 2), 5), Orientation({4}, {2}, 5), 5
        )
        is None
    )
    assert (
        check_sorting_network(Word((3, 2, 1, 3, 2, 1), 4), Orientation({2}, frozenset(), 4), 4)
        is None
    )


def test_check_sorting_network_negative_case():
    # a fixed reduced expression of the top permutation cannot decide
    # ({2},{4})-minimality; two specific permutations disagree on the needed
    # first letter
    template = Word((1, 2, 1, 3, 2, 1, 4, 3, 2, 1), 5)
    assert evaluate(template) == P("54321")
    orientation = Orientation({2}, {4}, 5)
    counterexample = check_sorting_network(template, orientation, 5)
    assert counterexample is not None
    assert network_mismatch(template, orientation, P("54213")) or network_mismatch(
        template, orientation, P("35421")
    )


def test_network_candidate_prefix():
    candidate = network_candidate(Kind.UP, 2, 4, extension=Word((2, 1), 4))
    assert candidate.letters[:4] == (3, 2, 1, 3)
    assert check_sorting_network(candidate, Orientation({2}, frozenset(), 4), 4) is None
    # the default extension also validates for this case
    default = network_candidate(Kind.UP, 2, 4)
    assert check_sorting_network(default, Orientation({2}, frozenset(), 4), 4) is None


def test_trace_json_round_trip():
    import json

    trace = permutree_sort(P("3214"), Orientation({3}, {2}, 4))
    payload = json.loads(trace.to_json())
    assert payload["success"] is True
    assert payload["word"] == [1, 2, 1]
    assert payload["steps"][1]["checks"] == [[3, True]]
