"""Permutree sorting of permutations and the automata behind it."""

from .core import (
    InversionPair,
    Kind,
    Orientation,
    Permutation,
    Word,
    all_permutations,
    all_reduced_words,
    contains_pattern,
    evaluate,
    identity,
    inversion_set,
    is_aligned,
    is_left_inversion,
    is_reduced,
    iter_reduced_words,
    left_multiply,
    ninv_stats,
    right_multiply,
    stack_sort,
)
from .automata import (
    AutomatonState,
    ProductState,
    Status,
    accepted_final_state,
    accepts,
    classify,
    exists_accepted,
    export_dot,
    export_dot_product,
    initial_state,
    product_accepts,
    run,
    run_product,
    step,
)
from .sorting import (
    PriorityOrder,
    SortTrace,
    check_sorting_network,
    greedy_subword,
    is_minimal,
    move_d,
    move_u,
    permutree_sort,
    sort_single,
)
from .coxeter import (
    CFactorization,
    CoxeterWord,
    c_factorization,
    c_sorting_word,
    is_c_sortable,
    orientation_of,
    verify_csorting_equivalences,
)
from .trees import (
    GeneratingTree,
    WeakOrderDiagram,
    count_minimal,
    export_tree_dot,
    generating_tree,
    lexmin_word,
    weak_order_hasse,
)

__version__ = "0.1.0"
