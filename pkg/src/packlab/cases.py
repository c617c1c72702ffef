"""Case analysis machinery for list packing with a 3-vertex small side.

With |U| = 3 and 3-lists, the assignment on U is one of finitely many
isomorphism types (colour renaming + permuting the three vertices): twelve
types when the three lists are pairwise distinct, sixteen including repeated
lists.  Fixing the arrangement of L(u_1), a type leaves 36 candidate
matrices (rows 2 and 3 permuted); a list on the V side blocks the matrices
admitting no permutation of that list deranging all three rows.  The
instance is unpackable iff the V lists jointly block all 36 candidates, so
exact list-packing thresholds reduce to minimum set-cover questions over
blocked-candidate masks, which this module solves exactly.
"""

from __future__ import annotations

import itertools

from .covers import ListAssignment, make_assignment
from .errors import ResourceLimitError
from .packing import has_perfect_matching

#: the twelve reference matrices of the distinct-list types; rows are colour
#: vectors, row sets are the three lists of the type
CASE_MATRICES: dict[int, tuple[tuple[int, ...], ...]] = {
    1: ((1, 2, 3), (1, 2, 4), (1, 3, 4)),
    2: ((1, 2, 3), (1, 2, 4), (1, 5, 3)),
    3: ((3, 2, 1), (2, 4, 1), (3, 4, 5)),
    4: ((1, 2, 3), (1, 2, 4), (6, 5, 3)),
    5: ((1, 2, 4), (1, 5, 3), (6, 2, 3)),
    6: ((1, 2, 3), (1, 2, 4), (1, 2, 5)),
    7: ((1, 2, 3), (4, 5, 6), (1, 7, 8)),
    8: ((1, 2, 3), (4, 5, 6), (9, 7, 8)),
    9: ((1, 2, 3), (1, 2, 4), (6, 1, 5)),
    10: ((1, 2, 3), (1, 4, 5), (6, 1, 7)),
    11: ((1, 2, 3), (1, 2, 4), (5, 6, 7)),
    12: ((1, 2, 3), (1, 4, 5), (6, 2, 7)),
}


def check_case_matrix(rows: tuple[tuple[int, ...], ...], v_list) -> bool:
    """True iff some permutation of v_list is a derangement of every row.

    Hall check between the k positions and the k colours of v_list: colour c
    is admissible at position s unless some row already has c there.
    """
    k = len(rows[0])
    colours = sorted(v_list)
    if len(colours) != k or any(len(r) != k for r in rows):
        raise ValueError("v_list and all rows must have the same size k")
    adm = []
    for s in range(k):
        column = {row[s] for row in rows}
        mask = 0
        for idx, c in enumerate(colours):
            if c not in column:
                mask |= 1 << idx
        adm.append(mask)
    return has_perfect_matching(adm)


# ---------------------------------------------------------------------------
# isomorphism types of list triples
# ---------------------------------------------------------------------------


def canonical_triple(lists) -> tuple[tuple[int, ...], ...]:
    """Canonical form of a triple of equal-size colour sets.

    Minimum, over the six vertex orders and all colour relabelings that
    assign fresh labels in first-use order, of the tuple of sorted label
    rows.  Two triples get the same form iff a colour bijection plus a
    vertex permutation maps one to the other.
    """
    rows_in = [frozenset(lst) for lst in lists]
    if len(rows_in) != 3:
        raise ValueError("need exactly three lists")
    best: tuple | None = None

    def descend(order, ri, labmap, nextlab, code):
        nonlocal best
        if ri == 3:
            if best is None or code < best:
                best = code
            return
        row = rows_in[order[ri]]
        unknown = sorted(c for c in row if c not in labmap)
        for perm in itertools.permutations(unknown):
            lm = dict(labmap)
            nl = nextlab
            for c in perm:
                lm[c] = nl
                nl += 1
            row_code = tuple(sorted(lm[c] for c in row))
            new_code = code + (row_code,)
            if best is not None and new_code > best[: len(new_code)]:
                continue
            descend(order, ri + 1, lm, nl, new_code)

    for order in itertools.permutations(range(3)):
        descend(order, 0, {}, 1, ())
    assert best is not None
    return best


def enumerate_triple_types(k: int, allow_repeats: bool = False) -> list[tuple[tuple[int, ...], ...]]:
    """All isomorphism types of triples of k-lists, as canonical forms.

    Candidates are generated with the first list {1..k} and fresh colours
    introduced in increasing order, which reaches every type; canonical
    forms dedupe them.
    """

    def extensions(used: set[int]):
        top = max(used)
        options = []
        for j in range(k + 1):
            for shared in itertools.combinations(sorted(used), j):
                fresh = tuple(range(top + 1, top + 1 + (k - j)))
                options.append(frozenset(shared + fresh))
        return options

    first = frozenset(range(1, k + 1))
    types: dict[tuple, None] = {}
    for second in extensions(set(first)):
        used2 = set(first | second)
        for third in extensions(used2):
            triple = [first, second, third]
            if not allow_repeats and len({first, second, third}) != 3:
                continue
            types.setdefault(canonical_triple(triple), None)
    return sorted(types.keys())


def u_side_list_types() -> list[tuple[tuple[int, ...], ...]]:
    """The twelve types of pairwise-distinct 3-list triples on the small side.

    Returned as the sorted row-sets of the reference matrices, in reference
    order 1..12.  The count is re-derived by exhaustive classification in
    the tests.
    """
    return [
        tuple(tuple(sorted(row)) for row in CASE_MATRICES[i]) for i in sorted(CASE_MATRICES)
    ]


# ---------------------------------------------------------------------------
# blocked-candidate masks and exact cover thresholds
# ---------------------------------------------------------------------------


def _arrangements(u_lists) -> list[tuple[tuple[int, ...], ...]]:
    """Candidate matrices: row 1 fixed to sorted order, rows 2.. permuted."""
    first = tuple(sorted(u_lists[0]))
    rest = [list(itertools.permutations(sorted(lst))) for lst in u_lists[1:]]
    return [(first,) + combo for combo in itertools.product(*rest)]


def _effective_lists(u_lists, k: int) -> list[tuple[int, ...]]:
    """All k-lists that can differ in blocking power: subsets of the used
    colours padded with fresh ones (fresh colours never constrain)."""
    used = sorted(set().union(*map(set, u_lists)))
    top = max(used)
    fresh = list(range(top + 1, top + 1 + k))
    return [tuple(sorted(c)) for c in itertools.combinations(used + fresh, k)]


def packing_block_masks(u_lists) -> tuple[list[tuple[int, ...]], dict[tuple[int, ...], int]]:
    """(arrangements, mask per effective list) for the packing problem.

    Bit m of a mask is set when the list blocks arrangement m (no
    permutation of the list is a common derangement of its rows).  Lists
    with zero mask are dropped.
    """
    u_sorted = [tuple(sorted(lst)) for lst in u_lists]
    k = len(u_sorted[0])
    arrangements = _arrangements(u_sorted)
    masks: dict[tuple[int, ...], int] = {}
    for lst in _effective_lists(u_sorted, k):
        mask = 0
        for m, rows in enumerate(arrangements):
            if not check_case_matrix(rows, lst):
                mask |= 1 << m
        if mask:
            masks[lst] = mask
    return arrangements, masks


def colouring_block_masks(u_lists) -> tuple[list[tuple[int, ...]], dict[tuple[int, ...], int]]:
    """Masks for the single-colouring problem: colourings of U are the
    products of the lists; a list blocks a colouring iff it is contained in
    the colouring's value set."""
    u_sorted = [tuple(sorted(lst)) for lst in u_lists]
    k = len(u_sorted[0])
    colourings = list(itertools.product(*u_sorted))
    masks: dict[tuple[int, ...], int] = {}
    for lst in _effective_lists(u_sorted, k):
        need = set(lst)
        mask = 0
        for m, col in enumerate(colourings):
            if need <= set(col):
                mask |= 1 << m
        if mask:
            masks[lst] = mask
    return colourings, masks


def min_cover_size(masks: list[int], n_targets: int, limit: int) -> int | None:
    """Minimum number of masks whose union covers all n_targets bits.

    Exact branch and bound: dominated masks are dropped, branching happens
    on the uncovered bit with the fewest useful covering masks, and a node
    is cut when even the fattest remaining picks cannot close the deficit.
    Returns the minimum if it is <= limit, else None (which also covers the
    case where some bit is covered by no mask at all).
    """
    full = (1 << n_targets) - 1
    ordered = sorted(set(masks), key=lambda m: -m.bit_count())
    maximal: list[int] = []
    for m in ordered:
        if not any(m | o == o for o in maximal):
            maximal.append(m)
    union_all = 0
    for m in maximal:
        union_all |= m
    if union_all != full:
        return None
    pop_prefix = [0]
    for m in maximal:
        pop_prefix.append(pop_prefix[-1] + m.bit_count())
    best: int | None = None

    def dfs(acc: int, picks: int) -> None:
        nonlocal best
        if acc == full:
            if best is None or picks < best:
                best = picks
            return
        bound = best - 1 if best is not None else limit
        left = bound - picks
        if left <= 0:
            return
        uncovered = full & ~acc
        if uncovered.bit_count() > pop_prefix[min(left, len(maximal))]:
            return
        # branch on the uncovered bit with the fewest useful covers
        branch: list[int] | None = None
        u = uncovered
        while u:
            bit = u & -u
            u ^= bit
            covers = [m for m in maximal if m & bit]
            if branch is None or len(covers) < len(branch):
                branch = covers
                if len(branch) <= 1:
                    break
        assert branch is not None
        branch.sort(key=lambda m: -(m & uncovered).bit_count())
        for m in branch:
            dfs(acc | m, picks + 1)

    dfs(0, 0)
    return best


def list_packing_threshold(k: int, limit: int = 12) -> int | None:
    """Least t admitting an unpackable k-assignment on a 3-vertex small side.

    Minimizes the exact cover number over every isomorphism type of list
    triples (repeated lists included).  None when no type can be fully
    blocked within ``limit`` vertices.
    """
    best: int | None = None
    for triple in enumerate_triple_types(k, allow_repeats=True):
        arrangements, masks = packing_block_masks(triple)
        cur_limit = limit if best is None else best - 1
        if cur_limit < 1:
            break
        size = min_cover_size(list(masks.values()), len(arrangements), cur_limit)
        if size is not None and (best is None or size < best):
            best = size
    return best


def list_colouring_threshold(k: int, limit: int = 30) -> int | None:
    """Least t admitting an uncolourable k-assignment on a 3-vertex small side."""
    best: int | None = None
    for triple in enumerate_triple_types(k, allow_repeats=True):
        colourings, masks = colouring_block_masks(triple)
        cur_limit = limit if best is None else best - 1
        if cur_limit < 1:
            break
        size = min_cover_size(list(masks.values()), len(colourings), cur_limit)
        if size is not None and (best is None or size < best):
            best = size
    return best


def _arrangement_blockable(rows, k: int) -> bool:
    """True iff some k-list fails Hall's condition against these rows.

    A list L fails iff some slot subset J only offers |J|-1 choices, i.e.
    |L ∖ ∩_{s in J} col_s| < |J|; a suitable L (padded with fresh colours)
    exists iff the columns of some J share at least k - |J| + 1 elements.
    """
    cols = [set(row[s] for row in rows) for s in range(k)]
    for r in range(1, k + 1):
        for subset in itertools.combinations(cols, r):
            inter = set.intersection(*subset)
            if len(inter) >= k - r + 1:
                return True
    return False


def _safe_arrangement_exists(u_lists, k: int) -> bool:
    """True iff some arrangement of the lists is blocked by no k-list at all.

    Used for the fold k = 4 ceiling: when every type has such an
    arrangement, no 4-assignment on a 3-vertex small side is ever
    unpackable, whatever the other side looks like.
    """
    return any(not _arrangement_blockable(rows, k) for rows in _arrangements(u_lists))


def chi_l_exact(a: int, b: int) -> int:
    """Exact list chromatic number of K_{a,b}; supported for min(a,b) = 3.

    Thresholds from the cover analysis: with 3-vertex small side, some
    2-assignment is uncolourable once the large side reaches
    list_colouring_threshold(2), some 3-assignment once it reaches
    list_colouring_threshold(3) (= 27, disjoint lists with all transversal
    triples), and 4 colours always suffice by greedy.
    """
    if a == 3:
        t = b
    elif b == 3:
        t = a
    else:
        raise ResourceLimitError(f"chi_l_exact supports a 3-vertex side, got K_{{{a},{b}}}")
    m2 = list_colouring_threshold(2)
    m3 = list_colouring_threshold(3)
    assert m2 is not None and m3 is not None
    if t < m2:
        return 2
    if t < m3:
        return 3
    return 4


def chi_l_star_exact(a: int, b: int, limit: int = 12) -> int:
    """Exact list packing number of K_{a,b}; supported for min(a,b) = 3.

    Fold 2 and fold 3 thresholds come from exact cover numbers over all
    triple types; the value 4 additionally needs the fold-4 ceiling, checked
    by exhibiting, for every 4-list triple type, an arrangement no list can
    block.
    """
    if a == 3:
        t = b
    elif b == 3:
        t = a
    else:
        raise ResourceLimitError(f"chi_l_star_exact supports a 3-vertex side, got K_{{{a},{b}}}")
    m2 = list_packing_threshold(2)
    assert m2 is not None
    if t < m2:
        return 2
    m3 = list_packing_threshold(3, limit=min(limit, t))
    if m3 is None or t < m3:
        return 3
    for triple in enumerate_triple_types(4, allow_repeats=True):
        if not _safe_arrangement_exists(triple, 4):
            raise AssertionError(f"fold-4 ceiling fails for type {triple}")
    return 4


# ---------------------------------------------------------------------------
# concrete assignments used as fixtures
# ---------------------------------------------------------------------------


def k39_assignment() -> ListAssignment:
    """Disjoint 3-lists on a 3-vertex side against all nine {a,b,7} lists.

    Whatever the partial packing does, the slot where the third vertex uses
    colour 7 collides with the list {a, b, 7} matching the first two
    vertices' colours at that slot, so no packing exists.
    """
    u = [{1, 2, 3}, {4, 5, 6}, {7, 8, 9}]
    v = [{a, b, 7} for a in (1, 2, 3) for b in (4, 5, 6)]
    return make_assignment(u, v)


def k65_assignment() -> ListAssignment:
    """The unique (up to renaming) unpackable 3-assignment with sides 5 and 6.

    Small side: the four 3-subsets of {1..4} plus {1,2,5}; large side: the
    six sets A + {5} with A a 2-subset of {1..4}.
    """
    u = [set(c) for c in itertools.combinations(range(1, 5), 3)] + [{1, 2, 5}]
    v = [set(c) | {5} for c in itertools.combinations(range(1, 5), 2)]
    return make_assignment(u, v)


def a10_assignment() -> ListAssignment:
    """Type-10 lists against all eight {2,3} x {4,5} x {6,7} transversals.

    Packable: arranging the three 1s on a diagonal leaves every transversal
    list extendable.
    """
    u = [{1, 2, 3}, {1, 4, 5}, {1, 6, 7}]
    v = [set(c) for c in itertools.product((2, 3), (4, 5), (6, 7))]
    return make_assignment(u, v)
