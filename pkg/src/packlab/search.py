"""Packability and colourability deciders, cover construction, exact chi.

The structural shortcut used everywhere: the large side V of K_{d,t} is an
independent set, so a full packing exists iff some choice of colour vectors
on U extends independently at every v_j.  Relabeling the k colourings
simultaneously permutes all colour vectors the same way, so the first U
vector may be pinned to the identity; deciders therefore scan (k!)^(d-1)
candidates and run one matching check per vertex of V.

Cover constructions work in the same reduced space: with the first U row
pinned, a combination of matchings at a new vertex blocks the candidate
matrices whose transported rows land in the precomputed set of unextendable
matrices; the greedy constructor always picks the combination blocking the
most survivors, and the randomized search hill-climbs on the number of
survivors.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass

from .covers import (
    CorrespondenceCover,
    ListAssignment,
    PartialMatchingCover,
    list_to_partial_cover,
)
from .errors import BudgetExceededError, ResourceLimitError
from .packing import has_perfect_matching, lex_smallest_system
from .perms import Perm, compose, identity

DEFAULT_CANDIDATE_BUDGET = 2_000_000

#: size cap on the reduced candidate space (k!)^(d-1) for cover construction
DEFAULT_CONSTRUCTION_CAP = 20_000


@dataclass(frozen=True)
class PackingWitness:
    """Colour vectors forming a full packing.

    In a correspondence instance the vectors are permutations of {1..k}
    (positions); in a list instance they are arrangements of each vertex's
    own colour list.
    """

    u_rows: tuple[tuple[int, ...], ...]
    v_rows: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class SearchBudget:
    """Limits for randomized search; outcomes are a function of (seed, limits)."""

    max_candidates: int | None = 2_000_000
    max_seconds: float | None = None
    seed: int = 0


# ---------------------------------------------------------------------------
# packing deciders
# ---------------------------------------------------------------------------


def _decide_columns(columns, d: int, t: int, k: int, max_candidates: int) -> PackingWitness | None:
    """Core decider; columns[j][i] maps u_i-colours to v_j-colours (None = free).

    Scans candidate U matrices with the first row pinned to the identity, in
    lexicographic order of the remaining rows; at each vertex checks for a
    perfect matching between positions and colours.  Returns the first full
    witness (with lexicographically smallest extensions), or None.
    """
    full = (1 << k) - 1
    perms = list(itertools.permutations(range(1, k + 1)))
    n_candidates = len(perms) ** (d - 1)
    if n_candidates > max_candidates:
        raise BudgetExceededError(
            f"candidate space (k!)^(d-1) = {n_candidates} exceeds budget {max_candidates}"
        )
    ident = identity(k)
    for rest in itertools.product(perms, repeat=d - 1):
        rows = (ident,) + rest
        all_adm: list[list[int]] = []
        for j in range(t):
            forbid = [0] * k
            col = columns[j]
            for i in range(d):
                entry = col[i]
                row = rows[i]
                for s in range(k):
                    target = entry[row[s] - 1]
                    if target is not None:
                        forbid[s] |= 1 << (target - 1)
            adm = [full & ~m for m in forbid]
            if not has_perfect_matching(adm):
                break
            all_adm.append(adm)
        else:
            v_rows = tuple(lex_smallest_system(adm) for adm in all_adm)
            return PackingWitness(u_rows=rows, v_rows=v_rows)
    return None


def decide_correspondence_packing(
    cover: CorrespondenceCover | PartialMatchingCover,
    max_candidates: int = DEFAULT_CANDIDATE_BUDGET,
) -> PackingWitness | None:
    """Full packing of a k-fold cover, or None when none exists.

    Exhaustive over the reduced candidate space; a BudgetExceededError (the
    instance was too big to decide) is distinct from the None verdict.
    """
    columns = [cover.column(j) for j in range(cover.t)]
    return _decide_columns(columns, cover.d, cover.t, cover.k, max_candidates)


def decide_list_packing(
    assignment: ListAssignment, max_candidates: int = DEFAULT_CANDIDATE_BUDGET
) -> PackingWitness | None:
    """List packing decided through the exact partial-matching translation.

    The witness is reported in the original colours, with row i of the U
    side an arrangement of L(u_i).
    """
    partial, u_maps, v_maps = list_to_partial_cover(assignment)
    witness = decide_correspondence_packing(partial, max_candidates=max_candidates)
    if witness is None:
        return None
    u_rows = tuple(
        tuple(u_maps[i][p - 1] for p in row) for i, row in enumerate(witness.u_rows)
    )
    v_rows = tuple(
        tuple(v_maps[j][p - 1] for p in row) for j, row in enumerate(witness.v_rows)
    )
    translated = PackingWitness(u_rows=u_rows, v_rows=v_rows)
    assert verify_list_witness(assignment, translated)
    return translated


def verify_cover_witness(cover: CorrespondenceCover, witness: PackingWitness) -> bool:
    """Positionwise check of a packing of a correspondence cover."""
    from .perms import is_permutation

    if len(witness.u_rows) != cover.d or len(witness.v_rows) != cover.t:
        return False
    rows = witness.u_rows + witness.v_rows
    if any(len(r) != cover.k or not is_permutation(r) for r in rows):
        return False
    for i in range(cover.d):
        for j in range(cover.t):
            sigma = cover.sigma[i][j]
            u_row = witness.u_rows[i]
            v_row = witness.v_rows[j]
            if any(sigma[u_row[s] - 1] == v_row[s] for s in range(cover.k)):
                return False
    return True


def verify_list_witness(assignment: ListAssignment, witness: PackingWitness) -> bool:
    """Colourwise check of a packing of a list-assignment."""
    if len(witness.u_rows) != assignment.a or len(witness.v_rows) != assignment.b:
        return False
    for row, lst in zip(witness.u_rows, assignment.u_lists):
        if tuple(sorted(row)) != lst:
            return False
    for row, lst in zip(witness.v_rows, assignment.v_lists):
        if tuple(sorted(row)) != lst:
            return False
    for u_row in witness.u_rows:
        for v_row in witness.v_rows:
            if any(a == b for a, b in zip(u_row, v_row)):
                return False
    return True


# ---------------------------------------------------------------------------
# colouring deciders (single colouring instead of a packing)
# ---------------------------------------------------------------------------


def decide_correspondence_colouring(
    cover: CorrespondenceCover, max_candidates: int = DEFAULT_CANDIDATE_BUDGET
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """One proper colouring (u_colours, v_colours) of the cover, or None.

    Scans the k^d colour choices on U; a vertex of V is colourable unless
    its d transported neighbour colours exhaust all of {1..k}.
    """
    d, t, k = cover.d, cover.t, cover.k
    if k**d > max_candidates:
        raise BudgetExceededError(f"candidate space k^d = {k ** d} exceeds budget")
    for u_col in itertools.product(range(1, k + 1), repeat=d):
        v_col = []
        for j in range(t):
            used = {cover.sigma[i][j][u_col[i] - 1] for i in range(d)}
            if len(used) == k:
                break
            v_col.append(min(set(range(1, k + 1)) - used))
        else:
            return u_col, tuple(v_col)
    return None


def decide_list_colouring(
    assignment: ListAssignment, max_candidates: int = DEFAULT_CANDIDATE_BUDGET
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """One proper list-colouring (u_colours, v_colours), or None."""
    total = 1
    for lst in assignment.u_lists:
        total *= len(lst)
    if total > max_candidates:
        raise BudgetExceededError(f"candidate space {total} exceeds budget")
    for u_col in itertools.product(*assignment.u_lists):
        used = set(u_col)
        v_col = []
        for lst in assignment.v_lists:
            free = [c for c in lst if c not in used]
            if not free:
                break
            v_col.append(min(free))
        else:
            return u_col, tuple(v_col)
    return None


# ---------------------------------------------------------------------------
# reduced-space machinery shared by the cover constructors
# ---------------------------------------------------------------------------


class _ReducedSpace:
    """Canonical candidate matrices and matching combinations for (d, k).

    Matrices and combinations are both (d-1)-tuples of permutations (the
    first row / first matching is pinned to the identity); both are indexed
    by the same mixed-radix code, so index order is lexicographic order.
    ``combo_masks[c]`` is the bitmask, over matrix indices, of the matrices
    blocked when combination c is placed at a new vertex.
    """

    def __init__(self, d: int, k: int, cap: int = DEFAULT_CONSTRUCTION_CAP):
        if d < 2:
            raise ValueError("need d >= 2")
        self.d, self.k = d, k
        perms = list(itertools.permutations(range(1, k + 1)))
        self.perms = perms
        self.nperm = len(perms)
        self.size = self.nperm ** (d - 1)
        if self.size > cap:
            raise ResourceLimitError(
                f"reduced space (k!)^(d-1) = {self.size} exceeds cap {cap}"
            )
        index_of = {p: i for i, p in enumerate(perms)}
        # composition table: comp[a][b] = index of perms[a] . perms[b]
        comp = [[index_of[compose(pa, pb)] for pb in perms] for pa in perms]
        self.full_mask = (1 << self.size) - 1

        ident = identity(k)
        full = (1 << k) - 1
        forbidden: list[bool] = []
        for rest in itertools.product(perms, repeat=d - 1):
            rows = (ident,) + rest
            adm = [full] * k
            for row in rows:
                for j in range(k):
                    adm[j] &= ~(1 << (row[j] - 1))
            forbidden.append(not has_perfect_matching(adm))
        f_mask = 0
        for idx, bad in enumerate(forbidden):
            if bad:
                f_mask |= 1 << idx
        self.forbidden_mask = f_mask
        self.forbidden_count = bin(f_mask).count("1")

        # combo c blocks matrix m iff the componentwise composition lands in
        # the forbidden set: mask_c = { m : (c_i . m_i)_i in F }.
        radix = [self.nperm] * (d - 1)
        codes = list(itertools.product(range(self.nperm), repeat=d - 1))
        self.codes = codes
        masks = []
        for combo in codes:
            mask = 0
            for m_idx, matrix in enumerate(codes):
                t_idx = 0
                for ci, mi in zip(combo, matrix):
                    t_idx = t_idx * self.nperm + comp[ci][mi]
                if f_mask >> t_idx & 1:
                    mask |= 1 << m_idx
            masks.append(mask)
        self.combo_masks = masks

    def combo_matchings(self, combo_index: int) -> tuple[Perm, ...]:
        """The d matchings of a combination (identity first)."""
        return (identity(self.k),) + tuple(self.perms[i] for i in self.codes[combo_index])

    def cover_from_combos(self, combo_indices: list[int]) -> CorrespondenceCover:
        columns = [self.combo_matchings(c) for c in combo_indices]
        sigma = tuple(
            tuple(columns[j][i] for j in range(len(columns))) for i in range(self.d)
        )
        return CorrespondenceCover(k=self.k, sigma=sigma)


def greedy_unpackable_cover(
    d: int, k: int, cap: int = DEFAULT_CONSTRUCTION_CAP
) -> tuple[CorrespondenceCover, list[int]]:
    """Build a cover with no k-packing by repeatedly adding the best vertex.

    At each step every matching combination is scored by how many surviving
    candidate matrices it blocks; the highest scorer wins, ties going to the
    lexicographically smallest combination.  Averaging guarantees each step
    blocks at least ceil(X/x) survivors (x = initial/forbidden), so the trace
    obeys X_s <= floor((1-1/x) X_{s-1}) and the construction terminates.

    Returns the cover and the trace [X_0, X_1, ..., 0] of survivor counts in
    the reduced space.
    """
    space = _ReducedSpace(d, k, cap=cap)
    if space.forbidden_count == 0:
        raise ValueError(f"no unextendable matrices exist for d={d}, k={k}")
    survivors = space.full_mask
    trace = [space.size]
    chosen: list[int] = []
    while survivors:
        best_count = -1
        best_combo = -1
        for c, mask in enumerate(space.combo_masks):
            cnt = bin(survivors & mask).count("1")
            if cnt > best_count:
                best_count = cnt
                best_combo = c
        survivors &= ~space.combo_masks[best_combo]
        chosen.append(best_combo)
        trace.append(bin(survivors).count("1"))
    return space.cover_from_combos(chosen), trace


def random_unpackable_cover_search(
    d: int,
    k: int,
    t_target: int,
    budget: SearchBudget,
    workers: int = 1,
    cap: int = DEFAULT_CONSTRUCTION_CAP,
) -> CorrespondenceCover | None:
    """Hill-climbing search for an unpackable cover with exactly t_target vertices.

    State: one matching combination per vertex.  Objective: number of
    candidate matrices blocked by no vertex.  Moves replace the combination
    at one vertex by the best alternative (steepest descent, round-robin over
    vertices); stuck states trigger a seeded restart.  Returns a cover with
    objective zero, or None when the candidate budget (or time limit) runs
    out.  Fixed (seed, budget) gives a fixed outcome; the worker count only
    partitions candidate evaluation, whose min-reduction is order-independent.
    """
    import random

    space = _ReducedSpace(d, k, cap=cap)
    masks = space.combo_masks
    nc = len(masks)
    full = space.full_mask
    rng = random.Random(budget.seed)
    deadline = None if budget.max_seconds is None else time.monotonic() + budget.max_seconds
    evaluations = 0
    max_evals = budget.max_candidates

    chunk_bounds = _chunks(nc, max(1, workers))

    def best_replacement(base: int) -> tuple[int, int]:
        """(survivor count, combo index), minimized, deterministic."""

        def scan(lo_hi):
            lo, hi = lo_hi
            best = (full.bit_count() + 1, -1)
            for c in range(lo, hi):
                cnt = (full & ~(base | masks[c])).bit_count()
                if (cnt, c) < best:
                    best = (cnt, c)
            return best

        if workers > 1:
            import concurrent.futures

            with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(scan, chunk_bounds))
            return min(results)
        return min(scan(b) for b in chunk_bounds)

    while True:
        state = [rng.randrange(nc) for _ in range(t_target)]
        while True:
            if deadline is not None and time.monotonic() > deadline:
                return None
            improved = False
            for v in range(t_target):
                base = 0
                for w, c in enumerate(state):
                    if w != v:
                        base |= masks[c]
                if max_evals is not None:
                    if evaluations + nc > max_evals:
                        return None
                    evaluations += nc
                current = (full & ~(base | masks[state[v]])).bit_count()
                cnt, combo = best_replacement(base)
                if cnt < current:
                    state[v] = combo
                    improved = True
            objective = (full & ~_or_masks(masks, state)).bit_count()
            if objective == 0:
                return space.cover_from_combos(state)
            if not improved:
                break  # local minimum: restart


def _or_masks(masks: list[int], state: list[int]) -> int:
    acc = 0
    for c in state:
        acc |= masks[c]
    return acc


def _chunks(n: int, parts: int) -> list[tuple[int, int]]:
    size = -(-n // parts)
    return [(lo, min(lo + size, n)) for lo in range(0, n, size)]


# ---------------------------------------------------------------------------
# exact chromatic computations on tiny instances
# ---------------------------------------------------------------------------

DEFAULT_ENUMERATION_WORK = 20_000_000


def _column_type_masks(d: int, k: int) -> list[int]:
    """Blocked-colouring masks of the (k!)^(d-1) canonical column types.

    A column type is the tuple of matchings (identity, s_2, ..., s_d) at one
    V vertex; its mask has bit set for every U colouring (a_1..a_d), coded in
    base k, whose transported colours exhaust {1..k}.
    """
    perms = list(itertools.permutations(range(1, k + 1)))
    ident = identity(k)
    masks = []
    for rest in itertools.product(perms, repeat=d - 1):
        sigmas = (ident,) + rest
        mask = 0
        for code, colours in enumerate(itertools.product(range(1, k + 1), repeat=d)):
            used = {sigmas[i][colours[i] - 1] for i in range(d)}
            if len(used) == k:
                mask |= 1 << code
        masks.append(mask)
    return masks


def find_uncolourable_cover(
    d: int, t: int, k: int, max_work: int = DEFAULT_ENUMERATION_WORK
) -> CorrespondenceCover | None:
    """Lexicographically first canonical k-fold cover of K_{d,t} with no
    proper colouring, or None when every cover is colourable.

    Canonical covers have identity matchings in the first row and first
    column, and colourability is invariant under permuting the V vertices,
    so the scan runs over multisets of column types for the t-1 free columns.
    This is exhaustive up to relabeling: every cover is equivalent to a
    scanned one.
    """
    if d < 2 or t < 1:
        raise ValueError("need d >= 2 and t >= 1")
    masks = _column_type_masks(d, k)
    n_types = len(masks)
    n_multisets = math.comb(n_types + t - 2, t - 1)
    if n_multisets > max_work:
        raise ResourceLimitError(
            f"{n_multisets} canonical covers exceed the work cap {max_work}"
        )
    full = (1 << (k**d)) - 1
    first = masks[0]  # all-identity column
    if first == full and t >= 1:
        combo: tuple[int, ...] = tuple([0] * (t - 1))
        return _cover_from_types(d, k, combo)
    for combo in itertools.combinations_with_replacement(range(n_types), t - 1):
        acc = first
        for c in combo:
            acc |= masks[c]
        if acc == full:
            return _cover_from_types(d, k, combo)
    return None


def _cover_from_types(d: int, k: int, combo: tuple[int, ...]) -> CorrespondenceCover:
    perms = list(itertools.permutations(range(1, k + 1)))
    ident = identity(k)
    types = list(itertools.product(perms, repeat=d - 1))
    columns = [(ident,) * d] + [(ident,) + types[c] for c in combo]
    sigma = tuple(tuple(col[i] for col in columns) for i in range(d))
    return CorrespondenceCover(k=k, sigma=sigma)


def surjection_count(d: int, k: int) -> int:
    """Number of surjections from a d-set onto a k-set (inclusion-exclusion)."""
    return sum((-1) ** j * math.comb(k, j) * (k - j) ** d for j in range(k + 1))


def every_cover_colourable_by_counting(d: int, t: int, k: int) -> bool:
    """Union bound: is every k-fold cover of K_{d,t} necessarily colourable?

    A vertex of the t side is blocked under a colouring of the d side iff
    its d transported neighbour colours exhaust {1..k}; per-coordinate
    colour transport is bijective, so each vertex blocks exactly the
    surjection count of the k^d colourings.  If t vertices cannot block
    them all (strict inequality), a colouring always survives; the same
    holds with the roles of the sides swapped.
    """
    return (
        t * surjection_count(d, k) < k**d or d * surjection_count(t, k) < k**t
    )


def chi_c_exact(a: int, b: int, max_work: int = DEFAULT_ENUMERATION_WORK) -> int:
    """Exact correspondence chromatic number of K_{a,b} for tiny instances.

    For k = 2, 3, ...: the counting ceiling settles the fold sizes where no
    cover can block every colouring; the remaining fold sizes are scanned
    exhaustively over canonical covers.  The least k with no uncolourable
    cover is the answer.  Termination: once k exceeds min(a,b) no vertex
    can be blocked at all (a surjection onto more than min(a,b) colours
    would be needed), so the ceiling always fires by then.
    """
    if a < 1 or b < 1:
        raise ValueError("need a, b >= 1")
    if min(a, b) == 1:
        return 2  # trees: two colours always suffice, one never does
    d, t = (a, b) if a <= b else (b, a)
    for k in itertools.count(2):
        if every_cover_colourable_by_counting(d, t, k):
            return k
        if find_uncolourable_cover(d, t, k, max_work=max_work) is None:
            return k


def chi_c_star_exact(a: int, b: int, max_work: int = 200_000) -> int:
    """Exact correspondence packing number by full canonical-cover scans.

    Only tiny instances are feasible: all (k!)^((a-1)(b-1)) canonical covers
    are generated per fold size k and each is decided exhaustively.  The
    scan stops at the first k whose covers are all packable.
    """
    if a < 1 or b < 1:
        raise ValueError("need a, b >= 1")
    d, t = (a, b) if a <= b else (b, a)
    for k in itertools.count(2):
        n_covers = math.factorial(k) ** ((d - 1) * (t - 1))
        n_candidates = math.factorial(k) ** (d - 1)
        if n_covers * n_candidates > max_work:
            raise ResourceLimitError(
                f"canonical cover scan for k={k} needs ~{n_covers * n_candidates} decisions"
            )
        if _all_canonical_covers_packable(d, t, k):
            return k


def _all_canonical_covers_packable(d: int, t: int, k: int) -> bool:
    perms = list(itertools.permutations(range(1, k + 1)))
    ident = identity(k)
    free = (d - 1) * (t - 1)
    for entries in itertools.product(perms, repeat=free):
        sigma_rows = []
        for i in range(d):
            row = []
            for j in range(t):
                if i == 0 or j == 0:
                    row.append(ident)
                else:
                    row.append(entries[(i - 1) * (t - 1) + (j - 1)])
            sigma_rows.append(tuple(row))
        cover = CorrespondenceCover(k=k, sigma=tuple(sigma_rows))
        if decide_correspondence_packing(cover) is None:
            return False
    return True
