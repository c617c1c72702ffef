"""Packing matrices and the Hall-condition extension engine.

A packing matrix has d rows, each a permutation of {1..k}; row i is the
colour vector of the i-th vertex of the small side of K_{d,t}.  Extending a
partial packing at a vertex of the large side amounts to finding a
permutation of {1..k} that differs from every row in every position.  That
is a perfect-matching question on the bipartite graph between positions and
colours where colour c is admissible at position j iff no row has c at j;
everything in this module reduces to that matching problem.
"""

from __future__ import annotations

from dataclasses import dataclass

from .perms import Perm, compose, is_permutation, perm_from_str, perm_to_str


@dataclass(frozen=True)
class PackingMatrix:
    """d rows, each a permutation of {1..k}."""

    k: int
    rows: tuple[Perm, ...]

    def __post_init__(self) -> None:
        if self.k < 1 or not self.rows:
            raise ValueError("need k >= 1 and at least one row")
        for row in self.rows:
            if len(row) != self.k or not is_permutation(row):
                raise ValueError(f"row {row!r} is not a permutation of {{1..{self.k}}}")

    @property
    def d(self) -> int:
        return len(self.rows)

    def to_text(self) -> str:
        """One serialized permutation per line, d lines."""
        return "\n".join(perm_to_str(row) for row in self.rows) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PackingMatrix":
        rows = tuple(perm_from_str(line) for line in text.splitlines() if line.strip())
        if not rows:
            raise ValueError("no rows found")
        return cls(k=len(rows[0]), rows=rows)


@dataclass(frozen=True)
class ObstructionReport:
    """A maximal Hall violator: ``positions`` can only receive ``colours``.

    kind is (len(positions), len(colours)); for k = 2d-2 it is one of
    (d-1, d-2), (d, d-2) or (d, d-1).
    """

    kind: tuple[int, int]
    positions: tuple[int, ...]
    colours: tuple[int, ...]


# ---------------------------------------------------------------------------
# bitmask matching engine
#
# adm[j] is the bitmask of colours admissible at position j (bit c-1 for
# colour c).  Kuhn's augmenting-path algorithm; k <= 11 in practice.
# ---------------------------------------------------------------------------


def forbidden_masks(rows: tuple[Perm, ...], k: int) -> list[int]:
    """Per-position bitmask of colours excluded by the rows."""
    masks = [0] * k
    for row in rows:
        for j in range(k):
            masks[j] |= 1 << (row[j] - 1)
    return masks


def admissible_masks(rows: tuple[Perm, ...], k: int) -> list[int]:
    full = (1 << k) - 1
    return [full & ~m for m in forbidden_masks(rows, k)]


def matching_size(adm: list[int]) -> int:
    """Size of a maximum matching between positions and colours.

    adm[j] is the admissible-colour bitmask of position j; colour bits may
    exceed the number of positions (partially assigned subproblems).
    """
    k = len(adm)
    if k == 0:
        return 0
    n_colours = max(m.bit_length() for m in adm)
    match_colour = [-1] * n_colours  # colour index -> position index

    def augment(j: int, seen: list[int]) -> bool:
        avail = adm[j] & ~seen[0]
        while avail:
            bit = avail & -avail
            avail ^= bit
            seen[0] |= bit
            c = bit.bit_length() - 1
            if match_colour[c] == -1 or augment(match_colour[c], seen):
                match_colour[c] = j
                return True
        return False

    size = 0
    for j in range(k):
        if augment(j, [0]):
            size += 1
    return size


def has_perfect_matching(adm: list[int]) -> bool:
    return matching_size(adm) == len(adm)


def lex_smallest_system(adm: list[int]) -> Perm | None:
    """Lexicographically smallest perfect assignment position -> colour.

    Returns the assignment as a permutation in one-line notation, or None
    when no perfect matching exists.  Fixes positions left to right, always
    trying the smallest admissible colour whose removal keeps the rest
    completable.
    """
    k = len(adm)
    if not has_perfect_matching(adm):
        return None
    chosen: list[int] = []
    used = 0
    work = list(adm)
    for j in range(k):
        avail = work[j] & ~used
        placed = False
        while avail:
            bit = avail & -avail
            avail ^= bit
            rest = [work[i] & ~(used | bit) for i in range(j + 1, k)]
            if matching_size(rest) == k - j - 1:
                chosen.append(bit.bit_length())
                used |= bit
                placed = True
                break
        if not placed:  # unreachable once a perfect matching is known to exist
            return None
    return tuple(chosen)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def find_common_derangement(matrix: PackingMatrix) -> Perm | None:
    """A permutation avoiding every row in every position, or None.

    Deterministic: the lexicographically smallest such permutation.
    """
    return lex_smallest_system(admissible_masks(matrix.rows, matrix.k))


def is_forbidden(matrix: PackingMatrix) -> bool:
    """True iff no permutation of {1..k} is a derangement of every row."""
    return not has_perfect_matching(admissible_masks(matrix.rows, matrix.k))


def find_extension_with_matchings(
    matrix: PackingMatrix, matchings: list[Perm] | tuple[Perm, ...]
) -> Perm | None:
    """Extension after transporting row i through matchings[i].

    Equivalent to find_common_derangement on the matrix whose row i is
    matchings[i] composed with rows[i].
    """
    if len(matchings) != matrix.d:
        raise ValueError(f"need {matrix.d} matchings, got {len(matchings)}")
    for m in matchings:
        if len(m) != matrix.k:
            raise ValueError(f"matching {m!r} has size {len(m)}, expected {matrix.k}")
    rows = tuple(compose(m, row) for m, row in zip(matchings, matrix.rows))
    return find_common_derangement(PackingMatrix(k=matrix.k, rows=rows))


def classify_obstructions(matrix: PackingMatrix) -> ObstructionReport:
    """Maximal Hall violator of a forbidden d x (2d-2) matrix.

    Scans all position subsets (k <= 2d-2 is small) and reports the
    deepest violator: maximum deficiency |A| - |N(A)| first, then the
    smallest position set, ties broken lexicographically.  Preferring the
    smaller set among equal deficiencies keeps the classification aligned
    with the inclusion-exclusion count of the closed form: a matrix whose
    d-1 positions span only d values classifies as (d-1, d-2) even when
    padding a fourth position also yields a (d, d-1)-shaped violator.
    The resulting kind is one of (d-1, d-2), (d, d-2), (d, d-1).
    """
    d, k = matrix.d, matrix.k
    if d < 3 or k != 2 * d - 2:
        raise ValueError(f"obstruction classification needs k = 2d-2 and d >= 3, got d={d}, k={k}")
    if not is_forbidden(matrix):
        raise ValueError("matrix is extendable; no obstruction to classify")

    adm = admissible_masks(matrix.rows, k)
    best: tuple[int, int, tuple[int, ...], int] | None = None
    for subset in range(1, 1 << k):
        positions = tuple(j + 1 for j in range(k) if subset >> j & 1)
        nbhd = 0
        for j in range(k):
            if subset >> j & 1:
                nbhd |= adm[j]
        deficiency = len(positions) - bin(nbhd).count("1")
        if deficiency <= 0:
            continue
        key = (-deficiency, len(positions), positions, nbhd)
        if best is None or key < best:
            best = key
    assert best is not None  # guaranteed: the matrix is forbidden
    _, _, positions, nbhd = best
    colours = tuple(c + 1 for c in range(k) if nbhd >> c & 1)
    kind = (len(positions), len(colours))
    legal = {(d - 1, d - 2), (d, d - 2), (d, d - 1)}
    if kind not in legal:
        raise AssertionError(f"unexpected obstruction shape {kind} for d={d}")
    return ObstructionReport(kind=kind, positions=positions, colours=colours)


def forbidden_witness_latin_structure(
    matrix: PackingMatrix,
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Latin-structure witness (C, J) of forbiddenness, or None.

    For k = 2d-1: a forbidden matrix always contains d positions J whose
    entries, across the d rows, use exactly d colours C and are distinct
    within each position; the d x d subarray on J is then a Latin square on
    C, and those positions can only receive the remaining d-1 colours.  For
    k = 2d-2 the analogous witness has |J| = d-1 and |C| = d (present for
    matrices whose obstruction involves d-1 positions sharing d colours;
    absent for purely (d, d-1)-obstructed ones).

    Returns the lexicographically first witness found, scanning position
    subsets in sorted order; None when no such subarray exists.
    """
    d, k = matrix.d, matrix.k
    if k == 2 * d - 1:
        size_j = d
    elif k == 2 * d - 2:
        size_j = d - 1
    else:
        raise ValueError(f"need k = 2d-1 or k = 2d-2, got d={d}, k={k}")

    import itertools

    for J in itertools.combinations(range(1, k + 1), size_j):
        values: set[int] = set()
        ok = True
        for j in J:
            entries = {row[j - 1] for row in matrix.rows}
            if len(entries) != d:
                ok = False
                break
            values |= entries
        if ok and len(values) == d:
            return (tuple(sorted(values)), J)
    return None


def brute_force_extension(matrix: PackingMatrix) -> Perm | None:
    """Independent oracle: scan all k! permutations in lexicographic order.

    Shares no machinery with the matching engine; used to cross-check it.
    """
    import itertools

    k = matrix.k
    column_sets = [{row[j] for row in matrix.rows} for j in range(k)]
    for candidate in itertools.permutations(range(1, k + 1)):
        if all(candidate[j] not in column_sets[j] for j in range(k)):
            return candidate
    return None
