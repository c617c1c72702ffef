"""Latin squares and rectangles: validity checking and exact counting.

The number of Latin squares of order n is denoted N(n) throughout the
package; it enters the closed-form counts of unextendable packing matrices.
Orders up to the enumeration limit are counted by row-by-row exhaustive
search; orders 7..11 are served from stored constants taken from the
published enumeration of B. D. McKay and I. M. Wanless, "On the number of
Latin squares", Ann. Comb. 9 (2005) 335-344.  The stored values for small
orders are re-derived by enumeration in the test suite.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import ResourceLimitError

#: exhaustive enumeration is used up to this order (n=6 takes ~10 s)
DEFAULT_ENUMERATION_LIMIT = 6

#: N(n) for 1 <= n <= 11 (McKay-Wanless 2005 for n >= 7)
LATIN_SQUARE_COUNTS: dict[int, int] = {
    1: 1,
    2: 2,
    3: 12,
    4: 576,
    5: 161280,
    6: 812851200,
    7: 61479419904000,
    8: 108776032459082956800,
    9: 5524751496156892842531225600,
    10: 9982437658213039871725064756920320000,
    11: 776966836171770144107444346734230682311065600000,
}

#: counts of reduced Latin squares (first row and first column in natural
#: order); satisfies N(n) = n! * (n-1)! * reduced(n), asserted in tests
REDUCED_LATIN_SQUARE_COUNTS: dict[int, int] = {
    1: 1,
    2: 1,
    3: 1,
    4: 4,
    5: 56,
    6: 9408,
    7: 16942080,
    8: 535281401856,
    9: 377597570964258816,
    10: 7580721483160132811489280,
    11: 5363937773277371298119673540771840,
}


def is_latin(rows: Sequence[Sequence[int]], value_set: Iterable[int]) -> bool:
    """True iff the r x n array has pairwise-distinct entries in every row
    and every column, with all entries drawn from value_set.

    Raises ValueError when the array is ragged or has more rows than columns.
    """
    if not rows:
        raise ValueError("empty array")
    r = len(rows)
    n = len(rows[0])
    if any(len(row) != n for row in rows):
        raise ValueError("ragged array")
    if r > n:
        raise ValueError(f"more rows ({r}) than columns ({n})")
    values = set(value_set)
    for row in rows:
        if any(v not in values for v in row):
            return False
        if len(set(row)) != n:
            return False
    for j in range(n):
        col = [row[j] for row in rows]
        if len(set(col)) != r:
            return False
    return True


def _count_completions(n: int, rows_left: int, col_used: list[int]) -> int:
    """Count ways to append rows_left more rows, each a permutation of [n]
    avoiding the per-column used-value masks."""
    if rows_left == 0:
        return 1
    full = (1 << n) - 1
    total = 0

    def fill(cell: int, row_used: int) -> None:
        nonlocal total
        if cell == n:
            total += _count_completions(n, rows_left - 1, col_used)
            return
        avail = full & ~row_used & ~col_used[cell]
        while avail:
            bit = avail & -avail
            avail ^= bit
            col_used[cell] |= bit
            fill(cell + 1, row_used | bit)
            col_used[cell] ^= bit

    fill(0, 0)
    return total


def count_latin_rectangles(r: int, n: int) -> int:
    """Exact number of r x n Latin rectangles with entries from [n].

    Row-by-row exhaustive enumeration.  For n >= 6 the first row is fixed to
    the natural order and the count multiplied by n! (row-one relabeling is a
    bijection), which keeps n=6 affordable; smaller orders are enumerated in
    full.
    """
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    if n > DEFAULT_ENUMERATION_LIMIT:
        raise ResourceLimitError(
            f"rectangle enumeration supported for n <= {DEFAULT_ENUMERATION_LIMIT}, got n={n}"
        )
    if n >= 6:
        col_used = [1 << j for j in range(n)]  # first row = (1..n)
        sub = _count_completions(n, r - 1, col_used)
        import math

        return math.factorial(n) * sub
    return _count_completions(n, r, [0] * n)


def count_latin_squares(n: int, enumeration_limit: int | None = None) -> int:
    """Exact N(n): enumerated up to the limit, stored constants for 7..11.

    N(n) is unknown for n >= 12; such orders are rejected.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n >= 12:
        raise ResourceLimitError(f"N({n}) is not known; supported range is 1..11")
    limit = DEFAULT_ENUMERATION_LIMIT if enumeration_limit is None else enumeration_limit
    if n <= limit:
        return count_latin_rectangles(n, n)
    return LATIN_SQUARE_COUNTS[n]
