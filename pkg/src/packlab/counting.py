"""Exact counts of unextendable packing matrices and threshold bounds.

All counts are exact integers; ratios are exact rationals.  The two closed
forms count d x k packing matrices admitting no common derangement of all
rows:

* k = 2d-1:  w_odd(d)  = C(2d-1,d)^2 ((d-1)!)^d N(d).  A matrix is
  unextendable iff d of its positions carry a d x d Latin square whose d
  values then exclude those positions down to the remaining d-1 colours.
* k = 2d-2:  w_even(d) = N(d) C(2d-2,d) C(2d-2,d-1)
  (2((d-1)!)^d - (d-1)^2 (d-1 + 1/d) ((d-2)!)^d), obtained by
  inclusion-exclusion over the three possible maximal Hall violators via
  w1 - (d-1) w2 + w3.

The derived thresholds: x(d) = ((2d-1)!)^d / w_odd(d) and
y(d) = ((2d-2)!)^d / w_even(d).  A cover construction that greedily kills a
1/x fraction of surviving partial packings per added vertex terminates
within the floored iteration X_s = X_{s-1} - ceil(X_{s-1} w / X_0); the
closed-form estimates bounding that step count are also provided, with
certified integer ceilings via interval arithmetic.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import ResourceLimitError
from .latin import LATIN_SQUARE_COUNTS
from .packing import has_perfect_matching
from .perms import Perm, identity

_N_RANGE = range(1, 12)


def _latin_count(d: int) -> int:
    """Latin square count N(d) from the stored table.

    The table is re-derived by enumeration in the latin module's tests
    (n <= 5 always, n = 6 behind the long flag); reading it directly keeps
    the closed forms fast.
    """
    if d not in _N_RANGE:
        raise ResourceLimitError(f"N({d}) unknown; d must be in 1..11")
    return LATIN_SQUARE_COUNTS[d]


def w_odd(d: int) -> int:
    """Number of unextendable d x (2d-1) packing matrices."""
    if not 2 <= d <= 11:
        raise ValueError(f"w_odd defined for 2 <= d <= 11, got {d}")
    return math.comb(2 * d - 1, d) ** 2 * math.factorial(d - 1) ** d * _latin_count(d)


def w_even_parts(d: int) -> tuple[int, int, int]:
    """The inclusion-exclusion terms (w1, w2, w3) with w_even = w1 - (d-1) w2 + w3."""
    if not 3 <= d <= 11:
        raise ValueError(f"w_even defined for 3 <= d <= 11, got {d}")
    n = _latin_count(d)
    c_d = math.comb(2 * d - 2, d)
    c_d1 = math.comb(2 * d - 2, d - 1)
    f1 = math.factorial(d - 1) ** d
    f2 = math.factorial(d - 2) ** d
    w1 = n * c_d * c_d1 * f1
    w2 = n * c_d**2 * f2
    w3 = n * c_d * c_d1 * (f1 - (d - 1) ** 3 * f2)
    return w1, w2, w3


def w_even(d: int) -> int:
    """Number of unextendable d x (2d-2) packing matrices.

    Evaluated in exact rationals (the closed form contains a 1/d term);
    a non-integral result would mean the formula was transcribed wrong and
    is treated as an internal error.
    """
    n = _latin_count(d)  # validates d via w_even_parts below as well
    bracket = (
        2 * Fraction(math.factorial(d - 1) ** d)
        - (d - 1) ** 2 * (Fraction(d - 1) + Fraction(1, d)) * math.factorial(d - 2) ** d
    )
    value = n * math.comb(2 * d - 2, d) * math.comb(2 * d - 2, d - 1) * bracket
    if value.denominator != 1:
        raise AssertionError(f"w_even({d}) evaluated to non-integer {value}")
    result = int(value)
    w1, w2, w3 = w_even_parts(d)
    assert result == w1 - (d - 1) * w2 + w3
    return result


# ---------------------------------------------------------------------------
# brute-force counting (the independent oracle for the closed forms)
# ---------------------------------------------------------------------------


def _conjugacy_classes(k: int) -> list[tuple[Perm, int]]:
    """(representative, class size) per cycle type of the symmetric group on [k].

    Representatives are the lexicographically smallest members.
    """
    classes: dict[tuple[int, ...], list] = {}
    for p in itertools.permutations(range(1, k + 1)):
        seen = [False] * k
        lengths = []
        for s in range(k):
            if seen[s]:
                continue
            ln, j = 0, s
            while not seen[j]:
                seen[j] = True
                j = p[j] - 1
                ln += 1
            lengths.append(ln)
        key = tuple(sorted(lengths))
        entry = classes.setdefault(key, [p, 0])
        entry[1] += 1
        if p < entry[0]:
            entry[0] = p
    return [(rep, size) for rep, size in classes.values()]


def _forbidden_masks_for(rows: tuple[Perm, ...], k: int, full: int) -> list[int]:
    adm = [full] * k
    for row in rows:
        for j in range(k):
            adm[j] &= ~(1 << (row[j] - 1))
    return adm


def _count_block(k: int, fixed: tuple[Perm, ...], depth: int) -> int:
    """Forbidden matrices whose first rows are `fixed`, with `depth` free rows."""
    full = (1 << k) - 1
    perms = list(itertools.permutations(range(1, k + 1)))
    count = 0
    for rest in itertools.product(perms, repeat=depth):
        if not has_perfect_matching(_forbidden_masks_for(fixed + rest, k, full)):
            count += 1
    return count


def forbidden_count_brute(
    d: int,
    k: int,
    workers: int | None = None,
    max_matrices: int = 20_000_000,
    use_class_reduction: bool | None = None,
) -> int:
    """Exhaustive count of unextendable d x k packing matrices.

    Relabeling all colours and all positions by the same permutation
    preserves unextendability, so the first row is fixed to the identity and
    the block count multiplied by k!.  With ``use_class_reduction`` (the
    default for d >= 4) the second row is additionally restricted to one
    representative per conjugacy class, weighting each block by the class
    size: simultaneous conjugation of all rows fixes the identity first row
    and again preserves unextendability.  Both reductions are exact and are
    cross-checked against the plain enumeration in the tests.
    """
    if d < 1 or k < 1:
        raise ValueError("need d, k >= 1")
    kf = math.factorial(k)
    if d == 1:
        # a single row: extendable iff a derangement pattern exists, i.e. k >= 2
        return kf if k == 1 else 0
    if use_class_reduction is None:
        use_class_reduction = d >= 4
    free_rows = d - 1
    cost = kf**free_rows if not use_class_reduction else len(_conjugacy_classes(k)) * kf ** (free_rows - 1)
    if cost > max_matrices:
        raise ResourceLimitError(
            f"brute-force count needs ~{cost} matrix checks (> {max_matrices})"
        )
    ident = identity(k)
    if not use_class_reduction:
        return kf * _count_block(k, (ident,), free_rows)

    blocks = _conjugacy_classes(k)
    workers = _resolve_workers(workers)
    if workers > 1 and len(blocks) > 1:
        import concurrent.futures

        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            subcounts = list(
                pool.map(_count_block, *zip(*[(k, (ident, rep), free_rows - 1) for rep, _ in blocks]))
            )
        total = sum(size * c for (_, size), c in zip(blocks, subcounts))
    else:
        total = sum(size * _count_block(k, (ident, rep), free_rows - 1) for rep, size in blocks)
    return kf * total


def _resolve_workers(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get("PACKLAB_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


# ---------------------------------------------------------------------------
# threshold ratios and iteration bounds
# ---------------------------------------------------------------------------


def x_ratio(d: int) -> Fraction:
    """((2d-1)!)^d / w_odd(d): below this t, a (2d-1)-fold packing always exists."""
    return Fraction(math.factorial(2 * d - 1) ** d, w_odd(d))


def y_ratio(d: int) -> Fraction:
    """((2d-2)!)^d / w_even(d): the k = 2d-2 analogue of x_ratio."""
    return Fraction(math.factorial(2 * d - 2) ** d, w_even(d))


def iteration_bound(X0: int, w: int, max_steps: int | None = None) -> int:
    """Steps of X_s = X_{s-1} - ceil(X_{s-1} w / X0) until X_s = 0.

    Equals the number of iterations of X -> floor((1 - 1/x) X) with
    x = X0/w, since n - ceil(a) = floor(n - a).  Exact integer arithmetic
    throughout.  ``max_steps`` guards against infeasibly long runs (the step
    count roughly equals x log X0).
    """
    if w <= 0:
        raise ValueError("w must be positive")
    if not 0 < w <= X0:
        raise ValueError(f"need 0 < w <= X0, got w={w}, X0={X0}")
    X = X0
    steps = 0
    while X > 0:
        X -= -(-X * w // X0)  # ceil(X*w/X0)
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise ResourceLimitError(f"iteration exceeds {max_steps} steps")
    return steps


def _certified_ceil(build_expr, start_dps: int = 40, max_dps: int = 4000) -> int:
    """Integer ceiling of a real expression, certified by interval arithmetic.

    ``build_expr(iv)`` must evaluate the expression in the given mpmath
    interval context.  The ceilings of the two interval endpoints are taken
    exactly (the endpoints are dyadic rationals); precision is raised until
    they agree, so the returned integer is provably correct.
    """
    import mpmath
    from mpmath.libmp import round_ceiling, to_int

    dps = start_dps
    while dps <= max_dps:
        ctx = mpmath.iv
        old = ctx.dps
        try:
            ctx.dps = dps
            val = build_expr(ctx)
        finally:
            ctx.dps = old
        lo_raw, hi_raw = val._mpi_
        try:
            clo = to_int(lo_raw, round_ceiling)
            chi = to_int(hi_raw, round_ceiling)
        except (ValueError, OverflowError):
            clo, chi = 0, 1  # an endpoint overflowed to inf: precision too low
        if clo == chi:
            return int(clo)
        dps *= 2
    raise ResourceLimitError("could not certify the ceiling at reasonable precision")


def _iv_fraction(ctx, fr: Fraction):
    return ctx.mpf(fr.numerator) / ctx.mpf(fr.denominator)


def estimate_bound(X0: int, w: int) -> int:
    """Certified ceiling of log_{1-1/x}(x/X0) + x with x = X0/w.

    An upper estimate for the floored iteration: after that many rounds of
    removing at least a 1/x fraction (at least one item per round once few
    remain), nothing survives.  Always >= iteration_bound(X0, w).
    """
    x = Fraction(X0, w)
    if x <= 1:
        raise ValueError("estimate requires x = X0/w > 1")

    def expr(ctx):
        xv = _iv_fraction(ctx, x)
        return ctx.log(xv / ctx.mpf(X0)) / ctx.log(1 - 1 / xv) + xv

    return _certified_ceil(expr)


def estimate_bound_first_order(X0: int, w: int) -> int:
    """Certified ceiling of x log(X0/x) + x, the first-order weakening.

    Replaces log(1 - 1/x) by -1/x in estimate_bound; this is the variant
    whose values the reproduction report compares against the reference
    table.
    """
    x = Fraction(X0, w)
    if x <= 1:
        raise ValueError("estimate requires x = X0/w > 1")

    def expr(ctx):
        xv = _iv_fraction(ctx, x)
        return xv * ctx.log(ctx.mpf(X0) / xv) + xv

    return _certified_ceil(expr)


# ---------------------------------------------------------------------------
# scientific notation with directed rounding (exact integer arithmetic)
# ---------------------------------------------------------------------------


def sci3(value: int | Fraction, direction: str = "nearest") -> str:
    """3-significant-digit scientific form of a positive exact number.

    direction: 'nearest', 'down' (safe for lower bounds) or 'up' (safe for
    upper bounds).  Computed exactly; no floating point.
    """
    fr = Fraction(value)
    if fr <= 0:
        raise ValueError("positive values only")
    exp = 0
    while fr >= 10:
        fr /= 10
        exp += 1
    while fr < 1:
        fr *= 10
        exp -= 1
    scaled = fr * 100  # in [100, 1000)
    floor_m = int(scaled)
    if direction == "down":
        mant = floor_m
    elif direction == "up":
        mant = floor_m if scaled == floor_m else floor_m + 1
    elif direction == "nearest":
        mant = int(scaled + Fraction(1, 2))
    else:
        raise ValueError(f"unknown direction {direction!r}")
    if mant == 1000:
        mant = 100
        exp += 1
    return f"{mant // 100}.{mant % 100:02d}e{exp}"


# ---------------------------------------------------------------------------
# the threshold table
# ---------------------------------------------------------------------------

#: iteration_bound is only evaluated when its step count stays below this
DEFAULT_ITERATION_CAP = 100_000


@dataclass(frozen=True)
class ThresholdRow:
    """One table row: either the 2d-1 ('upper', fold k = 2d-2) or the 2d
    ('lower', fold k = 2d-1) flavour for a given d."""

    d: int
    flavour: str  # 'upper_2d_minus_1' or 'lower_2d'
    w: int
    X0: int
    ratio: Fraction
    iter_bound: int | None
    estimate_bound: int
    estimate_bound_first_order: int

    def __post_init__(self) -> None:
        if self.iter_bound is not None and self.iter_bound > self.estimate_bound:
            raise AssertionError("iteration bound exceeds its estimate")

    @property
    def best_upper(self) -> int:
        """Sharpest proven bound: the floored iteration when computed, else
        the literal estimate (which never exceeds the first-order one)."""
        return self.iter_bound if self.iter_bound is not None else self.estimate_bound

    @property
    def reference_upper(self) -> int:
        """The value comparable to the reference table: floored iteration for
        the small cases, the first-order estimate beyond."""
        return (
            self.iter_bound if self.iter_bound is not None else self.estimate_bound_first_order
        )


def _make_row(d: int, flavour: str, X0: int, w: int, iteration_cap: int) -> ThresholdRow:
    ratio = Fraction(X0, w)
    est = estimate_bound(X0, w)
    est_fo = estimate_bound_first_order(X0, w)
    iter_val = iteration_bound(X0, w) if est_fo <= iteration_cap else None
    return ThresholdRow(
        d=d,
        flavour=flavour,
        w=w,
        X0=X0,
        ratio=ratio,
        iter_bound=iter_val,
        estimate_bound=est,
        estimate_bound_first_order=est_fo,
    )


def threshold_table(
    d_min: int, d_max: int, iteration_cap: int = DEFAULT_ITERATION_CAP
) -> list[ThresholdRow]:
    """Rows for both threshold flavours, d_min <= d <= d_max (2..11).

    Per d: the k = 2d-2 flavour bounds the least t forcing packing number
    >= 2d-1 from above; x(d) of the k = 2d-1 flavour bounds the least t
    forcing 2d from below.  The floored iteration is evaluated whenever its
    step count is affordable (all d <= 4); the closed-form estimates are
    always included.
    """
    if not 2 <= d_min <= d_max <= 11:
        raise ValueError("need 2 <= d_min <= d_max <= 11")
    rows = []
    for d in range(d_min, d_max + 1):
        if d >= 3:
            rows.append(
                _make_row(d, "upper_2d_minus_1", math.factorial(2 * d - 2) ** d, w_even(d), iteration_cap)
            )
        rows.append(
            _make_row(d, "lower_2d", math.factorial(2 * d - 1) ** d, w_odd(d), iteration_cap)
        )
    return rows


def format_threshold_table(rows: list[ThresholdRow]) -> str:
    """Aligned text rendering with exact values and 3-digit scientific forms."""
    by_d: dict[int, dict[str, ThresholdRow]] = {}
    for row in rows:
        by_d.setdefault(row.d, {})[row.flavour] = row
    lines = [
        f"{'d':>3} | {'upper bound (fold 2d-2)':>28} | {'lower bound x(d) (fold 2d-1)':>32}",
        "-" * 72,
    ]
    for d in sorted(by_d):
        upper = by_d[d].get("upper_2d_minus_1")
        lower = by_d[d].get("lower_2d")
        if upper is None:
            up_txt = "-"
        else:
            up_val = upper.reference_upper
            up_txt = f"{up_val} ({sci3(up_val, 'up')})"
        if lower is None:
            lo_txt = "-"
        else:
            x = lower.ratio
            exact = str(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
            lo_txt = f"{exact} ({sci3(x, 'down')})"
        lines.append(f"{d:>3} | {up_txt:>28} | {lo_txt:>32}")
    return "\n".join(lines)
