"""Unextendable packing matrices and their Hall obstructions.

A d x k packing matrix collects the colour vectors of the small side; it is
forbidden when no permutation avoids every row in every position.  For
k = 2d-2 a forbidden matrix always exhibits one of three violator shapes,
and the total count has a closed form whose inclusion-exclusion pieces the
brute-force counter reproduces exactly.
"""

from packlab import (
    PackingMatrix,
    classify_obstructions,
    find_common_derangement,
    forbidden_count_brute,
    forbidden_witness_latin_structure,
    is_forbidden,
    w_even,
    w_odd,
)

print("three reference 4 x 6 matrices, one per maximal obstruction shape:")
references = [
    PackingMatrix(k=6, rows=((1, 2, 3, 4, 5, 6), (2, 1, 4, 3, 6, 5),
                             (3, 4, 2, 5, 1, 6), (4, 3, 1, 6, 5, 2))),
    PackingMatrix(k=6, rows=((1, 2, 3, 4, 5, 6), (2, 1, 4, 3, 6, 5),
                             (3, 4, 2, 1, 5, 6), (4, 3, 1, 2, 5, 6))),
    PackingMatrix(k=6, rows=((1, 2, 3, 6, 5, 4), (2, 1, 6, 3, 4, 5),
                             (3, 4, 2, 1, 5, 6), (4, 3, 1, 2, 5, 6))),
]
for m in references:
    report = classify_obstructions(m)
    print(f"  forbidden={is_forbidden(m)}  kind={report.kind}  "
          f"positions={report.positions}  colours={report.colours}")

print("\nfor k = 2d-1, forbiddenness is equivalent to containing a d x d")
print("Latin square: d positions using exactly d values across the rows.")
m = PackingMatrix(k=5, rows=((1, 2, 3, 4, 5), (2, 3, 1, 4, 5), (3, 1, 2, 4, 5)))
print("  example witness (values, positions):", forbidden_witness_latin_structure(m))
print("  extension found:", find_common_derangement(m))

print("\nclosed forms against exhaustive counting:")
print("  d=3, k=5:", w_odd(3), "=", forbidden_count_brute(3, 5))
print("  d=3, k=4:", w_even(3), "=", forbidden_count_brute(3, 4))
print("  (d=4, k=6 checks 367027200 the same way; see the long test)")
