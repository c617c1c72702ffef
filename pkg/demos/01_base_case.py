"""The complete base case: 3-fold packings of K_{2,2}.

Two colour vectors on the small side extend at a vertex v unless the two
vectors, pushed through their matchings to v, collide in the Hall sense.
With k = 3 this happens exactly when the pushed vectors have opposite
parities.  A vertex with identity matchings therefore blocks the 18
mixed-parity pairs, and a vertex whose second matching swaps colours 2 and 3
blocks the complementary 18 pairs, so the two vertices together block
everything: the resulting cover of K_{2,2} has no 3-fold packing.
"""

from packlab import (
    PackingMatrix,
    all_permutations,
    chi_c_star_exact,
    compose,
    decide_correspondence_packing,
    find_common_derangement,
    k22_unpackable_cover,
    parity,
    perm_to_str,
)

cover = k22_unpackable_cover()
print("the cover's matchings (rows: u_1, u_2; columns: v_1, v_2):")
for i in range(2):
    print("   ", "  ".join(perm_to_str(cover.sigma[i][j]) for j in range(2)))

print("\nclassifying all 36 pairs of colour vectors:")
blocked_v1, blocked_v2 = [], []
for p in all_permutations(3):
    for q in all_permutations(3):
        if find_common_derangement(PackingMatrix(k=3, rows=(p, q))) is None:
            blocked_v1.append((p, q))
        twisted = (p, compose(cover.sigma[1][1], q))
        if find_common_derangement(PackingMatrix(k=3, rows=twisted)) is None:
            blocked_v2.append((p, q))

print(f"  blocked at v_1 (identity matchings): {len(blocked_v1)} pairs")
print(f"  blocked at v_2 (swapped 2 and 3):    {len(blocked_v2)} pairs")
print("  parities at v_1:", sorted({(parity(p), parity(q)) for p, q in blocked_v1}))
print("  parities at v_2:", sorted({(parity(p), parity(q)) for p, q in blocked_v2}))

print("\nno pair survives both vertices:")
print("  decide_correspondence_packing ->", decide_correspondence_packing(cover))

print("\nand four colours always suffice (exhaustive over canonical covers):")
print("  chi_c_star_exact(2, 2) =", chi_c_star_exact(2, 2))
