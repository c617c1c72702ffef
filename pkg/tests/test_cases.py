import itertools

import pytest

from packlab.cases import (
    CASE_MATRICES,
    _arrangement_blockable,
    a10_assignment,
    canonical_triple,
    check_case_matrix,
    chi_l_exact,
    chi_l_star_exact,
    colouring_block_masks,
    enumerate_triple_types,
    k39_assignment,
    k65_assignment,
    list_colouring_threshold,
    list_packing_threshold,
    min_cover_size,
    packing_block_masks,
    u_side_list_types,
)
from packlab.errors import ResourceLimitError
from packlab.search import decide_list_packing, verify_list_witness


def test_twelve_types_of_distinct_triples():
    types = enumerate_triple_types(3, allow_repeats=False)
    assert len(types) == 12
    # the reference matrices represent these types, one each
    reference = {canonical_triple([set(row) for row in m]) for m in CASE_MATRICES.values()}
    assert reference == set(types)


def test_sixteen_types_with_repeats():
    assert len(enumerate_triple_types(3, allow_repeats=True)) == 16


def test_u_side_list_types_order_and_shape():
    types = u_side_list_types()
    assert len(types) == 12
    assert types[0] == ((1, 2, 3), (1, 2, 4), (1, 3, 4))
    assert types[10] == ((1, 2, 3), (1, 2, 4), (5, 6, 7))


def test_canonical_triple_invariance():
    # relabeling colours and permuting rows leaves the canonical form alone
    base = [{1, 2, 3}, {1, 4, 5}, {2, 6, 7}]
    relabel = {1: 9, 2: 4, 3: 1, 4: 2, 5: 8, 6: 3, 7: 5}
    mapped = [{relabel[c] for c in lst} for lst in base]
    mapped.reverse()
    assert canonical_triple(base) == canonical_triple(mapped)
    assert canonical_triple(base) != canonical_triple([{1, 2, 3}, {1, 4, 5}, {1, 6, 7}])


def test_check_case_matrix_basics():
    # rows of the first reference matrix, the all-fresh list always extends
    assert check_case_matrix(CASE_MATRICES[1], (8, 9, 10))
    with pytest.raises(ValueError):
        check_case_matrix(CASE_MATRICES[1], (1, 2))


def test_reference_matrices_1_to_5_extend_for_every_list():
    for idx in (1, 2, 3, 4, 5):
        rows = CASE_MATRICES[idx]
        for lst in itertools.combinations(range(1, 11), 3):
            assert check_case_matrix(rows, lst), (idx, lst)


def test_reference_matrix_11_blocking_lists():
    base = CASE_MATRICES[11]
    assert not check_case_matrix(base, (3, 4, 7))
    blocked = set()
    for third in ((5, 6, 7), (6, 7, 5), (7, 5, 6)):
        rows = (base[0], base[1], third)
        for lst in itertools.combinations(range(1, 8), 3):
            if not check_case_matrix(rows, lst):
                blocked.add(lst)
    assert blocked == {(3, 4, 5), (3, 4, 6), (3, 4, 7)}


def test_reference_matrix_12_blocking_lists():
    # arrangements keeping 1 in the first column and 2 in the second are
    # each blocked by exactly one list of {3} x {4,5} x {6,7}
    base = CASE_MATRICES[12]
    blocked = set()
    for second in ((1, 4, 5), (1, 5, 4)):
        for third in ((6, 2, 7), (7, 2, 6)):
            rows = (base[0], second, third)
            this = {
                lst
                for lst in itertools.combinations(range(1, 8), 3)
                if not check_case_matrix(rows, lst)
            }
            assert len(this) == 1
            blocked |= this
    assert blocked == {(3, 4, 6), (3, 4, 7), (3, 5, 6), (3, 5, 7)}


def test_structural_blockability_matches_hall_masks():
    for triple in enumerate_triple_types(3, allow_repeats=True):
        arrangements, masks = packing_block_masks(triple)
        blockable = 0
        for mask in masks.values():
            blockable |= mask
        for idx, rows in enumerate(arrangements):
            assert bool(blockable >> idx & 1) == _arrangement_blockable(rows, 3)


def test_min_cover_size_basics():
    assert min_cover_size([0b111], 3, 5) == 1
    assert min_cover_size([0b011, 0b100], 3, 5) == 2
    assert min_cover_size([0b011, 0b110], 3, 5) == 2
    assert min_cover_size([0b01, 0b01], 2, 5) is None  # bit 1 uncoverable
    assert min_cover_size([0b0101, 0b1010, 0b1111], 4, 5) == 1
    assert min_cover_size([0b01, 0b10], 2, 1) is None  # needs 2 > limit 1


def test_packing_thresholds():
    assert list_packing_threshold(2) == 2
    assert list_packing_threshold(3) == 9
    assert list_colouring_threshold(2) == 3
    assert list_colouring_threshold(3) == 27


def test_colouring_masks_disjoint_type_blocks_one_each():
    colourings, masks = colouring_block_masks([{1, 2, 3}, {4, 5, 6}, {7, 8, 9}])
    assert len(colourings) == 27
    assert all(mask.bit_count() == 1 for mask in masks.values())
    assert len(masks) == 27


def test_chi_l_values():
    assert chi_l_exact(3, 2) == 2
    assert chi_l_exact(3, 3) == 3
    assert chi_l_exact(3, 26) == 3
    assert chi_l_exact(3, 27) == 4
    assert chi_l_exact(27, 3) == 4
    with pytest.raises(ResourceLimitError):
        chi_l_exact(4, 5)


def test_chi_l_star_small_values():
    assert chi_l_star_exact(3, 1) == 2
    assert chi_l_star_exact(3, 2) == 3
    assert chi_l_star_exact(3, 5) == 3


@pytest.mark.long
def test_chi_l_star_threshold_at_nine():
    assert chi_l_star_exact(3, 8) == 3
    assert chi_l_star_exact(3, 9) == 4
    assert chi_l_star_exact(3, 40) == 4


def test_k39_fixture_unpackable():
    assert decide_list_packing(k39_assignment()) is None


def test_k65_fixture_unpackable():
    assignment = k65_assignment()
    assert assignment.a == 5 and assignment.b == 6
    assert decide_list_packing(assignment) is None


def test_a10_fixture_packable_with_verified_witness():
    assignment = a10_assignment()
    witness = decide_list_packing(assignment)
    assert witness is not None
    assert verify_list_witness(assignment, witness)


def test_k39_proof_shape():
    # for any arrangement, the slot where the third vertex takes colour 7
    # pins down a blocking list {a, b, 7}
    assignment = k39_assignment()
    v_sets = {frozenset(lst) for lst in assignment.v_lists}
    for second in itertools.permutations((4, 5, 6)):
        for third in itertools.permutations((7, 8, 9)):
            s = third.index(7)
            blocking = frozenset({(1, 2, 3)[s], second[s], 7})
            assert blocking in v_sets
