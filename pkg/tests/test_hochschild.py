import itertools
from random import Random

import pytest

import wickfock.hochschild as hochschild
from wickfock.checks import rand_fock, rand_kernel_family
from wickfock.errors import ComplexInconsistencyError, TruncationError
from wickfock.expansion import extract_kernels, reconstruct
from wickfock.fock import TruncationCaps
from wickfock.hochschild import (
    Cochain,
    RationalMatrix,
    coboundary,
    coboundary_matrix,
    cohomology_dims,
    cohomology_report,
    kernel_coboundary,
    minor_rank,
    polydiff_degree,
    rank_nullspace,
    stratum_basis,
    table_coboundary,
)
from wickfock.multiindex import VACUUM, MultiIndex
from wickfock.operators import KernelFamily
from wickfock.scalars import ONE, ZERO, Scalar

mi = MultiIndex

IDENTITY = KernelFamily.single(1, VACUUM, (VACUUM,))
WICK_COCHAIN = KernelFamily.single(2, VACUUM, (VACUUM, VACUUM))


def test_coboundary_of_identity_is_wick_multiplication():
    assert kernel_coboundary(IDENTITY) == WICK_COCHAIN


def test_coboundary_of_annihilators_vanishes():
    for mode in range(3):
        lowering = KernelFamily.single(1, VACUUM, (mi([(mode, 1)]),))
        assert kernel_coboundary(lowering).is_zero()
    # and so does the coboundary of every derivation a*_i a_j
    for i, j in itertools.product(range(2), repeat=2):
        derivation = KernelFamily.single(1, mi([(i, 1)]), (mi([(j, 1)]),))
        assert kernel_coboundary(derivation).is_zero()


def test_coboundary_of_zero_cochain_vanishes():
    caps = TruncationCaps(2, 3)
    element = rand_fock(Random(5), 2, 2)
    delta = coboundary(Cochain.from_element(element, caps))
    assert delta.arity == 1 and delta.is_zero()


def test_delta_delta_is_zero_random():
    rng = Random(103)
    for _ in range(25):
        arity = rng.randint(1, 2)
        family = rand_kernel_family(rng, arity, 2, 2)
        assert kernel_coboundary(kernel_coboundary(family)).is_zero()


def test_table_and_kernel_routes_agree():
    rng = Random(107)
    for _ in range(10):
        arity = rng.randint(1, 2)
        family = rand_kernel_family(rng, arity, 2, 1, max_entries=2)
        caps = TruncationCaps(2, 1 + arity + 1)
        cochain = Cochain.from_kernels(family, caps)
        assert table_coboundary(cochain) == reconstruct(
            kernel_coboundary(family), caps
        )


def test_coboundary_route_objects_agree():
    family = KernelFamily.single(1, mi([(0, 1)]), (mi([(0, 1)]),))
    caps = TruncationCaps(2, 4)
    cochain = Cochain.from_kernels(family, caps)
    via_kernel = coboundary(cochain, route="kernel")
    via_table = coboundary(cochain, route="table")
    assert via_kernel.kernels == extract_kernels(via_table.table)
    assert via_kernel.table == via_table.table


def test_table_coboundary_needs_wide_enough_caps():
    family = KernelFamily.single(1, mi([(0, 2)]), (mi([(0, 1)]),))  # l+m = 3
    cochain = Cochain.from_kernels(family, TruncationCaps(2, 3))
    with pytest.raises(TruncationError):
        table_coboundary(cochain)


def test_table_backed_cochain_middle_lookup_overflow():
    # evaluated through its table, the merged middle argument leaves the window
    caps = TruncationCaps(2, 2)
    cochain = Cochain.from_table(reconstruct(IDENTITY, caps))
    with pytest.raises(TruncationError):
        table_coboundary(cochain)


def test_polydiff_degree():
    caps = TruncationCaps(2, 4)
    hop = Cochain.from_kernels(
        KernelFamily.single(1, mi([(0, 1)]), (mi([(1, 1)]),)), caps
    )
    assert polydiff_degree(hop) == (1, 1)
    identity = Cochain.from_kernels(IDENTITY, caps)
    assert polydiff_degree(identity) == (0, 0)
    mixed = Cochain.from_kernels(
        KernelFamily.single(1, mi([(0, 1)]), (mi([(0, 1)]),))
        + KernelFamily.single(1, mi([(0, 1)]), (VACUUM,)),
        caps,
    )
    assert polydiff_degree(mixed) is None
    zero = Cochain.from_kernels(KernelFamily.empty(1), caps)
    assert polydiff_degree(zero) is None


def test_polydiff_degree_through_extraction():
    caps = TruncationCaps(2, 4)
    table = reconstruct(KernelFamily.single(1, mi([(0, 1)]), (mi([(1, 1)]),)), caps)
    assert polydiff_degree(Cochain.from_table(table)) == (1, 1)


def test_stratum_preservation_on_generators():
    caps = TruncationCaps(2, 6)
    for l in range(3):
        for m in range(3):
            for arity in (1, 2):
                for creation, slots in stratum_basis(arity, l, m, caps):
                    image = kernel_coboundary(
                        KernelFamily.single(arity, creation, slots)
                    )
                    assert image.is_zero() or image.strata() == [(l, m)]


def test_stratum_basis_shapes():
    caps = TruncationCaps(2, 6)
    assert stratum_basis(0, 2, 0, caps) == [mi([(0, 1), (1, 1)]), mi([(0, 2)]), mi([(1, 2)])]
    assert stratum_basis(0, 1, 1, caps) == []
    assert len(stratum_basis(1, 1, 1, caps)) == 4
    assert len(stratum_basis(2, 1, 1, caps)) == 8
    basis = stratum_basis(2, 0, 1, caps)
    assert len(basis) == 4
    assert basis == sorted(basis)


def test_coboundary_matrix_hand_values():
    caps1 = TruncationCaps(1, 2)
    matrix = coboundary_matrix(1, 0, 0, caps1)
    assert (matrix.rows, matrix.cols) == (1, 1)
    assert matrix.entries[0][0] == ONE

    # no modes at all: the stratum is empty and the matrix collapses
    empty = coboundary_matrix(1, 1, 0, TruncationCaps(0, 3))
    assert (empty.rows, empty.cols) == (0, 0)

    # arity-1 (1,1) cochains are all derivations: the matrix vanishes
    caps = TruncationCaps(2, 6)
    derivations = coboundary_matrix(1, 1, 1, caps)
    assert derivations.is_zero()
    assert derivations.cols == 4


def test_coboundary_matrix_caps_rule():
    with pytest.raises(TruncationError):
        coboundary_matrix(1, 1, 1, TruncationCaps(2, 3))


def test_rank_nullspace_hand_values():
    zero = RationalMatrix.zeros(3, 3)
    rank, basis = rank_nullspace(zero)
    assert rank == 0 and len(basis) == 3

    eye = RationalMatrix(
        2, 2, [[ONE, ZERO], [ZERO, ONE]]
    )
    rank, basis = rank_nullspace(eye)
    assert rank == 2 and basis == []


def test_rank_against_minor_oracle():
    rng = Random(109)
    for _ in range(40):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        matrix = RationalMatrix(
            rows,
            cols,
            [
                [Scalar(rng.randint(-2, 2), rng.randint(-1, 1)) for _ in range(cols)]
                for _ in range(rows)
            ],
        )
        rank, basis = rank_nullspace(matrix)
        assert rank == minor_rank(matrix)
        assert rank + len(basis) == cols
        for vector in basis:
            for row in matrix.entries:
                total = ZERO
                for a, v in zip(row, vector):
                    total = total + a * v
                assert not total


def test_cohomology_dims_hand_values():
    # annihilation derivations span the (0,1) cocycles; nothing bounds them
    caps = TruncationCaps(2, 3)
    assert cohomology_dims(1, 0, 1, caps) == (2, 0, 2)

    # arity 0: the coboundary vanishes, every element is a cocycle
    assert cohomology_dims(0, 1, 0, TruncationCaps(2, 2)) == (2, 0, 2)
    assert cohomology_dims(0, 0, 1, TruncationCaps(2, 2)) == (0, 0, 0)

    # single mode, (0,0): the identity bounds the Wick cochain
    assert cohomology_dims(1, 0, 0, TruncationCaps(1, 2)) == (0, 0, 0)
    assert cohomology_dims(2, 0, 0, TruncationCaps(1, 3)) == (1, 1, 0)


def test_cohomology_dims_routes_agree():
    for l, m in ((0, 0), (1, 1), (0, 1), (1, 0), (2, 1), (0, 2)):
        for r in (1, 2):
            caps = TruncationCaps(2, l + m + r + 1)
            kernel_route = cohomology_dims(r, l, m, caps, route="kernel")
            table_route = cohomology_dims(r, l, m, caps, route="table")
            assert kernel_route == table_route
            # the matrices themselves agree, entry by entry
            assert coboundary_matrix(r, l, m, caps, route="kernel") == (
                coboundary_matrix(r, l, m, caps, route="table")
            )


def test_cohomology_report_cocycles_are_cocycles():
    caps = TruncationCaps(2, 4)
    report = cohomology_report(1, 1, 1, caps)
    assert report["dim_ker"] == 4
    for family in report["cocycles"]:
        assert kernel_coboundary(family).is_zero()


def test_consistency_gate_is_wired():
    # break delta on purpose: an even "sign" makes delta o delta nonzero
    original = hochschild._term_sign
    hochschild._term_sign = lambda i: 1
    try:
        with pytest.raises(ComplexInconsistencyError):
            cohomology_dims(2, 0, 0, TruncationCaps(1, 4))
    finally:
        hochschild._term_sign = original


def test_extraction_commutes_with_coboundary():
    rng = Random(113)
    for _ in range(8):
        family = rand_kernel_family(rng, 1, 2, 1, max_entries=2)
        caps = TruncationCaps(2, 1 + 1 + 1)
        table = reconstruct(family, caps)
        delta_then_extract = extract_kernels(
            table_coboundary(Cochain.from_kernels(family, caps))
        )
        extract_then_delta = kernel_coboundary(extract_kernels(table))
        assert delta_then_extract == extract_then_delta
