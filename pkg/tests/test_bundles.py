"""Bundle descriptors and decomposition of tensor and symmetric powers."""

import pytest

from pbundle.bundles import (
    BundleDescriptor,
    Decomposition,
    TRIVIAL,
    atiyah_tensor,
    jordan_type_oracle,
    sym_decompose,
    sym_decompose_sum,
    torsion,
    transition_matrix,
)
from pbundle.curve import make_curve
from pbundle.field import Rationals


def test_descriptor_validation():
    with pytest.raises(ValueError):
        BundleDescriptor([])
    with pytest.raises(ValueError):
        BundleDescriptor([(0, TRIVIAL)])
    with pytest.raises(ValueError):
        BundleDescriptor([(1, ("torsion", 1))])
    with pytest.raises(ValueError):
        BundleDescriptor([(1, ("label", "a")), (1, ("label", "a"))])
    desc = BundleDescriptor([(2, TRIVIAL), (1, torsion(3))])
    assert desc.total_rank() == 3
    assert desc.twist_orders() == (1, 3)
    assert not desc.all_trivial()


def test_decomposition_normalizes():
    assert Decomposition([1, 3, 2]).parts == (3, 2, 1)
    assert Decomposition([3, 1]) == [1, 3]
    with pytest.raises(ValueError):
        Decomposition([0])


def test_tensor_decomposition():
    assert atiyah_tensor(2, 2) == Decomposition([3, 1])
    assert atiyah_tensor(2, 3) == Decomposition([4, 2])
    assert atiyah_tensor(3, 3) == Decomposition([5, 3, 1])
    assert atiyah_tensor(1, 4) == Decomposition([4])
    for r in range(1, 5):
        for s in range(1, 5):
            assert atiyah_tensor(r, s).total() == r * s
    with pytest.raises(ValueError):
        atiyah_tensor(0, 2)


def test_sym_decomposition():
    assert sym_decompose(2, 4) == Decomposition([5])
    assert sym_decompose(3, 2) == Decomposition([5, 1])
    assert sym_decompose(2, 1) == Decomposition([2])
    assert sym_decompose(4, 1) == Decomposition([4])
    for r in range(1, 5):
        for d in range(0, 5):
            from math import comb

            assert sym_decompose(r, d).total() == comb(r + d - 1, d)


def test_sym_decompose_sum():
    desc = BundleDescriptor([(2, TRIVIAL), (1, TRIVIAL)])
    parts = sym_decompose_sum(desc, 2)
    assert parts.total() == 6
    with pytest.raises(ValueError):
        sym_decompose_sum(BundleDescriptor([(1, torsion(2))]), 2)


def test_jordan_oracle_agrees_on_small_grid():
    curve = make_curve(Rationals(), 2)
    for r, d in [(2, 2), (2, 3), (3, 2)]:
        desc = BundleDescriptor([(r, TRIVIAL)])
        M = transition_matrix(desc, curve)
        assert jordan_type_oracle(M, d) == sym_decompose(r, d)


def test_jordan_oracle_rejects_non_unipotent():
    curve = make_curve(Rationals(), 2)
    from pbundle.poly import TransitionMatrix

    two = curve.const(2)
    M = TransitionMatrix([[two]])
    with pytest.raises(ValueError):
        jordan_type_oracle(M, 2)
