"""Homogeneous forms, the substitution action, and coefficient extraction."""

import pytest

from pbundle.curve import make_curve, omega
from pbundle.field import Rationals
from pbundle.poly import (
    HomogPoly,
    atiyah_matrix,
    atiyah_matrix_inverse,
    expansion_terms,
    exponent_vectors,
    extract_coeff,
    sym_action,
    whichcoeffs,
)


@pytest.fixture
def curve():
    return make_curve(Rationals(), 2)


def test_homog_poly_validation(curve):
    with pytest.raises(ValueError):
        HomogPoly(2, 3, {(1, 1): curve.one()}, zero=curve.zero())
    with pytest.raises(ValueError):
        HomogPoly(2, 2, {(3, -1): curve.one()}, zero=curve.zero())
    p = HomogPoly(2, 2, {(2, 0): curve.one(), (1, 1): curve.zero()}, zero=curve.zero())
    assert (1, 1) not in p.terms  # zero coefficients are dropped


def test_ring_operations(curve):
    one, zero = curve.one(), curve.zero()
    p = HomogPoly(2, 1, {(1, 0): one}, zero=zero)
    q = HomogPoly(2, 1, {(0, 1): one}, zero=zero)
    assert (p + q) * (p - q) == p * p - q * q
    assert (p * q).degree == 2
    assert extract_coeff(p * q, (1, 1)) == one


def test_atiyah_matrix_inverse(curve):
    for n in (2, 3, 4):
        M = atiyah_matrix(curve, n)
        Minv = atiyah_matrix_inverse(curve, n)
        prod = M * Minv
        for i in range(n):
            for j in range(n):
                assert prod.entries[i][j] == (curve.one() if i == j else curve.zero())


def test_whichcoeffs_validation():
    with pytest.raises(ValueError):
        whichcoeffs((1, 0), (1, 1))
    with pytest.raises(ValueError):
        whichcoeffs((2, -1), (1, 0))


def test_whichcoeffs_known_values():
    # each t_r can drop at most once, so only adjacent walks contribute
    assert whichcoeffs((0, 0, 0, 0, 0, 7), (0, 0, 0, 0, 0, 7)) == (1, 0)
    assert whichcoeffs((0, 0, 0, 0, 1, 6), (0, 0, 0, 0, 0, 7)) == (7, 1)
    assert whichcoeffs((0, 0, 0, 0, 2, 5), (0, 0, 0, 0, 0, 7)) == (21, 2)
    assert whichcoeffs((0, 0, 0, 0, 0, 7), (0, 0, 0, 0, 1, 6)) is None


def test_expansion_of_t5_to_5_t4_t3():
    got = {v: (m, e) for v, m, e in expansion_terms((0, 0, 0, 1, 1, 5))}
    assert got == {
        (0, 0, 0, 1, 1, 5): (1, 0),
        (0, 0, 0, 1, 0, 6): (6, 1),
        (0, 0, 0, 0, 2, 5): (2, 1),
        (0, 0, 0, 0, 1, 6): (6, 2),
    }


def _check_expansions_against_substitution(curve, r, d):
    """expansion_terms must match a literal substitution computation."""
    M = atiyah_matrix(curve, r + 1)
    w = omega(curve)
    one, zero = curve.one(), curve.zero()
    vectors = list(exponent_vectors(r + 1, d))
    images = {}
    for v in vectors:
        mono = HomogPoly(r + 1, d, {v: one}, zero=zero)
        images[v] = sym_action(M, mono)
    for u in vectors:
        expected = {v: (m, e) for v, m, e in expansion_terms(u)}
        for v in vectors:
            coeff = extract_coeff(images[v], u)
            if v in expected:
                m, e = expected[v]
                assert coeff == curve.const(m) * w ** e, (u, v)
            else:
                assert coeff.is_zero(), (u, v)


def test_expansion_matches_substitution_small(curve):
    for r, d in [(1, 3), (2, 2), (2, 3)]:
        _check_expansions_against_substitution(curve, r, d)


def test_sym_action_is_multiplicative(curve):
    M = atiyah_matrix(curve, 3)
    one, zero = curve.one(), curve.zero()
    p = HomogPoly(3, 1, {(1, 0, 0): one, (0, 0, 1): one}, zero=zero)
    q = HomogPoly(3, 2, {(0, 1, 1): one}, zero=zero)
    assert sym_action(M, p * q) == sym_action(M, p) * sym_action(M, q)
