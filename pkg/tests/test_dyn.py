"""Exact spectral radii, annihilators, and Picard-lattice bookkeeping."""

from fractions import Fraction

import pytest

from pbundle.bundles import BundleDescriptor, TRIVIAL
from pbundle.curve import make_curve
from pbundle.dyn import (
    Annihilator,
    Interval,
    PRECISION,
    PicLattice,
    annihilator_from_indices,
    charpoly,
    check_degree_bound,
    dyn_report,
    fibre_degree,
    largest_real_root,
    product_formula,
    root_product_poly,
    spectral_radius,
    sqrt_interval,
)
from pbundle.endo import identity_endo
from pbundle.field import Rationals


def test_interval_basics():
    iv = Interval(1, 2)
    assert iv.width() == 1
    assert iv.contains(Fraction(3, 2))
    assert not iv.is_exact()
    assert Interval.exact(3).is_exact()
    with pytest.raises(ValueError):
        Interval(2, 1)
    assert Interval(1, 2).max_with(Interval.exact(3)) == Interval.exact(3)


def test_sqrt_interval():
    iv = sqrt_interval(Interval.exact(2), bits=32)
    assert iv.lo <= Fraction(2) ** Fraction(1) / iv.hi  # lo*hi brackets 2
    assert iv.lo * iv.lo <= 2 <= iv.hi * iv.hi
    assert iv.width() <= Fraction(1, 2 ** 30)
    assert sqrt_interval(Interval.exact(9), bits=8).contains(3)


def test_charpoly_and_root_products():
    # companion facts: charpoly of [[2,0],[0,3]] is x^2 - 5x + 6
    p = charpoly([[2, 0], [0, 3]])
    assert p == [Fraction(6), Fraction(-5), Fraction(1)]
    # products of root pairs of x^2 - 5x + 6: {4, 6, 9}
    rp = root_product_poly([Fraction(6), Fraction(-5), Fraction(1)])
    for root in (4, 6, 9):
        acc = sum(c * root ** k for k, c in enumerate(rp))
        assert acc == 0


def test_largest_real_root_exact_and_enclosed():
    # (x-2)(x-1) = x^2 - 3x + 2
    root, exact = largest_real_root([Fraction(2), Fraction(-3), Fraction(1)], PRECISION)
    assert root == Interval.exact(2)
    assert exact == 2
    golden, exact = largest_real_root([Fraction(-1), Fraction(-1), Fraction(1)], PRECISION)
    assert exact is None
    assert golden.width() <= PRECISION
    assert golden.lo * golden.lo - golden.lo <= 1 <= golden.hi * golden.hi - golden.hi


def test_spectral_radius_examples():
    assert spectral_radius([[1, 0], [0, 1]]) == Interval.exact(1)
    assert spectral_radius([[3]]) == Interval.exact(3)
    assert spectral_radius([[0, 0], [0, 0]]) == Interval.exact(0)
    # nilpotent: radius 0
    assert spectral_radius([[0, 1], [0, 0]]) == Interval.exact(0)
    fib = spectral_radius([[1, 1], [1, 0]])
    assert fib.width() <= PRECISION
    assert fib.contains(Fraction(1618034, 1000000)) or fib.lo > Fraction(1618033, 1000000)


def test_annihilator_from_indices():
    assert annihilator_from_indices(0, 2, 3) == Annihilator([9, 3])
    assert annihilator_from_indices(1, 3, 2) == Annihilator([16, 8, 4])
    assert annihilator_from_indices(2, 1, 4) == Annihilator([64], degenerate=True)
    with pytest.raises(ValueError):
        annihilator_from_indices(0, 0, 3)
    with pytest.raises(ValueError):
        annihilator_from_indices(-1, 2, 3)


def test_annihilator_root_moduli():
    ann = annihilator_from_indices(1, 3, 2)  # 4(x^2 + 2x + 4), root moduli 2
    rho = spectral_radius(ann.companion())
    assert rho == Interval.exact(2)


def test_product_formula():
    assert product_formula(9, 3) == Interval.exact(9)
    assert product_formula(2, 5) == Interval.exact(5)
    assert product_formula(Interval(2, 3), 1) == Interval(2, 3)


def test_pic_lattice_torsion_consistency():
    PicLattice(["H", "T"], [[2, 0], [0, 2]], torsion={"T": 4})
    with pytest.raises(ValueError):
        # torsion class mapping onto a free class
        PicLattice(["H", "T"], [[2, 1], [0, 2]], torsion={"T": 4})
    with pytest.raises(ValueError):
        # order-2 class hitting an order-4 class with an odd coefficient
        PicLattice(["S", "T"], [[1, 0], [1, 1]], torsion={"S": 2, "T": 4})
    lat = PicLattice(["H", "T"], [[2, 0], [0, 2]], torsion={"T": 4})
    assert lat.free_action() == [[2]]


def test_check_degree_bound():
    lat = PicLattice(["H"], [[3]], lambda1_g=9)
    verdict = check_degree_bound(lat, 3)
    assert verdict.confirmed
    assert verdict.inconsistency is None
    assert not check_degree_bound(lat, 4).confirmed
    # radius 2 exceeds sqrt(1): inconsistent input data
    bad = PicLattice(["H"], [[2]], lambda1_g=1)
    assert check_degree_bound(bad, 2).inconsistency is not None


def test_dyn_report():
    lat = PicLattice(
        ["H", "F", "T"],
        [[3, 0, 0], [0, 3, 0], [0, 0, 3]],
        torsion={"T": 3},
        lambda1_g=9,
    )
    report = dyn_report(lat, 3)
    assert report.fibre_degree == 3
    assert report.lambda1_g == Interval.exact(9)
    assert report.lambda1_f == Interval.exact(9)
    assert report.spectral_radius_V == Interval.exact(3)
    assert report.bound_ok


def test_fibre_degree_requires_verified_candidate():
    curve = make_curve(Rationals(), 2)
    cand = identity_endo(curve, BundleDescriptor([(2, TRIVIAL)]))
    assert fibre_degree(cand) == 1
    u = (1, 0)
    cand.F[0].terms[u] = cand.F[0].terms[u] + curve.one()
    with pytest.raises(ValueError):
        fibre_degree(cand)
