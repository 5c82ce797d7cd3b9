"""Round trips through the canonical text and JSON encodings."""

import pytest

from pbundle.bundles import BundleDescriptor, TRIVIAL, torsion
from pbundle.curve import make_curve, omega
from pbundle.encoding import (
    bundle_from_json,
    bundle_to_json,
    candidate_from_json,
    candidate_to_json,
    curve_from_json,
    curve_to_json,
    field_from_json,
    field_to_json,
    homog_to_text,
    laurent_to_text,
    parse_homog,
    parse_laurent,
)
from pbundle.endo import char_p_atiyah_endo, identity_endo
from pbundle.field import PrimeField, Rationals
from pbundle.poly import HomogPoly

from conftest import load_fixture


@pytest.fixture
def curve():
    return make_curve(Rationals(), 2)


def test_field_json_roundtrip():
    assert field_from_json(field_to_json(Rationals())) == Rationals()
    assert field_from_json(field_to_json(PrimeField(7))) == PrimeField(7)
    with pytest.raises(ValueError):
        field_from_json({"GF": 4})


def test_curve_json_roundtrip(curve):
    assert curve_from_json(curve_to_json(curve)) == curve
    curve5 = make_curve(PrimeField(5), 2)
    assert curve_from_json(curve_to_json(curve5)) == curve5


def test_bundle_json_roundtrip():
    desc = BundleDescriptor([(2, TRIVIAL), (1, torsion(3)), (1, ("label", "a"))])
    assert bundle_from_json(bundle_to_json(desc)) == desc


def test_laurent_text_roundtrip(curve):
    samples = [
        curve.zero(),
        curve.one(),
        curve.x() ** 3 - 2 * curve.y(),
        omega(curve) ** 3,
        curve.y_inv() ** 4 * (curve.x() + 1),
    ]
    for h in samples:
        assert parse_laurent(curve, laurent_to_text(h)) == h
    with pytest.raises(ValueError):
        parse_laurent(curve, "x + y")


def test_homog_text_roundtrip(curve):
    one, zero = curve.one(), curve.zero()
    F = HomogPoly(
        3,
        2,
        {(2, 0, 0): curve.x(), (1, 1, 0): -one, (0, 0, 2): omega(curve) ** 2},
        zero=zero,
    )
    assert parse_homog(curve, homog_to_text(F), 3, 2) == F
    assert parse_homog(curve, "0", 3, 2).is_zero()
    with pytest.raises(ValueError):
        parse_homog(curve, homog_to_text(F), 3, 3)


def test_candidate_json_roundtrip(curve):
    for cand in (
        identity_endo(curve, BundleDescriptor([(2, TRIVIAL)])),
        char_p_atiyah_endo(5, 2),
    ):
        data = candidate_to_json(cand)
        back = candidate_from_json(data)
        assert candidate_to_json(back) == data


def test_fixtures_parse_and_reserialize():
    for name in ("identity_f2.json", "char5.json", "torsion3.json"):
        data = load_fixture(name)
        assert candidate_to_json(candidate_from_json(data)) == data
