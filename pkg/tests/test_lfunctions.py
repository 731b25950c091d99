import pytest

from mdslab.fqpoly import field
from mdslab.lfunctions import (
    check_l_fe,
    check_rh,
    divisor_count,
    l_poly,
    moment_identity_check,
)


@pytest.fixture(scope="module")
def f5():
    return field(5)


def test_l_poly_linear(f5):
    # deg g = 1: the L-polynomial is the constant 1
    t = f5.poly([0, 1])
    assert l_poly(f5, t) == [1]


def test_l_poly_brute_force(f5):
    # direct double-sum comparison for a degree-3 modulus
    g = f5.poly([1, 0, 0, 1])
    assert f5.is_squarefree(g)
    want = [
        sum(f5.residue_symbol(f, g) for f in f5.monic_enum(d)) for d in range(3)
    ]
    assert l_poly(f5, g) == want


def test_l_poly_rejects_bad_moduli(f5):
    with pytest.raises(ValueError):
        l_poly(f5, f5.poly([1]))
    t = f5.poly([0, 1])
    with pytest.raises(ValueError):
        l_poly(f5, f5.mul(t, t))


def test_fe_all_squarefree_up_to_deg4(f5):
    for d in range(1, 5):
        for g in f5.monic_enum(d):
            if f5.is_squarefree(g):
                report = check_l_fe(f5, g)
                assert report["status"] == "pass", report


def test_fe_other_fields():
    for q in (13, 17):
        fq = field(q)
        for g in fq.monic_enum(3):
            if fq.is_squarefree(g):
                assert check_l_fe(fq, g)["status"] == "pass"


def test_rh_small_moduli(f5):
    for d in range(1, 5):
        for g in f5.monic_enum(d):
            if f5.is_squarefree(g):
                report = check_rh(f5, g)
                assert report["status"] == "pass", report
                assert report.get("max_deviation", 0.0) <= 1e-6


def test_divisor_count(f5):
    t = f5.poly([0, 1])
    assert divisor_count(f5, t) == 2
    assert divisor_count(f5, f5.mul(t, t)) == 3
    assert divisor_count(f5, f5.mul(t, (1, 1))) == 4
    assert divisor_count(f5, (1,)) == 1


def test_moment_identity_small(f5):
    report = moment_identity_check(f5, 2)
    assert report["status"] == "pass", report


def test_moment_identity_rectangular(f5):
    # asymmetric windows in the two outer degrees
    report = moment_identity_check(f5, 2, b0max=3, b2max=1)
    assert report["status"] == "pass", report


def test_moment_identity_other_field():
    report = moment_identity_check(field(13), 1)
    assert report["status"] == "pass", report
