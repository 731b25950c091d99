import pytest

from mdslab.fqpoly import field
from mdslab.qlaurent import QL_ONE
from mdslab.reducer import tuples_with_sum_at_most
from mdslab.residue import (
    build_R,
    check_euler_substitution,
    check_factor_pairing,
    check_neven_fe,
    check_pipeline_consistency,
    check_resfe,
    factor_multiplicity,
    n_even_vars,
    reconstruct_R1,
    residue_coeff_H_route,
    residue_coeff_engine_scaled,
    residue_index,
    run_pipeline,
)


def test_n_even_vars():
    assert [n_even_vars(n) for n in (2, 3, 4, 5, 6)] == [2, 2, 3, 3, 4]


def test_build_R_smallest_factors_n3():
    fl = build_R(3, 4)
    # odd diagonal (1,1) at beta 0 and 1, plus first windows
    assert fl.factors[((1, 1), 0)] == 1
    assert fl.factors[((1, 1), 4)] == 1
    assert fl.factors[((2, 0), 0)] == 1
    assert fl.factors[((0, 2), 4)] == 1
    # full cyclic window of length k merges into multiplicity k
    assert fl.factors[((2, 2), 0)] == 2


def test_build_R_smallest_factors_n2():
    fl = build_R(2, 4)
    assert fl.factors[((2, 2), 0)] == 1  # diagonal, gamma = n/2
    assert fl.factors[((2, 2), 4)] == 1
    assert fl.factors[((2, 0), 2)] == 1  # prefix at beta = 1/2
    assert fl.factors[((0, 2), 2)] == 1  # suffix at beta = 1/2
    # no interior windows exist for k = 2
    assert ((2, 0), 0) not in fl.factors


def test_factor_multiplicity_matches_window():
    for n in (2, 3, 4):
        fl = build_R(n, 8)
        for (alpha, beta), gamma in fl.items():
            assert factor_multiplicity(n, alpha, beta) == gamma
    assert factor_multiplicity(3, (-2, 0), 0) == 0
    assert factor_multiplicity(3, (0, 0), 0) == 0


def test_pipeline_seed_values():
    # n = 2: even series with c_2 = 3 q^4 (half-integer powers of q)
    seed2 = run_pipeline(2, 4).seed
    assert [v.serialize() for v in seed2.values[:4]] == ["0:1", "", "16:3", ""]
    # n = 3: c_1 = q^3, integer powers throughout
    seed3 = run_pipeline(3, 3).seed
    assert seed3.values[0] == QL_ONE
    assert seed3.values[1].serialize() == "12:1"
    assert seed3.values[2].serialize() == "20:4;24:3"


def test_pipeline_cache_identity():
    a = run_pipeline(3, 4)
    b = run_pipeline(3, 4)
    assert a is b


def test_residue_index_shapes():
    assert residue_index(3, (1, 2)) == (1, 3, 2, 3)
    assert residue_index(5, (1, 0, 2)) == (1, 1, 0, 2, 2, 3)
    assert residue_index(2, (1, 2)) == (1, 3, 2)
    assert residue_index(4, (1, 0, 2)) == (1, 1, 0, 2, 2)
    with pytest.raises(ValueError):
        residue_index(3, (1, 2, 3))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_pipeline_consistency(n):
    report = check_pipeline_consistency(n, 6)
    assert report["status"] == "pass", report


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_factor_pairing(n):
    report = check_factor_pairing(n, 12)
    assert report["status"] == "pass", report


@pytest.mark.parametrize("n,p_deg", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_euler_substitution(n, p_deg):
    seed = run_pipeline(n, 12).seed
    report = check_euler_substitution(n, p_deg, 4, seed)
    assert report["status"] == "pass", report


@pytest.mark.parametrize("n", [2, 3])
def test_h_route_matches_engine(n):
    fq = field(5)
    seed = run_pipeline(n, 12).seed
    k = n_even_vars(n)
    for avec in tuples_with_sum_at_most(k, 3):
        lhs = residue_coeff_H_route(fq, n, avec, seed)
        rhs = residue_coeff_engine_scaled(fq, n, avec, seed)
        assert lhs == rhs, (avec, lhs, rhs)


def admissible_positions(n):
    return range(0, n + 1, 2) if n % 2 else range(2, n, 2)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_resfe(n):
    for i in admissible_positions(n):
        report = check_resfe(n, i, 10)
        assert report["status"] == "pass", report


def test_resfe_rejects_bad_positions():
    with pytest.raises(ValueError):
        check_resfe(3, 1, 6)
    with pytest.raises(ValueError):
        check_resfe(4, 0, 6)


def test_neven_fe_n6():
    for which in ("cycle-squared", "edge"):
        report = check_neven_fe(6, which, 10)
        assert report["status"] == "pass", report


def test_neven_fe_special_cases():
    for n in (2, 4):
        for which in ("cycle-squared", "edge"):
            assert check_neven_fe(n, which, 8)["status"] == "unverified special case"
    with pytest.raises(ValueError):
        check_neven_fe(3, "edge", 8)
    with pytest.raises(ValueError):
        check_neven_fe(6, "nope", 8)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_reconstruct_R1(n):
    report = reconstruct_R1(n, 6)
    assert report["status"] == "pass", report
