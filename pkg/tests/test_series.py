import pytest
from hypothesis import given, settings, strategies as st

from mdslab.qlaurent import QL_ONE, QLaurent
from mdslab.series import (
    FactorList,
    MultiSeries,
    build_delta,
    expand_factors,
    factorize_product_form,
    pairing_completion,
    split_flat_natural_sharp,
)


def geometric(nvars, bound, alpha, beta=0, gamma=1):
    fl = FactorList()
    fl.add(alpha, beta, gamma)
    return expand_factors(fl, nvars, bound)


def test_single_factor_expansion():
    s = geometric(1, 5, (1,))
    assert all(s.coeff((d,)) == QL_ONE for d in range(6))
    inv = geometric(1, 5, (1,), gamma=-1)
    assert inv.coeff((0,)) == QL_ONE
    assert inv.coeff((1,)) == QLaurent.const(-1)
    assert not inv.coeff((2,))


def test_beta_carries_q_power():
    s = geometric(1, 3, (1,), beta=4)
    assert s.coeff((2,)) == QLaurent.q_power(8)


def test_mul_inverse_roundtrip():
    s = geometric(2, 6, (1, 1)).mul(geometric(2, 6, (1, 0), beta=2))
    assert s.mul(s.inverse()) == MultiSeries.one(2, 6)


def test_inverse_requires_unit_constant():
    s = MultiSeries(1, 3, {(0,): QLaurent.const(2)})
    with pytest.raises(ValueError):
        s.inverse()


def test_diag_part():
    fl = FactorList()
    fl.add((1, 1), 0, 1)
    fl.add((2, 0), 0, 1)
    diag = expand_factors(fl, 2, 8).diag_part()
    # only powers of x0 x1 survive
    assert diag.nvars == 1
    assert diag.coeff((1,)) == QL_ONE
    assert diag.coeff((2,)) == expand_factors(fl, 2, 8).coeff((2, 2))
    assert diag.coeff((3,)) == expand_factors(fl, 2, 8).coeff((3, 3))


factor_lists = st.lists(
    st.tuples(
        st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(lambda a: any(a)),
        st.sampled_from([0, 2, 4]),
        st.integers(-2, 2).filter(bool),
    ),
    min_size=0,
    max_size=4,
)


@given(factors=factor_lists)
@settings(max_examples=50, deadline=None)
def test_factorize_expand_roundtrip(factors):
    fl = FactorList()
    for alpha, beta, gamma in factors:
        fl.add(alpha, beta, gamma)
    bound = 6
    s = expand_factors(fl, 2, bound)
    refound = factorize_product_form(s)
    # truncation only pins factors up to half the bound
    assert refound.degree_cut(bound // 2) == fl.degree_cut(bound // 2)


def test_split_and_pairing():
    fl = FactorList()
    fl.add((1, 0), 0, 1)
    fl.add((0, 1), 2, 2)
    fl.add((1, 1), 4, -1)
    flat, natural, sharp = split_flat_natural_sharp(fl)
    assert len(flat) == 1 and len(natural) == 1 and len(sharp) == 1
    done = pairing_completion(flat)
    assert done.factors == {((1, 0), 0): 1, ((1, 0), 4): 1}
    with pytest.raises(ValueError):
        pairing_completion(sharp)


def test_split_strict_rejects_odd_beta():
    fl = FactorList()
    fl.add((1,), 1, 1)
    with pytest.raises(ValueError):
        split_flat_natural_sharp(fl)
    flat, natural, sharp = split_flat_natural_sharp(fl, strict=False)
    assert not len(flat) and not len(natural) and not len(sharp)


def test_merge_and_cancel():
    fl = FactorList()
    fl.add((1, 0), 0, 1)
    fl.add((1, 0), 0, -1)
    assert len(fl) == 0
    with pytest.raises(ValueError):
        fl.add((0, 0), 0, 1)


def test_beta_reflection_involution():
    fl = FactorList()
    fl.add((1, 2), 0, 3)
    fl.add((2, 2), 4, 1)
    assert fl.beta_reflected().beta_reflected() == fl


def test_delta_smallest_factors():
    # the first shell: windows of length 1..n around the cycle at m = 0
    fl = build_delta(2, 2)
    assert fl.factors == {
        ((2, 0, 0), 8): -1,
        ((0, 2, 0), 8): -1,
        ((0, 0, 2), 8): -1,
    }
    # the next shell brings in the length-two windows with a higher q-power
    fl4 = build_delta(2, 4)
    assert fl4.factors[((2, 2, 0), 12)] == -1
    assert ((2, 2, 2), 16) not in fl4.factors  # full cycle excluded
