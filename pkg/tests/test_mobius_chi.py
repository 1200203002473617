from math import comb

import pytest
from hypothesis import given, strategies as st

from hyperlattice.binomial_poly import BinomialPolynomial as B, parse
from hyperlattice.lattice import Partition, partitions_up_to, type_of
from hyperlattice.mobius_chi import (
    ChiPolynomial,
    HeavyTypeError,
    TopMobiusTable,
    chi_arrangement,
    chi_lattice,
    default_provider,
    mobius_of_type,
    normalized_mobius,
    top_mobius,
)
from hyperlattice.oracle import chi_numeric, enumerate_lattice, mobius_table


@pytest.fixture(scope="module")
def table4():
    return top_mobius(4)


def test_low_dimensional_top_values(table4):
    assert table4[0] == B.constant(-1)
    assert table4[1] == parse("n - 1")
    assert table4[2] == parse("-3 n_4 - n_2 + n - 1")
    assert table4[3] == parse("-1 + n - n_2 + n_3 + 20 n_5 + 170 n_6 + 630 n_7 + 840 n_8 + 280 n_9")
    assert len(table4[4]) == 16
    with pytest.raises(KeyError):
        table4[5]


def test_mobius_of_type_examples(table4):
    for d in range(1, 5):
        assert mobius_of_type(d, (1,), table4) == B.constant(-1)
        assert mobius_of_type(d, (), table4) == B.constant(1)
    assert mobius_of_type(3, (2,), table4) == parse("n - 3")
    assert mobius_of_type(3, (2, 1), table4) == parse("3 - n")
    mu3 = mobius_of_type(3, (3,), table4)
    assert all(mu3(n) == -3 * comb(n - 1, 4) - comb(n - 1, 2) + n - 2 for n in range(1, 30))
    with pytest.raises(ValueError):
        mobius_of_type(3, (4,), table4)
    with pytest.raises(KeyError):
        mobius_of_type(3, (2,), TopMobiusTable([B.constant(-1)]))


def test_chi_examples():
    assert chi_arrangement(1).render() == "t - n_1"
    assert chi_arrangement(2).render() == "t^2 - n_2 t + 3 n_4 + 2 n_2 - n_1"
    assert chi_arrangement(3)[1] == parse("-n_2 + 3 n_3 + 15 n_5 + 10 n_6")


def test_chi_render_brackets_multi_term_coefficients():
    chi = ChiPolynomial((parse("n_1"), parse("n_2 - 2"), parse("-n_3"), B.constant(1)))
    assert chi.render() == "t^3 - n_3 t^2 + [n_2 - 2] t + n_1"
    assert ChiPolynomial((B(),)).render() == "0"
    assert ChiPolynomial.from_dict(chi.to_dict()) == chi


@pytest.mark.parametrize("d", range(1, 5))
def test_structural_identities(d):
    chi = chi_lattice(d)
    assert chi.at_t(1).is_zero()
    arr = chi_arrangement(d)
    assert arr.degree == d
    assert arr[d] == B.constant(1)
    assert arr[d - 1] == B.basis(d, -1)


@pytest.mark.parametrize("n,d", [(n, d) for d in range(1, 4) for n in range(d + 1, 8)] + [(5, 4), (6, 4)])
def test_oracle_mobius_and_chi(n, d, table4):
    lat = enumerate_lattice(n, d)
    mu = mobius_table(lat)
    for t, m in zip(lat.elements, mu):
        g = type_of(t, d)
        want = table4[d] if d + 1 in g else mobius_of_type(d, g, table4)
        assert want(n) == m, t
    assert chi_lattice(d).evaluate(n) == chi_numeric(lat).lattice


@given(st.integers(1, 8), st.integers(1, 4), st.integers(0, 3))
def test_normalized_values_do_not_depend_on_dimension(table4, u, d, extra):
    if d + extra > 5:
        return
    table = table4
    for gamma in partitions_up_to(d)[1:]:
        assert normalized_mobius(u, d, gamma, table) == normalized_mobius(u, d + extra, gamma, table)


def test_heavy_type_is_refused_by_default():
    with pytest.raises(HeavyTypeError):
        default_provider()(6, Partition((1,) * 6))
