import random

import pytest

from hyperlattice.lattice import LatticeElement as E, Partition, is_member, rho, type_of
from hyperlattice.oracle import (
    InfeasibleError,
    chi_numeric,
    count_by_type,
    enumerate_lattice,
    estimate_cost,
    mobius_table,
)


@pytest.fixture(scope="module")
def l63():
    return enumerate_lattice(6, 3)


def test_small_sizes():
    lat = enumerate_lattice(4, 2)
    assert len(lat) == 15
    c = count_by_type(lat)
    assert c == {Partition(): 1, Partition((1,)): 6, Partition((2,)): 4, Partition((1, 1)): 3, Partition((3,)): 1}
    for n in (1, 3, 6):
        assert len(enumerate_lattice(n, 0)) == 2


def test_counts_against_known_values():
    assert count_by_type(enumerate_lattice(5, 3))[Partition((1, 1))] == 15
    assert count_by_type(enumerate_lattice(5, 3))[Partition((2, 1))] == 10
    assert count_by_type(enumerate_lattice(6, 3))[Partition((1, 1, 1))] == 120
    assert count_by_type(enumerate_lattice(6, 4))[Partition((5,))] == 1


def test_extremes_and_membership(l63):
    assert l63.elements[0] == E.bottom() and l63.elements[-1] == E.top()
    assert [r for r in l63.ranks if r in (0, 4)] == [0, 4]
    assert all(is_member(t, 6, 3) for t in l63.elements)
    assert sum(count_by_type(l63).values()) == len(l63)


def test_mobius_values(l63):
    mu = mobius_table(l63)
    assert mu[0] == 1
    assert all(m == -1 for m, r in zip(mu, l63.ranks) if r == 1)
    assert sum(mu) == 0
    l52 = enumerate_lattice(5, 2)
    assert {m for m, t in zip(mobius_table(l52), l52.elements) if type_of(t, 2) == (1, 1)} == {1}
    l53 = enumerate_lattice(5, 3)
    assert {m for m, t in zip(mobius_table(l53), l53.elements) if type_of(t, 3) == (2, 1)} == {-2}


def test_mobius_sums_vanish_on_intervals(l63):
    mu = mobius_table(l63)
    for j in range(1, len(l63)):
        assert sum(mu[i] for i in l63.ideal(j)) == 0


def test_chi_numeric():
    c = chi_numeric(enumerate_lattice(4, 2))
    assert c.arrangement == (11, -6, 1)
    assert chi_numeric(enumerate_lattice(4, 1)).arrangement == (-4, 1)
    for n, d in [(4, 2), (5, 3), (6, 3), (5, 4)]:
        assert chi_numeric(enumerate_lattice(n, d)).at(1) == 0


def test_order_is_a_ranked_partial_order():
    lat = enumerate_lattice(5, 2)
    N = len(lat)
    for a in range(N):
        assert lat.leq(a, a)
        for b in range(N):
            if a != b and lat.leq(a, b):
                assert not lat.leq(b, a)
                assert lat.ranks[a] < lat.ranks[b]
                for c in range(N):
                    if lat.leq(b, c):
                        assert lat.leq(a, c)


def _chain_lengths(lat):
    # longest and shortest maximal chains from bottom to top
    N = len(lat)
    covers = {}
    for j in range(1, N):
        below = lat.below(j)
        covers[j] = [i for i in below if not any(k != i and lat.leq(i, k) for k in below)]
    lo, hi = {0: 0}, {0: 0}
    for j in range(1, N):
        lo[j] = 1 + min(lo[i] for i in covers[j])
        hi[j] = 1 + max(hi[i] for i in covers[j])
    return lo[N - 1], hi[N - 1]


def test_maximal_chains_have_length_d_plus_one():
    assert _chain_lengths(enumerate_lattice(5, 2)) == (3, 3)
    assert _chain_lengths(enumerate_lattice(5, 3)) == (4, 4)


def test_direct_product_structure(l63):
    """The ideal below a multi-block element is the product of the ideals
    below its blocks, each a copy of a smaller lattice."""
    n, d = 6, 3
    mu = mobius_table(l63)
    small = {}

    def top_mu_and_size(k):
        if k not in small:
            sub = enumerate_lattice(n - k, d - k)
            small[k] = (mobius_table(sub)[-1], len(sub))
        return small[k]

    rng = random.Random(7)
    multi = [j for j, t in enumerate(l63.elements) if len(t) >= 2]
    for j in rng.sample(multi, 40):
        t = l63.elements[j]
        prod_mu, prod_size = 1, 1
        for b in t:
            m, s = top_mu_and_size(len(b))
            prod_mu *= m
            prod_size *= s
        assert mu[j] == prod_mu, t
        assert len(l63.ideal(j)) == prod_size, t


def test_join_is_least_upper_bound():
    lat = enumerate_lattice(5, 2)
    h = lat.hyperplanes()
    for a in h[:6]:
        for b in h:
            j = lat.join([a, b])
            assert lat.leq(a, j) and lat.leq(b, j)
            for c in range(len(lat)):
                if lat.leq(a, c) and lat.leq(b, c):
                    assert lat.leq(j, c)


def test_workers_do_not_change_the_result():
    a = enumerate_lattice(6, 3)
    b = enumerate_lattice(6, 3, workers=2)
    assert a.elements == b.elements and a.ranks == b.ranks


def test_feasibility_guard():
    assert estimate_cost(8, 3) <= 5_000_000 and estimate_cost(7, 4) <= 5_000_000
    with pytest.raises(InfeasibleError) as err:
        enumerate_lattice(12, 5)
    assert err.value.estimate > err.value.budget
    with pytest.raises(ValueError):
        enumerate_lattice(3, 3)


def test_ranks_match_model(l63):
    assert all(r == rho(t, 3) for t, r in zip(l63.elements, l63.ranks))
