import pytest

from hyperlattice import golden
from hyperlattice.binomial_poly import BinomialPolynomial as B
from hyperlattice.cache import CachedProvider
from hyperlattice.mobius_chi import default_provider
from hyperlattice.reproduce import diff_polynomials, reproduce


def test_reference_data_parses():
    for (d, gamma) in golden.LAMBDA:
        assert golden.golden_lambda(d, gamma) is not None
    for d in golden.TOP_MOBIUS:
        assert golden.golden_top_mobius(d)(d + 1) is not None
    for d in golden.CHI_ARRANGEMENT:
        chi = golden.golden_chi_arrangement(d)
        assert chi[d] == B.constant(1) and chi[d - 1] == B.basis(d, -1)
    assert golden.golden_lambda(3, (9,)) is None


def test_reference_chi_vanishes_at_one():
    # chi of the lattice is t * chi(A) + mu(top); at t = 1 the sum is zero
    for d in golden.CHI_ARRANGEMENT:
        chi = golden.golden_chi_arrangement(d)
        total = sum(chi.values(), B()) + golden.golden_top_mobius(d)
        assert total.is_zero(), d


def test_diff_names_the_coefficient():
    assert diff_polynomials(B({3: 1}), B({3: 1})) == ""
    assert diff_polynomials(B({3: 1, 5: 2}), B({3: 1, 5: 3})) == "coefficient of n_5: got 2, expected 3"


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_reproduce_matches(d):
    rep = reproduce(d, default_provider())
    assert rep.ok
    assert all(c.status == "match" for c in rep.checks)


def test_mismatch_is_reported():
    base = default_provider()

    def tampered(d, gamma):
        lam = base(d, gamma)
        return lam + B({9: 1}) if tuple(gamma) == (1, 1, 1) else lam

    rep = reproduce(3, tampered)
    assert not rep.ok
    bad = [c for c in rep.checks if c.status == "mismatch"]
    assert bad[0].label == "lambda (1,1,1)" and "n_9" in bad[0].detail
    assert rep.summary().startswith("5 of 6 type counts match")


@pytest.mark.slow
def test_skip_heaviest_states_the_dependency():
    p = CachedProvider(None)
    rep = reproduce(6, p, skip_heaviest=True, point_counts=p.point_counts)
    text = rep.text()
    assert rep.ok
    assert "lambda (1,1,1,1,1,1): skipped" in text
    assert "top mobius: not checked (depends on lambda (1,1,1,1,1,1))" in text
    assert "chi arrangement: not checked (depends on lambda (1,1,1,1,1,1))" in text
    assert "depend on lambda (1,1,1,1,1,1)" in text
    assert text.rstrip().endswith("13 of 14 type counts match the reference table, 0 mismatched, 1 skipped")
