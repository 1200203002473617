"""Acceptance gate: each test checks one criterion and records a PASS/FAIL line.

Set ``HYPERLATTICE_HEAVY=1`` to include the long-running d=6 type
(1,1,1,1,1,1) in criterion 4.
"""

import os
import subprocess
import sys
import time

from hyperlattice import golden
from hyperlattice.binomial_poly import BinomialPolynomial as B
from hyperlattice.cache import CachedProvider
from hyperlattice.kappa import brute_force_kappa, check_identity, kappa_top, kappa_type
from hyperlattice.lattice import Partition, partitions_up_to, type_of
from hyperlattice.mobius_chi import ChiPolynomial, chi_from_table, mobius_of_type, top_mobius
from hyperlattice.oracle import chi_numeric, count_by_type, enumerate_lattice, mobius_table
from hyperlattice.reproduce import diff_polynomials
from hyperlattice.type_counts import _aggregate, stabilizer_order

HEAVY = os.environ.get("HYPERLATTICE_HEAVY") == "1"
ONES6 = Partition((1,) * 6)


def _golden_failures(d, provider, types=None):
    """Compare reference type counts (and, unless ``types`` is given, the top
    Möbius value and chi) for dimension ``d``."""
    failures = []
    wanted = [Partition(g) for (dd, g) in golden.LAMBDA if dd == d]
    for gamma in wanted if types is None else types:
        diff = diff_polynomials(provider(d, gamma), golden.golden_lambda(d, gamma))
        if diff:
            failures.append(f"lambda {gamma}: {diff}")
    if types is None:
        table = top_mobius(d, provider)
        diff = diff_polynomials(table[d], golden.golden_top_mobius(d))
        if diff:
            failures.append(f"top mobius: {diff}")
        arr = ChiPolynomial(chi_from_table(d, table, provider).coeffs[1:])
        for p, want in golden.golden_chi_arrangement(d).items():
            diff = diff_polynomials(arr[p], want)
            if diff:
                failures.append(f"chi t^{p}: {diff}")
        if arr.degree != d:
            failures.append(f"chi degree {arr.degree}")
    return failures, len(wanted)


def test_criterion_1_golden_low_dimensions(criterion):
    t0 = time.perf_counter()
    provider = CachedProvider(None)
    failures, nlam = _golden_failures(3, provider)
    for d in (1, 2):
        failures += _golden_failures(d, provider)[0]
    table = top_mobius(3, provider)
    for gamma in partitions_up_to(3)[1:]:
        got = mobius_of_type(3, gamma, table)
        want = golden.golden_mobius_type(3, gamma)
        if gamma == (3,):
            want = table[2].shift(1)
        elif want is None:
            want = B.constant((-1) ** gamma.size)
        if got != want:
            failures.append(f"mobius {gamma}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        failures.append(f"took {elapsed:.2f}s")
    criterion.report(1, "reference values for d <= 3", not failures,
                     f"{nlam} type counts, chi and top mobius for d=1,2,3, mobius by type; {elapsed:.2f}s")
    assert not failures, failures


def test_criterion_2_golden_d4(criterion):
    t0 = time.perf_counter()
    failures, nlam = _golden_failures(4, CachedProvider(None, threads=1))
    elapsed = time.perf_counter() - t0
    if elapsed >= 60:
        failures.append(f"took {elapsed:.1f}s")
    criterion.report(2, "reference values for d = 4", not failures, f"{nlam} type counts, chi, top mobius; {elapsed:.2f}s")
    assert not failures, failures


def test_criterion_3_golden_d5(criterion):
    t0 = time.perf_counter()
    failures, nlam = _golden_failures(5, CachedProvider(None, threads=1))
    elapsed = time.perf_counter() - t0
    if elapsed >= 30 * 60:
        failures.append(f"took {elapsed:.0f}s")
    criterion.report(3, "reference values for d = 5", not failures, f"{nlam} type counts, chi, top mobius; {elapsed:.1f}s")
    assert not failures, failures


def test_criterion_4_golden_d6(criterion):
    t0 = time.perf_counter()
    provider = CachedProvider(None, allow_heavy=HEAVY)
    types = [Partition(g) for (dd, g) in golden.LAMBDA if dd == 6 and Partition(g) != ONES6]
    failures, _ = _golden_failures(6, provider, types)
    if HEAVY:
        more, _ = _golden_failures(6, provider)
        failures += more
        n_pts = provider.point_counts[(6, ONES6)]
        if n_pts != golden.POINT_COUNTS[(6, tuple(ONES6))]:
            failures.append(f"point count {n_pts}")
        detail = f"all {len(types) + 1} type counts, point count, chi, top mobius"
    else:
        detail = (f"{len(types)} type counts; (1,1,1,1,1,1) not run, and chi and the top mobius value "
                  f"for d=6 depend on it (set HYPERLATTICE_HEAVY=1)")
    elapsed = time.perf_counter() - t0
    criterion.report(4, "reference values for d = 6", not failures, f"{detail}; {elapsed:.1f}s")
    assert not failures, failures


ORACLE_CASES = [(n, d) for d in range(0, 4) for n in range(d + 1, 8)] + [(5, 4), (6, 4)]


def test_criterion_5_oracle_equivalence(criterion):
    t0 = time.perf_counter()
    provider = CachedProvider(None)
    table = top_mobius(4, provider)
    failures = []
    for n, d in ORACLE_CASES:
        lat = enumerate_lattice(n, d)
        counts = count_by_type(lat)
        for gamma in partitions_up_to(d)[1:]:
            if provider(d, gamma)(n) != counts.get(gamma, 0):
                failures.append(f"L({n},{d}) count {gamma}")
        for t, m in zip(lat.elements, mobius_table(lat)):
            g = type_of(t, d)
            sym = table[d] if d + 1 in g else mobius_of_type(d, g, table)
            if sym(n) != m:
                failures.append(f"L({n},{d}) mobius {t}")
                break
        if d >= 1 and chi_from_table(d, table, provider).evaluate(n) != chi_numeric(lat).lattice:
            failures.append(f"L({n},{d}) chi")
    elapsed = time.perf_counter() - t0
    if elapsed >= 300:
        failures.append(f"took {elapsed:.0f}s")
    criterion.report(5, "symbolic results equal the explicit lattice", not failures,
                     f"{len(ORACLE_CASES)} lattices; {elapsed:.1f}s")
    assert not failures, failures


def test_criterion_6_identity_suite(criterion):
    t0 = time.perf_counter()
    provider = CachedProvider(None)
    failures = []
    ncases = 0
    for d in (2, 3, 4):
        for m in range(1, d + 3):
            for n in range(d + 1, d + 6):
                ncases += 1
                if not check_identity(n, d, m, provider).passed:
                    failures.append(f"identity n={n} d={d} m={m}")
    nbf = 0
    for d in (1, 2, 3):
        for n in range(d + 1, 7):
            lat = enumerate_lattice(n, d)
            for m in range(1, 5):
                nbf += 1
                bf = brute_force_kappa(n, d, m, lat)
                if bf.top != kappa_top(n, d, m, provider):
                    failures.append(f"brute force top n={n} d={d} m={m}")
                for gamma, seen in bf.by_type().items():
                    if gamma and seen != {kappa_type(n, d, m, gamma, provider)}:
                        failures.append(f"brute force {gamma} n={n} d={d} m={m}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 600:
        failures.append(f"took {elapsed:.0f}s")
    criterion.report(6, "subset-counting identity and brute-force join counts", not failures,
                     f"{ncases} identities, {nbf} brute-force classifications; {elapsed:.1f}s")
    assert not failures, failures


def test_criterion_7_structural_identities(criterion):
    provider = CachedProvider(None)
    failures = []
    for d in range(1, 6):
        chi = chi_from_table(d, top_mobius(d, provider), provider)
        if not chi.at_t(1).is_zero():
            failures.append(f"chi(1) != 0 for d={d}")
        arr = ChiPolynomial(chi.coeffs[1:])
        if arr[d] != B.constant(1):
            failures.append(f"leading coefficient d={d}")
        if arr[d - 1] != B.basis(d, -1):
            failures.append(f"second coefficient d={d}")
    ntypes = 0
    for d in range(1, 7):
        for gamma in partitions_up_to(d)[1:]:
            if (d, gamma) == (6, ONES6) and not HEAVY:
                continue
            ntypes += 1
            weights, _ = _aggregate(d, gamma)
            stab = stabilizer_order(gamma)
            if any(w % stab for w in weights):
                failures.append(f"remainder for {gamma}, d={d}")
    criterion.report(7, "chi(1) = 0, leading coefficients, stabilizer divisibility", not failures,
                     f"d=1..5; divisibility over {ntypes} types")
    assert not failures, failures


def test_criterion_8_determinism(criterion, tmp_path):
    outs = []
    for threads in ("1", "2"):
        cmd = [sys.executable, "-m", "hyperlattice", "--no-cache", "reproduce", "--d", "5", "--json",
               "--threads", threads]
        res = subprocess.run(cmd, capture_output=True, check=False)
        outs.append(res.stdout)
        assert res.returncode == 0, res.stderr.decode()
    ok = outs[0] == outs[1] and len(outs[0]) > 0
    criterion.report(8, "reproduce --d 5 JSON identical for 1 and 2 threads", ok, f"{len(outs[0])} bytes")
    assert ok
