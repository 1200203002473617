"""Recompute the published tables for one dimension and diff them against the reference data."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import golden
from .binomial_poly import BinomialPolynomial
from .lattice import Partition, partitions_up_to
from .mobius_chi import (
    ChiPolynomial,
    HeavyTypeError,
    LambdaProvider,
    TopMobiusTable,
    chi_from_table,
    mobius_of_type,
    top_mobius,
)
from .type_counts import lambda_closed_form

__all__ = ["Check", "ReproduceReport", "reproduce", "diff_polynomials"]

MATCH, MISMATCH, SKIPPED, UNCHECKED = "match", "mismatch", "skipped", "not checked"
CONSISTENT, INCONSISTENT = "consistent", "inconsistent"


@dataclass
class Check:
    label: str
    status: str
    detail: str = ""

    def line(self) -> str:
        return f"{self.label}: {self.status}" + (f" ({self.detail})" if self.detail else "")


@dataclass
class ReproduceReport:
    d: int
    checks: list[Check] = field(default_factory=list)
    values: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status not in (MISMATCH, INCONSISTENT) for c in self.checks)

    def summary(self) -> str:
        lam = [c for c in self.checks if c.label.startswith("lambda")]
        if not lam:
            return f"no reference type counts for d={self.d}"
        good = sum(c.status == MATCH for c in lam)
        if good == len(lam):
            return f"all {len(lam)} type counts match the reference table"
        bad = sum(c.status == MISMATCH for c in lam)
        skipped = sum(c.status == SKIPPED for c in lam)
        return f"{good} of {len(lam)} type counts match the reference table, {bad} mismatched, {skipped} skipped"

    def text(self) -> str:
        lines = [c.line() for c in self.checks]
        lines += self.notes
        lines.append(self.summary())
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        data = {
            "d": self.d,
            "ok": self.ok,
            "checks": [{"label": c.label, "status": c.status, "detail": c.detail} for c in self.checks],
            "notes": self.notes,
            "values": self.values,
        }
        return json.dumps(data, indent=1, sort_keys=True) + "\n"


def diff_polynomials(got: BinomialPolynomial, want: BinomialPolynomial) -> str:
    """Empty string when equal, else the first differing coefficient."""
    for k in sorted(set(got.coeffs) | set(want.coeffs)):
        if got.coeff(k) != want.coeff(k):
            return f"coefficient of n_{k}: got {got.coeff(k)}, expected {want.coeff(k)}"
    return ""


def _compare(label: str, got: BinomialPolynomial, want: BinomialPolynomial) -> Check:
    diff = diff_polynomials(got, want)
    return Check(label, MISMATCH if diff else MATCH, diff)


def _label(gamma) -> str:
    return "lambda " + str(Partition(gamma))


def _compare_chi(label: str, chi: ChiPolynomial, want: dict[int, BinomialPolynomial]) -> Check:
    for p in sorted(set(want) | set(range(len(chi.coeffs))), reverse=True):
        diff = diff_polynomials(chi[p], want.get(p, BinomialPolynomial()))
        if diff:
            return Check(label, MISMATCH, f"t^{p} {diff}")
    return Check(label, MATCH)


def reproduce(d: int, provider: LambdaProvider, skip_heaviest: bool = False,
              point_counts: dict | None = None) -> ReproduceReport:
    """Compare every reference type count, the top Möbius value and the
    arrangement characteristic polynomial for dimension ``d``.

    ``point_counts`` (filled by a caching provider) is consulted for types
    whose number of polytope points is on record.
    """
    if not 1 <= d <= 6:
        raise ValueError(f"reference data covers 1 <= d <= 6, got {d}")
    rep = ReproduceReport(d)
    missing: list[Partition] = []
    lam_values = {}
    for gamma in partitions_up_to(d)[1:]:
        want = golden.golden_lambda(d, gamma)
        if want is None:
            got = provider(d, gamma)
            lam_values[",".join(map(str, gamma))] = got.to_dict()
            if len(gamma) <= 2:
                rep.checks.append(_compare(f"closed form {gamma}", got, lambda_closed_form(d, gamma)))
            continue
        if skip_heaviest and (d, tuple(gamma)) in golden.POINT_COUNTS:
            rep.checks.append(Check(_label(gamma), SKIPPED, "long-running type, excluded on request"))
            missing.append(gamma)
            continue
        try:
            got = provider(d, gamma)
        except HeavyTypeError:
            rep.checks.append(Check(_label(gamma), SKIPPED, "long-running type not enabled"))
            missing.append(gamma)
            continue
        rep.checks.append(_compare(_label(gamma), got, want))
        lam_values[",".join(map(str, gamma))] = got.to_dict()
        expected_points = golden.POINT_COUNTS.get((d, tuple(gamma)))
        if expected_points is not None and point_counts is not None and (d, gamma) in point_counts:
            n_pts = point_counts[(d, gamma)]
            status = MATCH if n_pts == expected_points else MISMATCH
            rep.checks.append(Check(f"point count {gamma}", status, f"{n_pts} points"))
    rep.values["lambda"] = lam_values

    if d == 3:
        table = top_mobius(d, provider)
        for (dd, gamma), _ in sorted(golden.MOBIUS_TYPE.items()):
            if dd == d:
                rep.checks.append(_compare(f"mobius {Partition(gamma)}", mobius_of_type(d, gamma, table),
                                           golden.golden_mobius_type(d, gamma)))

    want_top = golden.golden_top_mobius(d)
    want_chi = golden.golden_chi_arrangement(d)
    if missing:
        deps = ", ".join(str(g) for g in missing)
        for label in ("top mobius", "chi arrangement"):
            rep.checks.append(Check(label, UNCHECKED, f"depends on lambda {deps}"))
        rep.notes.append(f"the top Möbius value and chi for d={d} depend on lambda {deps}, which was not computed")
        _conditional(rep, d, provider, missing, want_top, want_chi)
        return rep

    table = top_mobius(d, provider)
    chi = chi_from_table(d, table, provider)
    arr = ChiPolynomial(chi.coeffs[1:])
    if want_top is not None:
        rep.checks.append(_compare("top mobius", table[d], want_top))
    if want_chi is not None:
        rep.checks.append(_compare_chi("chi arrangement", arr, want_chi))
    rep.values["top_mobius"] = table[d].to_dict()
    rep.values["chi_arrangement"] = arr.to_dict()
    return rep


def _conditional(rep: ReproduceReport, d: int, provider: LambdaProvider, missing, want_top, want_chi) -> None:
    """Re-run the top-level checks with the reference count substituted for
    the missing types, reported separately from the real checks."""
    substitute = {g: golden.golden_lambda(d, g) for g in missing}

    def patched(dd: int, gamma) -> BinomialPolynomial:
        gamma = Partition(gamma)
        if dd == d and gamma in substitute:
            return substitute[gamma]
        return provider(dd, gamma)

    table: TopMobiusTable = top_mobius(d, patched)
    arr = ChiPolynomial(chi_from_table(d, table, patched).coeffs[1:])
    deps = ", ".join(str(g) for g in missing)
    for check in (_compare("top mobius", table[d], want_top), _compare_chi("chi arrangement", arr, want_chi)):
        check.label += f" with reference lambda {deps}"
        check.status = CONSISTENT if check.status == MATCH else INCONSISTENT
        rep.checks.append(check)

