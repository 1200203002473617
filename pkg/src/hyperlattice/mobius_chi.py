"""Möbius values and characteristic polynomials of ``L(n, d)`` by induction on ``d``.

For ``T != {∅}`` the Möbius value is a product over blocks of top values in
lower dimensions, ``mu_{n,d}(T) = prod mu_{n-|T_i|, d-|T_i|}({∅})``, so it
depends only on the type.  The top value itself follows from the fact that
the Möbius function sums to zero over the whole lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .binomial_poly import BinomialPolynomial, ONE, ZERO, render
from .lattice import Partition, partitions
from .type_counts import lambda_poly, validate_type

__all__ = [
    "HEAVY_TYPES",
    "HeavyTypeError",
    "LambdaProvider",
    "TopMobiusTable",
    "ChiPolynomial",
    "default_provider",
    "mobius_of_type",
    "top_mobius",
    "chi_lattice",
    "chi_arrangement",
    "chi_from_table",
    "normalized_mobius",
]

LambdaProvider = Callable[[int, Partition], BinomialPolynomial]

# types whose count runs for days; computed only on explicit request
HEAVY_TYPES = frozenset({(6, Partition((1,) * 6))})


class HeavyTypeError(RuntimeError):
    def __init__(self, d: int, gamma: Partition):
        super().__init__(f"lambda for d={d}, type {gamma} is a long-running job and was not requested")
        self.d = d
        self.gamma = gamma


@lru_cache(maxsize=None)
def _computed(d: int, gamma: Partition) -> BinomialPolynomial:
    return lambda_poly(d, gamma).lam


def default_provider(allow_heavy: bool = False, threads: int = 1) -> LambdaProvider:
    """Compute each ``lambda`` in process, refusing the heavy types unless allowed."""

    def provide(d: int, gamma: Partition) -> BinomialPolynomial:
        gamma = Partition(gamma)
        if (d, gamma) in HEAVY_TYPES and not allow_heavy:
            raise HeavyTypeError(d, gamma)
        if threads > 1:
            return lambda_poly(d, gamma, threads=threads).lam
        return _computed(d, gamma)

    return provide


@dataclass
class TopMobiusTable:
    """``entries[k]`` is ``mu_{n,k}({∅})`` as a polynomial in its own ``n``."""

    entries: list[BinomialPolynomial]

    @property
    def d(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, k: int) -> BinomialPolynomial:
        if not 0 <= k < len(self.entries):
            raise KeyError(f"top Möbius value for dimension {k} is not in the table (have 0..{self.d})")
        return self.entries[k]


def mobius_of_type(d: int, gamma, table: TopMobiusTable) -> BinomialPolynomial:
    """``mu_{n,d}(gamma)`` for a type other than the top one."""
    gamma = validate_type(d, gamma)
    if any(g > d for g in gamma):
        raise ValueError(f"type {gamma} is the top element; use the table entry for d={d}")
    out = ONE
    for g in gamma:
        out = out * table[g - 1].shift(d + 1 - g)
    return out


def _types_below_top(d: int):
    for i in range(d + 1):
        yield from partitions(i)


def top_mobius(d: int, provider: LambdaProvider | None = None) -> TopMobiusTable:
    """Top Möbius values for dimensions ``0..d``."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    provider = provider or default_provider()
    entries: list[BinomialPolynomial] = []
    for k in range(d + 1):
        table = TopMobiusTable(entries)
        total = ZERO
        for gamma in _types_below_top(k):
            lam = ONE if not gamma else provider(k, gamma)
            total = total + lam * mobius_of_type(k, gamma, table)
        entries.append(-total)
    return TopMobiusTable(entries)


@dataclass(frozen=True)
class ChiPolynomial:
    """Coefficient polynomials of a characteristic polynomial, indexed by power of ``t``."""

    coeffs: tuple[BinomialPolynomial, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, power: int) -> BinomialPolynomial:
        return self.coeffs[power] if 0 <= power < len(self.coeffs) else ZERO

    def at_t(self, t: int) -> BinomialPolynomial:
        """Substitute an integer ``t``, leaving a polynomial in ``n``."""
        out = ZERO
        for k, c in enumerate(self.coeffs):
            out = out + c * t**k
        return out

    def evaluate(self, n: int) -> tuple[int, ...]:
        return tuple(c(n) for c in self.coeffs)

    def to_dict(self) -> dict:
        return {"basis": "binomial", "powers": {str(k): c.to_dict() for k, c in enumerate(self.coeffs)}}

    @classmethod
    def from_dict(cls, data: dict) -> ChiPolynomial:
        powers = data["powers"]
        top = max(int(k) for k in powers)
        return cls(tuple(BinomialPolynomial.from_dict(powers[str(k)]) if str(k) in powers else ZERO
                         for k in range(top + 1)))

    def render(self) -> str:
        """``t^2 - n_2 t + 3 n_4 + 2 n_2 - n_1``: powers descending, multi-term
        coefficients of positive powers in brackets."""
        parts: list[str] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            tpow = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            body = render(c, descending=True)
            if k == 0:
                term = body
            elif len(c.items()) == 1:
                (j, a), = c.items()
                if j == 0 and abs(a) == 1:
                    term = tpow if a == 1 else "-" + tpow
                else:
                    term = f"{body} {tpow}"
            else:
                term = f"[{body}] {tpow}"
            if parts:
                parts.append("- " + term[1:].lstrip() if term.startswith("-") else "+ " + term)
            else:
                parts.append(term)
        return " ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.render()


def chi_from_table(d: int, table: TopMobiusTable, provider: LambdaProvider) -> ChiPolynomial:
    """``chi_{n,d}(t)`` assembled from type counts and Möbius values."""
    coeffs: list[BinomialPolynomial] = [ZERO] * (d + 2)
    coeffs[0] = table[d]
    for i in range(d + 1):
        total = ZERO
        for gamma in partitions(i):
            lam = ONE if not gamma else provider(d, gamma)
            total = total + lam * mobius_of_type(d, gamma, table)
        coeffs[d + 1 - i] = total
    return ChiPolynomial(tuple(coeffs))


def chi_lattice(d: int, provider: LambdaProvider | None = None) -> ChiPolynomial:
    if d < 0:
        raise ValueError("d must be nonnegative")
    provider = provider or default_provider()
    return chi_from_table(d, top_mobius(d, provider), provider)


def _arrangement(chi: ChiPolynomial) -> ChiPolynomial:
    return ChiPolynomial(chi.coeffs[1:])


def chi_arrangement(d: int, provider: LambdaProvider | None = None) -> ChiPolynomial:
    """``(chi_{n,d}(t) - mu_{n,d}({∅})) / t``."""
    return _arrangement(chi_lattice(d, provider))


def normalized_mobius(u: int, d: int, gamma, table: TopMobiusTable) -> int:
    """``mu_{d+u,d}(gamma)``, which is the same for every ``d`` the type fits in."""
    return mobius_of_type(d, gamma, table)(d + u)
