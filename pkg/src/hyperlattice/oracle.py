"""Brute-force construction of ``L(n, d)`` for small ``n`` and ``d``.

This is the independent ground truth for the symbolic modules: it builds every
element straight from the membership conditions, computes the Möbius function
by the defining recursion over lower intervals and reads off counts by type
and the characteristic polynomials numerically.
"""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .lattice import LatticeElement, Partition

log = logging.getLogger(__name__)

__all__ = [
    "InfeasibleError",
    "ExplicitLattice",
    "ChiNumeric",
    "DEFAULT_BUDGET",
    "estimate_cost",
    "enumerate_lattice",
    "mobius_table",
    "count_by_type",
    "chi_numeric",
]

# covers n <= 8 for d <= 3 and n <= 7 for d = 4
DEFAULT_BUDGET = 5_000_000


class InfeasibleError(RuntimeError):
    """The requested lattice is too large to enumerate within the budget."""

    def __init__(self, n: int, d: int, estimate: int, budget: int):
        super().__init__(
            f"L({n},{d}) needs about {estimate:,} candidate collections "
            f"(budget {budget:,})"
        )
        self.estimate = estimate
        self.budget = budget


def estimate_cost(n: int, d: int) -> int:
    """Upper bound on the candidate collections the search may visit.

    Multi-block elements have rank at most ``d`` so hold at most ``d`` blocks
    of size at most ``d``.
    """
    nblocks = sum(comb(n, k) for k in range(1, d + 1))
    return 2 + sum(comb(nblocks, j) for j in range(1, d + 1))


def _mask(block) -> int:
    m = 0
    for x in block:
        m |= 1 << (x - 1)
    return m


def _unmask(m: int) -> tuple[int, ...]:
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


@dataclass
class ExplicitLattice:
    """All elements of ``L(n, d)``, sorted by rank then canonical block order."""

    n: int
    d: int
    elements: list[LatticeElement]
    ranks: list[int]
    index: dict[LatticeElement, int] = field(repr=False)
    _masks: list[tuple[int, ...]] = field(repr=False)
    _mobius: list[int] | None = field(default=None, repr=False)
    _up: list[int] | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.elements) - 1

    def leq(self, i: int, j: int) -> bool:
        """``elements[i] <= elements[j]``."""
        if i == j:
            return True
        if self.ranks[i] >= self.ranks[j]:
            return False
        tj = self._masks[j]
        return all(any(s & t == t for t in tj) for s in self._masks[i])

    def below(self, j: int) -> list[int]:
        """Indices strictly below ``j``."""
        return [i for i in range(len(self.elements)) if self.ranks[i] < self.ranks[j] and self.leq(i, j)]

    def ideal(self, j: int) -> list[int]:
        return self.below(j) + [j]

    def up_set(self, i: int) -> int:
        """Bitset of indices ``j`` with ``elements[i] <= elements[j]``."""
        if self._up is None:
            self._up = [0] * len(self.elements)
            for a in range(len(self.elements)):
                bits = 0
                for b in range(len(self.elements)):
                    if self.leq(a, b):
                        bits |= 1 << b
                self._up[a] = bits
        return self._up[i]

    def hyperplanes(self) -> list[int]:
        """Indices of the rank-one elements."""
        return [i for i, r in enumerate(self.ranks) if r == 1]

    def join(self, indices) -> int:
        """Least upper bound of the given elements.

        Indices are sorted by rank and the least upper bound lies strictly
        below every other upper bound, so it is the lowest set bit.
        """
        bits = -1
        for i in indices:
            bits &= self.up_set(i)
        if bits <= 0:
            raise ValueError("no common upper bound")
        return (bits & -bits).bit_length() - 1

    def mobius(self) -> list[int]:
        return mobius_table(self)


def _extend(d, blocks, start, chosen, subsets, rank, out):
    """Depth-first search over collections with positive sub-collection defects.

    ``subsets`` holds ``(count, size_sum, intersection)`` for every nonempty
    sub-collection of ``chosen``; only those joined with the new block need
    checking.
    """
    for bi in range(start, len(blocks)):
        m, size = blocks[bi]
        c = d + 1 - size
        if rank + c > d:
            continue
        ok = True
        new_subsets = []
        for cnt, ssum, inter in subsets:
            cnt2 = cnt + 1
            ssum2 = ssum + size
            inter2 = inter & m
            if -(cnt2 - 1) * (d + 1) + ssum2 - inter2.bit_count() <= 0:
                ok = False
                break
            new_subsets.append((cnt2, ssum2, inter2))
        if not ok:
            continue
        chosen.append(m)
        out.append(tuple(chosen))
        _extend(d, blocks, bi + 1, chosen, subsets + new_subsets + [(1, size, m)], rank + c, out)
        chosen.pop()


def _extend_from(args):
    d, blocks, first = args
    m, size = blocks[first]
    out = [(m,)]
    _extend(d, blocks, first + 1, [m], [(1, size, m)], d + 1 - size, out)
    return out


def enumerate_lattice(n: int, d: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> ExplicitLattice:
    """Build every element of ``L(n, d)``.

    Multi-block collections are grown in canonical block order and pruned as
    soon as a sub-collection containing the newest block has nonpositive
    defect or the rank exceeds ``d``.  With ``workers > 1`` the search is
    split by first block and merged in order, so the output does not depend
    on the worker count.
    """
    if not 0 <= d < n:
        raise ValueError(f"need n > d >= 0, got n={n}, d={d}")
    est = estimate_cost(n, d)
    if est > budget:
        raise InfeasibleError(n, d, est, budget)
    blocks = []
    for k in range(1, d + 1):
        for b in combinations(range(1, n + 1), k):
            blocks.append((_mask(b), k))
    collected: list[tuple[int, ...]] = []
    if workers > 1 and blocks:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for part in ex.map(_extend_from, [(d, blocks, i) for i in range(len(blocks))]):
                collected.extend(part)
    else:
        for i in range(len(blocks)):
            collected.extend(_extend_from((d, blocks, i)))

    items = [((), 0)]
    for col in collected:
        r = sum(d + 1 - m.bit_count() for m in col)
        items.append((col, r))
    items.append(((0,), d + 1))

    elements = []
    ranks = []
    masks = []
    for col, r in items:
        el = LatticeElement(tuple(_unmask(m) for m in col))
        elements.append(el)
        ranks.append(r)
    order = sorted(range(len(elements)), key=lambda i: (ranks[i], [(len(b), b) for b in elements[i].blocks]))
    elements = [elements[i] for i in order]
    ranks = [ranks[i] for i in order]
    masks = [tuple(_mask(b) for b in el.blocks) for el in elements]
    index = {el: i for i, el in enumerate(elements)}
    log.debug("L(%d,%d): %d elements", n, d, len(elements))
    return ExplicitLattice(n, d, elements, ranks, index, masks)


def mobius_table(lat: ExplicitLattice) -> list[int]:
    """``mu(bottom, T)`` for every element, by recursion over lower intervals."""
    if lat._mobius is not None:
        return lat._mobius
    mu = [0] * len(lat)
    mu[0] = 1
    for j in range(1, len(lat)):
        mu[j] = -sum(mu[i] for i in lat.below(j))
    lat._mobius = mu
    return mu


def count_by_type(lat: ExplicitLattice) -> Counter:
    """Number of elements of each type (partition of block codimensions)."""
    d = lat.d
    return Counter(Partition(d + 1 - len(b) for b in el.blocks) for el in lat.elements)


@dataclass(frozen=True)
class ChiNumeric:
    """Characteristic polynomials at fixed ``n``, coefficient lists indexed by power of ``t``."""

    lattice: tuple[int, ...]
    arrangement: tuple[int, ...]

    def at(self, t: int) -> int:
        return sum(c * t**k for k, c in enumerate(self.lattice))


def chi_numeric(lat: ExplicitLattice) -> ChiNumeric:
    d = lat.d
    mu = mobius_table(lat)
    coeffs = [0] * (d + 2)
    for m, r in zip(mu, lat.ranks):
        coeffs[d + 1 - r] += m
    return ChiNumeric(tuple(coeffs), tuple(coeffs[1:]))
