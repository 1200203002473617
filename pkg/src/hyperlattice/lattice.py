"""Set-theoretic model of the intersection lattice ``L(n, d)``.

An element is a collection ``T = {T_1, ..., T_l}`` of distinct subsets
("blocks") of ``{1, ..., n}``.  ``T`` belongs to ``L(n, d)`` when every block
has at most ``d`` members and every sub-collection of two or more blocks has
positive defect.  The empty collection is the minimum; the collection holding
only the empty block is the maximum.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Partition",
    "LatticeElement",
    "codim",
    "rho",
    "defect",
    "is_member",
    "leq",
    "lt",
    "type_of",
    "partitions",
    "partitions_up_to",
]


class Partition(tuple):
    """Weakly-decreasing tuple of positive parts.

    Zeros are discarded, so the partition of zero is the empty tuple; it
    prints as ``(0)``.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        return super().__new__(cls, sorted((p for p in parts if p), reverse=True))

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Read ``"2,1,1"``, ``"(2,1,1)"`` or ``"0"``."""
        body = text.strip().strip("()[]").strip()
        if not body:
            return cls()
        try:
            return cls(int(x) for x in re.split(r"[,\s]+", body) if x)
        except ValueError:
            raise ValueError(f"not a partition: {text!r}") from None

    @property
    def size(self) -> int:
        return sum(self)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def __repr__(self) -> str:
        if not self:
            return "(0)"
        return "(" + ",".join(map(str, self)) + ")"

    __str__ = __repr__

    def __add__(self, other):  # tuple concatenation would skip sorting
        return Partition(tuple(self) + tuple(other))


Block = tuple  # sorted tuple of distinct positive ints


def _block_key(b: Sequence[int]):
    return (len(b), tuple(b))


@dataclass(frozen=True, order=False)
class LatticeElement:
    """Canonical collection of blocks, sorted by size then lexicographically."""

    blocks: tuple[Block, ...] = ()

    def __post_init__(self):
        canon = []
        for b in self.blocks:
            sb = tuple(sorted(set(int(x) for x in b)))
            if len(sb) != len(tuple(b)):
                raise ValueError(f"block {b!r} has repeated members")
            canon.append(sb)
        canon.sort(key=_block_key)
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise ValueError(f"repeated block {a!r}")
        object.__setattr__(self, "blocks", tuple(canon))

    @classmethod
    def of(cls, *blocks: Iterable[int]) -> LatticeElement:
        return cls(tuple(tuple(b) for b in blocks))

    @classmethod
    def bottom(cls) -> LatticeElement:
        """The minimum element (no blocks)."""
        return cls(())

    @classmethod
    def top(cls) -> LatticeElement:
        """The maximum element (a single empty block)."""
        return cls(((),))

    @classmethod
    def parse(cls, text: str) -> LatticeElement:
        """Read the text form ``{{1,2},{3,4,5}}``; ``{}`` and ``{{}}`` are bottom and top."""
        s = re.sub(r"\s+", "", text)
        if not (s.startswith("{") and s.endswith("}")):
            raise ValueError(f"element must be wrapped in braces: {text!r}")
        inner = s[1:-1]
        if not inner:
            return cls.bottom()
        found = re.findall(r"\{([0-9,]*)\}", inner)
        if ",".join("{" + f + "}" for f in found) != inner:
            raise ValueError(f"malformed element: {text!r}")
        return cls(tuple(tuple(int(x) for x in f.split(",") if x) for f in found))

    def __str__(self) -> str:
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[Block]:
        return iter(self.blocks)

    def remove_common(self, common: Iterable[int]) -> LatticeElement:
        """Drop ``common`` (a subset of every block) from each block."""
        u = set(common)
        if not all(u <= set(b) for b in self.blocks):
            raise ValueError("set is not contained in every block")
        return LatticeElement(tuple(tuple(x for x in b if x not in u) for b in self.blocks))


def codim(block_size: int, d: int) -> int:
    """``d + 1 - |X|`` for a block of the given size."""
    if not 0 <= block_size <= d + 1:
        raise ValueError(f"block size {block_size} outside 0..{d + 1}")
    return d + 1 - block_size


def rho(T: LatticeElement | Iterable[Sequence[int]], d: int) -> int:
    """Rank: sum of block codimensions (0 for the bottom element)."""
    return sum(codim(len(b), d) for b in T)


def defect(blocks: Iterable[Sequence[int]], d: int) -> int:
    """``codim(T_1 ∩ ... ∩ T_l) - rho`` for one or more distinct blocks."""
    blocks = [frozenset(b) for b in blocks]
    if not blocks:
        raise ValueError("defect needs at least one block")
    l = len(blocks)
    common = frozenset.intersection(*blocks)
    return -(l - 1) * (d + 1) + sum(len(b) for b in blocks) - len(common)


def is_member(T: LatticeElement, n: int, d: int) -> bool:
    blocks = [frozenset(b) for b in T]
    if any(len(b) > d for b in blocks):
        return False
    if any(x < 1 or x > n for b in blocks for x in b):
        return False
    if len(set(blocks)) != len(blocks):
        return False
    for r in range(2, len(blocks) + 1):
        for sub in combinations(blocks, r):
            if defect(sub, d) <= 0:
                return False
    return True


def _refines(T: LatticeElement, T2: LatticeElement) -> bool:
    # every block of T contains some block of T2
    others = [set(b) for b in T2]
    return all(any(o <= set(b) for o in others) for b in T)


def lt(T: LatticeElement, T2: LatticeElement, d: int) -> bool:
    """Strict order: smaller rank and every block of ``T`` contains a block of ``T2``."""
    return rho(T, d) < rho(T2, d) and _refines(T, T2)


def leq(T: LatticeElement, T2: LatticeElement, d: int) -> bool:
    return T == T2 or lt(T, T2, d)


def type_of(T: LatticeElement, d: int) -> Partition:
    """Multiset of block codimensions as a partition of ``rho(T)``."""
    return Partition(codim(len(b), d) for b in T)


def partitions(i: int, max_part: int | None = None) -> list[Partition]:
    """Partitions of ``i`` in reverse-lexicographic order: ``(3), (2,1), (1,1,1)``."""
    if i < 0:
        raise ValueError("cannot partition a negative integer")
    if max_part is None:
        max_part = i
    if i == 0:
        return [Partition()]
    out = []
    for first in range(min(i, max_part), 0, -1):
        for rest in partitions(i - first, first):
            out.append(Partition((first,) + tuple(rest)))
    return out


def partitions_up_to(d: int) -> list[Partition]:
    """All partitions of ``0, 1, ..., d``, grouped by size then reverse-lex."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    return [p for i in range(d + 1) for p in partitions(i)]
