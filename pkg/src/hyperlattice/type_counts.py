"""Number of elements of ``L(n, d)`` of a given type, as a polynomial in ``n``.

An element of type ``gamma = (g_1, ..., g_l)`` is an ordered tuple of blocks
with sizes ``t_i = d + 1 - g_i``, counted up to permutations of equal parts.
Such a tuple is determined, up to relabelling of the ``n`` symbols, by its
incidence vector ``nu``: ``nu(I)`` is the number of symbols lying in exactly
the blocks indexed by ``I``.  The admissible vectors are the integer points of
a polytope that does not depend on ``n``::

    sum_{I containing i} nu(I) = t_i                        for every i
    sum_{I' containing I} nu(I') <= d - sum_{i in I} g_i     for |I| >= 2

and each point contributes ``s! / prod nu(I)!`` labelled configurations on
``s = sum nu(I)`` symbols, hence ``multinomial * C(n, s)`` elements.

Two engines are provided.  :func:`enumerate_points` walks every point
explicitly.  :func:`lambda_poly` aggregates the same sum with a memoized
search over residual capacities, so that points sharing a suffix problem are
counted once; its point count is exact and it agrees with the explicit walk.
"""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb, factorial
from typing import Callable, Iterator

from .binomial_poly import BinomialPolynomial, binom
from .lattice import Partition

log = logging.getLogger(__name__)

__all__ = [
    "InconsistencyError",
    "TypeCountResult",
    "stabilizer_order",
    "validate_type",
    "enumerate_points",
    "iter_points",
    "lambda_poly",
    "lambda_closed_form",
    "existence_threshold",
]


class InconsistencyError(ArithmeticError):
    """An aggregate that must be divisible by the stabilizer order was not."""


def stabilizer_order(gamma) -> int:
    """``prod_k m_k(gamma)!``, the number of permutations fixing ``gamma``."""
    gamma = Partition(gamma)
    if not gamma:
        raise ValueError("stabilizer of the zero partition is undefined here")
    out = 1
    for m in gamma.multiplicities().values():
        out *= factorial(m)
    return out


def validate_type(d: int, gamma) -> Partition:
    """Normalize ``gamma`` and reject types that cannot occur in ``L(n, d)``."""
    gamma = Partition(gamma)
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d}")
    if any(p > d + 1 for p in gamma):
        raise ValueError(f"type {gamma} has a part larger than d+1={d + 1}")
    if d + 1 in gamma and len(gamma) > 1:
        raise ValueError(f"type {gamma}: the empty block cannot be combined with others")
    return gamma


@dataclass(frozen=True)
class TypeCountResult:
    """``lam`` is ``lambda_{n,d}(gamma)``; ``point_count`` is the number of
    incidence vectors (nonempty-subset coordinates only)."""

    d: int
    gamma: Partition
    lam: BinomialPolynomial
    point_count: int
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "gamma": list(self.gamma),
            "lambda": self.lam.to_dict(),
            "point_count": str(self.point_count),
        }


class _Polytope:
    """Index tables for the incidence-vector polytope of ``(d, gamma)``.

    Subsets of ``{0..l-1}`` are bitmasks.  Singleton coordinates are forced by
    the row sums, so only subsets with two or more members are searched, in
    order of decreasing size.
    """

    def __init__(self, d: int, gamma: Partition):
        self.d = d
        self.gamma = gamma
        l = self.l = len(gamma)
        nmask = 1 << l
        pc = [bin(J).count("1") for J in range(nmask)]
        cap = [0] * nmask
        for J in range(1, nmask):
            s = sum(gamma[i] for i in range(l) if J >> i & 1)
            cap[J] = d + 1 - s if pc[J] == 1 else d - s
        self.cap = cap
        self.singles = [1 << i for i in range(l)]
        self.coords = sorted((I for I in range(1, nmask) if pc[I] >= 2), key=lambda I: (-pc[I], I))
        P = self.P = len(self.coords)
        self.subs = [[J for J in range(1, nmask) if J & I == J] for I in self.coords]
        live = []
        for p in range(P + 1):
            future = self.coords[p:]
            live.append([J for J in range(1, nmask) if any(I & J == J for I in future)])
        self.live = live
        # (J, proper live subsets of J) used to clip residuals in memo keys
        self.norm = []
        for p in range(P + 1):
            L = live[p]
            self.norm.append(
                [(J, [K for K in L if K != J and K & J == K] if pc[J] >= 2 else []) for J in L]
            )
        self.closing = []
        for p in range(P):
            nxt = set(live[p + 1])
            self.closing.append([S for S in self.singles if S in live[p] and S not in nxt])
        self.initially_closed = [S for S in self.singles if S not in live[0]]

    def feasible(self) -> bool:
        return all(c >= 0 for c in self.cap[1:])


def _fold(chunk: int, mult: int, sub: list[int], into: list[int]) -> None:
    # into[chunk+q] += C(chunk+q, chunk) * mult * sub[q]
    need = chunk + len(sub)
    if len(into) < need:
        into.extend([0] * (need - len(into)))
    for q, a in enumerate(sub):
        if a:
            into[chunk + q] += comb(chunk + q, chunk) * mult * a


def _chunk(values) -> tuple[int, int]:
    s = sum(values)
    m = factorial(s)
    for v in values:
        m //= factorial(v)
    return s, m


class _Solver:
    """Memoized sum over the polytope from a given search position.

    ``solve`` returns ``(weights, count)`` where ``weights[q]`` is the sum of
    ``q! / prod nu(I)!`` over completions whose coordinates sum to ``q``.
    """

    def __init__(self, poly: _Polytope):
        self.poly = poly
        self.res = list(poly.cap)
        self.memo: dict[bytes, tuple[list[int], int]] = {}

    def _key(self, p: int) -> bytes:
        res = self.res
        out = [p]
        for J, Ks in self.poly.norm[p]:
            r = res[J]
            for K in Ks:
                if res[K] < r:
                    r = res[K]
            out.append(r)
        return bytes(out)

    def solve(self, p: int) -> tuple[list[int], int]:
        key = self._key(p)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        poly = self.poly
        if p == poly.P:
            out = ([1], 1)
            self.memo[key] = out
            return out
        res = self.res
        sb = poly.subs[p]
        closing = poly.closing[p]
        vmax = min(res[J] for J in sb)
        weights: list[int] = []
        count = 0
        for v in range(vmax + 1):
            if v:
                for J in sb:
                    res[J] -= 1
            sub, c = self.solve(p + 1)
            count += c
            chunk, mult = _chunk([v] + [res[S] for S in closing])
            _fold(chunk, mult, sub, weights)
        for J in sb:
            res[J] += vmax
        out = (weights, count)
        self.memo[key] = out
        return out


def _prefixes(poly: _Polytope, depth: int) -> list[tuple[int, ...]]:
    """All admissible value assignments to the first ``depth`` coordinates."""
    res = list(poly.cap)
    out = []

    def rec(p, acc):
        if p == depth:
            out.append(tuple(acc))
            return
        sb = poly.subs[p]
        vmax = min(res[J] for J in sb)
        for v in range(vmax + 1):
            acc.append(v)
            for J in sb:
                res[J] -= v
            rec(p + 1, acc)
            for J in sb:
                res[J] += v
            acc.pop()

    rec(0, [])
    return out


def _solve_task(args) -> tuple[list[int], int]:
    d, gamma, prefix = args
    poly = _Polytope(d, Partition(gamma))
    solver = _Solver(poly)
    values = []
    for p, v in enumerate(prefix):
        for J in poly.subs[p]:
            solver.res[J] -= v
        values.append(v)
        values.extend(solver.res[S] for S in poly.closing[p])
    if any(solver.res[J] < 0 for J in range(1, len(solver.res))):
        return [], 0
    sub, count = solver.solve(len(prefix))
    chunk, mult = _chunk(values + [poly.cap[S] for S in poly.initially_closed])
    weights: list[int] = []
    _fold(chunk, mult, sub, weights)
    return weights, count


def _choose_depth(poly: _Polytope, threads: int) -> int:
    want = 4 * threads
    depth = 0
    while depth < poly.P and len(_prefixes(poly, depth)) < want:
        depth += 1
    return depth


class _Checkpoint:
    """Completed task results persisted as JSON so a long run can resume."""

    def __init__(self, path: str, d: int, gamma: Partition, depth: int, ntasks: int):
        self.path = path
        self.header = {"d": d, "gamma": list(gamma), "depth": depth, "tasks": ntasks}
        self.done: dict[int, tuple[list[int], int]] = {}
        if os.path.exists(path):
            with open(path) as fh:
                data = json.load(fh)
            if {k: data.get(k) for k in self.header} != self.header:
                raise ValueError(f"checkpoint {path} belongs to a different run: {data.get('gamma')}")
            for idx, item in data["done"].items():
                self.done[int(idx)] = ([int(w) for w in item["weights"]], int(item["count"]))
            log.info("resuming from %s: %d/%d tasks done", path, len(self.done), ntasks)

    @staticmethod
    def stored_depth(path: str, d: int, gamma: Partition) -> int | None:
        if not os.path.exists(path):
            return None
        with open(path) as fh:
            data = json.load(fh)
        if data.get("d") != d or data.get("gamma") != list(gamma):
            raise ValueError(f"checkpoint {path} belongs to a different run")
        return int(data["depth"])

    def record(self, idx: int, result: tuple[list[int], int]) -> None:
        self.done[idx] = result
        data = dict(self.header)
        data["done"] = {
            str(i): {"weights": [str(w) for w in ws], "count": str(c)}
            for i, (ws, c) in sorted(self.done.items())
        }
        tmp = self.path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(data, fh)
        os.replace(tmp, self.path)


def _aggregate(d: int, gamma: Partition, threads: int = 1, checkpoint: str | None = None,
               depth: int | None = None) -> tuple[list[int], int]:
    """Pre-division weights ``w_s`` (index ``s``) and the point count."""
    poly = _Polytope(d, gamma)
    if not poly.feasible():
        return [], 0
    if checkpoint is not None and depth is None:
        depth = _Checkpoint.stored_depth(checkpoint, d, gamma)
    if depth is None:
        depth = 0 if threads <= 1 and checkpoint is None else _choose_depth(poly, max(threads, 2))
    tasks = _prefixes(poly, depth)
    ckpt = _Checkpoint(checkpoint, d, gamma, depth, len(tasks)) if checkpoint else None
    pending = [i for i in range(len(tasks)) if ckpt is None or i not in ckpt.done]
    results: dict[int, tuple[list[int], int]] = dict(ckpt.done) if ckpt else {}
    args = [(d, tuple(gamma), tasks[i]) for i in pending]
    if threads > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            for i, r in zip(pending, ex.map(_solve_task, args)):
                results[i] = r
                if ckpt:
                    ckpt.record(i, r)
    else:
        for i, a in zip(pending, args):
            r = _solve_task(a)
            results[i] = r
            if ckpt:
                ckpt.record(i, r)
    weights: list[int] = []
    count = 0
    for i in range(len(tasks)):
        ws, c = results[i]
        count += c
        if len(weights) < len(ws):
            weights.extend([0] * (len(ws) - len(weights)))
        for s, w in enumerate(ws):
            weights[s] += w
    return weights, count


def lambda_poly(d: int, gamma, threads: int = 1, checkpoint: str | None = None,
                depth: int | None = None) -> TypeCountResult:
    """``lambda_{n,d}(gamma)`` as a binomial-basis polynomial.

    ``threads > 1`` splits the search by the values of the first few
    coordinates across worker processes; ``checkpoint`` names a JSON file
    where finished subtrees are stored so an interrupted run resumes.  The
    result is identical for every choice of ``threads`` and ``depth``.
    """
    t0 = time.perf_counter()
    gamma = validate_type(d, gamma)
    if not gamma:
        return TypeCountResult(d, gamma, BinomialPolynomial.constant(1), 1, 0.0)
    weights, count = _aggregate(d, gamma, threads, checkpoint, depth)
    stab = stabilizer_order(gamma)
    coeffs = {}
    for s, w in enumerate(weights):
        q, r = divmod(w, stab)
        if r:
            raise InconsistencyError(
                f"weight {w} of C(n,{s}) for type {gamma}, d={d} is not divisible by {stab}"
            )
        coeffs[s] = q
    elapsed = time.perf_counter() - t0
    log.info("lambda d=%d %s: %d points in %.2fs", d, gamma, count, elapsed)
    return TypeCountResult(d, gamma, BinomialPolynomial(coeffs), count, elapsed)


def iter_points(d: int, gamma) -> Iterator[dict[tuple[int, ...], int]]:
    """Yield every incidence vector of ``(d, gamma)`` as ``{I: nu(I)}``.

    Keys are 1-based tuples of block indices for every nonempty ``I``; the
    coordinate for the empty set is left implicit (it is ``n - sum``).
    """
    gamma = validate_type(d, gamma)
    if not gamma:
        return
    poly = _Polytope(d, gamma)
    if not poly.feasible():
        return
    l = poly.l
    labels = {J: tuple(i + 1 for i in range(l) if J >> i & 1) for J in range(1, 1 << l)}
    res = list(poly.cap)
    nu = {J: 0 for J in range(1, 1 << l)}

    def rec(p):
        if p == poly.P:
            for S in poly.singles:
                nu[S] = res[S]
            yield {labels[J]: nu[J] for J in sorted(nu, key=lambda J: (bin(J).count("1"), labels[J]))}
            return
        I = poly.coords[p]
        sb = poly.subs[p]
        vmax = min(res[J] for J in sb)
        for v in range(vmax + 1):
            nu[I] = v
            for J in sb:
                res[J] -= v
            yield from rec(p + 1)
            for J in sb:
                res[J] += v
        nu[I] = 0

    yield from rec(0)


def enumerate_points(d: int, gamma, visitor: Callable[[dict], None] | None = None) -> tuple[int, dict[int, int]]:
    """Visit each point once; return ``(count, {s: sum of multinomials})``.

    The aggregate is before division by the stabilizer order.
    """
    count = 0
    agg: dict[int, int] = {}
    for nu in iter_points(d, gamma):
        count += 1
        vals = list(nu.values())
        s, m = _chunk(vals)
        agg[s] = agg.get(s, 0) + m
        if visitor is not None:
            visitor(nu)
    return count, agg


def lambda_closed_form(d: int, gamma) -> BinomialPolynomial:
    """Closed forms for types with one or two parts.

    ``lambda((g)) = C(n, d+1-g)``; for two parts with block sizes ``t1, t2``
    the sum runs over the overlap ``v = |T1 ∩ T2|``, halved when the parts are
    equal.
    """
    gamma = validate_type(d, gamma)
    if len(gamma) == 0:
        return BinomialPolynomial.constant(1)
    if len(gamma) == 1:
        return BinomialPolynomial.basis(d + 1 - gamma[0])
    if len(gamma) != 2:
        raise ValueError(f"closed form needs at most two parts, got {gamma}")
    g1, g2 = gamma
    t1, t2 = d + 1 - g1, d + 1 - g2
    top = min(t1, t2, d - g1 - g2)

    def value(n: int) -> int:
        total = sum(binom(n, v) * binom(n - v, t1 - v) * binom(n - t1, t2 - v) for v in range(top + 1))
        if g1 == g2:
            q, r = divmod(total, 2)
            if r:
                raise InconsistencyError(f"odd total {total} for equal parts {gamma} at n={n}")
            return q
        return total

    return BinomialPolynomial.from_values(value(n) for n in range(t1 + t2 + 1))


def existence_threshold(poly: BinomialPolynomial) -> int | None:
    """Smallest ``n >= 0`` at which ``poly`` is positive, or ``None``.

    Scans up to the degree; polynomials with nonnegative coefficients that
    are positive somewhere are positive there.
    """
    for n in range(max(poly.degree, 0) + 1):
        if poly(n) > 0:
            return n
    return None
