"""Polynomials in ``n`` written in the binomial-coefficient basis.

Every count, Möbius value and characteristic-polynomial coefficient in this
package is an integer combination of ``C(n, k)``.  A :class:`BinomialPolynomial`
stores exactly those integers, keyed by ``k``, and never holds a zero
coefficient.  ``C(n, k)`` is abbreviated ``n_k`` in text form, so ``3 n_4 + 2
n_2 - n_1`` is ``3*C(n,4) + 2*C(n,2) - n``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping

__all__ = [
    "BinomialPolynomial",
    "PolynomialParseError",
    "add",
    "multiply",
    "shift",
    "evaluate",
    "parse",
    "render",
    "binom",
]


class PolynomialParseError(ValueError):
    """Raised when text cannot be read as a binomial-basis polynomial."""

    def __init__(self, message: str, token: str):
        super().__init__(f"{message}: {token!r}")
        self.token = token


def binom(n: int, k: int) -> int:
    """``C(n, k)`` as a polynomial in ``n`` evaluated at any integer ``n``.

    Agrees with :func:`math.comb` for ``n >= 0`` (including ``C(n, k) = 0`` for
    ``k > n``) and extends it to negative ``n`` by the falling factorial.
    """
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k)
    num = 1
    for j in range(k):
        num *= n - j
    return num // factorial(k)


@lru_cache(maxsize=None)
def _product_row(a: int, b: int) -> tuple[tuple[int, int], ...]:
    # C(n,a) C(n,b) = sum_k C(k,a) C(a, a+b-k) C(n,k),  max(a,b) <= k <= a+b
    return tuple(
        (k, comb(k, a) * comb(a, a + b - k)) for k in range(max(a, b), a + b + 1)
    )


@lru_cache(maxsize=None)
def _monomial_row(k: int) -> tuple[Fraction, ...]:
    """Coefficients of ``C(n, k)`` in the monomial basis ``1, n, n^2, ...``."""
    row = [Fraction(1)]
    for j in range(k):
        # multiply by (n - j)
        nxt = [Fraction(0)] * (len(row) + 1)
        for i, c in enumerate(row):
            nxt[i + 1] += c
            nxt[i] -= j * c
        row = nxt
    f = factorial(k)
    return tuple(c / f for c in row)


class BinomialPolynomial:
    """Immutable integer combination ``sum_k c_k C(n, k)``.

    Construct from a mapping ``{k: c_k}``; zero coefficients are dropped.
    Instances support ``+``, ``-``, ``*`` (with each other or with ints),
    evaluation by calling, and hashing.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for k, c in items:
            k = int(k)
            if k < 0:
                raise ValueError(f"basis index must be nonnegative, got {k}")
            if not isinstance(c, int):
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = c.numerator
                else:
                    raise TypeError(f"coefficient of n_{k} must be an integer, got {c!r}")
            acc[k] = acc.get(k, 0) + c
        self._coeffs = tuple(sorted((k, c) for k, c in acc.items() if c))

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c: int) -> BinomialPolynomial:
        return cls({0: c})

    @classmethod
    def basis(cls, k: int, c: int = 1) -> BinomialPolynomial:
        """The single term ``c * C(n, k)``."""
        return cls({k: c})

    @classmethod
    def from_values(cls, values: Iterable[int]) -> BinomialPolynomial:
        """Interpolate from ``p(0), p(1), ..., p(D)``.

        The binomial-basis coefficients are the forward differences at 0.
        """
        row = list(values)
        out = {}
        k = 0
        while row:
            out[k] = row[0]
            row = [b - a for a, b in zip(row, row[1:])]
            k += 1
        return cls(out)

    @classmethod
    def from_monomial(cls, coeffs: Iterable[Fraction | int]) -> BinomialPolynomial:
        """Convert monomial coefficients ``[a_0, a_1, ...]`` to the binomial basis.

        Raises ``ValueError`` if the result would not have integer coefficients.
        """
        coeffs = [Fraction(c) for c in coeffs]
        deg = len(coeffs) - 1
        values = []
        for x in range(deg + 1):
            v = sum(c * x**i for i, c in enumerate(coeffs))
            values.append(v)
        out = {}
        k = 0
        while values:
            c = values[0]
            if c.denominator != 1:
                raise ValueError("polynomial is not an integer combination of binomials")
            out[k] = c.numerator
            values = [b - a for a, b in zip(values, values[1:])]
            k += 1
        return cls(out)

    # -- accessors --------------------------------------------------------

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def items(self) -> tuple[tuple[int, int], ...]:
        """``(k, c_k)`` pairs with nonzero ``c_k``, ascending in ``k``."""
        return self._coeffs

    def coeff(self, k: int) -> int:
        for j, c in self._coeffs:
            if j == k:
                return c
        return 0

    @property
    def degree(self) -> int:
        """Largest basis index present, ``-1`` for the zero polynomial."""
        return self._coeffs[-1][0] if self._coeffs else -1

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> BinomialPolynomial:
        if isinstance(other, BinomialPolynomial):
            return other
        if isinstance(other, int):
            return BinomialPolynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return BinomialPolynomial(self._coeffs + other._coeffs)

    __radd__ = __add__

    def __neg__(self) -> BinomialPolynomial:
        return BinomialPolynomial((k, -c) for k, c in self._coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return BinomialPolynomial((k, c * other) for k, c in self._coeffs)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[int, int] = {}
        for a, ca in self._coeffs:
            for b, cb in other._coeffs:
                x, y = (a, b) if a <= b else (b, a)
                for k, w in _product_row(x, y):
                    acc[k] = acc.get(k, 0) + ca * cb * w
        return BinomialPolynomial(acc)

    __rmul__ = __mul__

    def shift(self, c: int) -> BinomialPolynomial:
        """Return ``p(n - c)`` in the ``C(n, k)`` basis.

        Uses ``C(n-c, k) = sum_j (-1)^j C(c+j-1, j) C(n, k-j)``.
        """
        if c < 0:
            raise ValueError("shift amount must be nonnegative")
        if c == 0:
            return self
        acc: dict[int, int] = {}
        for k, ck in self._coeffs:
            for j in range(k + 1):
                w = comb(c + j - 1, j)
                if j & 1:
                    w = -w
                acc[k - j] = acc.get(k - j, 0) + ck * w
        return BinomialPolynomial(acc)

    def __call__(self, n: int) -> int:
        return self.evaluate(n)

    def evaluate(self, n: int) -> int:
        """Exact value at the integer ``n``."""
        return sum(c * binom(n, k) for k, c in self._coeffs)

    def to_monomial(self) -> list[Fraction]:
        """Monomial coefficients ``[a_0, ..., a_D]`` with exact rationals."""
        out = [Fraction(0)] * (self.degree + 1)
        for k, c in self._coeffs:
            for i, a in enumerate(_monomial_row(k)):
                out[i] += c * a
        return out

    # -- comparison / hashing --------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, BinomialPolynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, int):
            return self._coeffs == BinomialPolynomial.constant(other)._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"BinomialPolynomial({render(self)!r})"

    def __str__(self) -> str:
        return render(self)

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {"basis": "binomial", "coeffs": {str(k): str(c) for k, c in self._coeffs}}

    @classmethod
    def from_dict(cls, data: Mapping) -> BinomialPolynomial:
        if data.get("basis") != "binomial":
            raise ValueError(f"unsupported basis {data.get('basis')!r}")
        return cls((int(k), int(v)) for k, v in data["coeffs"].items())

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> BinomialPolynomial:
        return cls.from_dict(json.loads(text))


ZERO = BinomialPolynomial()
ONE = BinomialPolynomial.constant(1)


def add(a: BinomialPolynomial, b: BinomialPolynomial) -> BinomialPolynomial:
    return a + b


def multiply(a: BinomialPolynomial, b: BinomialPolynomial) -> BinomialPolynomial:
    return a * b


def shift(a: BinomialPolynomial, c: int) -> BinomialPolynomial:
    return a.shift(c)


def evaluate(a: BinomialPolynomial, n: int) -> int:
    return a.evaluate(n)


def _term(k: int, c: int, first: bool) -> str:
    mag = abs(c)
    if k == 0:
        body = str(mag)
    elif mag == 1:
        body = f"n_{k}"
    else:
        body = f"{mag} n_{k}"
    if first:
        return f"-{body}" if c < 0 else body
    return f"- {body}" if c < 0 else f"+ {body}"


def render(a: BinomialPolynomial, descending: bool = False) -> str:
    """Text form in ``n_k`` notation, e.g. ``-1 + n_1 - n_2 - 3 n_4``.

    Terms are ascending in ``k`` unless ``descending`` is set.
    """
    items = a.items()
    if not items:
        return "0"
    if descending:
        items = items[::-1]
    return " ".join(_term(k, c, i == 0) for i, (k, c) in enumerate(items))


_TOKEN = re.compile(r"\s*(?:(?P<op>[+\-−])|(?P<num>\d+)|(?P<var>n(?:_\{?\d+\}?)?)|(?P<star>\*)|(?P<bad>[^\s+\-−*]+))")


def parse(text: str) -> BinomialPolynomial:
    """Inverse of :func:`render`.

    Accepts ``n_k``, ``n_{k}``, bare ``n`` (meaning ``n_1``), optional ``*``
    between coefficient and symbol, and ASCII or Unicode minus signs.
    """
    terms: dict[int, int] = {}
    pos = 0
    sign: int | None = None
    coef: int | None = None
    seen_term = False
    text = text.strip()
    if text == "0":
        return BinomialPolynomial()
    if not text:
        raise PolynomialParseError("empty polynomial", text)

    def flush(k: int) -> None:
        nonlocal sign, coef, seen_term
        c = 1 if coef is None else coef
        if sign == -1:
            c = -c
        terms[k] = terms.get(k, 0) + c
        sign, coef, seen_term = None, None, True

    star = False
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        pos = m.end()
        if m.group("bad") is not None:
            raise PolynomialParseError("unexpected token", m.group("bad"))
        if m.group("op") is not None:
            tok = m.group("op")
            if coef is not None:
                flush(0)
            elif sign is not None or star:
                raise PolynomialParseError("misplaced operator", tok)
            sign = 1 if tok == "+" else -1
        elif m.group("num") is not None:
            if coef is not None:
                raise PolynomialParseError("two numbers in a row", m.group("num"))
            if seen_term and sign is None:
                raise PolynomialParseError("missing operator before", m.group("num"))
            coef = int(m.group("num"))
        elif m.group("star") is not None:
            if coef is None or star:
                raise PolynomialParseError("misplaced '*'", "*")
            star = True
            continue
        else:
            tok = m.group("var")
            if seen_term and sign is None:
                raise PolynomialParseError("missing operator before", tok)
            digits = re.sub(r"\D", "", tok)
            flush(int(digits) if digits else 1)
        star = False
    if star:
        raise PolynomialParseError("dangling '*'", "*")
    if coef is not None:
        flush(0)
    elif sign is not None:
        raise PolynomialParseError("dangling operator", "-" if sign < 0 else "+")
    return BinomialPolynomial(terms)
