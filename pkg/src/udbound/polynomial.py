"""Exact sparse polynomials in the fundamental weights `x1..xn`.

Polynomials are sympy `PolyElement` values of a cached `PolyRing` over the
integers with graded lexicographic order. A polynomial is a map from
exponent vectors to nonzero integer coefficients, so certificates of
degree 34 in eight variables stay small.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from functools import cache
from typing import TYPE_CHECKING

from sympy.polys.domains import ZZ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from .errors import ParseError

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

Polynomial = PolyElement
Monomial = tuple[int, ...]

_TOKEN = re.compile(r"(?P<int>\d+)|x(?P<var>\d+)|(?P<op>[-+*^−])")


@cache
def polynomial_ring(n: int) -> PolyRing:
    """Return the ring `ZZ[x1, ..., xn]` with graded lexicographic order."""
    if n < 0:
        msg = f"Number of variables must be non-negative, got {n}"
        raise ValueError(msg)

    symbols = ",".join(f"x{i}" for i in range(1, n + 1))
    return PolyRing(symbols, ZZ, grlex)


def monomial(exponents: Sequence[int], ring: PolyRing | None = None) -> Polynomial:
    """Return the monic monomial with the given exponent vector.

    Raises:
        ValueError: If an exponent is negative or the length does not match
            the ring.

    """
    exponents = tuple(int(e) for e in exponents)
    ring = ring or polynomial_ring(len(exponents))

    if len(exponents) != ring.ngens or any(e < 0 for e in exponents):
        msg = f"Invalid exponent vector {exponents} for {ring.ngens} variables"
        raise ValueError(msg)

    return ring.from_dict({exponents: 1})


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return the exact product of two polynomials in the same variables.

    Raises:
        ValueError: If the polynomials have different variable counts.

    """
    if p.ring.ngens != q.ring.ngens:
        msg = f"Variable counts differ: {p.ring.ngens} != {q.ring.ngens}"
        raise ValueError(msg)

    return p * q


@dataclass
class _Token:
    kind: str
    value: str
    position: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    position = 0

    while position < len(text):
        if text[position].isspace():
            position += 1
            continue

        m = _TOKEN.match(text, position)
        if not m:
            expected = ("integer", "variable x<i>", "operator")
            raise ParseError("Unexpected character", text, position, expected)

        kind = m.lastgroup or ""
        value = m.group(kind).replace("−", "-")
        tokens.append(_Token(kind, value, position))
        position = m.end()

    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, n: int) -> None:
        self.text = text
        self.n = n
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def error(self, message: str, token: _Token, *expected: str) -> ParseError:
        return ParseError(message, self.text, token.position, expected)

    def signs(self) -> int:
        sign = 1
        while self.peek().kind == "op" and self.peek().value in "+-":
            if self.advance().value == "-":
                sign = -sign

        return sign

    def polynomial(self) -> dict[Monomial, int]:
        terms: dict[Monomial, int] = defaultdict(int)
        sign = self.signs()

        while True:
            coeff, exponents = self.term()
            terms[exponents] += sign * coeff

            token = self.peek()
            if token.kind == "end":
                return {m: c for m, c in terms.items() if c}

            if token.value not in ("+", "-"):
                raise self.error("Unexpected token", token, "'+'", "'-'", "'*'", "end")

            sign = self.signs()

    def term(self) -> tuple[int, Monomial]:
        coeff = 1
        exponents = [0] * self.n
        coeff = self.factor(coeff, exponents)

        while self.peek().value == "*":
            self.advance()
            coeff = self.factor(coeff, exponents)

        return coeff, tuple(exponents)

    def factor(self, coeff: int, exponents: list[int]) -> int:
        token = self.advance()

        if token.kind == "int":
            return coeff * int(token.value)

        if token.kind != "var":
            raise self.error("Unexpected token", token, "integer", "variable x<i>")

        index = int(token.value)
        if not 1 <= index <= self.n:
            msg = f"Variable x{index} out of range 1..{self.n}"
            raise self.error(msg, token)

        exponent = 1
        if self.peek().value == "^":
            self.advance()
            power = self.advance()
            if power.kind != "int":
                raise self.error("Unexpected token", power, "exponent")
            exponent = int(power.value)

        exponents[index - 1] += exponent
        return coeff


def parse(text: str, n: int) -> Polynomial:
    """Parse a polynomial such as `"x1^5*x2^3*x3 - 2*x1"` in `n` variables.

    Terms are joined by `+` or `-` (the Unicode minus sign is accepted), and
    each term is a `*`-separated product of integers and factors `x<i>` or
    `x<i>^<e>`.

    Args:
        text (str): The text to parse.
        n (int): The number of variables.

    Returns:
        Polynomial: The canonical polynomial.

    Raises:
        ParseError: On a syntax error or a variable index outside `1..n`.

    """
    terms = _Parser(text, n).polynomial()
    return polynomial_ring(n).from_dict(terms)


def format_monomial(exponents: Iterable[int]) -> str:
    factors = [
        f"x{i}^{e}" if e > 1 else f"x{i}"
        for i, e in enumerate(exponents, start=1)
        if e
    ]
    return "*".join(factors) or "1"


def format_polynomial(p: Polynomial) -> str:
    """Return `p` as text in graded lexicographic descending order.

    The output parses back to an equal polynomial; zero prints as `"0"`.
    """
    if not p:
        return "0"

    parts = []
    for k, (exponents, coeff) in enumerate(p.terms()):
        magnitude = abs(int(coeff))
        body = format_monomial(exponents)
        if body == "1":
            body = str(magnitude)
        elif magnitude != 1:
            body = f"{magnitude}*{body}"

        if k == 0:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f" {'+' if coeff > 0 else '-'} {body}")

    return "".join(parts)


@dataclass(frozen=True)
class MonomialFacts:
    """Summary of the shape of a polynomial.

    Attributes:
        is_one (bool): Whether the polynomial is the constant 1.
        degree (int | None): The total degree if the polynomial is nonzero and
            homogeneous, else None.
        is_monic_monomial (bool): Whether the polynomial is a single term with
            coefficient 1.
        support (frozenset[int]): Variables with a positive exponent in some
            term.

    """

    is_one: bool
    degree: int | None
    is_monic_monomial: bool
    support: frozenset[int]


def homogeneous_degree(p: Polynomial) -> int | None:
    degrees = {sum(m) for m in p.itermonoms()}
    return degrees.pop() if len(degrees) == 1 else None


def support(p: Polynomial) -> frozenset[int]:
    return frozenset(
        i for m in p.itermonoms() for i, e in enumerate(m, start=1) if e
    )


def monomial_facts(p: Polynomial) -> MonomialFacts:
    monic = len(p) == 1 and next(iter(p.values())) == 1
    return MonomialFacts(
        is_one=p == 1,
        degree=homogeneous_degree(p),
        is_monic_monomial=monic,
        support=support(p),
    )


def is_coprime(p: Polynomial, vertices: Iterable[int]) -> bool:
    """Return whether no term of `p` is divisible by `x_i` for `i` in `vertices`."""
    return support(p).isdisjoint(vertices)


def constant_term(p: Polynomial) -> int:
    """Return the augmentation of `p`, its value at `x_i = 0`."""
    return int(p.get(p.ring.zero_monom, 0))


def exponents_of(p: Polynomial) -> Monomial:
    """Return the exponent vector of a monic monomial.

    Raises:
        ValueError: If `p` is not a monic monomial.

    """
    if not monomial_facts(p).is_monic_monomial:
        msg = "Expected a monic monomial"
        raise ValueError(msg)

    return next(iter(p))
