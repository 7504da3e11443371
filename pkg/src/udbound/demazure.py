"""Simple reflections and divided-difference operators.

For a Cartan matrix `c` the reflection `s_i` substitutes `x_i` by
`y_i = -x_i - sum_{j != i} c[i, j] x_j` and fixes the other variables. The
operator `d_i(p) = (p - s_i(p)) / alpha_i` with `alpha_i = x_i - y_i` is
computed without division: a term `x_i^e q` with `q` free of `x_i` maps to
`h_e q` where `h_e = sum_{m=1}^{e} x_i^(m-1) y_i^(e-m)`.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import TYPE_CHECKING

from .errors import InconsistencyError
from .polynomial import constant_term, homogeneous_degree, polynomial_ring

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from sympy.polys.rings import PolyRing

    from .polynomial import Monomial, Polynomial
    from .root_system import CartanMatrix, DynkinDiagram
    from .weyl import WeylElement

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OperatorContext:
    """The polynomial ring of a Cartan matrix with the forms `y_i` and `alpha_i`.

    Attributes:
        cartan (CartanMatrix): The Cartan matrix in the row convention.

    """

    cartan: CartanMatrix

    @classmethod
    def for_diagram(cls, diagram: DynkinDiagram) -> OperatorContext:
        return cls(diagram.cartan)

    @property
    def n(self) -> int:
        return self.cartan.n

    @cached_property
    def ring(self) -> PolyRing:
        return polynomial_ring(self.n)

    @cached_property
    def x(self) -> tuple[Polynomial, ...]:
        return tuple(self.ring.gens)

    @cached_property
    def alpha(self) -> tuple[Polynomial, ...]:
        """Simple roots `alpha_i = sum_j c[i, j] x_j`."""
        return tuple(
            sum((c * xj for c, xj in zip(row, self.x, strict=True)), self.ring.zero)
            for row in self.cartan.entries
        )

    @cached_property
    def y(self) -> tuple[Polynomial, ...]:
        """Reflected weights `y_i = x_i - alpha_i`."""
        return tuple(xi - ai for xi, ai in zip(self.x, self.alpha, strict=True))

    def check_index(self, i: int) -> None:
        if not 1 <= i <= self.n:
            msg = f"Vertex index {i} out of range 1..{self.n}"
            raise ValueError(msg)

    def power_sum(self, i: int, e: int) -> Polynomial:
        """Return `d_i(x_i^e) = sum_{m=1}^{e} x_i^(m-1) y_i^(e-m)`."""
        return _power_sum(self, i, e)


@lru_cache(maxsize=4096)
def _power_sum(ctx: OperatorContext, i: int, e: int) -> Polynomial:
    if e <= 0:
        return ctx.ring.zero

    if e == 1:
        return ctx.ring.one

    x, y = ctx.x[i - 1], ctx.y[i - 1]
    return x ** (e - 1) + y * _power_sum(ctx, i, e - 1)


def reflect(ctx: OperatorContext, i: int, p: Polynomial) -> Polynomial:
    """Apply the simple reflection `s_i`, which sends `x_i` to `y_i`."""
    ctx.check_index(i)
    return p.compose(ctx.x[i - 1], ctx.y[i - 1])


def _split(p: Polynomial, k: int) -> dict[int, dict[Monomial, int]]:
    groups: dict[int, dict[Monomial, int]] = defaultdict(dict)
    for monom, coeff in p.iterterms():
        groups[monom[k]][monom[:k] + (0,) + monom[k + 1 :]] = coeff

    return groups


def ddiff(ctx: OperatorContext, i: int, p: Polynomial) -> Polynomial:
    """Apply the divided-difference operator `d_i` by its closed form.

    Args:
        ctx (OperatorContext): The operator context.
        i (int): The vertex, 1-based.
        p (Polynomial): A polynomial in the ring of `ctx`.

    Returns:
        Polynomial: `d_i(p)`. A homogeneous input of degree `d` gives a
        homogeneous output of degree `d - 1` or zero.

    Raises:
        ValueError: If `i` is out of range.

    """
    ctx.check_index(i)
    result = ctx.ring.zero

    for e, terms in _split(p, i - 1).items():
        if e:
            result += ctx.power_sum(i, e) * ctx.ring.from_dict(terms)

    return result


def _halve(p: Polynomial) -> Polynomial:
    if any(int(c) % 2 for c in p.values()):
        msg = "Non-integral quotient in division by a simple root"
        raise InconsistencyError(msg)

    return p.quo_ground(2)


def ddiff_by_division(ctx: OperatorContext, i: int, p: Polynomial) -> Polynomial:
    """Apply `d_i` as `(p - s_i(p)) / alpha_i` by exact division.

    The numerator is divided by `alpha_i = 2 x_i + beta` as a univariate
    polynomial in `x_i` whose coefficients are polynomials in the other
    variables.

    Raises:
        ValueError: If `i` is out of range.
        InconsistencyError: If the division leaves a remainder or needs a
            non-integral coefficient.

    """
    ctx.check_index(i)
    ring, k = ctx.ring, i - 1
    numerator = p - reflect(ctx, i, p)
    if not numerator:
        return ring.zero

    coeffs = {e: ring.from_dict(terms) for e, terms in _split(numerator, k).items()}
    beta = ctx.alpha[k] - 2 * ctx.x[k]
    top = max(coeffs)

    quotient = {top: ring.zero}
    for e in range(top, 0, -1):
        quotient[e - 1] = _halve(coeffs.get(e, ring.zero) - beta * quotient[e])

    if coeffs.get(0, ring.zero) - beta * quotient[0]:
        msg = f"Division by alpha_{i} leaves a nonzero remainder"
        raise InconsistencyError(msg)

    xi = ctx.x[k]
    return sum((q * xi**e for e, q in quotient.items()), ring.zero)


def apply_word(ctx: OperatorContext, word: Sequence[int], p: Polynomial) -> Polynomial:
    """Return `d_{w_1}(d_{w_2}(...d_{w_l}(p)))`, applying the rightmost first."""
    for i in word:
        ctx.check_index(i)

    for i in reversed(word):
        if not p:
            break
        p = ddiff(ctx, i, p)

    return p


def schubert_expand(
    ctx: OperatorContext,
    p: Polynomial,
    elements: Iterable[WeylElement],
) -> dict[WeylElement, int]:
    """Return the Schubert coefficients of a homogeneous polynomial.

    For each Weyl element `w` of length `deg p` the coefficient is the
    constant term of `d_w(p)`.

    Args:
        ctx (OperatorContext): The operator context.
        p (Polynomial): A homogeneous polynomial of degree `d`.
        elements (Iterable[WeylElement]): Elements of length `d`.

    Returns:
        dict[WeylElement, int]: The coefficient of every given element.

    Raises:
        ValueError: If `p` is not homogeneous or an element has a different
            length.

    """
    d = homogeneous_degree(p)
    if d is None:
        msg = "Schubert expansion needs a nonzero homogeneous polynomial"
        raise ValueError(msg)

    coefficients = {}
    for w in elements:
        if w.length != d:
            msg = f"Element {w.word} has length {w.length}, expected {d}"
            raise ValueError(msg)

        coefficients[w] = constant_term(apply_word(ctx, w.word, p))

    logger.debug("Expanded degree %d polynomial over %d elements", d, len(coefficients))
    return coefficients
