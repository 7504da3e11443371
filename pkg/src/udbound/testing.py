"""Reusable assertions and randomized property checks.

The render assertions check a report twice: once as the dataclass and once
converted with OmegaConf, so both rendering paths stay in sync. The
property checks exercise the operator identities on random polynomials and
back the `check` command.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from typing import TYPE_CHECKING

from omegaconf import OmegaConf

from .demazure import (
    OperatorContext,
    apply_word,
    ddiff,
    ddiff_by_division,
    reflect,
)
from .errors import InconsistencyError
from .polynomial import format_polynomial, monomial
from .root_system import DynkinDiagram, is_one_chain, semisimple_center
from .search import admissible_steps, verify_certificate

if TYPE_CHECKING:
    from collections.abc import Callable, Iterator, Sequence

    from sympy.polys.rings import PolyRing

    from .polynomial import Polynomial
    from .report import Report
    from .search import Certificate

logger = logging.getLogger(__name__)

BRAID_ORDERS = {0: 2, 1: 3, 2: 4, 3: 6}


def _assert_render(
    cfg: Report,
    expected: str | list[str],
    callback: Callable[[str, str], None],
) -> None:
    if isinstance(expected, str):
        expected = [expected]

    cls = type(cfg)
    for config in [cfg, OmegaConf.structured(cfg)]:
        text = cls.render(config)
        for ex in expected:
            callback(text, ex)


def assert_render_in(cfg: Report, expected: str | list[str]) -> None:
    """Assert that the rendered report contains every expected substring.

    Raises:
        AssertionError: If a substring is missing from either rendering.

    """

    def callback(text: str, expected: str) -> None:
        if expected not in text:
            msg = f"Missing substring {expected!r} in rendered text:\n{text}"
            raise AssertionError(msg)

    _assert_render(cfg, expected, callback)


def assert_render_eq(cfg: Report, expected: str) -> None:
    """Assert that the rendered report equals `expected`."""

    def callback(text: str, expected: str) -> None:
        if expected != text:
            msg = f"Rendered text differs.\nExpected:\n{expected!r}\nGot:\n{text!r}"
            raise AssertionError(msg)

    _assert_render(cfg, expected, callback)


def assert_render_startswith(cfg: Report, expected: str) -> None:
    def callback(text: str, expected: str) -> None:
        if not text.startswith(expected):
            head = text[: len(expected)]
            msg = f"Rendered text starts with {head!r}, not {expected!r}"
            raise AssertionError(msg)

    _assert_render(cfg, expected, callback)


def assert_render_endswith(cfg: Report, expected: str) -> None:
    def callback(text: str, expected: str) -> None:
        if not text.endswith(expected):
            tail = text[-len(expected) :]
            msg = f"Rendered text ends with {tail!r}, not {expected!r}"
            raise AssertionError(msg)

    _assert_render(cfg, expected, callback)


def assert_unimodular(ctx: OperatorContext, cert: Certificate) -> None:
    """Assert that the certificate word sends its monomial to 1.

    Raises:
        AssertionError: If the result is not 1.

    """
    verification = verify_certificate(ctx, cert)
    if not verification.valid:
        result = format_polynomial(verification.result)
        msg = f"Word {cert.word} sends {cert.describe()} to {result}, not 1"
        raise AssertionError(msg)


def assert_operators_agree(
    ctx: OperatorContext,
    first: Sequence[int],
    second: Sequence[int],
    p: Polynomial,
) -> None:
    """Assert that two words give the same operator value on `p`."""
    a, b = apply_word(ctx, first, p), apply_word(ctx, second, p)
    if a != b:
        msg = (
            f"Words {tuple(first)} and {tuple(second)} differ on "
            f"{format_polynomial(p)}: {format_polynomial(a)} != {format_polynomial(b)}"
        )
        raise AssertionError(msg)


def random_exponents(rng: random.Random, n: int, degree: int) -> tuple[int, ...]:
    """Return a random exponent vector of total degree `degree`."""
    exponents = [0] * n
    for _ in range(degree):
        exponents[rng.randrange(n)] += 1

    return tuple(exponents)


def random_polynomial(
    rng: random.Random,
    ring: PolyRing,
    max_degree: int = 6,
    max_terms: int = 4,
) -> Polynomial:
    """Return a random polynomial with small nonzero integer coefficients."""
    terms: dict[tuple[int, ...], int] = {}
    for _ in range(rng.randint(1, max_terms)):
        exponents = random_exponents(rng, ring.ngens, rng.randint(0, max_degree))
        terms[exponents] = rng.choice([-3, -2, -1, 1, 2, 3])

    return ring.from_dict(terms)


def random_homogeneous(
    rng: random.Random,
    ring: PolyRing,
    degree: int,
    max_terms: int = 4,
) -> Polynomial:
    terms = {
        random_exponents(rng, ring.ngens, degree): rng.choice([-2, -1, 1, 2])
        for _ in range(rng.randint(1, max_terms))
    }
    return ring.from_dict(terms)


def one_chains(diagram: DynkinDiagram) -> list[tuple[int, ...]]:
    """Return every 1-chain of the diagram that follows a tree path."""
    cartan = diagram.cartan
    chains = []
    for u, v in itertools.product(diagram.vertices, repeat=2):
        try:
            path = diagram.path(u, v)
        except ValueError:
            continue

        if is_one_chain(cartan, path):
            chains.append(path)

    return chains


def braid_pairs(diagram: DynkinDiagram) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Yield the two reduced words of the longest element of each rank-2 pair."""
    cartan = diagram.cartan
    for i, j in itertools.combinations(diagram.vertices, 2):
        m = BRAID_ORDERS[cartan[i, j] * cartan[j, i]]
        first = tuple(i if t % 2 == 0 else j for t in range(m))
        second = tuple(j if t % 2 == 0 else i for t in range(m))
        yield first, second


def full_choice_bound(
    ctx: OperatorContext,
    diagram: DynkinDiagram,
    *,
    allow_ctype: bool = True,
) -> int:
    """Return the best chain-method degree over every order and step choice.

    This enumerates all admissible steps at every position of every
    processing order, so it is only usable for small ranks.
    """
    best = 0
    vertices = list(diagram.vertices)
    for order in itertools.permutations(vertices):
        unprocessed = set(vertices)
        choices = []
        for v in order:
            steps = admissible_steps(
                diagram, ctx.cartan, v, unprocessed, allow_ctype=allow_ctype, ctx=ctx
            )
            choices.append([s.exponent for s in steps])
            unprocessed.discard(v)

        for picked in itertools.product(*choices):
            best = max(best, sum(picked))

    return best


@dataclass(frozen=True)
class PropertyResult:
    name: str
    cases: int
    failures: int
    example: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0


class _Checker:
    def __init__(self, diagram: DynkinDiagram, rng: random.Random, max_degree: int):
        self.diagram = diagram
        self.ctx = OperatorContext.for_diagram(diagram)
        self.rng = rng
        self.max_degree = max_degree
        self.chains = one_chains(diagram)
        self.braids = list(braid_pairs(diagram))

    def poly(self) -> Polynomial:
        return random_polynomial(self.rng, self.ctx.ring, self.max_degree)

    def vertex(self) -> int:
        return self.rng.randint(1, self.ctx.n)

    def nilpotence(self) -> str | None:
        i, p = self.vertex(), self.poly()
        if ddiff(self.ctx, i, ddiff(self.ctx, i, p)):
            return f"d{i}^2 is nonzero on {format_polynomial(p)}"
        return None

    def leibniz(self) -> str | None:
        ctx, i, p, q = self.ctx, self.vertex(), self.poly(), self.poly()
        lhs = ddiff(ctx, i, p * q)
        rhs = ddiff(ctx, i, p) * q + reflect(ctx, i, p) * ddiff(ctx, i, q)
        if lhs != rhs:
            return f"twisted Leibniz fails for d{i} on {format_polynomial(p)}"
        return None

    def division(self) -> str | None:
        i, p = self.vertex(), self.poly()
        if ddiff(self.ctx, i, p) != ddiff_by_division(self.ctx, i, p):
            return f"closed form and division differ for d{i} on {format_polynomial(p)}"
        return None

    def powers(self) -> str | None:
        ctx, i = self.ctx, self.vertex()
        e = self.rng.randint(1, self.max_degree)
        x, y = ctx.x[i - 1], ctx.y[i - 1]

        value = ctx.ring.zero
        for k in range(1, e + 1):
            value = value * x + y ** (k - 1)

        if value != ctx.power_sum(i, e) or value != ddiff(ctx, i, x**e):
            return f"closed form of d{i}(x{i}^{e}) disagrees with the Leibniz rule"
        return None

    def stripping(self) -> str | None:
        ctx = self.ctx
        chain = self.rng.choice(self.chains)
        others = [v for v in self.diagram.vertices if v not in chain]

        exponents = [0] * ctx.n
        for v in others:
            exponents[v - 1] = self.rng.randint(0, 2)

        q = monomial(exponents, ctx.ring)
        e = self.rng.randint(0, len(chain))
        target = ctx.x[chain[-1] - 1]
        result = apply_word(ctx, chain, target**e * q)
        expected = q if e == len(chain) else ctx.ring.zero

        if result != expected:
            text = format_polynomial(result)
            return f"chain {chain} on x{chain[-1]}^{e} gives {text}"
        return None

    def braid(self) -> str | None:
        first, second = self.rng.choice(self.braids)
        p = random_homogeneous(self.rng, self.ctx.ring, len(first) + 1)
        if apply_word(self.ctx, first, p) != apply_word(self.ctx, second, p):
            return f"words {first} and {second} differ on {format_polynomial(p)}"
        return None


PROPERTIES = (
    "nilpotence",
    "leibniz",
    "division",
    "powers",
    "stripping",
    "braid",
)


def run_property_checks(
    diagram: DynkinDiagram,
    seed: int = 0,
    cases: int = 500,
    max_degree: int = 6,
) -> list[PropertyResult]:
    """Run every randomized property and the center check on a diagram.

    Args:
        diagram (DynkinDiagram): The diagram to check.
        seed (int): The seed of the random generator.
        cases (int): The number of random cases per property.
        max_degree (int): The largest degree of random polynomials.

    Returns:
        list[PropertyResult]: One result per property, the center check last.

    """
    checker = _Checker(diagram, random.Random(seed), max_degree)
    results = []

    for name in PROPERTIES:
        check = getattr(checker, name)
        if name == "braid" and not checker.braids:
            results.append(PropertyResult(name, 0, 0))
            continue

        failures, example = 0, ""
        for _ in range(cases):
            if (message := check()) is not None:
                failures += 1
                example = example or message

        logger.info("Property %s on %s: %d failures", name, diagram, failures)
        results.append(PropertyResult(name, cases, failures, example))

    try:
        semisimple_center(diagram)
    except InconsistencyError as e:
        results.append(PropertyResult("center", 1, 1, str(e)))
    else:
        results.append(PropertyResult("center", 1, 0))

    return results
