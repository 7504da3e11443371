"""Lower bounds for the unimodular degree with verifiable certificates.

A certificate is a monic monomial `p` and a word `w` with `d_w(p) = 1`.
The chain method builds `p` one vertex at a time: processing a vertex `t`
multiplies `p` by `x_t^k` for the longest admissible step ending at `t`,
either a 1-chain of `k` vertices or a path into a double bond whose
palindromic word strips `x_t^(2m-1)`. Steps of vertices processed later
are applied first, so their words sit to the right.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cache, lru_cache
from typing import TYPE_CHECKING

from .demazure import OperatorContext, apply_word, ddiff
from .errors import CertificateError, InconsistencyError, ResourceLimitError
from .polynomial import format_monomial, monomial
from .root_system import (
    DynkinDiagram,
    SimpleType,
    is_c_type_path,
    is_one_chain,
)
from .weyl import DEFAULT_GROUP_CAP, enumerate_elements, group_by_length, group_order

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Iterator, Sequence

    from sympy.polys.rings import PolyRing

    from .polynomial import Monomial, Polynomial
    from .root_system import CartanMatrix

logger = logging.getLogger(__name__)


class StepKind(Enum):
    ONE_CHAIN = "OneChain"
    C_TYPE = "CType"


@dataclass(frozen=True)
class Step:
    """One stripping step of the chain method.

    A `ONE_CHAIN` step on the path `(i_1, ..., i_k)` strips `x_{i_k}^k` with
    the word `(i_1, ..., i_k)`. A `C_TYPE` step on `(v_1, ..., v_m)` strips
    `x_{v_1}^(2m-1)` with the word `(v_1, ..., v_m, ..., v_1)`.
    """

    kind: StepKind
    path: tuple[int, ...]

    @property
    def target(self) -> int:
        return self.path[-1] if self.kind is StepKind.ONE_CHAIN else self.path[0]

    @property
    def exponent(self) -> int:
        k = len(self.path)
        return k if self.kind is StepKind.ONE_CHAIN else 2 * k - 1

    @property
    def word(self) -> tuple[int, ...]:
        if self.kind is StepKind.ONE_CHAIN:
            return self.path
        return self.path + self.path[-2::-1]

    def relabel(self, old_of_new: Sequence[int]) -> Step:
        return Step(self.kind, tuple(old_of_new[v - 1] for v in self.path))


def _assemble_word(steps: Iterable[Step]) -> tuple[int, ...]:
    return tuple(itertools.chain.from_iterable(s.word for s in reversed(list(steps))))


@dataclass(frozen=True)
class Certificate:
    """A monic monomial and a word whose operator sends it to 1.

    Attributes:
        monomial (Monomial): The exponent vector of the monomial.
        word (tuple[int, ...]): The word, applied rightmost first.
        steps (tuple[Step, ...]): The steps in application order: `steps[0]`
            is applied first and its word is the rightmost part of `word`.
            Empty for certificates without a chain structure.

    Raises:
        CertificateError: If the degree differs from the word length, or the
            steps do not reproduce the monomial and the word.

    """

    monomial: Monomial
    word: tuple[int, ...]
    steps: tuple[Step, ...] = field(default=())

    def __post_init__(self) -> None:
        if any(e < 0 for e in self.monomial):
            msg = f"Negative exponent in {self.monomial}"
            raise CertificateError(msg)

        if sum(self.monomial) != len(self.word):
            msg = (
                f"Monomial degree {sum(self.monomial)} differs from "
                f"word length {len(self.word)}"
            )
            raise CertificateError(msg)

        if self.steps:
            if _assemble_word(self.steps) != self.word:
                msg = "Step words do not assemble to the certificate word"
                raise CertificateError(msg)

            if _step_monomial(len(self.monomial), self.steps) != self.monomial:
                msg = "Step factors do not multiply to the certificate monomial"
                raise CertificateError(msg)

    @classmethod
    def from_steps(cls, n: int, steps: Iterable[Step]) -> Certificate:
        """Assemble a certificate from steps given in application order."""
        steps = tuple(steps)
        return cls(_step_monomial(n, steps), _assemble_word(steps), steps)

    @property
    def degree(self) -> int:
        return len(self.word)

    @property
    def n(self) -> int:
        return len(self.monomial)

    def polynomial(self, ring: PolyRing) -> Polynomial:
        return monomial(self.monomial, ring)

    def factors(self) -> list[list[int]]:
        """Return the monomial as sorted `[variable, exponent]` pairs."""
        return [[i, e] for i, e in enumerate(self.monomial, start=1) if e]

    def describe(self) -> str:
        return format_monomial(self.monomial)

    def relabel(self, old_of_new: Sequence[int], n: int) -> Certificate:
        """Move the certificate into a diagram with `n` vertices.

        Vertex `k` becomes `old_of_new[k - 1]`.
        """
        exponents = [0] * n
        for k, e in enumerate(self.monomial, start=1):
            exponents[old_of_new[k - 1] - 1] += e

        word = tuple(old_of_new[v - 1] for v in self.word)
        steps = tuple(s.relabel(old_of_new) for s in self.steps)
        return Certificate(tuple(exponents), word, steps)


def _step_monomial(n: int, steps: Iterable[Step]) -> Monomial:
    exponents = [0] * n
    for step in steps:
        exponents[step.target - 1] += step.exponent

    return tuple(exponents)


def combine(certificates: Sequence[Certificate], n: int) -> Certificate:
    """Combine certificates on disjoint sets of variables of an `n`-vertex diagram.

    Certificates listed first are applied first.
    """
    exponents = [sum(e) for e in zip(*(c.monomial for c in certificates), strict=True)]
    word = tuple(itertools.chain.from_iterable(c.word for c in reversed(certificates)))

    if all(c.steps for c in certificates):
        steps = tuple(itertools.chain.from_iterable(c.steps for c in certificates))
    else:
        steps = ()

    return Certificate(tuple(exponents) or (0,) * n, word, steps)


@dataclass(frozen=True)
class TraceEntry:
    """The polynomial after applying one step (or one letter)."""

    letters: tuple[int, ...]
    polynomial: Polynomial
    step: Step | None = None
    stripped: bool = True


@dataclass(frozen=True)
class Verification:
    valid: bool
    result: Polynomial
    trace: tuple[TraceEntry, ...]


def verify_certificate(ctx: OperatorContext, cert: Certificate) -> Verification:
    """Apply the certificate word to its monomial and record the trace.

    With steps, the trace has one entry per step and `stripped` tells whether
    the step removed exactly its factor. Without steps, the trace has one
    entry per letter.

    Raises:
        CertificateError: If the monomial has the wrong number of variables.

    """
    if cert.n != ctx.n:
        msg = f"Certificate has {cert.n} variables, expected {ctx.n}"
        raise CertificateError(msg)

    p = cert.polynomial(ctx.ring)
    trace = []

    if cert.steps:
        remaining = list(cert.monomial)
        for step in cert.steps:
            p = apply_word(ctx, step.word, p)
            remaining[step.target - 1] -= step.exponent
            stripped = p == monomial(remaining, ctx.ring)
            trace.append(TraceEntry(step.word, p, step, stripped))
    else:
        for i in reversed(cert.word):
            p = ddiff(ctx, i, p)
            trace.append(TraceEntry((i,), p))

    valid = p == 1
    logger.info(
        "Certificate %s of degree %d: valid=%s", cert.describe(), cert.degree, valid
    )
    return Verification(valid, p, tuple(trace))


def _ensure_verified(ctx: OperatorContext, cert: Certificate) -> None:
    if not verify_certificate(ctx, cert).valid:
        msg = f"Certificate {cert.describe()} with word {cert.word} does not verify"
        raise InconsistencyError(msg)


@lru_cache(maxsize=1024)
def _c_type_holds(ctx: OperatorContext, path: tuple[int, ...]) -> bool:
    step = Step(StepKind.C_TYPE, path)
    exponents = [0] * ctx.n
    exponents[step.target - 1] = step.exponent
    holds = apply_word(ctx, step.word, monomial(exponents, ctx.ring)) == 1
    logger.debug("C-type identity on %s: %s", path, holds)
    return holds


def admissible_steps(
    diagram: DynkinDiagram,
    cartan: CartanMatrix,
    target: int,
    unprocessed: Iterable[int],
    *,
    allow_ctype: bool = True,
    ctx: OperatorContext | None = None,
) -> list[Step]:
    """Return every admissible step for `target` inside `unprocessed`.

    One-chain steps end at `target`; C-type steps start at `target` and are
    kept only when their identity holds by direct computation.

    Raises:
        ValueError: If `target` is not in `unprocessed`.

    """
    unprocessed = frozenset(unprocessed)
    if target not in unprocessed:
        msg = f"Target {target} is not unprocessed"
        raise ValueError(msg)

    steps = []
    for other in sorted(unprocessed):
        try:
            path = diagram.path(other, target)
        except ValueError:
            continue

        if not unprocessed.issuperset(path):
            continue

        if is_one_chain(cartan, path):
            steps.append(Step(StepKind.ONE_CHAIN, path))

        back = path[::-1]
        if allow_ctype and is_c_type_path(cartan, back):
            if _c_type_holds(ctx or OperatorContext(cartan), back):
                steps.append(Step(StepKind.C_TYPE, back))

    return steps


def _step_key(step: Step) -> tuple[int, bool, tuple[int, ...]]:
    return (-step.exponent, step.kind is StepKind.C_TYPE, step.path)


def longest_admissible_step(
    diagram: DynkinDiagram,
    cartan: CartanMatrix,
    target: int,
    unprocessed: Iterable[int],
    *,
    allow_ctype: bool = True,
    ctx: OperatorContext | None = None,
) -> Step:
    """Return the admissible step with the largest exponent.

    Ties prefer one-chain steps, then the lexicographically smallest path.
    """
    steps = admissible_steps(
        diagram, cartan, target, unprocessed, allow_ctype=allow_ctype, ctx=ctx
    )
    return min(steps, key=_step_key)


@dataclass(frozen=True)
class ChainOptions:
    """Options of the chain method.

    Attributes:
        allow_ctype (bool): Whether C-type steps may be used.
        exhaustive_rank_cap (int): Components up to this rank are searched
            over all processing orders; larger ones use the greedy order.

    """

    allow_ctype: bool = True
    exhaustive_rank_cap: int = 8


class _OrderSearch:
    def __init__(
        self,
        ctx: OperatorContext,
        diagram: DynkinDiagram,
        vertices: Sequence[int],
        options: ChainOptions,
    ) -> None:
        self.ctx = ctx
        self.diagram = diagram
        self.vertices = frozenset(vertices)
        self.options = options
        self._steps: dict[tuple[int, frozenset[int]], Step] = {}
        self._memo: dict[frozenset[int], tuple[int, tuple[Step, ...]]] = {}

    def best_step(self, target: int, unprocessed: frozenset[int]) -> Step:
        key = (target, unprocessed)
        if key not in self._steps:
            self._steps[key] = longest_admissible_step(
                self.diagram,
                self.ctx.cartan,
                target,
                unprocessed,
                allow_ctype=self.options.allow_ctype,
                ctx=self.ctx,
            )
        return self._steps[key]

    def distance(self, v: int, unprocessed: frozenset[int]) -> int:
        processed = self.vertices - unprocessed
        return min((self.diagram.distance(v, u) for u in processed), default=0)

    def exhaustive(self, unprocessed: frozenset[int] | None = None) -> tuple[Step, ...]:
        """Return the best processing order, as steps in processing order."""
        return self._solve(self.vertices if unprocessed is None else unprocessed)[1]

    def _solve(self, unprocessed: frozenset[int]) -> tuple[int, tuple[Step, ...]]:
        if not unprocessed:
            return 0, ()

        if unprocessed in self._memo:
            return self._memo[unprocessed]

        best_key = None
        best: tuple[int, tuple[Step, ...]] = (0, ())
        for v in sorted(unprocessed):
            step = self.best_step(v, unprocessed)
            total, rest = self._solve(unprocessed - {v})
            total += step.exponent
            key = (total, step.exponent, -self.distance(v, unprocessed), -v)
            if best_key is None or key > best_key:
                best_key, best = key, (total, (step, *rest))

        self._memo[unprocessed] = best
        logger.debug("Best degree on %s: %d", sorted(unprocessed), best[0])
        return best

    def greedy(self) -> tuple[Step, ...]:
        """Process the vertex with the longest step first, repeatedly.

        Taking the shortest step first splits `A_n` paths in the middle and
        loses degree, so the largest exponent is taken.
        """
        unprocessed = self.vertices
        order = []
        while unprocessed:

            def key(v: int, s: frozenset[int] = unprocessed) -> tuple[int, int, int]:
                exponent = self.best_step(v, s).exponent
                return (exponent, -self.distance(v, s), v)

            v = max(unprocessed, key=key)
            order.append(self.best_step(v, unprocessed))
            unprocessed -= {v}

        return tuple(order)


@cache
def _component_certificate(stype: SimpleType, options: ChainOptions) -> Certificate:
    diagram = DynkinDiagram((stype,))
    ctx = OperatorContext(diagram.cartan)
    search = _OrderSearch(ctx, diagram, tuple(diagram.vertices), options)

    if stype.rank <= options.exhaustive_rank_cap:
        order = search.exhaustive()
    else:
        order = search.greedy()

    cert = Certificate.from_steps(stype.rank, reversed(order))
    _ensure_verified(ctx, cert)
    logger.info("Chain certificate %s: %s", stype, cert.describe())
    return cert


def _on_components(
    ctx: OperatorContext,
    diagram: DynkinDiagram,
    certificate_of: Callable[[SimpleType], Certificate],
) -> Certificate:
    certs = [
        certificate_of(stype).relabel(vertices, diagram.rank)
        for stype, vertices in diagram.iter_components()
    ]
    cert = combine(certs, diagram.rank)
    if len(certs) > 1:
        _ensure_verified(ctx, cert)

    return cert


def chain_method_bound(
    ctx: OperatorContext,
    diagram: DynkinDiagram,
    options: ChainOptions | None = None,
) -> Certificate:
    """Return the best chain-method certificate of `diagram`.

    Each component is searched on its own; the certificates are combined
    since operators on disjoint components commute. Components of rank at
    most `options.exhaustive_rank_cap` are searched over all processing
    orders, larger ones greedily.

    Args:
        ctx (OperatorContext): The operator context of `diagram`.
        diagram (DynkinDiagram): The diagram to search.
        options (ChainOptions | None): Search options.

    Returns:
        Certificate: A verified certificate of maximal degree found.

    """
    options = options or ChainOptions()
    return _on_components(ctx, diagram, lambda s: _component_certificate(s, options))


@dataclass(frozen=True)
class TowerCheck:
    """Outcome of the C-type tower identities for type `C_n`.

    Attributes:
        n (int): The rank.
        holds_at (tuple[bool, ...]): `holds_at[i - 1]` tells whether the
            identity for index `i` holds.
        certificate (Certificate | None): The degree `n^2` certificate when
            every identity holds.

    """

    n: int
    holds_at: tuple[bool, ...]
    certificate: Certificate | None

    @property
    def holds(self) -> bool:
        return all(self.holds_at)


def _tower_step(i: int, n: int) -> Step:
    if i == n:
        return Step(StepKind.ONE_CHAIN, (n,))
    return Step(StepKind.C_TYPE, tuple(range(i, n + 1)))


def c_tower_check(ctx: OperatorContext, n: int) -> TowerCheck:
    """Test `d_i...d_{n-1} d_n d_{n-1}...d_i (x_i^(2n-2i+1)) = 1` for all `i`.

    Raises:
        ValueError: If `ctx` is not the context of type `C_n`.

    """
    expected = DynkinDiagram((SimpleType("C", n),)).cartan
    if ctx.cartan != expected:
        msg = f"c_tower_check needs the Cartan matrix of C{n}"
        raise ValueError(msg)

    steps = [_tower_step(i, n) for i in range(n, 0, -1)]
    holds = {}
    for step in steps:
        exponents = [0] * n
        exponents[step.target - 1] = step.exponent
        p = monomial(exponents, ctx.ring)
        holds[step.target] = apply_word(ctx, step.word, p) == 1
        logger.debug("Tower identity %d in C%d: %s", step.target, n, holds[step.target])

    holds_at = tuple(holds[i] for i in range(1, n + 1))
    if not all(holds_at):
        return TowerCheck(n, holds_at, None)

    cert = Certificate.from_steps(n, steps)
    _ensure_verified(ctx, cert)
    return TowerCheck(n, holds_at, cert)


@cache
def _tower_certificate(n: int) -> Certificate | None:
    ctx = OperatorContext.for_diagram(DynkinDiagram((SimpleType("C", n),)))
    return c_tower_check(ctx, n).certificate


@dataclass(frozen=True)
class BruteLimits:
    max_degree: int | None = None
    group_cap: int = DEFAULT_GROUP_CAP


@dataclass(frozen=True)
class BruteResult:
    """Exact unimodular degree with a witness.

    Attributes:
        ud (int): The unimodular degree.
        witness (Certificate): A monomial and a reduced word reaching 1.
        checked (int): The number of monomial and element pairs evaluated.

    """

    ud: int
    witness: Certificate
    checked: int


def exponent_vectors(d: int, n: int) -> Iterator[Monomial]:
    """Yield the exponent vectors of total degree `d`, lexicographically descending."""
    if n == 1:
        yield (d,)
        return

    for first in range(d, -1, -1):
        for rest in exponent_vectors(d - first, n - 1):
            yield (first, *rest)


def brute_force_ud(
    ctx: OperatorContext,
    diagram: DynkinDiagram,
    limits: BruteLimits | None = None,
) -> BruteResult:
    """Find the unimodular degree by exhaustive search.

    Degrees are tried from the top down. For each degree `d` every monic
    monomial of degree `d` is tested against every Weyl element of length
    `d`; the first success is returned.

    Raises:
        ResourceLimitError: If the Weyl group is larger than the cap.

    """
    limits = limits or BruteLimits()
    if diagram.rank == 0:
        return BruteResult(0, Certificate((), ()), 0)

    order = group_order(diagram)
    if order > limits.group_cap:
        raise ResourceLimitError("Weyl group order", limits.group_cap, order)

    top = diagram.positive_root_count
    if limits.max_degree is not None:
        top = min(top, limits.max_degree)

    levels = group_by_length(enumerate_elements(ctx, top, limits.group_cap))
    checked = 0

    for d in range(top, -1, -1):
        elements = levels.get(d, [])
        for exponents in exponent_vectors(d, ctx.n):
            p = monomial(exponents, ctx.ring)
            for w in elements:
                checked += 1
                if apply_word(ctx, w.word, p) == 1:
                    witness = format_monomial(exponents)
                    logger.info("ud(%s) = %d, witness %s", diagram, d, witness)
                    return BruteResult(d, Certificate(exponents, w.word), checked)

    msg = "The identity element must witness degree 0"
    raise InconsistencyError(msg)


@dataclass(frozen=True)
class LowerBound:
    bound: int
    certificate: Certificate


@cache
def _best_component(stype: SimpleType, options: ChainOptions) -> Certificate:
    cert = _component_certificate(stype, options)
    if stype.family == "C" and options.allow_ctype:
        tower = _tower_certificate(stype.rank)
        if tower is not None and tower.degree > cert.degree:
            return tower

    return cert


def ud_lower_bound(
    ctx: OperatorContext,
    diagram: DynkinDiagram,
    options: ChainOptions | None = None,
) -> LowerBound:
    """Return the best verified lower bound for the unimodular degree.

    This is the chain method with C-type steps, compared for type `C_n`
    with the tower certificate. Degrees add over components.
    """
    options = options or ChainOptions()
    cert = _on_components(ctx, diagram, lambda s: _best_component(s, options))
    return LowerBound(cert.degree, cert)
