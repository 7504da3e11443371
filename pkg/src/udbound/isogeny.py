"""Canonical dimension bounds for isogeny classes.

A group `G = G^sc / Z` is described by its diagram and a projection `pi`
from the weight lattice onto the character group `Z*`. Removing vertices
whose images generate `Z*` and substituting

    z_i = x_i + sum_j a[i, j] x_{k_j}

for the retained vertices gives monomials in the character lattice of `G`,
so a certificate on the remaining subdiagram bounds `cd(G)` from above by
`|Sigma+| - deg`.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import TYPE_CHECKING

from sympy import factorint

from .demazure import OperatorContext, apply_word
from .errors import CertificateError, InconsistencyError, ResourceLimitError
from .polynomial import constant_term, format_monomial
from .root_system import (
    CenterData,
    DynkinDiagram,
    SimpleType,
    semisimple_center,
    subdiagram,
)
from .search import ChainOptions, ud_lower_bound

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from .polynomial import Polynomial
    from .root_system import Element, Subdiagram
    from .search import Certificate

logger = logging.getLogger(__name__)

DEFAULT_TERM_CAP = 2_000_000


class Lattice(Enum):
    SIMPLY_CONNECTED = "sc"
    ADJOINT = "adjoint"
    HALF_SPIN = "hs"
    SO = "so"
    MU = "mu"
    PRODUCT = "product"


@dataclass(frozen=True)
class Quotient:
    """A homomorphism from the center characters onto `Z*`.

    Attributes:
        orders (tuple[int, ...]): Orders of the cyclic factors of `Z*`.
        matrix (tuple[tuple[int, ...], ...]): Row `r` maps an element `a` of
            the center characters to `sum_j matrix[r][j] * a[j] mod orders[r]`.

    """

    orders: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def identity(cls, orders: Sequence[int]) -> Quotient:
        size = len(orders)
        rows = tuple(tuple(int(i == j) for j in range(size)) for i in range(size))
        return cls(tuple(orders), rows)

    @classmethod
    def trivial(cls) -> Quotient:
        return cls((), ())

    @classmethod
    def reduction(cls, d: int, factors: int = 1) -> Quotient:
        """Sum the cyclic factors and reduce modulo `d`."""
        return cls((d,), ((1,) * factors,))

    def project(self, center: CenterData) -> CenterData:
        """Return `Z*` with the images of the fundamental weights.

        Raises:
            ValueError: If the matrix does not define a homomorphism.

        """
        for row, order in zip(self.matrix, self.orders, strict=True):
            if len(row) != len(center.orders):
                msg = f"Quotient row {row} does not match center {center.orders}"
                raise ValueError(msg)

            if any(c * o % order for c, o in zip(row, center.orders, strict=True)):
                msg = f"Row {row} modulo {order} is not defined on {center.orders}"
                raise ValueError(msg)

        images = tuple(
            tuple(
                sum(c * a for c, a in zip(row, image, strict=True))
                for row in self.matrix
            )
            for image in center.images
        )
        return CenterData(self.orders, images)


@dataclass(frozen=True)
class GroupSpec:
    """A semisimple group given by its diagram and its character group.

    Attributes:
        diagram (DynkinDiagram): The Dynkin diagram.
        lattice (Lattice): The kind of lattice.
        quotient (Quotient): The projection of the center characters onto
            `Z*`.
        label (str): The name used in reports, such as `"E6:adjoint"`.
        copies (int): The number of copies of a simple type for product
            quotients, else 1.

    """

    diagram: DynkinDiagram
    lattice: Lattice
    quotient: Quotient
    label: str
    copies: int = 1

    def __post_init__(self) -> None:
        self.zstar.check(self.diagram.cartan)

    def __str__(self) -> str:
        return self.label

    @cached_property
    def center(self) -> CenterData:
        return semisimple_center(self.diagram)

    @cached_property
    def zstar(self) -> CenterData:
        return self.quotient.project(self.center)

    @property
    def positive_root_count(self) -> int:
        return self.diagram.positive_root_count

    @property
    def is_simply_connected(self) -> bool:
        return self.zstar.size == 1

    @classmethod
    def simply_connected(cls, diagram: DynkinDiagram) -> GroupSpec:
        return cls(diagram, Lattice.SIMPLY_CONNECTED, Quotient.trivial(), str(diagram))

    @classmethod
    def adjoint(cls, diagram: DynkinDiagram) -> GroupSpec:
        orders = semisimple_center(diagram).orders
        label = f"{diagram}:adjoint"
        return cls(diagram, Lattice.ADJOINT, Quotient.identity(orders), label)

    @classmethod
    def half_spin(cls, stype: SimpleType) -> GroupSpec:
        """Return the half-spin group of type `D_n` with `n` even.

        The weight `x_n` stays in the character lattice and `x_{n-1}` does
        not.

        Raises:
            ValueError: If the type is not `D_n` with `n` even.

        """
        if stype.family != "D" or stype.rank % 2:
            msg = f"Half-spin groups need type D with even rank, got {stype}"
            raise ValueError(msg)

        quotient = Quotient((2,), ((1, 0),))
        return cls(DynkinDiagram((stype,)), Lattice.HALF_SPIN, quotient, f"{stype}:hs")

    @classmethod
    def so(cls, stype: SimpleType) -> GroupSpec:
        """Return the special orthogonal group of type `D_n`.

        Raises:
            ValueError: If the type is not `D_n`.

        """
        if stype.family != "D":
            msg = f"Special orthogonal groups here need type D, got {stype}"
            raise ValueError(msg)

        row = (1, 1) if stype.rank % 2 == 0 else (1,)
        quotient = Quotient((2,), (row,))
        return cls(DynkinDiagram((stype,)), Lattice.SO, quotient, f"{stype}:so")

    @classmethod
    def mu(cls, stype: SimpleType, d: int) -> GroupSpec:
        """Return the quotient of `G^sc` by the central subgroup of order `d`.

        Raises:
            ValueError: If the center is not cyclic or `d` does not divide its
                order.

        """
        diagram = DynkinDiagram((stype,))
        orders = semisimple_center(diagram).orders
        if len(orders) != 1 or d < 1 or orders[0] % d:
            msg = f"No cyclic central subgroup of order {d} in {stype}"
            raise ValueError(msg)

        return cls(diagram, Lattice.MU, Quotient.reduction(d), f"{stype}:mu{d}")

    @classmethod
    def product(cls, stype: SimpleType, m: int, k: int | None = None) -> GroupSpec:
        """Return `G^m / mu_k` for the diagonal central subgroup of order `k`.

        Args:
            stype (SimpleType): A simple type with cyclic center.
            m (int): The number of copies.
            k (int | None): The order of the diagonal subgroup. None uses the
                full center order.

        Raises:
            ValueError: If `m < 1`, the center is not cyclic, or `k` does not
                divide its order.

        """
        orders = semisimple_center(DynkinDiagram((stype,))).orders
        if m < 1 or len(orders) != 1:
            msg = f"Product quotients need m >= 1 and a cyclic center, got {stype}^{m}"
            raise ValueError(msg)

        k = orders[0] if k is None else k
        if k < 1 or orders[0] % k:
            msg = f"Order {k} does not divide the center order {orders[0]} of {stype}"
            raise ValueError(msg)

        diagram = DynkinDiagram((stype,) * m)
        label = f"{stype}^{m}/mu{k}"
        return cls(diagram, Lattice.PRODUCT, Quotient.reduction(k, m), label, m)


def _element_order(group: CenterData, element: Element) -> int:
    order, current = 1, element
    while current != group.zero:
        current = group.add(current, element)
        order += 1

    return order


def _max_generators(group: CenterData) -> int:
    return sum(factorint(group.size).values())


def generating_sets(
    center: CenterData,
    quotient: Quotient | None = None,
) -> list[tuple[int, ...]]:
    """Return the inclusion-minimal vertex sets whose images generate `Z*`.

    Sets are ordered by size, then lexicographically. The trivial group is
    generated by the empty set.

    Args:
        center (CenterData): The center characters with the weight images.
        quotient (Quotient | None): The projection onto `Z*`. None uses the
            center itself.

    Raises:
        InconsistencyError: If no set of vertices generates `Z*`.

    """
    zstar = quotient.project(center) if quotient else center
    candidates = [
        i for i in range(1, len(zstar.images) + 1) if zstar.pi(i) != zstar.zero
    ]

    found: list[tuple[int, ...]] = []
    for size in range(_max_generators(zstar) + 1):
        for vertices in itertools.combinations(candidates, size):
            if any(set(f) <= set(vertices) for f in found):
                continue
            if zstar.generates(vertices):
                found.append(vertices)

    if not found:
        msg = "The weight images do not generate the character group"
        raise InconsistencyError(msg)

    return found


@dataclass(frozen=True)
class Substitution:
    """Coefficients of `z_i = x_i + sum_j a[i][j] x_{k_j}`.

    Attributes:
        removed (tuple[int, ...]): The removed vertices `k_1 < ... < k_r`.
        coefficients (dict[int, tuple[int, ...]]): For each retained vertex
            `i`, the non-negative coefficients `a[i][j]`.

    """

    removed: tuple[int, ...]
    coefficients: dict[int, tuple[int, ...]] = field(hash=False)

    def z(self, ctx: OperatorContext, i: int) -> Polynomial:
        pairs = zip(self.coefficients[i], self.removed, strict=True)
        shift = sum((a * ctx.x[k - 1] for a, k in pairs), ctx.ring.zero)
        return ctx.x[i - 1] + shift

    def describe(self, i: int) -> str:
        parts = [f"x{i}"]
        for a, k in zip(self.coefficients[i], self.removed, strict=True):
            if a:
                parts.append(f"x{k}" if a == 1 else f"{a}*x{k}")

        return f"z{i} = " + " + ".join(parts)

    def nontrivial(self) -> dict[int, str]:
        """Return the descriptions of the `z_i` that differ from `x_i`."""
        return {i: self.describe(i) for i, a in self.coefficients.items() if any(a)}


def substitution_for(spec: GroupSpec, removed: Iterable[int]) -> Substitution:
    """Return the minimal substitution for a generating removal.

    For each retained vertex the coefficient vector with the smallest sum,
    then the lexicographically smallest, solving
    `pi(x_i) + sum_j a[i][j] pi(x_{k_j}) = 0` is chosen.

    Raises:
        ValueError: If the removed images do not generate `Z*`.

    """
    zstar = spec.zstar
    removed = tuple(sorted(set(removed)))
    if not zstar.generates(removed):
        msg = f"Vertices {removed} do not generate Z* of {spec}"
        raise ValueError(msg)

    ranges = [range(_element_order(zstar, zstar.pi(k))) for k in removed]
    solutions = sorted(itertools.product(*ranges), key=lambda a: (sum(a), a))

    coefficients = {}
    for i in spec.diagram.vertices:
        if i in removed:
            continue

        for a in solutions:
            weight = [0] * spec.diagram.rank
            weight[i - 1] = 1
            for k, c in zip(removed, a, strict=True):
                weight[k - 1] = c

            if zstar.combine(weight) == zstar.zero:
                coefficients[i] = tuple(a)
                break

    return Substitution(removed, coefficients)


def z_polynomial(
    ctx: OperatorContext,
    sub: Subdiagram,
    substitution: Substitution,
    exponents: Sequence[int],
) -> Polynomial:
    """Expand `prod z_{old(k)}^{e_k}` in the variables of the full diagram."""
    p = ctx.ring.one
    for k, e in enumerate(exponents, start=1):
        if e:
            p *= substitution.z(ctx, sub.old_of_new[k - 1]) ** e

    return p


def z_term_estimate(
    substitution: Substitution,
    sub: Subdiagram,
    exponents: Sequence[int],
) -> int:
    """Return an upper bound on the number of terms of the expanded z-monomial.

    A power `z_i^e` of a linear form with `t` terms has `C(e + t - 1, t - 1)`
    terms, and the product of these counts bounds the whole expansion.
    """
    sizes = []
    for k, e in enumerate(exponents, start=1):
        t = 1 + sum(1 for a in substitution.coefficients[sub.old_of_new[k - 1]] if a)
        sizes.append(math.comb(e + t - 1, t - 1))

    return math.prod(sizes)


def verify_z_certificate(
    spec: GroupSpec,
    removed: Iterable[int],
    cert: Certificate,
    term_cap: int = DEFAULT_TERM_CAP,
) -> bool:
    """Check a subdiagram certificate on the substituted monomial.

    The monomial of `cert` is read in the numbering of the subdiagram left
    after `removed`. It is checked one component of the subdiagram at a
    time: the factor `prod z_i^{e_i}` over a component is expanded in the
    full polynomial ring, and the letters of the word in that component,
    mapped back to the original vertices, are applied to it. Operators of
    one component fix the variables of the others and of the removed
    vertices, so the certificate holds if and only if the product of the
    component values is 1.

    Raises:
        CertificateError: If `cert` does not fit the subdiagram.
        ResourceLimitError: If the expansion of a component factor may
            exceed `term_cap` terms.

    """
    sub = subdiagram(spec.diagram, removed)
    if cert.n != sub.diagram.rank:
        msg = f"Certificate has {cert.n} variables, subdiagram {sub.diagram} needs"
        msg += f" {sub.diagram.rank}"
        raise CertificateError(msg)

    if sub.diagram.rank == 0:
        return True

    ctx = OperatorContext.for_diagram(spec.diagram)
    substitution = substitution_for(spec, sub.removed)

    value = 1
    for _, vertices in sub.diagram.iter_components():
        exponents = [
            e if k in vertices else 0 for k, e in enumerate(cert.monomial, start=1)
        ]
        estimate = z_term_estimate(substitution, sub, exponents)
        if estimate > term_cap:
            raise ResourceLimitError("z-certificate expansion", term_cap, estimate)

        p = z_polynomial(ctx, sub, substitution, exponents)
        word = sub.to_old(v for v in cert.word if v in vertices)
        result = apply_word(ctx, word, p)
        if not result.is_ground:
            logger.info("z-certificate of %s fails on %s", spec, vertices)
            return False

        value *= constant_term(result)

    valid = value == 1
    logger.info("z-certificate of %s without %s: valid=%s", spec, sub.removed, valid)
    return valid


@dataclass(frozen=True)
class Alternative:
    removed: tuple[int, ...]
    subdiagram: DynkinDiagram
    ud: int
    bound: int


@dataclass(frozen=True)
class CdBound:
    """An upper bound for the canonical dimension with its certificate.

    Attributes:
        spec (GroupSpec): The group.
        bound (int): The bound `|Sigma+| - ud`.
        ud (int): The degree of the certificate.
        removed (tuple[int, ...]): The removed vertices.
        certificate (Certificate): The certificate of the subdiagram in the
            original vertex numbering; removed vertices have exponent 0.
        substitution (Substitution): The `z`-substitution.
        subdiagram (Subdiagram): The subdiagram left after the removal.
        sub_certificate (Certificate): The certificate in subdiagram
            numbering.
        alternatives (tuple[Alternative, ...]): Every minimal removal with
            its bound, in the order they were tried.

    """

    spec: GroupSpec
    bound: int
    ud: int
    removed: tuple[int, ...]
    certificate: Certificate
    substitution: Substitution
    subdiagram: Subdiagram
    sub_certificate: Certificate
    alternatives: tuple[Alternative, ...]

    @property
    def z_monomial(self) -> str:
        text = format_monomial(self.certificate.monomial)
        return text.replace("x", "z") if self.removed else text


def _ud_of(diagram: DynkinDiagram, options: ChainOptions) -> Certificate:
    ctx = OperatorContext.for_diagram(diagram)
    return ud_lower_bound(ctx, diagram, options).certificate


def cd_upper_bound(
    spec: GroupSpec,
    options: ChainOptions | None = None,
    term_cap: int = DEFAULT_TERM_CAP,
) -> CdBound:
    """Return the best bound `cd(G) <= |Sigma+| - ud` over minimal removals.

    Every minimal generating set of `Z*` is tried; the removal whose
    subdiagram has the largest unimodular degree bound wins, ties going to
    the first set in the order of `generating_sets`. The winning
    certificate is checked on the substituted monomial.

    Raises:
        InconsistencyError: If the substituted certificate does not verify.
        ResourceLimitError: If checking the substituted certificate would
            expand more than `term_cap` terms in one component.

    """
    options = options or ChainOptions()
    total = spec.positive_root_count

    alternatives = []
    best: tuple[int, tuple[int, ...], Subdiagram, Certificate] | None = None
    for removed in generating_sets(spec.zstar):
        sub = subdiagram(spec.diagram, removed)
        cert = _ud_of(sub.diagram, options)
        bound = total - cert.degree
        alternatives.append(Alternative(removed, sub.diagram, cert.degree, bound))
        if best is None or cert.degree > best[0]:
            best = (cert.degree, removed, sub, cert)

    if best is None:
        msg = f"No generating set for {spec}"
        raise InconsistencyError(msg)

    ud, removed, sub, cert = best
    if removed and not verify_z_certificate(spec, removed, cert, term_cap):
        msg = f"Substituted certificate of {spec} without {removed} does not verify"
        raise InconsistencyError(msg)

    logger.info("cd(%s) <= %d removing %s (%s)", spec, total - ud, removed, sub.diagram)
    return CdBound(
        spec=spec,
        bound=total - ud,
        ud=ud,
        removed=removed,
        certificate=cert.relabel(sub.old_of_new, spec.diagram.rank),
        substitution=substitution_for(spec, removed),
        subdiagram=sub,
        sub_certificate=cert,
        alternatives=tuple(alternatives),
    )


@dataclass(frozen=True)
class ProductBound:
    bound: int
    removed: tuple[int, ...]
    ud_full: int
    ud_sub: int
    subdiagram: DynkinDiagram


def product_quotient_bound(
    stype: SimpleType,
    m: int,
    removed: Iterable[int] | None = None,
    k: int | None = None,
    options: ChainOptions | None = None,
) -> ProductBound:
    """Return `m |Sigma+| - (m - 1) ud(Sigma) - ud(Sigma')` for `G^m / mu_k`.

    The removal is taken from the first copy; `Sigma'` is what is left of
    it. Without an explicit removal the one maximizing `ud(Sigma')` is used.

    Raises:
        ValueError: If `removed` does not generate the diagonal `Z*`.

    """
    options = options or ChainOptions()
    spec = GroupSpec.product(stype, m, k)
    single = DynkinDiagram((stype,))

    if removed is None:
        choices = [
            r for r in generating_sets(spec.zstar) if max(r, default=0) <= stype.rank
        ]
    else:
        choices = [tuple(sorted(set(removed)))]
        in_first = max(choices[0], default=0) <= stype.rank
        if not in_first or not spec.zstar.generates(choices[0]):
            msg = f"Vertices {choices[0]} do not generate the diagonal Z* of {spec}"
            raise ValueError(msg)

    ud_full = _ud_of(single, options).degree
    scored = []
    for choice in choices:
        sub = subdiagram(single, choice)
        scored.append((_ud_of(sub.diagram, options).degree, choice, sub.diagram))

    ud_sub, choice, sub_diagram = max(scored, key=lambda s: s[0])
    bound = m * single.positive_root_count - (m - 1) * ud_full - ud_sub
    logger.info("cd(%s) <= %d", spec, bound)
    return ProductBound(bound, choice, ud_full, ud_sub, sub_diagram)


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def annotations(spec: GroupSpec) -> tuple[str, ...]:
    """Return known facts from the literature about the bound of `spec`."""
    notes = []
    components = spec.diagram.components
    if len(components) != 1:
        return ()

    stype = components[0]
    n = stype.rank
    match spec.lattice, stype.family:
        case Lattice.SIMPLY_CONNECTED, "A" | "C":
            notes.append("cd = 0: the torsion index of the simply connected group is 1")
        case Lattice.SIMPLY_CONNECTED, "B" if _is_power_of_two(n + 1):
            notes.append(f"sharp for Spin_{2 * n + 1} since {n + 1} is a power of 2")
        case Lattice.SIMPLY_CONNECTED, "D" if _is_power_of_two(n):
            notes.append(f"sharp for Spin_{2 * n} since {n} is a power of 2")
        case Lattice.SIMPLY_CONNECTED, "G":
            notes.append("sharp for G2")
        case Lattice.HALF_SPIN, "D" if _is_power_of_two(n):
            notes.append(f"sharp for HSpin_{2 * n} since {n} is a power of 2")
        case Lattice.ADJOINT, "D" if n % 2 == 0 and _is_power_of_two(n):
            notes.append(f"sharp for PGO_{2 * n} since {n} is a power of 2")
        case Lattice.ADJOINT, "E" if n == 7:  # noqa: PLR2004
            notes.append("42 is the dimension of the homogeneous variety G/P_2")

    return tuple(notes)
