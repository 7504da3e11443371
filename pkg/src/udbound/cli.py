"""Command-line interface.

    udbound bound E6:adjoint
    udbound table --max-rank 8
    udbound verify C3 --monomial "x1^5*x2^3*x3" --word 1,2,3,2,1,2,3,2,3
    udbound brute C3
    udbound schubert C3 --poly "x1*x2*x3"
    udbound check B3 --seed 1

Exit codes: 0 on success, 1 when a certificate or property fails, 2 on
usage and parse errors, 3 when a resource cap is exceeded.
"""

from __future__ import annotations

import argparse
import logging
import re
import sys
from dataclasses import replace
from typing import TYPE_CHECKING

from omegaconf.errors import OmegaConfBaseException

from .demazure import OperatorContext, schubert_expand
from .documents import (
    BoundDocument,
    BruteDocument,
    CheckDocument,
    SchubertDocument,
    TableDocument,
    TableRow,
    VerifyDocument,
)
from .errors import (
    InconsistencyError,
    ParseError,
    ResourceLimitError,
    UdboundError,
)
from .isogeny import GroupSpec, Lattice, cd_upper_bound, product_quotient_bound
from .polynomial import exponents_of, homogeneous_degree, parse
from .root_system import DynkinDiagram, SimpleType
from .search import (
    Certificate,
    brute_force_ud,
    chain_method_bound,
    ud_lower_bound,
    verify_certificate,
)
from .settings import load_settings
from .testing import run_property_checks
from .weyl import elements_of_length

if TYPE_CHECKING:
    from collections.abc import Sequence

    from .report import Report
    from .search import ChainOptions
    from .settings import Settings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

_COMPONENT = re.compile(r"([A-Za-z])(\d+)")
_INTEGER = re.compile(r"\d+")
_LATTICES = ("sc", "adjoint", "hs", "pgo", "so", "mu<d>")


class _SpecParser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.position = 0

    def error(
        self,
        message: str,
        *expected: str,
        position: int | None = None,
    ) -> ParseError:
        position = self.position if position is None else position
        return ParseError(message, self.text, position, expected)

    def component(self) -> SimpleType:
        m = _COMPONENT.match(self.text, self.position)
        if not m:
            raise self.error("Expected a simple type", "type such as E8")

        try:
            stype = SimpleType(m.group(1).upper(), int(m.group(2)))
        except ValueError as e:
            raise self.error(str(e)) from None

        self.position = m.end()
        return stype

    def integer(self, what: str) -> int:
        m = _INTEGER.match(self.text, self.position)
        if not m or int(m.group()) < 1:
            raise self.error(f"Expected a positive {what}", what)

        self.position = m.end()
        return int(m.group())

    def expect(self, literal: str) -> None:
        if not self.text.startswith(literal, self.position):
            raise self.error(f"Expected {literal!r}", repr(literal))

        self.position += len(literal)

    def spec(self) -> GroupSpec:
        components = [self.component()]
        while self.text.startswith("+", self.position):
            self.position += 1
            components.append(self.component())

        diagram = DynkinDiagram(tuple(components))
        rest = self.text[self.position : self.position + 1]

        if not rest:
            return GroupSpec.simply_connected(diagram)

        if rest == ":":
            self.position += 1
            return self.lattice(diagram)

        if rest == "^":
            if len(components) != 1:
                raise self.error("Products need a single simple type")

            self.position += 1
            return self.product(components[0])

        raise self.error("Unexpected character", "'+'", "':'", "'^'", "end")

    def lattice(self, diagram: DynkinDiagram) -> GroupSpec:
        start = self.position
        name = self.text[start:].lower()
        single = diagram.components[0] if len(diagram.components) == 1 else None

        try:
            if name == "sc":
                return GroupSpec.simply_connected(diagram)

            if name == "adjoint":
                return GroupSpec.adjoint(diagram)

            if name == "pgo":
                if single is None or single.family != "D":
                    msg = "pgo needs a single type D"
                    raise ValueError(msg)
                return GroupSpec.adjoint(diagram)

            if name in ("hs", "so"):
                if single is None:
                    msg = f"{name} needs a single simple type"
                    raise ValueError(msg)
                factory = GroupSpec.half_spin if name == "hs" else GroupSpec.so
                return factory(single)

            if m := re.fullmatch(r"mu(\d+)", name):
                if single is None:
                    msg = "mu<d> needs a single simple type"
                    raise ValueError(msg)
                return GroupSpec.mu(single, int(m.group(1)))

        except ValueError as e:
            raise self.error(str(e), position=start) from None

        raise self.error("Unknown lattice", *_LATTICES, position=start)

    def product(self, stype: SimpleType) -> GroupSpec:
        m = self.integer("number of copies")
        self.expect("/mu")
        start = self.position
        k = self.integer("subgroup order")

        if self.position != len(self.text):
            raise self.error("Unexpected character", "end")

        try:
            return GroupSpec.product(stype, m, k)
        except ValueError as e:
            raise self.error(str(e), position=start) from None


def parse_group_spec(text: str) -> GroupSpec:
    """Parse a group such as `"E8"`, `"D6:hs"`, `"A2+A2:adjoint"` or `"E6^2/mu3"`.

    Raises:
        ParseError: With the position of the offending character.

    """
    return _SpecParser(text.strip()).spec()


def parse_word(text: str) -> tuple[int, ...]:
    """Parse a comma-separated word such as `"1,2,3"`.

    Raises:
        ParseError: If an entry is not a positive integer.

    """
    word = []
    position = 0
    for part in text.split(","):
        stripped = part.strip()
        if stripped:
            if not stripped.isdigit() or int(stripped) < 1:
                offset = position + part.index(stripped)
                msg = "Expected a positive vertex index"
                raise ParseError(msg, text, offset, ("integer",))
            word.append(int(stripped))
        position += len(part) + 1

    return tuple(word)


def cmd_bound(args: argparse.Namespace, settings: Settings) -> BoundDocument:
    spec = parse_group_spec(args.spec)
    options = settings.chain_options
    if args.no_ctype:
        options = replace(options, allow_ctype=False)

    result = cd_upper_bound(spec, options, settings.z_term_cap)
    product = None
    if spec.lattice is Lattice.PRODUCT:
        stype = spec.diagram.components[0]
        k = spec.quotient.orders[0]
        product = product_quotient_bound(stype, spec.copies, k=k, options=options)

    return BoundDocument.from_bound(result, product, settings.z_term_cap)


def table_types(max_rank: int) -> list[SimpleType]:
    """Return the simple types of the bound table up to `max_rank`."""
    types = []
    for family, low in (("A", 1), ("B", 2), ("C", 2), ("D", 4)):
        types.extend(SimpleType(family, n) for n in range(low, max_rank + 1))

    exceptional = [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
    types.extend(SimpleType(f, n) for f, n in exceptional if n <= max_rank)
    return types


def table_row(stype: SimpleType, options: ChainOptions) -> TableRow:
    diagram = DynkinDiagram((stype,))
    ctx = OperatorContext.for_diagram(diagram)
    chain = chain_method_bound(ctx, diagram, replace(options, allow_ctype=False))
    best = ud_lower_bound(ctx, diagram, options)
    verified = all(verify_certificate(ctx, c).valid for c in (chain, best.certificate))

    return TableRow(
        group=str(stype),
        positive_roots=stype.positive_root_count,
        chain_monomial=chain.factors(),
        chain_ud=chain.degree,
        monomial=best.certificate.factors(),
        ud=best.bound,
        cd=stype.positive_root_count - best.bound,
        verified=verified,
    )


def cmd_table(args: argparse.Namespace, settings: Settings) -> TableDocument:
    rows = [table_row(t, settings.chain_options) for t in table_types(args.max_rank)]
    return TableDocument(max_rank=args.max_rank, rows=rows)


def cmd_verify(
    args: argparse.Namespace,
    settings: Settings,  # noqa: ARG001
) -> VerifyDocument:
    spec = parse_group_spec(args.spec)
    ctx = OperatorContext.for_diagram(spec.diagram)
    exponents = exponents_of(parse(args.monomial, ctx.n))
    word = parse_word(args.word)
    for i in word:
        ctx.check_index(i)

    cert = Certificate(exponents, word)
    verification = verify_certificate(ctx, cert)
    return VerifyDocument.from_verification(spec.label, cert, verification)


def cmd_brute(args: argparse.Namespace, settings: Settings) -> BruteDocument:
    spec = parse_group_spec(args.spec)
    ctx = OperatorContext.for_diagram(spec.diagram)
    limits = settings.brute_limits
    if args.max_degree is not None:
        limits = replace(limits, max_degree=args.max_degree)

    result = brute_force_ud(ctx, spec.diagram, limits)
    bound = ud_lower_bound(ctx, spec.diagram, settings.chain_options)
    return BruteDocument.from_result(spec.label, result, bound)


def cmd_schubert(args: argparse.Namespace, settings: Settings) -> SchubertDocument:
    spec = parse_group_spec(args.spec)
    ctx = OperatorContext.for_diagram(spec.diagram)
    p = parse(args.poly, ctx.n)
    degree = homogeneous_degree(p)
    if degree is None:
        msg = "Schubert expansion needs a nonzero homogeneous polynomial"
        raise ValueError(msg)

    elements = elements_of_length(ctx, degree, settings.group_cap)
    coefficients = schubert_expand(ctx, p, elements)
    return SchubertDocument.from_coefficients(
        spec.label, args.poly, degree, coefficients
    )


def cmd_check(args: argparse.Namespace, settings: Settings) -> CheckDocument:
    spec = parse_group_spec(args.spec)
    cases = settings.cases if args.cases is None else args.cases
    results = run_property_checks(spec.diagram, settings.seed, cases)
    return CheckDocument.from_results(spec.label, settings.seed, cases, results)


def _succeeded(doc: Report) -> bool:
    if isinstance(doc, BoundDocument):
        return doc.verified
    if isinstance(doc, VerifyDocument):
        return doc.valid
    if isinstance(doc, TableDocument):
        return TableDocument.all_verified(doc)
    if isinstance(doc, CheckDocument):
        return CheckDocument.passed(doc)
    return True


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--log-level",
        default=argparse.SUPPRESS,
        help="logging level name, such as INFO",
    )
    common.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        default=argparse.SUPPRESS,
        help="log at DEBUG level",
    )
    common.add_argument(
        "--set",
        action="append",
        dest="overrides",
        metavar="KEY=VALUE",
        default=argparse.SUPPRESS,
        help="override a setting, such as search.allow_ctype=false",
    )
    common.add_argument(
        "--seed",
        type=int,
        default=argparse.SUPPRESS,
        help="seed of randomized checks",
    )
    common.add_argument(
        "--json",
        action="store_true",
        default=argparse.SUPPRESS,
        help="print JSON instead of text",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="udbound",
        description="Unimodular degree certificates and canonical dimension bounds",
        parents=[common],
    )
    commands = parser.add_subparsers(dest="command", required=True)

    bound = commands.add_parser("bound", parents=[common], help="bound cd(G)")
    bound.add_argument("spec", help="group such as E8, E6:adjoint or E6^2/mu3")
    bound.add_argument("--no-ctype", action="store_true", help="use 1-chains only")
    bound.set_defaults(func=cmd_bound)

    table = commands.add_parser("table", parents=[common], help="print the table")
    table.add_argument("--max-rank", type=int, default=8)
    table.set_defaults(func=cmd_table)

    verify = commands.add_parser("verify", parents=[common], help="check a certificate")
    verify.add_argument("spec")
    verify.add_argument("--monomial", required=True, help='such as "x1^5*x2^3*x3"')
    verify.add_argument("--word", required=True, help="such as 1,2,3,2,1")
    verify.set_defaults(func=cmd_verify)

    brute = commands.add_parser("brute", parents=[common], help="exact ud")
    brute.add_argument("spec")
    brute.add_argument("--max-degree", type=int, default=None)
    brute.set_defaults(func=cmd_brute)

    schubert = commands.add_parser("schubert", parents=[common], help="expand")
    schubert.add_argument("spec")
    schubert.add_argument("--poly", required=True)
    schubert.set_defaults(func=cmd_schubert)

    check = commands.add_parser("check", parents=[common], help="property checks")
    check.add_argument("spec")
    check.add_argument("--cases", type=int, default=None)
    check.set_defaults(func=cmd_check)

    return parser


def _settings_from(args: argparse.Namespace) -> Settings:
    overrides: list[dict | list[str]] = [list(getattr(args, "overrides", []))]
    if hasattr(args, "seed"):
        overrides.append({"seed": args.seed})
    if hasattr(args, "log_level"):
        overrides.append({"log_level": args.log_level})
    if getattr(args, "verbose", False):
        overrides.append({"log_level": "DEBUG"})

    return load_settings(*overrides)


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = _settings_from(args)
    except (OmegaConfBaseException, ValueError) as e:
        sys.stderr.write(f"udbound: invalid settings: {e}\n")
        return EXIT_USAGE

    logging.basicConfig(
        level=settings.log_level.upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        doc = args.func(args, settings)
    except ParseError as e:
        sys.stderr.write(f"udbound: {e.describe()}\n")
        return EXIT_USAGE
    except ResourceLimitError as e:
        sys.stderr.write(f"udbound: {e}\n")
        return EXIT_RESOURCE
    except InconsistencyError as e:
        sys.stderr.write(f"udbound: {e}\n")
        return EXIT_FAILED
    except (UdboundError, ValueError) as e:
        sys.stderr.write(f"udbound: {e}\n")
        return EXIT_USAGE

    if getattr(args, "json", False):
        sys.stdout.write(type(doc).to_json(doc) + "\n")
    else:
        sys.stdout.write(type(doc).render(doc))

    if not _succeeded(doc):
        logger.warning("%s failed", args.command)
        return EXIT_FAILED

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
