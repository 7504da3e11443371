"""Result documents of the command-line tool.

Every document is a plain dataclass that OmegaConf can structure, so the
same object is rendered with a template for humans and serialized to JSON
for machines. Builders re-verify certificates when the document is made,
and `verified` flags are never copied from earlier results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .demazure import OperatorContext
from .isogeny import DEFAULT_TERM_CAP, annotations, verify_z_certificate
from .polynomial import format_polynomial
from .report import Report
from .search import Certificate, Step, StepKind, verify_certificate

if TYPE_CHECKING:
    from .isogeny import CdBound, ProductBound
    from .search import BruteResult, LowerBound, TraceEntry, Verification
    from .testing import PropertyResult
    from .weyl import WeylElement


@dataclass
class StepDoc:
    kind: str = ""
    path: list[int] = field(default_factory=list)
    target: int = 0
    exponent: int = 0
    word: list[int] = field(default_factory=list)

    @classmethod
    def from_step(cls, step: Step) -> StepDoc:
        return cls(
            step.kind.value,
            list(step.path),
            step.target,
            step.exponent,
            list(step.word),
        )

    def to_step(self) -> Step:
        return Step(StepKind(self.kind), tuple(self.path))


@dataclass
class CertificateDoc:
    """A certificate as sorted `[variable, exponent]` pairs and a word."""

    monomial: list[list[int]] = field(default_factory=list)
    word: list[int] = field(default_factory=list)
    steps: list[StepDoc] = field(default_factory=list)
    degree: int = 0
    n: int = 0

    @classmethod
    def from_certificate(cls, cert: Certificate) -> CertificateDoc:
        return cls(
            cert.factors(),
            list(cert.word),
            [StepDoc.from_step(s) for s in cert.steps],
            cert.degree,
            cert.n,
        )

    def to_certificate(self) -> Certificate:
        exponents = [0] * self.n
        for i, e in self.monomial:
            exponents[i - 1] = e

        steps = tuple(s.to_step() for s in self.steps)
        return Certificate(tuple(exponents), tuple(self.word), steps)


@dataclass
class AlternativeDoc:
    removed: list[int] = field(default_factory=list)
    subdiagram: str = ""
    ud: int = 0
    bound: int = 0


@dataclass
class BoundDocument(Report):
    """The unimodular degree and canonical dimension bounds of a group.

    Attributes:
        group (str): The group label.
        dim_flag (int): The dimension of the flag variety, `|Sigma+|`.
        ud_lower_bound (int): The degree of the certificate.
        cd_upper_bound (int): `dim_flag - ud_lower_bound`.
        certificate (CertificateDoc): The certificate in the original
            numbering. Its monomial is in the `z` variables when vertices
            were removed.
        removed_vertices (list[int]): The removed generating vertices.
        subdiagram (str): The diagram left after the removal.
        substitution (list[str]): The nontrivial `z_i` substitutions.
        z_monomial (str): The certificate monomial as text.
        verified (bool): Whether the certificate verified when the document
            was built.
        annotations (list[str]): Facts known from the literature.
        alternatives (list[AlternativeDoc]): Every minimal removal tried.
        formula_bound (int): For product quotients, the bound from the
            product formula; -1 otherwise.

    """

    _template_: str = "bound.jinja"
    group: str = ""
    dim_flag: int = 0
    ud_lower_bound: int = 0
    cd_upper_bound: int = 0
    certificate: CertificateDoc = field(default_factory=CertificateDoc)
    removed_vertices: list[int] = field(default_factory=list)
    subdiagram: str = ""
    substitution: list[str] = field(default_factory=list)
    z_monomial: str = ""
    verified: bool = False
    annotations: list[str] = field(default_factory=list)
    alternatives: list[AlternativeDoc] = field(default_factory=list)
    formula_bound: int = -1

    @classmethod
    def status(cls, cfg: BoundDocument) -> str:
        return "verified" if cfg.verified else "NOT VERIFIED"

    @classmethod
    def from_bound(
        cls,
        result: CdBound,
        product: ProductBound | None = None,
        term_cap: int = DEFAULT_TERM_CAP,
    ) -> BoundDocument:
        spec = result.spec
        if result.removed:
            cert = result.sub_certificate
            verified = verify_z_certificate(spec, result.removed, cert, term_cap)
        else:
            ctx = OperatorContext.for_diagram(spec.diagram)
            verified = verify_certificate(ctx, result.certificate).valid

        alternatives = [
            AlternativeDoc(list(a.removed), str(a.subdiagram), a.ud, a.bound)
            for a in result.alternatives
        ]
        return cls(
            group=spec.label,
            dim_flag=spec.positive_root_count,
            ud_lower_bound=result.ud,
            cd_upper_bound=result.bound,
            certificate=CertificateDoc.from_certificate(result.certificate),
            removed_vertices=list(result.removed),
            subdiagram=str(result.subdiagram.diagram),
            substitution=list(result.substitution.nontrivial().values()),
            z_monomial=result.z_monomial,
            verified=verified,
            annotations=list(annotations(spec)),
            alternatives=alternatives if len(alternatives) > 1 else [],
            formula_bound=-1 if product is None else product.bound,
        )


@dataclass
class TraceDoc:
    letters: list[int] = field(default_factory=list)
    polynomial: str = ""
    step: str = ""
    stripped: bool = True

    @classmethod
    def from_entry(cls, entry: TraceEntry) -> TraceDoc:
        step = "" if entry.step is None else entry.step.kind.value
        return cls(
            list(entry.letters),
            format_polynomial(entry.polynomial),
            step,
            entry.stripped,
        )


@dataclass
class VerifyDocument(Report):
    _template_: str = "verify.jinja"
    group: str = ""
    monomial: str = ""
    word: list[int] = field(default_factory=list)
    degree: int = 0
    valid: bool = False
    result: str = ""
    trace: list[TraceDoc] = field(default_factory=list)

    @classmethod
    def from_verification(
        cls,
        group: str,
        cert: Certificate,
        verification: Verification,
    ) -> VerifyDocument:
        return cls(
            group=group,
            monomial=cert.describe(),
            word=list(cert.word),
            degree=cert.degree,
            valid=verification.valid,
            result=format_polynomial(verification.result),
            trace=[TraceDoc.from_entry(e) for e in verification.trace],
        )


@dataclass
class BruteDocument(Report):
    """The exact unimodular degree next to the chain-method bound."""

    _template_: str = "brute.jinja"
    group: str = ""
    ud: int = 0
    witness: CertificateDoc = field(default_factory=CertificateDoc)
    chain_bound: int = 0
    checked: int = 0

    @classmethod
    def gap(cls, cfg: BruteDocument) -> int:
        return cfg.ud - cfg.chain_bound

    @classmethod
    def from_result(
        cls,
        group: str,
        result: BruteResult,
        bound: LowerBound,
    ) -> BruteDocument:
        return cls(
            group=group,
            ud=result.ud,
            witness=CertificateDoc.from_certificate(result.witness),
            chain_bound=bound.bound,
            checked=result.checked,
        )


@dataclass
class SchubertTerm:
    word: list[int] = field(default_factory=list)
    coefficient: int = 0


@dataclass
class SchubertDocument(Report):
    _template_: str = "schubert.jinja"
    group: str = ""
    polynomial: str = ""
    degree: int = 0
    terms: list[SchubertTerm] = field(default_factory=list)

    @classmethod
    def from_coefficients(
        cls,
        group: str,
        polynomial: str,
        degree: int,
        coefficients: dict[WeylElement, int],
    ) -> SchubertDocument:
        terms = [
            SchubertTerm(list(w.word), c)
            for w, c in sorted(coefficients.items(), key=lambda t: t[0].word)
            if c
        ]
        return cls(group=group, polynomial=polynomial, degree=degree, terms=terms)


@dataclass
class TableRow:
    """One row of the unimodular degree and canonical dimension table.

    Attributes:
        group (str): The simple type.
        positive_roots (int): `|Sigma+|`.
        chain_monomial (list[list[int]]): The 1-chain certificate monomial.
        chain_ud (int): The 1-chain bound.
        monomial (list[list[int]]): The combined certificate monomial.
        ud (int): The combined bound.
        cd (int): The bound on `cd(G^sc)`.
        verified (bool): Whether both certificates verified.

    """

    group: str = ""
    positive_roots: int = 0
    chain_monomial: list[list[int]] = field(default_factory=list)
    chain_ud: int = 0
    monomial: list[list[int]] = field(default_factory=list)
    ud: int = 0
    cd: int = 0
    verified: bool = False


@dataclass
class TableDocument(Report):
    _template_: str = "table.jinja"
    max_rank: int = 0
    rows: list[TableRow] = field(default_factory=list)

    @classmethod
    def all_verified(cls, cfg: TableDocument) -> bool:
        return all(row.verified for row in cfg.rows)


@dataclass
class CheckResultDoc:
    name: str = ""
    cases: int = 0
    failures: int = 0
    example: str = ""


@dataclass
class CheckDocument(Report):
    _template_: str = "check.jinja"
    group: str = ""
    seed: int = 0
    cases: int = 0
    results: list[CheckResultDoc] = field(default_factory=list)

    @classmethod
    def passed(cls, cfg: CheckDocument) -> bool:
        return all(r.failures == 0 for r in cfg.results)

    @classmethod
    def from_results(
        cls,
        group: str,
        seed: int,
        cases: int,
        results: list[PropertyResult],
    ) -> CheckDocument:
        docs = [CheckResultDoc(r.name, r.cases, r.failures, r.example) for r in results]
        return cls(group=group, seed=seed, cases=cases, results=docs)

