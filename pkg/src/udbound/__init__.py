"""Unimodular degree certificates and canonical dimension bounds.

Compute lower bounds on the unimodular degree of a root system with
1-chain and C-type certificates, verify them exactly with Demazure
operators, and turn them into upper bounds on the canonical dimension of
split semisimple groups over their isogeny classes.
"""

from .demazure import OperatorContext, apply_word, ddiff, reflect, schubert_expand
from .errors import (
    CertificateError,
    InconsistencyError,
    ParseError,
    ResourceLimitError,
    UdboundError,
)
from .isogeny import GroupSpec, cd_upper_bound, product_quotient_bound
from .root_system import DynkinDiagram, SimpleType
from .search import (
    Certificate,
    ChainOptions,
    brute_force_ud,
    c_tower_check,
    chain_method_bound,
    ud_lower_bound,
    verify_certificate,
)
from .settings import Settings, load_settings
from .weyl import enumerate_elements

__all__ = [
    "Certificate",
    "CertificateError",
    "ChainOptions",
    "DynkinDiagram",
    "GroupSpec",
    "InconsistencyError",
    "OperatorContext",
    "ParseError",
    "ResourceLimitError",
    "Settings",
    "SimpleType",
    "UdboundError",
    "apply_word",
    "brute_force_ud",
    "c_tower_check",
    "cd_upper_bound",
    "chain_method_bound",
    "ddiff",
    "enumerate_elements",
    "load_settings",
    "product_quotient_bound",
    "reflect",
    "schubert_expand",
    "ud_lower_bound",
    "verify_certificate",
]
