"""The packaged Jinja environment and template-method discovery."""

from __future__ import annotations

import inspect
from functools import cache
from inspect import Signature
from pathlib import Path
from typing import TYPE_CHECKING

from jinja2 import Environment, FileSystemLoader

from .polynomial import format_monomial

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Iterator
    from typing import Any, TypeGuard

TEMPLATE_DIR = Path(__file__).parent / "templates"


def format_word(word: Iterable[int]) -> str:
    return ",".join(str(i) for i in word) or "-"


def format_pairs(pairs: Iterable[Iterable[int]]) -> str:
    """Format `[variable, exponent]` pairs as a monomial."""
    exponents: dict[int, int] = {int(i): int(e) for i, e in pairs}
    size = max(exponents, default=0)
    return format_monomial(exponents.get(i, 0) for i in range(1, size + 1))


def format_flag(value: object) -> str:
    return "yes" if value else "no"


@cache
def get_environment() -> Environment:
    """Return the text environment loading the templates shipped with udbound.

    Only the packaged directory is searched, so files in the working
    directory never change the output. Blocks are trimmed so that control
    lines leave no blank lines behind.
    """
    env = Environment(  # noqa: S701
        loader=FileSystemLoader(TEMPLATE_DIR),
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )
    env.filters["word"] = format_word
    env.filters["monomial"] = format_pairs
    env.filters["flag"] = format_flag
    return env


def iter_template_methods(cls: object) -> Iterator[tuple[str, Callable[[Any], Any]]]:
    """Yield the public template methods of a report class by name.

    Args:
        cls (object): The report class.

    Yields:
        tuple[str, Callable[[Any], Any]]: The name and the bound classmethod.

    """
    for name, obj in inspect.getmembers(cls):
        if not name.startswith("_") and is_template_method(obj):
            yield name, obj


def is_template_method(obj: object) -> TypeGuard[Callable[[Any], Any]]:
    """Return whether `obj` contributes a value to the template context.

    Template methods are classmethods taking the document as their only
    argument and declaring a return annotation other than None.
    """
    if not inspect.ismethod(obj) or not inspect.isclass(obj.__self__):
        return False

    signature = inspect.signature(obj)
    if signature.return_annotation in [None, "None", Signature.empty]:
        return False

    return len(signature.parameters) == 1
