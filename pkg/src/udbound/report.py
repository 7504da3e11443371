"""Base class of documents rendered as text reports or JSON.

A report is a dataclass naming its packaged Jinja template in `_template_`.
Every public classmethod of the report that takes the document as its only
argument and declares a return type is evaluated and added to the template
context under its own name.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, ClassVar

from .render import render, to_json
from .template import get_environment, iter_template_methods

if TYPE_CHECKING:
    from typing import Any, Self


@dataclass
class Report:
    """A document with a template.

    Attributes:
        _template_ (str): The name of a template in `udbound/templates`.

    """

    _template_: str = ""
    reserved: ClassVar[tuple[str, ...]] = ("render", "template_values")

    @classmethod
    def template_values(cls, cfg: Self) -> dict[str, Any]:
        """Return the values of the template methods of `cfg`."""
        values = {}
        for name, obj in iter_template_methods(cls):
            if name not in cls.reserved and (value := obj(cfg)) is not None:
                values[name] = value

        return values

    @classmethod
    def render(cls, cfg: Self) -> str:
        """Render a document, a dataclass or a `DictConfig`, with its template.

        Raises:
            jinja2.TemplateNotFound: If `_template_` is not a packaged
                template.

        """
        template = get_environment().get_template(cfg._template_)
        return render(template, cfg, **cls.template_values(cfg))

    @classmethod
    def to_json(cls, cfg: Self, indent: int | None = 2) -> str:
        """Return the document as JSON without private fields."""
        return to_json(cfg, indent)
