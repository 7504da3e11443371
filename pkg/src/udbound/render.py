"""Render report documents with Jinja templates and serialize them to JSON.

Documents are dataclasses. They are converted to OmegaConf structured
configs before rendering, so templates see the same values as the JSON
output.
"""

from __future__ import annotations

import json
from typing import TYPE_CHECKING

from omegaconf import DictConfig, OmegaConf

if TYPE_CHECKING:
    from typing import Any

    from jinja2 import Template


def to_config(cfg: object | None) -> DictConfig:
    if not cfg:
        return OmegaConf.create({})

    if isinstance(cfg, DictConfig):
        return cfg

    return OmegaConf.structured(cfg)


def render(template: Template, cfg: object | None = None, **kwargs) -> str:
    """Render a template with a document as context.

    Args:
        template (Template): The template to render.
        cfg (object | None): The document. Dataclasses are converted with
            `OmegaConf.structured`.
        **kwargs: Extra template variables, such as template method values.

    Returns:
        str: The rendered text.

    """
    return template.render(to_config(cfg), **kwargs)


def to_dotlist(cfg: dict[str, Any], prefix: str = "") -> list[str]:
    """Flatten a possibly nested dictionary into `key.sub=value` strings.

    Examples:
        >>> to_dotlist({"group_cap": 10, "search": {"allow_ctype": False}})
        ['group_cap=10', 'search.allow_ctype=False']

    """
    dotlist = []
    for key, value in cfg.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            dotlist.extend(to_dotlist(value, f"{name}."))
        else:
            dotlist.append(f"{name}={value}")

    return dotlist


def to_container(cfg: object) -> dict[str, Any]:
    """Return a document as plain data without private keys."""
    data = OmegaConf.to_container(to_config(cfg), resolve=True, enum_to_str=True)
    return {k: v for k, v in data.items() if not str(k).startswith("_")}  # type: ignore


def to_json(cfg: object, indent: int | None = 2) -> str:
    return json.dumps(to_container(cfg), indent=indent, ensure_ascii=False)
