"""Runtime settings as an OmegaConf structured config.

Settings are layered: dataclass defaults, then `UDBOUND_*` environment
variables, then explicit overrides. A double underscore in an environment
variable name separates nested keys, so `UDBOUND_SEARCH__ALLOW_CTYPE=false`
sets `search.allow_ctype`.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field, fields
from typing import TYPE_CHECKING

from omegaconf import OmegaConf

from .render import to_dotlist
from .search import BruteLimits, ChainOptions
from .isogeny import DEFAULT_TERM_CAP
from .weyl import DEFAULT_GROUP_CAP

if TYPE_CHECKING:
    from collections.abc import Mapping
    from typing import Any

logger = logging.getLogger(__name__)

ENV_PREFIX = "UDBOUND_"


@dataclass
class SearchConfig:
    allow_ctype: bool = True
    exhaustive_rank_cap: int = 8


@dataclass
class Settings:
    """Settings shared by the library entry points and the CLI.

    Attributes:
        group_cap (int): The largest Weyl group that may be enumerated.
        z_term_cap (int): The largest number of terms a substituted
            certificate may expand to in one component.
        max_degree (int): The highest degree tried by the brute-force
            search; -1 means the number of positive roots.
        seed (int): The seed of randomized checks.
        cases (int): The number of random cases per property.
        log_level (str): The logging level name.
        search (SearchConfig): Options of the chain method.

    """

    group_cap: int = DEFAULT_GROUP_CAP
    z_term_cap: int = DEFAULT_TERM_CAP
    max_degree: int = -1
    seed: int = 0
    cases: int = 500
    log_level: str = "WARNING"
    search: SearchConfig = field(default_factory=SearchConfig)

    def __post_init__(self) -> None:
        if min(self.group_cap, self.z_term_cap, self.cases) < 1:
            msg = "group_cap, z_term_cap and cases must be positive"
            raise ValueError(msg)

        if not isinstance(logging.getLevelName(self.log_level.upper()), int):
            msg = f"Unknown log level {self.log_level!r}"
            raise ValueError(msg)

    @property
    def chain_options(self) -> ChainOptions:
        return ChainOptions(self.search.allow_ctype, self.search.exhaustive_rank_cap)

    @property
    def brute_limits(self) -> BruteLimits:
        max_degree = None if self.max_degree < 0 else self.max_degree
        return BruteLimits(max_degree, self.group_cap)


def env_dotlist(environ: Mapping[str, str] | None = None) -> list[str]:
    """Return the `UDBOUND_*` variables that name a setting as a dotlist."""
    environ = os.environ if environ is None else environ
    known = {f.name for f in fields(Settings)}

    dotlist = []
    for key, value in sorted(environ.items()):
        if not key.startswith(ENV_PREFIX):
            continue

        name = key.removeprefix(ENV_PREFIX).lower().replace("__", ".")
        if name.split(".", 1)[0] in known:
            dotlist.append(f"{name}={value}")

    return dotlist


def load_settings(
    *overrides: dict[str, Any] | list[str],
    environ: Mapping[str, str] | None = None,
) -> Settings:
    """Load settings from defaults, the environment and overrides.

    Args:
        *overrides (dict[str, Any] | list[str]): Dicts or dotlists such as
            `["search.allow_ctype=false"]`, merged in order.
        environ (Mapping[str, str] | None): The environment. None uses
            `os.environ`.

    Returns:
        Settings: The merged settings.

    Raises:
        omegaconf.errors.OmegaConfBaseException: If a key is unknown or a
            value has the wrong type.
        ValueError: If a value is out of range.

    """
    cfg = OmegaConf.structured(Settings)

    for layer in (env_dotlist(environ), *overrides):
        dotlist = to_dotlist(layer) if isinstance(layer, dict) else list(layer)
        if dotlist:
            cfg = OmegaConf.merge(cfg, OmegaConf.from_dotlist(dotlist))

    settings = OmegaConf.to_object(cfg)
    logger.debug("Settings: %s", settings)
    return settings  # type: ignore
