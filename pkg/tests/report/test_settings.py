from __future__ import annotations

from typing import TYPE_CHECKING

import pytest
from omegaconf.errors import OmegaConfBaseException

from udbound.settings import Settings, env_dotlist, load_settings

if TYPE_CHECKING:
    from pytest import MonkeyPatch


def test_defaults():
    settings = load_settings(environ={})
    assert settings == Settings()
    assert settings.chain_options.allow_ctype
    assert settings.brute_limits.max_degree is None


def test_env_dotlist():
    environ = {
        "UDBOUND_GROUP_CAP": "100",
        "UDBOUND_SEARCH__ALLOW_CTYPE": "false",
        "UDBOUND_UNKNOWN": "1",
        "GROUP_CAP": "5",
    }
    assert env_dotlist(environ) == ["group_cap=100", "search.allow_ctype=false"]


def test_load_from_environ():
    environ = {"UDBOUND_GROUP_CAP": "100", "UDBOUND_SEARCH__ALLOW_CTYPE": "false"}
    settings = load_settings(environ=environ)
    assert settings.group_cap == 100
    assert settings.brute_limits.group_cap == 100
    assert not settings.chain_options.allow_ctype


def test_load_from_os_environ(monkeypatch: MonkeyPatch):
    monkeypatch.setenv("UDBOUND_SEED", "42")
    assert load_settings().seed == 42


def test_overrides_win_over_environ():
    environ = {"UDBOUND_CASES": "10"}
    settings = load_settings(["cases=20"], {"seed": 3}, environ=environ)
    assert settings.cases == 20
    assert settings.seed == 3


def test_nested_dict_override():
    settings = load_settings({"search": {"exhaustive_rank_cap": 2}}, environ={})
    assert settings.chain_options.exhaustive_rank_cap == 2


def test_max_degree():
    settings = load_settings(["max_degree=4"], environ={})
    assert settings.brute_limits.max_degree == 4


def test_unknown_key():
    with pytest.raises(OmegaConfBaseException):
        load_settings(["no_such_key=1"], environ={})


def test_wrong_type():
    with pytest.raises(OmegaConfBaseException):
        load_settings(["group_cap=many"], environ={})


@pytest.mark.parametrize("override", ["cases=0", "group_cap=-1", "log_level=LOUD"])
def test_out_of_range(override: str):
    with pytest.raises(ValueError, match="positive|log level"):
        load_settings([override], environ={})
