import json
from dataclasses import dataclass, field
from pathlib import Path

import pytest
from omegaconf import OmegaConf

from udbound.render import render, to_config, to_container, to_dotlist, to_json


@pytest.fixture
def template_file(tmp_path: Path):
    path = tmp_path / "template.jinja"
    path.write_text("G{{group}}|U{{ud}}|W{{word}}")
    return path


@pytest.fixture
def template(template_file: Path):
    from jinja2 import Environment, FileSystemLoader

    env = Environment(loader=FileSystemLoader(template_file.parent))  # noqa: S701
    return env.get_template(template_file.name)


def test_render_kwargs(template):
    assert render(template, group="A2", ud=3, word=[2, 1, 2]) == "GA2|U3|W[2, 1, 2]"


def test_render_cfg(template):
    s = render(template, {"group": "C3", "ud": 9, "word": [1]})
    assert s == "GC3|U9|W[1]"


@dataclass
class Search:
    allow_ctype: bool = True


@dataclass
class Document:
    _template_: str = "x"
    group: str = "E8"
    ud: int = 34
    word: list[int] = field(default_factory=lambda: [1, 2])
    search: Search = field(default_factory=Search)


def test_render_dataclass(template):
    assert render(template, Document()) == "GE8|U34|W[1, 2]"


def test_to_config():
    cfg = to_config(Document())
    assert cfg.group == "E8"
    assert to_config(cfg) is cfg
    assert to_config(None) == OmegaConf.create({})


@pytest.mark.parametrize(
    ("cfg", "expected"),
    [
        ({"a": 1}, ["a=1"]),
        ({"a": {"b": 2, "c": "x"}}, ["a.b=2", "a.c=x"]),
        ({"group_cap": 10, "search": {"allow_ctype": False}},
         ["group_cap=10", "search.allow_ctype=False"]),
        ({}, []),
    ],
)
def test_to_dotlist(cfg, expected):
    assert to_dotlist(cfg) == expected


def test_to_container_drops_private_keys():
    data = to_container(Document())
    assert "_template_" not in data
    assert data["search"] == {"allow_ctype": True}


def test_to_json():
    data = json.loads(to_json(Document()))
    assert data == {
        "group": "E8",
        "ud": 34,
        "word": [1, 2],
        "search": {"allow_ctype": True},
    }


def test_to_json_compact():
    assert "\n" not in to_json(Document(), indent=None)
