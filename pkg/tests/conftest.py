from __future__ import annotations

import random
from typing import TYPE_CHECKING

import pytest

from udbound.demazure import OperatorContext
from udbound.root_system import DynkinDiagram

if TYPE_CHECKING:
    from pytest import Config, FixtureRequest, Parser

DEFAULT_SEED = 20240601


def pytest_addoption(parser: Parser) -> None:
    parser.addoption(
        "--property-seed",
        type=int,
        default=DEFAULT_SEED,
        help="seed of every randomized property test",
    )


def pytest_report_header(config: Config) -> str:
    return f"property seed: {config.getoption('--property-seed')}"


@pytest.fixture
def seed(request: FixtureRequest) -> int:
    return request.config.getoption("--property-seed")


@pytest.fixture
def rng(seed: int) -> random.Random:
    return random.Random(seed)


@pytest.fixture
def context():
    def context(text: str) -> tuple[DynkinDiagram, OperatorContext]:
        diagram = DynkinDiagram.parse(text)
        return diagram, OperatorContext.for_diagram(diagram)

    return context
