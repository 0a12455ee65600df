import os
from typing import Iterator

import pytest
from pytest import Config, MonkeyPatch, Parser
from segal.core import init_commands, reset_commands
from segal.simplicial.sset import basic_complex

from test.utils import write_object


def pytest_addoption(parser: Parser) -> None:
    parser.addoption(
        "--run-slow",
        action="store_true",
        default=False,
        help="run the full-size acceptance cases and long property runs",
    )


def pytest_configure(config: Config) -> None:
    config.addinivalue_line("markers", "slow: builds large constructions or runs many examples")


def pytest_collection_modifyitems(config: Config, items: list) -> None:
    if config.getoption("--run-slow"):
        return

    skip_slow = pytest.mark.skip(reason="need --run-slow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch: MonkeyPatch, tmp_path_factory: pytest.TempPathFactory) -> None:
    """Keep SEGAL_* variables and any .env of the caller out of the tests."""

    for name in list(os.environ):
        if name.startswith("SEGAL_"):
            monkeypatch.delenv(name)
    monkeypatch.chdir(tmp_path_factory.mktemp("cwd"))


@pytest.fixture
def commands() -> Iterator[None]:
    init_commands()
    yield
    reset_commands()


@pytest.fixture
def circle_file(tmp_path) -> str:
    return write_object(tmp_path, "circle.json", basic_complex("circle", truncation=3))
