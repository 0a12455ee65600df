import pytest
from segal.commands import command_names, get_command
from segal.commands.checks import Homology
from segal.core import (
    DEFAULT_BUDGET,
    DEFAULT_TRUNCATION,
    Settings,
    Status,
    UnknownCommandError,
)
from segal.jobs import EXIT_INPUT_ERROR, JobSpec, exit_code, load_settings
from segal.schemas import InvalidTypeError, RequiredAttributeError


pytestmark = pytest.mark.usefixtures("commands")


def test_registry() -> None:
    assert get_command("homology") is Homology
    assert "check-segal-group" in command_names()
    assert "tower" in command_names()

    with pytest.raises(UnknownCommandError):
        get_command("frobnicate")


def test_default_settings() -> None:
    settings = load_settings(environ={})

    assert settings["truncation"] == DEFAULT_TRUNCATION
    assert settings["budget"] == DEFAULT_BUDGET
    assert Settings(**settings) == Settings()


def test_settings_layers() -> None:
    environ = {"SEGAL_TRUNCATION": "3", "SEGAL_UP_TO": "2"}

    assert load_settings(environ=environ)["truncation"] == 3
    assert load_settings({"truncation": 4, "up_to": None}, environ)["truncation"] == 4
    assert load_settings({"truncation": 4, "up_to": None}, environ)["up_to"] == 2


def test_invalid_settings() -> None:
    with pytest.raises(ValueError):
        load_settings(environ={"SEGAL_BUDGET": "lots"})
    with pytest.raises(InvalidTypeError):
        load_settings({"truncation": 20}, environ={})
    with pytest.raises(InvalidTypeError):
        load_settings({"up_to": 0}, environ={})


def test_job_spec() -> None:
    job = JobSpec(command="homology", settings=load_settings({"truncation": 2}, environ={}))

    assert job.inputs == []
    assert job.options == {}
    assert job.timing is False
    assert job.config.truncation == 2
    assert job.option("group", "Z2") == "Z2"
    assert job.echo() == {
        "command": "homology",
        "inputs": [],
        "settings": job.settings,
        "options": {},
    }


def test_job_spec_needs_a_command() -> None:
    with pytest.raises(RequiredAttributeError):
        JobSpec(settings=load_settings(environ={}))


def test_exit_codes() -> None:
    assert exit_code(Status.CERTIFIED) == 0
    assert exit_code(Status.REFUTED) == 1
    assert exit_code(Status.CONSISTENT) == 2
    assert EXIT_INPUT_ERROR == 3
