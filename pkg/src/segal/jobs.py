import os
from typing import Any, Mapping

from dotenv import dotenv_values

from segal.core import MalformedInputError, Settings, Status
from segal.schemas import JOB_SCHEMA, SETTINGS_SCHEMA, Validator

EXIT_CODES = {
    Status.CERTIFIED: 0,
    Status.REFUTED: 1,
    Status.CONSISTENT: 2,
}
EXIT_INPUT_ERROR = 3

ENV_PREFIX = "SEGAL_"


class Definition:
    SCHEMA: Validator | None = None

    def __init__(self, **kwargs: Any):
        self.__dict__["_attrs"] = kwargs
        self._validate_attrs(kwargs)

    def as_dict(self) -> dict[str, Any]:
        return self.__dict__["_attrs"]

    def get(self, name: str, default: Any = None) -> Any:
        return self.__dict__["_attrs"].get(name, default)

    def _validate_attrs(self, attrs: dict[str, Any]) -> None:
        if self.SCHEMA:
            self.SCHEMA.validate(attrs)

    def __getattr__(self, name: str) -> Any:
        if name == "attrs":
            return self.__dict__["_attrs"]
        if name.startswith("_"):
            name = name[1:]
        return self.__dict__["_attrs"].get(name)

    def __setattr__(self, name: str, value: Any) -> None:
        if name.startswith("_"):
            name = name[1:]
        self.__dict__["_attrs"][name] = value

    def __contains__(self, name: str) -> bool:
        if name.startswith("_"):
            name = name[1:]
        return name in self.__dict__["_attrs"]


class JobSpec(Definition):
    """One command run: name, input files, numeric settings and options."""

    SCHEMA = JOB_SCHEMA

    @property
    def config(self) -> Settings:
        return Settings(**self.attrs["settings"])

    def option(self, name: str, default: Any = None) -> Any:
        value = self.attrs["options"].get(name)
        return default if value is None else value

    def echo(self) -> dict[str, Any]:
        """The job as written into reports: everything but the output path."""

        return {
            "command": self.command,
            "inputs": list(self.inputs),
            "settings": dict(self.settings),
            "options": {k: v for k, v in sorted(self.options.items()) if v is not None},
        }


def _parse_int(name: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise MalformedInputError(f"{name} must be an integer, got '{value}'")


def load_settings(
    overrides: Mapping[str, int | None] | None = None,
    environ: Mapping[str, str | None] | None = None,
) -> dict[str, int]:
    """Defaults, then SEGAL_* variables from the environment and .env, then overrides."""

    if environ is None:
        environ = {**os.environ, **dotenv_values(".env")}

    settings: dict[str, Any] = {}
    for key in ("truncation", "up_to", "ex_stage", "budget"):
        name = ENV_PREFIX + key.upper()
        value = environ.get(name)
        if value:
            settings[key] = _parse_int(name, value)
    for key, value in (overrides or {}).items():
        if value is not None:
            settings[key] = value

    SETTINGS_SCHEMA.validate(settings)
    return settings


def exit_code(status: Status) -> int:
    return EXIT_CODES[status]
