import logging
from typing import Dict

from segal.core import UnknownCommandError

_REGISTERED_COMMANDS: Dict[str, type] = {}


def get_command(name: str) -> type:
    if name not in _REGISTERED_COMMANDS:
        raise UnknownCommandError(f"Unknown command '{name}'")
    return _REGISTERED_COMMANDS[name]


def command_names() -> list[str]:
    return sorted(_REGISTERED_COMMANDS)


def register_command(klass: type) -> None:
    if not getattr(klass, "NAME", ""):
        raise ValueError("Command class must have a NAME attribute")
    if klass.NAME in _REGISTERED_COMMANDS and _REGISTERED_COMMANDS[klass.NAME] != klass:
        raise ValueError(f"Command {klass.NAME} is already registered")
    logging.debug(f"Registering command {klass.NAME} from {klass.__name__}")
    _REGISTERED_COMMANDS[klass.NAME] = klass


def reset_registry() -> None:
    _REGISTERED_COMMANDS.clear()
