from logging import debug as logging_debug
from logging import error as logging_error
from logging import info as logging_info
from logging import warning as logging_warning
from typing import Any


def _render(message: Any) -> str:
    if hasattr(message, "summary"):
        return message.summary()
    return message if isinstance(message, str) else str(message)


def info(message: Any, *args: Any, **kwargs: Any) -> None:
    logging_info(_render(message), *args, **kwargs)


def error(message: Any, *args: Any, **kwargs: Any) -> None:
    logging_error(_render(message), *args, **kwargs)


def warning(message: Any, *args: Any, **kwargs: Any) -> None:
    logging_warning(_render(message), *args, **kwargs)


def debug(message: Any, *args: Any, **kwargs: Any) -> None:
    logging_debug(_render(message), *args, **kwargs)
