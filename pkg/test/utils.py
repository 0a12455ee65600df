import json
import os
from typing import Any

from click.testing import CliRunner, Result
from segal.app import segal_cli
from segal.serialization import SegalObject, save


def write_object(directory: Any, name: str, obj: SegalObject) -> str:
    path = os.path.join(str(directory), name)
    save(obj, path)
    return path


def write_document(directory: Any, name: str, document: dict[str, Any]) -> str:
    path = os.path.join(str(directory), name)
    with open(path, "w") as f:
        json.dump(document, f)
    return path


def run_cli(*args: str) -> Result:
    return CliRunner().invoke(segal_cli, list(args), catch_exceptions=False)


def run_report(directory: Any, *args: str) -> tuple[Result, dict[str, Any]]:
    """Run the CLI with --report and return the result and the parsed report."""

    path = os.path.join(str(directory), "report.json")
    result = run_cli(*args, "--report", path)
    with open(path) as f:
        return result, json.load(f)
