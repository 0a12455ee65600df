import logging
import os
import time
from typing import Any

import click
from typing_extensions import Never

from segal.__main__ import PROJECT_VERSION
from segal.commands import command_names, get_command
from segal.core import SegalError, Status, UnknownCommandError, init_commands
from segal.jobs import EXIT_INPUT_ERROR, JobSpec, exit_code, load_settings
from segal.schemas import InvalidTypeError, RequiredAttributeError, UnexpectedAttributesError
from segal.serialization import build_report, dumps, report_status

INPUT_ERRORS = (
    SegalError,
    InvalidTypeError,
    RequiredAttributeError,
    UnexpectedAttributesError,
)

STATUS_COLORS = {
    Status.CERTIFIED: "green",
    Status.CONSISTENT: "yellow",
    Status.REFUTED: "red",
}


class LogFormatter(logging.Formatter):
    COLORS = {
        logging.DEBUG: "white",
        logging.INFO: "bright_white",
        logging.WARNING: "yellow",
        logging.ERROR: "red",
        logging.CRITICAL: "bright_red",
    }

    def __init__(self, format: str) -> None:
        super().__init__(fmt=format)

    def format(self, record: logging.LogRecord) -> str:
        record.msg = click.style(
            record.msg, fg=self.COLORS.get(record.levelno, "white")
        )
        return super().format(record)


def fatal(message: str, exit_code: int = EXIT_INPUT_ERROR) -> Never:
    click.secho(message, fg="red", bold=True, err=True)
    exit(exit_code)


def init_logging(level_name: str) -> None:
    for level in [
        logging.INFO,
        logging.DEBUG,
        logging.WARNING,
        logging.ERROR,
        logging.CRITICAL,
    ]:
        logging.addLevelName(level, "")

    log_level = getattr(logging, level_name.upper(), logging.INFO)
    logging.basicConfig(level=log_level)
    logging.getLogger().handlers[0].setFormatter(
        LogFormatter("%(levelname)s%(message)s")
    )


def print_traceback() -> None:
    if os.environ.get("SEGAL_DEBUG"):
        import traceback

        trace = traceback.format_exc()
        print(trace)


def create_job(
    command: str,
    inputs: tuple[str, ...],
    settings: dict[str, int | None],
    options: dict[str, Any],
    report: str | None,
    timing: bool,
) -> JobSpec:
    """Settings are layered: defaults, SEGAL_* variables and .env, then flags."""

    return JobSpec(
        command=command,
        inputs=list(inputs),
        settings=load_settings(settings),
        options={k: v for k, v in options.items() if v is not None and v is not False},
        report=report,
        timing=timing,
    )


def write_report(report: dict[str, Any], path: str | None) -> None:
    text = dumps(report)
    if path:
        with open(path, "w") as f:
            f.write(text)
        logging.info(f"Report written to {path}")
    else:
        click.echo(text, nl=False)


@click.command("segal")
@click.argument("command", type=str, required=True)
@click.argument("inputs", nargs=-1, type=click.Path(dir_okay=False))
@click.option("--truncation", type=int, help="Internal truncation N")
@click.option("--up-to", type=int, help="External truncation M")
@click.option("--ex-stage", type=int, help="Number of Ex iterations")
@click.option("--budget", type=int, help="Largest number of simplices a construction may build")
@click.option("--report", "report_path", type=click.Path(dir_okay=False), help="Write the report here")
@click.option("--timing", is_flag=True, help="Include the elapsed time in the report")
@click.option("--kind", help="build: what to build")
@click.option("--n", "n", type=int, help="build: dimension")
@click.option("--i", "i", type=int, help="build: horn index")
@click.option("--group", help="Group name (Z2, Z3, S3, 1, Zn, Sn)")
@click.option("--gspace", help="build: corpus G-space name")
@click.option("--functor", help="identity, empty, ex, exK, coskN or postnikovN")
@click.option("--n-max", type=int, help="tower: highest stage")
@click.option("--check-stages", is_flag=True, help="tower: check every stage as an action")
@click.option("--max-dim", type=int, help="kan, fibration: highest horn dimension")
@click.option("--word", help="normalize: operator word such as 'd3 s1 x'")
@click.option("--output", "-o", help="Where to write a built object")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"]),
    default="INFO",
    help="Log level",
)
@click.version_option(PROJECT_VERSION)
def segal_cli(
    command: str,
    inputs: tuple[str, ...],
    truncation: int | None,
    up_to: int | None,
    ex_stage: int | None,
    budget: int | None,
    report_path: str | None,
    timing: bool,
    log_level: str,
    **options: Any,
) -> None:
    init_logging(log_level)
    init_commands()

    try:
        job = create_job(
            command,
            inputs,
            {"truncation": truncation, "up_to": up_to, "ex_stage": ex_stage, "budget": budget},
            options,
            report_path,
            timing,
        )
        klass = get_command(command)
    except UnknownCommandError as e:
        fatal(f"{e}. Available commands: {', '.join(command_names())}")
    except INPUT_ERRORS as e:
        print_traceback()
        fatal(f"Invalid job: {e}")

    logging.info(f"segal {PROJECT_VERSION}: {command}")
    start = time.perf_counter()
    try:
        outcome = klass().execute(job)
    except INPUT_ERRORS as e:
        print_traceback()
        fatal(str(e))
    elapsed = time.perf_counter() - start
    logging.info(f"{command} finished in {elapsed:.2f}s")

    report = build_report(
        job.echo(), outcome.checks, outcome.homology, outcome.objects, elapsed if timing else None
    )
    write_report(report, report_path)

    status = report_status(report)
    click.secho(status.value, fg=STATUS_COLORS[status], bold=True, err=True)
    exit(exit_code(status))


if __name__ == "__main__":
    segal_cli()
