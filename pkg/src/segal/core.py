from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Iterable

DEFAULT_TRUNCATION = 5
DEFAULT_UP_TO = 3
DEFAULT_EX_STAGE = 1
DEFAULT_BUDGET = 1_000_000


class Status(Enum):
    """Tri-state outcome of a check, ordered REFUTED < CONSISTENT < CERTIFIED."""

    REFUTED = "REFUTED"
    CONSISTENT = "CONSISTENT"
    CERTIFIED = "CERTIFIED"

    @property
    def rank(self) -> int:
        return _STATUS_RANK[self]

    def meet(self, other: "Status") -> "Status":
        return self if self.rank <= other.rank else other

    def cap(self, ceiling: "Status") -> "Status":
        return self.meet(ceiling)


_STATUS_RANK = {Status.REFUTED: 0, Status.CONSISTENT: 1, Status.CERTIFIED: 2}


@dataclass(frozen=True)
class Verdict:
    """A status together with the evidence that produced it.

    `truncation` is the dimension up to which the check was carried out. REFUTED
    verdicts always carry a non-empty witness.
    """

    status: Status
    truncation: int
    witness: dict[str, Any] = field(default_factory=dict)
    notes: tuple[str, ...] = ()
    label: str = ""

    def __post_init__(self) -> None:
        if self.status is Status.REFUTED and not self.witness:
            raise ValueError(f"REFUTED verdict '{self.label}' without a witness")

    @property
    def certified(self) -> bool:
        return self.status is Status.CERTIFIED

    @property
    def refuted(self) -> bool:
        return self.status is Status.REFUTED

    def capped(self, ceiling: Status, note: str) -> "Verdict":
        if self.status.rank <= ceiling.rank:
            return replace(self, notes=self.notes + (note,))
        return replace(self, status=ceiling, notes=self.notes + (note,))

    def with_label(self, label: str) -> "Verdict":
        return replace(self, label=label)

    def summary(self) -> str:
        text = f"{self.label or 'check'}: {self.status.value} (N={self.truncation})"
        if self.refuted:
            text += f" witness={self.witness}"
        return text

    def as_dict(self) -> dict[str, Any]:
        return {
            "status": self.status.value,
            "truncation": self.truncation,
            "witness": _jsonable(self.witness),
            "notes": list(self.notes),
        }

    @staticmethod
    def certify(truncation: int, label: str = "", **witness: Any) -> "Verdict":
        return Verdict(Status.CERTIFIED, truncation, dict(witness), label=label)

    @staticmethod
    def consistent(
        truncation: int, note: str, label: str = "", **witness: Any
    ) -> "Verdict":
        return Verdict(Status.CONSISTENT, truncation, dict(witness), (note,), label)

    @staticmethod
    def refute(truncation: int, label: str = "", **witness: Any) -> "Verdict":
        return Verdict(Status.REFUTED, truncation, dict(witness), label=label)


def combine(verdicts: Iterable[Verdict], truncation: int, label: str = "") -> Verdict:
    """Meet of several verdicts; the witness of the first worst one is kept."""

    worst: Verdict | None = None
    notes: list[str] = []
    for v in verdicts:
        notes.extend(n for n in v.notes if n not in notes)
        if worst is None or v.status.rank < worst.status.rank:
            worst = v
    if worst is None:
        return Verdict(Status.CERTIFIED, truncation, label=label)

    witness = dict(worst.witness)
    if worst.label:
        witness.setdefault("failed_check", worst.label)
    return Verdict(worst.status, truncation, witness, tuple(notes), label)


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    elif isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    elif isinstance(value, Enum):
        return value.value
    elif hasattr(value, "as_dict"):
        return value.as_dict()
    elif isinstance(value, (str, int, float, bool)) or value is None:
        return value
    else:
        return str(value)


@dataclass(frozen=True)
class Settings:
    truncation: int = DEFAULT_TRUNCATION
    up_to: int = DEFAULT_UP_TO
    ex_stage: int = DEFAULT_EX_STAGE
    budget: int = DEFAULT_BUDGET


class SegalError(Exception):
    pass


class BudgetExceededError(SegalError):
    def __init__(self, what: str, budget: int) -> None:
        super().__init__(f"Construction of {what} exceeds the budget of {budget} simplices")
        self.what = what
        self.budget = budget


class InvalidObjectError(SegalError):
    def __init__(self, kind: str, violations: list[str]) -> None:
        super().__init__(
            f"Invalid {kind}: " + "; ".join(violations[:20])
            + (f" (and {len(violations) - 20} more)" if len(violations) > 20 else "")
        )
        self.kind = kind
        self.violations = violations


class SimplicialIndexError(SegalError, IndexError):
    pass


class NonSaturatingRelationError(SegalError):
    pass


class MalformedInputError(SegalError, ValueError):
    """A file, name, word or setting that cannot be read as input."""


class StraighteningError(SegalError):
    pass


class UnknownCommandError(SegalError):
    pass


def init_commands() -> None:
    import segal.commands.builds  # noqa
    import segal.commands.checks  # noqa
    import segal.commands.pipelines  # noqa

    commands = [
        segal.commands.builds.Build,
        segal.commands.builds.Corpus,
        segal.commands.builds.Normalize,
        segal.commands.builds.Diagonal,
        segal.commands.builds.DStar,
        segal.commands.checks.Homology,
        segal.commands.checks.Pi1,
        segal.commands.checks.Kan,
        segal.commands.checks.Fibration,
        segal.commands.checks.CheckSegalSpace,
        segal.commands.checks.CheckSegalGroup,
        segal.commands.checks.CheckAction,
        segal.commands.checks.CrossCheck,
        segal.commands.checks.Loops,
        segal.commands.pipelines.Unstraighten,
        segal.commands.pipelines.Straighten,
        segal.commands.pipelines.RoundTrip,
        segal.commands.pipelines.QeCheck,
        segal.commands.pipelines.AuditFunctor,
        segal.commands.pipelines.ApplyFunctor,
        segal.commands.pipelines.Tower,
        segal.commands.pipelines.BorelHolim,
    ]

    from segal.commands import register_command

    for klass in commands:
        register_command(klass)


def reset_commands() -> None:
    from segal.commands import reset_registry

    reset_registry()
