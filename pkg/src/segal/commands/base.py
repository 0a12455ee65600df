from dataclasses import dataclass, field
from typing import Any, Callable, Sequence, TypeVar

from segal.bisimplicial.segal import SegalReport
from segal.bisimplicial.space import SimplicialSpace, SpaceMap, diagonal
from segal.core import MalformedInputError, Verdict
from segal.groups.constructions import GSpace, wbar
from segal.groups.finite import FiniteGroup, constant_group
from segal.groups.straightening import bar_action, bar_group
from segal.homotopy.chains import HomologySignature
from segal.jobs import JobSpec
from segal.logging import info
from segal.schemas import UnexpectedAttributesError, Validator
from segal.serialization import load
from segal.simplicial.sset import SimplicialSet

T = TypeVar("T")


@dataclass
class Outcome:
    """What a command found: verdicts, homology signatures and plain objects."""

    checks: dict[str, Verdict] = field(default_factory=dict)
    homology: dict[str, HomologySignature] | None = None
    objects: dict[str, Any] | None = None

    @classmethod
    def from_report(cls, report: SegalReport) -> "Outcome":
        return cls(checks=dict(report.effective))

    def add_homology(self, name: str, signature: HomologySignature) -> None:
        if self.homology is None:
            self.homology = {}
        self.homology[name] = signature

    def add_object(self, name: str, value: Any) -> None:
        if self.objects is None:
            self.objects = {}
        self.objects[name] = value


class Command:
    NAME: str = ""

    # Kinds of the positional inputs, in order; "*" accepts any kind.
    INPUTS: Sequence[str] = ()
    OPTIONS_SCHEMA: Validator | None = None

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        raise NotImplementedError()

    def load_inputs(self, job: JobSpec) -> list[Any]:
        paths = list(job.inputs)
        if len(paths) != len(self.INPUTS):
            raise MalformedInputError(
                f"'{self.NAME}' takes {len(self.INPUTS)} input file(s), got {len(paths)}"
            )
        return [load(path, None if kind == "*" else kind) for path, kind in zip(paths, self.INPUTS)]

    def execute(self, job: JobSpec) -> Outcome:
        if self.OPTIONS_SCHEMA:
            self.OPTIONS_SCHEMA.validate(job.options)
        elif job.options:
            raise UnexpectedAttributesError(job.options)
        inputs = self.load_inputs(job)
        info(f"Running {self.NAME} on {', '.join(job.inputs) or 'built-in objects'}")
        return self.run(job, inputs)


def as_space(obj: Any, job: JobSpec) -> SimplicialSpace:
    """A simplicial space input; a finite group stands for its Bar(G)."""

    settings = job.config
    if isinstance(obj, SimplicialSpace):
        return obj
    elif isinstance(obj, FiniteGroup):
        return bar_group(obj, settings.up_to, settings.truncation)
    raise MalformedInputError(f"Expected a simplicial space or a finite group, got {type(obj).__name__}")


def as_action(obj: Any, job: JobSpec) -> SpaceMap:
    """A map of simplicial spaces; a G-space stands for Bar(X, G) -> Bar(G)."""

    if isinstance(obj, SpaceMap):
        return obj
    elif isinstance(obj, GSpace):
        return bar_action(obj, job.config.up_to)
    raise MalformedInputError(f"Expected a map of simplicial spaces or a G-space, got {type(obj).__name__}")


def as_sset(obj: Any, job: JobSpec) -> SimplicialSet:
    """A simplicial set input; spaces give their diagonal, G-spaces their underlying
    set and finite groups their classifying space."""

    settings = job.config
    if isinstance(obj, SimplicialSet):
        return obj
    elif isinstance(obj, SimplicialSpace):
        return diagonal(obj, settings.budget).sset
    elif isinstance(obj, GSpace):
        return obj.sset
    elif isinstance(obj, FiniteGroup):
        return wbar(constant_group(obj, settings.truncation), settings.budget).sset
    raise MalformedInputError(f"Expected a simplicial set, got {type(obj).__name__}")


def validity(obj: Any, truncation: int) -> Verdict:
    """CERTIFIED when the object satisfies its own identities, else the first violations."""

    problems = obj.violations()
    if problems:
        return Verdict.refute(truncation, violations=problems[:5])
    return Verdict.certify(truncation)


def lookup(factory: Callable[..., T], *args: Any) -> T:
    """A named corpus object or functor; unknown names are input errors."""

    try:
        return factory(*args)
    except ValueError as ex:
        raise MalformedInputError(str(ex)) from ex
