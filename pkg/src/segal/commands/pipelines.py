from typing import Any

import segal.commands.base
from segal import corpus
from segal.bisimplicial.space import counit_check, diagonal
from segal.commands.base import Outcome, as_action, as_space, lookup, validity
from segal.commands.builds import counts, emit
from segal.groups.straightening import borel_holim_check, round_trip, straighten, unstraighten
from segal.homotopy.chains import homology
from segal.jobs import JobSpec
from segal.monoidal.functors import (
    DEFAULT_AUDIT_TRUNCATION,
    apply_levelwise,
    functor_audit,
    functor_by_name,
    truncate_action,
)
from segal.monoidal.tower import DEFAULT_TOWER_HEIGHT, build_tower
from segal.schemas import Bool, Int, Object, Optional, Str
from segal.simplicial.sset import identity_map


def _audit_truncation(job: JobSpec) -> int:
    return min(job.config.truncation, DEFAULT_AUDIT_TRUNCATION)


class Unstraighten(segal.commands.base.Command):
    NAME = "unstraighten"
    INPUTS = ("gspace",)

    OPTIONS_SCHEMA = Object({"output": Optional(Str)})

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        s = job.config
        pi, report = unstraighten(inputs[0], s.up_to, s.truncation, s.ex_stage, s.budget)
        outcome = Outcome.from_report(report)
        outcome.add_object("counts", counts(pi))
        if job.option("output"):
            emit(outcome, pi, job.option("output"))
        return outcome


class Straighten(segal.commands.base.Command):
    """d*(A x_Bar(G) Bar(G, G)) for a map A -> Bar(G); --group names G."""

    NAME = "straighten"
    INPUTS = ("space_map",)

    OPTIONS_SCHEMA = Object({"group": Str(default="Z2"), "output": Optional(Str)})

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        G = lookup(corpus.group, job.option("group"))
        X = straighten(inputs[0], G, job.config.budget)
        N = min(job.config.truncation, X.truncation)

        outcome = Outcome()
        outcome.checks["action_laws"] = validity(X, N)
        outcome.add_homology(X.name, homology(X.sset, N))
        outcome.add_object("counts", counts(X))
        outcome.add_object("free", X.is_free())
        if job.option("output"):
            emit(outcome, X, job.option("output"))
        return outcome


class RoundTrip(segal.commands.base.Command):
    NAME = "roundtrip"
    INPUTS = ("gspace",)

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        result = round_trip(inputs[0], job.config.truncation, job.config.budget)
        outcome = Outcome.from_report(result.report)
        outcome.add_homology("source", result.source)
        outcome.add_homology("straightened", result.straightened)
        outcome.add_homology("borel", result.borel)
        outcome.add_homology("quotient", result.quotient)
        return outcome


class QeCheck(segal.commands.base.Command):
    """The counit d*(d_* A over B) -> A for A = d*B mapping to itself."""

    NAME = "qe-check"
    INPUTS = ("*",)

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        B = as_space(inputs[0], job)
        D = diagonal(B, job.config.budget)
        f = identity_map(D.sset)
        return Outcome(checks={"counit": counit_check(f, B, job.config.budget)})


class AuditFunctor(segal.commands.base.Command):
    NAME = "audit-functor"

    OPTIONS_SCHEMA = Object({"functor": Str})

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        N = _audit_truncation(job)
        L = lookup(functor_by_name, job.option("functor"), job.config.ex_stage, job.config.budget)
        spaces, equivalences = corpus.audit_corpus(N)
        return Outcome.from_report(functor_audit(L, spaces, equivalences, N))


class ApplyFunctor(segal.commands.base.Command):
    NAME = "apply-functor"
    INPUTS = ("*",)

    OPTIONS_SCHEMA = Object({"functor": Str})

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        s = job.config
        N = _audit_truncation(job)
        L = lookup(functor_by_name, job.option("functor"), s.ex_stage, s.budget)
        pi = truncate_action(as_action(inputs[0], job), N)
        image, report = apply_levelwise(L, pi, s.up_to, N, s.ex_stage, s.budget)

        outcome = Outcome.from_report(report)
        outcome.add_object("source_counts", counts(image.source))
        outcome.add_object("target_counts", counts(image.target))
        return outcome


class Tower(segal.commands.base.Command):
    NAME = "tower"
    INPUTS = ("gspace",)

    OPTIONS_SCHEMA = Object(
        {
            "n_max": Int(min=0, max=4, default=DEFAULT_TOWER_HEIGHT),
            "check_stages": Bool(default=False),
        }
    )

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        s = job.config
        tower = build_tower(
            inputs[0],
            job.option("n_max"),
            s.ex_stage,
            s.up_to,
            _audit_truncation(job),
            s.budget,
            job.option("check_stages"),
        )

        outcome = Outcome.from_report(tower.checks)
        for stage in tower.stages:
            if stage.report is not None:
                outcome.checks[f"stage_{stage.n}"] = stage.report.overall
        outcome.add_object("tower", tower.as_dict())
        return outcome


class BorelHolim(segal.commands.base.Command):
    """Borel constructions against homotopy pullbacks on the corpus cospans."""

    NAME = "borel-holim"

    OPTIONS_SCHEMA = Object({"group": Str(default="Z2")})

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        s = job.config
        G = lookup(corpus.group, job.option("group"))
        outcome = Outcome()
        for name, (f, g) in corpus.cospans(G, s.truncation).items():
            outcome.checks[name] = borel_holim_check(f, g, s.truncation, s.budget, label=name)
        return outcome
