from typing import Any

import segal.commands.base
from segal import corpus
from segal.bisimplicial.segal import (
    cross_check_report,
    is_segal_group,
    is_segal_group_action,
    is_segal_space,
    loops_comparison,
)
from segal.bisimplicial.space import SpaceMap
from segal.commands.base import Outcome, as_action, as_space, as_sset, lookup
from segal.core import MalformedInputError, Verdict
from segal.groups.constructions import GSpace, borel_projection
from segal.homotopy.chains import homology
from segal.homotopy.fundamental import (
    CERTIFIABLE_ORDER,
    compare_groups,
    finite_invariants,
    pi0,
    pi1_presentation,
)
from segal.jobs import JobSpec
from segal.schemas import Int, Object, Optional, Str
from segal.simplicial.kan import is_fibration, kan_check

DEFAULT_KAN_DIMENSION = 3


class Homology(segal.commands.base.Command):
    NAME = "homology"
    INPUTS = ("*",)

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        X = as_sset(inputs[0], job)
        N = min(job.config.truncation, X.truncation)
        signature = homology(X, N)

        outcome = Outcome()
        outcome.checks["homology"] = Verdict.certify(N, signature=signature.summary())
        outcome.add_homology(X.name or "input", signature)
        outcome.add_object("counts", X.counts())
        return outcome


class Pi1(segal.commands.base.Command):
    NAME = "pi1"
    INPUTS = ("*",)

    OPTIONS_SCHEMA = Object({"group": Optional(Str)})

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        X = as_sset(inputs[0], job)
        N = min(job.config.truncation, X.truncation)
        if X.is_empty():
            raise MalformedInputError(f"{X.name or 'input'} is empty and has no fundamental group")

        presentation = pi1_presentation(X)
        invariants = presentation.invariants()
        outcome = Outcome()
        outcome.add_object("components", pi0(X))
        outcome.add_object("presentation", presentation.as_dict())
        outcome.add_object("invariants", invariants.as_dict())

        if job.option("group"):
            expected = lookup(corpus.group, job.option("group"))
            outcome.checks["pi1"] = compare_groups(finite_invariants(expected), invariants, N)
        elif N < 2:
            outcome.checks["pi1"] = Verdict.consistent(N, "2-simplices are needed for the relations")
        elif invariants.order is not None and invariants.order <= CERTIFIABLE_ORDER:
            outcome.checks["pi1"] = Verdict.certify(N, order=invariants.order)
        else:
            outcome.checks["pi1"] = Verdict.consistent(N, "the order of pi_1 could not be determined")
        return outcome


class Kan(segal.commands.base.Command):
    NAME = "kan"
    INPUTS = ("*",)

    OPTIONS_SCHEMA = Object({"max_dim": Int(min=1, max=8, default=DEFAULT_KAN_DIMENSION)})

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        X = as_sset(inputs[0], job)
        return Outcome(checks={"kan": kan_check(X, job.option("max_dim"))})


class Fibration(segal.commands.base.Command):
    """Horn lifting for every level of a map of simplicial spaces, or for X//G -> W-bar G."""

    NAME = "fibration"
    INPUTS = ("*",)

    OPTIONS_SCHEMA = Object({"max_dim": Int(min=1, max=8, default=DEFAULT_KAN_DIMENSION)})

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        obj = inputs[0]
        max_dim = job.option("max_dim")
        outcome = Outcome()
        if isinstance(obj, GSpace):
            outcome.checks["borel_projection"] = is_fibration(borel_projection(obj, job.config.budget), max_dim)
        elif isinstance(obj, SpaceMap):
            for n, f in enumerate(obj.levels):
                outcome.checks[f"level_{n}"] = is_fibration(f, max_dim)
        else:
            raise MalformedInputError(f"Expected a map of simplicial spaces or a G-space, got {type(obj).__name__}")
        return outcome


class CheckSegalSpace(segal.commands.base.Command):
    NAME = "check-segal-space"
    INPUTS = ("*",)

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        settings = job.config
        B = as_space(inputs[0], job)
        return Outcome.from_report(is_segal_space(B, settings.up_to, settings.truncation, settings.budget))


class CheckSegalGroup(segal.commands.base.Command):
    NAME = "check-segal-group"
    INPUTS = ("*",)

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        settings = job.config
        B = as_space(inputs[0], job)
        return Outcome.from_report(is_segal_group(B, settings.up_to, settings.truncation, settings.budget))


class CheckAction(segal.commands.base.Command):
    NAME = "check-action"
    INPUTS = ("*",)

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        s = job.config
        pi = as_action(inputs[0], job)
        report = is_segal_group_action(pi, s.up_to, s.truncation, s.ex_stage, s.budget)
        return Outcome.from_report(report)


class CrossCheck(segal.commands.base.Command):
    """The last-vertex formulation, and the Segal conditions on the source."""

    NAME = "cross-check"
    INPUTS = ("*",)

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        s = job.config
        pi = as_action(inputs[0], job)
        action = is_segal_group_action(pi, s.up_to, s.truncation, s.ex_stage, s.budget)
        inverted = cross_check_report(pi, s.up_to, s.truncation, s.ex_stage, s.budget)

        outcome = Outcome.from_report(inverted)
        outcome.checks["action"] = action.overall
        return outcome


class Loops(segal.commands.base.Command):
    """pi_0 of B_1 against pi_1 of the diagonal."""

    NAME = "loops"
    INPUTS = ("*",)

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        s = job.config
        B = as_space(inputs[0], job)
        return Outcome(checks={"loops": loops_comparison(B, s.up_to, s.truncation, s.budget)})
