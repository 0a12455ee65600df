import os
from typing import Any

import segal.commands.base
from segal import corpus
from segal.bisimplicial.space import SimplicialSpace, SpaceMap, d_star, diagonal
from segal.commands.base import Outcome, as_space, lookup, validity
from segal.core import MalformedInputError, Verdict
from segal.expressions import evaluate, normalize
from segal.groups.constructions import GSpace, borel, w, wbar
from segal.groups.finite import constant_group
from segal.groups.straightening import bar_action, bar_group
from segal.homotopy.chains import homology
from segal.jobs import JobSpec
from segal.logging import info
from segal.schemas import Int, Object, OneOf, Optional, Str
from segal.serialization import encode, encode_ref, save
from segal.simplicial.sset import SimplicialSet, basic_complex, delta

BUILD_KINDS = ("delta", "boundary", "horn", "circle", "torus", "bar", "w", "wbar", "borel")

DEFAULT_CORPUS_DIR = "corpus"


def counts(obj: Any) -> Any:
    if isinstance(obj, SimplicialSet):
        return obj.counts()
    elif isinstance(obj, SimplicialSpace):
        return [level.counts() for level in obj.levels]
    elif isinstance(obj, GSpace):
        return obj.sset.counts()
    elif isinstance(obj, SpaceMap):
        return counts(obj.source)
    return len(obj)


def emit(outcome: Outcome, obj: Any, output: str | None) -> None:
    """Write obj to output, or inline it in the report."""

    if output:
        save(obj, output)
        info(f"Wrote {obj.summary()} to {output}")
        outcome.add_object("output", output)
    else:
        outcome.add_object("object", encode(obj))


class Build(segal.commands.base.Command):
    NAME = "build"

    OPTIONS_SCHEMA = Object(
        {
            "kind": OneOf(*BUILD_KINDS),
            "n": Int(min=0, max=8, default=1),
            "i": Optional(Int(min=0, max=8)),
            "group": Str(default="Z2"),
            "gspace": Optional(Str),
            "output": Optional(Str),
        }
    )

    def construct(self, job: JobSpec) -> Any:
        settings = job.config
        N = settings.truncation
        kind = job.option("kind")
        n = job.option("n")

        if kind == "delta":
            return delta(n, N)
        elif kind == "boundary":
            return basic_complex("boundary", n, truncation=N)
        elif kind == "horn":
            if job.option("i") is None:
                raise MalformedInputError("A horn needs --i")
            return basic_complex("horn", n, job.option("i"), N)
        elif kind in ("circle", "torus"):
            return lookup(corpus.space, kind, N)

        G = lookup(corpus.group, job.option("group"))
        if kind == "bar":
            if job.option("gspace"):
                return bar_action(lookup(corpus.gspace, job.option("gspace"), G, N), settings.up_to)
            return bar_group(G, settings.up_to, N)
        elif kind == "w":
            return w(constant_group(G, N), settings.budget)
        elif kind == "wbar":
            return wbar(constant_group(G, N), settings.budget).sset
        else:
            return borel(lookup(corpus.gspace, job.option("gspace") or "translation", G, N), settings.budget)

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        obj = self.construct(job)
        outcome = Outcome()
        outcome.checks["valid"] = validity(obj, job.config.truncation)
        outcome.add_object("name", obj.name)
        outcome.add_object("counts", counts(obj))
        emit(outcome, obj, job.option("output"))
        return outcome


class Corpus(segal.commands.base.Command):
    NAME = "corpus"

    OPTIONS_SCHEMA = Object({"output": Str(default=DEFAULT_CORPUS_DIR)})

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        N = job.config.truncation
        up_to = job.config.up_to
        directory = job.option("output")
        os.makedirs(directory, exist_ok=True)

        files: dict[str, Any] = {}
        for name in corpus.GROUPS:
            G = corpus.group(name)
            files[f"group_{name}.json"] = G
            files[f"bar_{name}.json"] = bar_group(G, up_to, N)
            for space_name in corpus.GSPACES:
                if space_name == "swap" and G.order != 2:
                    continue
                files[f"gspace_{space_name}_{name}.json"] = corpus.gspace(space_name, G, N)
        for name in corpus.SPACES:
            files[f"space_{name}.json"] = corpus.space(name, N)

        for filename, obj in files.items():
            save(obj, os.path.join(directory, filename))
        info(f"Wrote {len(files)} corpus files to {directory}")

        outcome = Outcome()
        outcome.add_object("directory", directory)
        outcome.add_object("files", sorted(files))
        return outcome


class Normalize(segal.commands.base.Command):
    NAME = "normalize"
    INPUTS = ("simplicial_set",)

    OPTIONS_SCHEMA = Object({"word": Str})

    def load_inputs(self, job: JobSpec) -> list[Any]:
        # The simplicial set to evaluate the word in is optional.
        if not job.inputs:
            return []
        return super().load_inputs(job)

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        text = job.option("word")
        N = job.config.truncation
        try:
            form = normalize(text)
            simplex = evaluate(text, inputs[0]) if inputs else None
        except ValueError as ex:
            raise MalformedInputError(str(ex)) from ex

        outcome = Outcome()
        outcome.checks["normal_form"] = Verdict.certify(N, normal_form=str(form))
        outcome.add_object("word", text)
        outcome.add_object("normal_form", str(form))
        if simplex is not None:
            outcome.add_object("simplex", encode_ref(simplex))
            outcome.add_object("dimension", simplex.dim)
        return outcome


class Diagonal(segal.commands.base.Command):
    NAME = "diagonal"
    INPUTS = ("*",)

    OPTIONS_SCHEMA = Object({"output": Optional(Str)})

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        B = as_space(inputs[0], job)
        D = diagonal(B, job.config.budget).sset
        N = min(job.config.truncation, D.truncation)

        outcome = Outcome()
        outcome.checks["valid"] = validity(D, N)
        outcome.add_homology(D.name, homology(D, N))
        outcome.add_object("counts", D.counts())
        if job.option("output"):
            emit(outcome, D, job.option("output"))
        return outcome


class DStar(segal.commands.base.Command):
    NAME = "dstar"
    INPUTS = ("simplicial_set",)

    OPTIONS_SCHEMA = Object({"output": Optional(Str)})

    def run(self, job: JobSpec, inputs: list[Any]) -> Outcome:
        A = inputs[0]
        settings = job.config
        B = d_star(A, settings.up_to, settings.budget)

        outcome = Outcome()
        outcome.checks["valid"] = validity(B, B.truncation)
        outcome.add_object("counts", counts(B))
        if job.option("output"):
            emit(outcome, B, job.option("output"))
        return outcome
