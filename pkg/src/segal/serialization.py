"""JSON (or YAML) codecs for the object kinds and for reports.

Decoding always re-validates: a decoded object satisfies its type invariants or
InvalidObjectError lists everything that does not hold.
"""

import json
import os
from typing import Any, Callable

import yaml

from segal.__main__ import PROJECT_VERSION
from segal.bisimplicial.space import SimplicialSpace, SpaceMap
from segal.core import (
    InvalidObjectError,
    MalformedInputError,
    SimplicialIndexError,
    Status,
    Verdict,
    _jsonable,
    combine,
)
from segal.expressions import parse_ref
from segal.groups.constructions import GSpace, from_generator_action, trivial_action
from segal.groups.finite import FiniteGroup
from segal.homotopy.chains import HomologySignature
from segal.schemas import (
    OBJECT_SCHEMAS,
    REPORT_SCHEMA,
    SCHEMA_VERSION,
    InvalidTypeError,
    RequiredAttributeError,
    UnexpectedAttributesError,
)
from segal.simplicial import operators as ops
from segal.simplicial.sset import SimplexRef, SimplicialMap, SimplicialSet, generator_name

SegalObject = SimplicialSet | SimplicialSpace | FiniteGroup | GSpace | SpaceMap


def encode_ref(ref: SimplexRef) -> dict[str, Any]:
    """{"s": [i_1, ..., i_k], "g": x} for s_(i_1) ... s_(i_k) x."""

    return {"s": list(ref.word), "g": generator_name(ref.generator)}


def _names(X: SimplicialSet) -> dict[Any, str]:
    names = {g: generator_name(g) for gens in X.generators for g in gens}
    if len(set(names.values())) != len(names):
        raise MalformedInputError(f"Generator names of {X.name} are not unique once printed")
    return names


def encode_sset(X: SimplicialSet) -> dict[str, Any]:
    names = _names(X)
    return {
        "kind": "simplicial_set",
        "name": X.name,
        "truncation": X.truncation,
        "generators": [[names[g] for g in gens] for gens in X.generators],
        "faces": {names[g]: [encode_ref(f) for f in faces] for g, faces in X.faces.items() if g in names},
    }


def _encode_images(f: SimplicialMap) -> dict[str, Any]:
    return {generator_name(g): encode_ref(ref) for g, ref in f.images.items()}


def encode_space(B: SimplicialSpace) -> dict[str, Any]:
    return {
        "kind": "simplicial_space",
        "name": B.name,
        "ext_truncation": B.ext_truncation,
        "levels": [encode_sset(level) for level in B.levels],
        "ext_faces": [{"n": n, "i": i, "images": _encode_images(f)} for (n, i), f in sorted(B.faces.items())],
        "ext_degen": [
            {"n": n, "i": i, "images": _encode_images(s)} for (n, i), s in sorted(B.degeneracies.items())
        ],
    }


def encode_gspace(X: GSpace) -> dict[str, Any]:
    """Only for discrete groups permuting generators."""

    G = X.finite_group
    S = X.sset
    action = {}
    for gens in S.generators:
        for g in gens:
            images = [X.act_ref(S.ref(g), h) for h in range(G.order)]
            if any(image.degenerate for image in images):
                raise MalformedInputError(f"The action of {G.name} on {X.name} does not permute generators")
            action[generator_name(g)] = [generator_name(image.generator) for image in images]
    return {
        "kind": "gspace",
        "name": X.name,
        "space": encode_sset(S),
        "group": G.as_dict(),
        "action": action,
    }


def encode_space_map(f: SpaceMap) -> dict[str, Any]:
    return {
        "kind": "space_map",
        "name": f.name,
        "source": encode_space(f.source),
        "target": encode_space(f.target),
        "levels": [_encode_images(level) for level in f.levels],
    }


def encode(obj: SegalObject) -> dict[str, Any]:
    if isinstance(obj, SimplicialSet):
        return encode_sset(obj)
    elif isinstance(obj, SimplicialSpace):
        return encode_space(obj)
    elif isinstance(obj, FiniteGroup):
        return obj.as_dict()
    elif isinstance(obj, GSpace):
        return encode_gspace(obj)
    elif isinstance(obj, SpaceMap):
        return encode_space_map(obj)
    else:
        raise TypeError(f"Cannot encode {type(obj).__name__}")


def _decode_ref(value: Any, dims: dict[str, int]) -> SimplexRef:
    if isinstance(value, str):
        return parse_ref(value, dims)
    generator = value.get("g", value.get("generator"))
    if generator is None:
        raise MalformedInputError(f"{value} names no generator")
    if generator not in dims:
        raise MalformedInputError(f"unknown generator '{generator}'")
    indices = value.get("s", value.get("word")) or []
    theta, dim = ops.operator_from_word([("s", i) for i in indices], dims[generator])
    return SimplexRef(generator, ops.word_from_surjection(theta), dim)


def _dims(X: SimplicialSet) -> dict[str, int]:
    return {str(g): n for g, n in X.dim_of.items()}


def decode_sset(data: dict[str, Any]) -> SimplicialSet:
    generators = data["generators"]
    dims = {g: n for n, gens in enumerate(generators) for g in gens}
    faces = {}
    for g, refs in data.get("faces", {}).items():
        try:
            faces[g] = tuple(_decode_ref(r, dims) for r in refs)
        except (ValueError, SimplicialIndexError) as ex:
            raise InvalidObjectError("simplicial set", [f"faces of {g}: {ex}"]) from ex
    truncation = data.get("truncation", max(len(generators) - 1, 0))
    if len(generators) > truncation + 1:
        raise InvalidObjectError("simplicial set", [f"generators above the truncation {truncation}"])
    return SimplicialSet(truncation, generators, faces, data.get("name", "")).validate()


def decode_group(data: dict[str, Any]) -> FiniteGroup:
    return FiniteGroup(
        tuple(data["elements"]), tuple(tuple(row) for row in data["table"]), data.get("name", "")
    ).validate()


def _decode_map(source: SimplicialSet, target: SimplicialSet, images: dict[str, Any], name: str) -> SimplicialMap:
    dims = _dims(target)
    try:
        decoded = {g: _decode_ref(r, dims) for g, r in images.items()}
    except (ValueError, SimplicialIndexError) as ex:
        raise InvalidObjectError("simplicial map", [f"{name}: {ex}"]) from ex
    return SimplicialMap(source, target, decoded, name)


def _records(data: dict[str, Any], key: str, alias: str) -> list[dict[str, Any]]:
    if data.get(key) is not None and data.get(alias) is not None:
        raise InvalidObjectError("simplicial space", [f"both '{key}' and '{alias}' are given"])
    records = data.get(key)
    return records if records is not None else data.get(alias) or []


def decode_space(data: dict[str, Any]) -> SimplicialSpace:
    levels = [decode_sset(level) for level in data["levels"]]
    M = len(levels) - 1
    declared = data.get("ext_truncation")
    if declared is not None and declared != M:
        raise InvalidObjectError("simplicial space", [f"ext_truncation {declared} but {len(levels)} levels"])

    def structure(records: list[dict[str, Any]], kind: str, step: int) -> dict[tuple[int, int], SimplicialMap]:
        maps = {}
        for record in records:
            n, i = record["n"], record["i"]
            if not 0 <= n + step <= M or not 0 <= n <= M or i > n:
                raise InvalidObjectError("simplicial space", [f"{kind}{i} out of range at level {n}"])
            maps[(n, i)] = _decode_map(levels[n], levels[n + step], record["images"], f"{kind}{i}")
        return maps

    return SimplicialSpace(
        levels,
        structure(_records(data, "ext_faces", "faces"), "d", -1),
        structure(_records(data, "ext_degen", "degeneracies"), "s", 1),
        data.get("name", ""),
    ).validate()


def decode_gspace(data: dict[str, Any]) -> GSpace:
    X = decode_sset(data["space"])
    G = decode_group(data["group"])
    name = data.get("name") or X.name
    action = data.get("action")
    if action is None:
        return trivial_action(X, G, name).validate()

    problems = []
    for g in _dims(X):
        row = action.get(g)
        if row is None or len(row) != G.order:
            problems.append(f"action of {G.name} on {g} needs {G.order} images")
        elif any(x not in X.dim_of or X.dim_of[x] != X.dim_of[g] for x in row):
            problems.append(f"images of {g} must be generators of the same dimension")
    if problems:
        raise InvalidObjectError("G-space", problems)
    return from_generator_action(X, G, {g: tuple(row) for g, row in action.items()}, name).validate()


def decode_space_map(data: dict[str, Any]) -> SpaceMap:
    source = decode_space(data["source"])
    target = decode_space(data["target"])
    levels = [
        _decode_map(source.level(n), target.level(n), images, f"f_{n}")
        for n, images in enumerate(data["levels"])
    ]
    return SpaceMap(source, target, levels, data.get("name", "")).validate()


DECODERS: dict[str, Callable[[dict[str, Any]], Any]] = {
    "simplicial_set": decode_sset,
    "finite_group": decode_group,
    "simplicial_space": decode_space,
    "gspace": decode_gspace,
    "space_map": decode_space_map,
}


def detect_kind(data: dict[str, Any]) -> str:
    if "kind" in data:
        return str(data["kind"])
    elif "generators" in data:
        return "simplicial_set"
    elif "elements" in data:
        return "finite_group"
    elif "space" in data and "group" in data:
        return "gspace"
    elif "source" in data and "target" in data:
        return "space_map"
    elif "levels" in data or "ext_truncation" in data:
        return "simplicial_space"
    raise MalformedInputError(f"Cannot tell the kind of object from the keys {sorted(data)}")


def decode(data: Any, expected: str | None = None) -> Any:
    if not isinstance(data, dict):
        raise MalformedInputError("An object document must be a mapping")
    kind = detect_kind(data)
    if kind not in DECODERS:
        raise MalformedInputError(f"Unknown object kind '{kind}'")
    if expected is not None and kind != expected:
        raise MalformedInputError(f"Expected a {expected}, got a {kind}")
    try:
        OBJECT_SCHEMAS[kind].validate(data)
    except (InvalidTypeError, RequiredAttributeError, UnexpectedAttributesError) as ex:
        raise MalformedInputError(f"Invalid {kind}: {ex}") from ex
    return DECODERS[kind](data)


def read_document(path: str) -> Any:
    if not os.path.exists(path):
        raise MalformedInputError(f"File not found: {path}")
    with open(path, "r") as f:
        contents = f.read()
    try:
        return yaml.safe_load(contents)
    except yaml.YAMLError as ex:
        raise MalformedInputError(f"{path} is neither JSON nor YAML: {ex}") from ex


def load(path: str, expected: str | None = None) -> Any:
    return decode(read_document(path), expected)


def dumps(data: Any) -> str:
    return json.dumps(_jsonable(data), sort_keys=True, indent=2) + "\n"


def save(obj: SegalObject, path: str) -> None:
    with open(path, "w") as f:
        f.write(dumps(encode(obj)))


def build_report(
    job: dict[str, Any],
    checks: dict[str, Verdict],
    homology: dict[str, HomologySignature] | None = None,
    objects: dict[str, Any] | None = None,
    timing: float | None = None,
) -> dict[str, Any]:
    overall = combine(checks.values(), job.get("settings", {}).get("truncation", 0))
    report: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": PROJECT_VERSION,
        "job": _jsonable(job),
        "status": overall.status.value,
        "checks": {name: v.as_dict() for name, v in checks.items()},
    }
    if homology is not None:
        report["homology"] = {name: h.as_dict() for name, h in homology.items()}
    if objects is not None:
        report["objects"] = _jsonable(objects)
    if timing is not None:
        report["timing"] = round(timing, 3)
    REPORT_SCHEMA.validate(report)
    return report


def report_status(report: dict[str, Any]) -> Status:
    return Status(report["status"])
