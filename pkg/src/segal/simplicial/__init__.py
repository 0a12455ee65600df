from segal.simplicial.sset import (
    Presented,
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    basic_complex,
    build,
    delta,
    present,
)

__all__ = [
    "Presented",
    "SimplexRef",
    "SimplicialMap",
    "SimplicialSet",
    "basic_complex",
    "build",
    "delta",
    "present",
]
