"""Postnikov towers of unstraightened actions.

Stage n applies P_n = cosk_(n+1) o Ex^k levelwise to Bar(X, G) -> Bar(G). All
stages share one Ex^k, so the connecting maps are coskeleton restrictions.
"""

from dataclasses import dataclass, field
from typing import Any

from segal.bisimplicial.segal import SegalReport
from segal.bisimplicial.space import SimplicialSpace, SpaceMap, compose_space_maps
from segal.core import DEFAULT_BUDGET, DEFAULT_EX_STAGE, DEFAULT_UP_TO, Verdict
from segal.groups.constructions import GSpace
from segal.groups.straightening import bar_action
from segal.homotopy.chains import homology
from segal.logging import debug, info
from segal.monoidal.functors import (
    DEFAULT_AUDIT_TRUNCATION,
    ExFunctor,
    PostnikovFunctor,
    apply_levelwise,
    levelwise,
    truncate_action,
)
from segal.simplicial.sset import SimplicialMap, generator_name

DEFAULT_TOWER_HEIGHT = 2


@dataclass
class TowerStage:
    n: int
    functor: PostnikovFunctor
    action: SpaceMap
    source_unit: SpaceMap
    target_unit: SpaceMap
    report: SegalReport | None = None

    def as_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "functor": self.functor.name,
            "source_counts": [level.counts() for level in self.action.source.levels],
            "target_counts": [level.counts() for level in self.action.target.levels],
            "homology": homology(self.action.source.level(0)).summary(),
            "report": None if self.report is None else self.report.as_dict(),
        }


@dataclass
class TowerDiagram:
    """Stages P_n pi, the maps p_n: P_n -> P_(n-1) and tau_n: id -> P_n."""

    action: SpaceMap
    stages: list[TowerStage] = field(default_factory=list)
    connecting: dict[int, tuple[SpaceMap, SpaceMap]] = field(default_factory=dict)
    checks: SegalReport = field(default_factory=SegalReport)

    def summary(self) -> str:
        return f"TowerDiagram({self.action.source.name}: {len(self.stages)} stages, {self.checks.overall.status.value})"

    def stage(self, n: int) -> TowerStage:
        return self.stages[n]

    def as_dict(self) -> dict[str, Any]:
        return {
            "source": self.action.source.name,
            "stages": [stage.as_dict() for stage in self.stages],
            "commutation": self.checks.as_dict(),
        }


def _natural(f: SpaceMap, N: int) -> Verdict:
    problems = f.violations()
    if problems:
        return Verdict.refute(N, map=f.name, violations=problems[:5])
    return Verdict.certify(N, map=f.name)


def _agree(left: SpaceMap, right: SpaceMap, N: int) -> Verdict:
    for n, (a, b) in enumerate(zip(left.levels, right.levels)):
        bad = a.differences(b)
        if bad:
            return Verdict.refute(N, level=n, generator=generator_name(bad[0]))
    return Verdict.certify(N)


def _unit(L: PostnikovFunctor, B: SimplicialSpace, image: SimplicialSpace) -> SpaceMap:
    levels: list[SimplicialMap] = []
    for level in B.levels:
        unit = L.unit(level)
        assert unit is not None
        levels.append(unit)
    return SpaceMap(B, image, levels, f"tau_{L.n}")


def _connecting(upper: TowerStage, lower: TowerStage, B: SimplicialSpace, source: bool) -> SpaceMap:
    top = upper.action.source if source else upper.action.target
    bottom = lower.action.source if source else lower.action.target
    return SpaceMap(
        top,
        bottom,
        [upper.functor.restriction(lower.functor, level) for level in B.levels],
        f"p_{upper.n}",
    )


def build_tower(
    X: GSpace,
    n_max: int = DEFAULT_TOWER_HEIGHT,
    k: int = DEFAULT_EX_STAGE,
    up_to: int = DEFAULT_UP_TO,
    N: int = DEFAULT_AUDIT_TRUNCATION,
    budget: int = DEFAULT_BUDGET,
    check_stages: bool = True,
) -> TowerDiagram:
    """The tower P_0 pi <- P_1 pi <- ... <- P_n_max pi for pi = Un(X).

    With check_stages every stage also gets the full action report.
    """

    pi = truncate_action(bar_action(X, up_to), N)

    ex = ExFunctor(k, budget)
    tower = TowerDiagram(pi, checks=SegalReport(truncation=N, label=f"tower({X.name})"))
    for n in range(n_max + 1):
        L = PostnikovFunctor(n, k, budget, ex)
        if check_stages:
            image, report = apply_levelwise(L, pi, up_to, N, k, budget)
        else:
            image, report = levelwise(L, pi), None
        stage = TowerStage(
            n, L, image, _unit(L, pi.source, image.source), _unit(L, pi.target, image.target), report
        )
        tower.stages.append(stage)
        debug(f"Tower stage {n} of {X.name}: {[level.counts() for level in image.source.levels]}")

        tower.checks.add(f"natural_tau_{n}", _natural(stage.source_unit, N))
        tower.checks.add(
            f"tau_{n}",
            _agree(
                compose_space_maps(stage.target_unit, pi),
                compose_space_maps(image, stage.source_unit),
                N,
            ),
        )
        if n == 0:
            continue

        below = tower.stages[n - 1]
        p_source = _connecting(stage, below, pi.source, True)
        p_target = _connecting(stage, below, pi.target, False)
        tower.connecting[n] = (p_source, p_target)
        tower.checks.add(f"natural_p_{n}", _natural(p_source, N))
        tower.checks.add(
            f"p_{n}",
            _agree(compose_space_maps(p_target, image), compose_space_maps(below.action, p_source), N),
        )
        tower.checks.add(
            f"p_{n}_tau",
            _agree(compose_space_maps(p_source, stage.source_unit), below.source_unit, N),
        )

    info(tower)
    return tower
