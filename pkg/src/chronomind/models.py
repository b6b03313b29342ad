"""Model containers for both logics.

Relations are stored as frozensets of ``(world, world)`` pairs and
neighbourhoods as frozensets of frozensets of world names. Constructors
normalise their inputs so two models describing the same structure compare
equal regardless of how they were built.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

from .errors import UnknownAgent, UnknownWorld
from .formulas import Atom, Nominal
from .intervals import INF, Interval

Pair = tuple  # (world, world)


def pairs_from_partition(classes: Iterable[Iterable[str]]) -> frozenset:
    out = set()
    for cls in classes:
        members = list(cls)
        out.update((a, b) for a in members for b in members)
    return frozenset(out)


def image(rel: Iterable[Pair], w: str) -> frozenset:
    return frozenset(v for (u, v) in rel if u == w)


def interval_of_valuation(props: Iterable) -> Interval:
    """[min, sup] of the timestamps in a valuation; [0, INF] when it is empty."""
    lo, hi = None, None
    for p in props:
        if isinstance(p, Atom):
            a, b = p.t1, p.t2
        elif isinstance(p, Nominal):
            a = b = p.t
        else:
            continue
        lo = a if lo is None else min(lo, a)
        hi = b if hi is None else max(hi, b)
    if lo is None:
        return Interval(0, INF)
    return Interval(lo, hi)


class _ModelBase:
    worlds: frozenset
    agents: frozenset
    valuation: Mapping

    def check_world(self, w: str) -> None:
        if w not in self.worlds:
            raise UnknownWorld(w)

    def check_agent(self, i: str) -> None:
        if i not in self.agents:
            raise UnknownAgent(i)

    def world_interval(self, w: str) -> Interval:
        self.check_world(w)
        return interval_of_valuation(self.valuation[w])

    def accessible(self, i: str, w: str) -> frozenset:
        """R_i(w): the worlds ``i`` considers possible at ``w``."""
        self.check_agent(i)
        self.check_world(w)
        return image(self.equiv.get(i, ()), w)


@dataclass(frozen=True)
class LekModel(_ModelBase):
    worlds: frozenset
    agents: frozenset
    valuation: Mapping = field(default_factory=dict)
    equiv: Mapping = field(default_factory=dict)
    nbhd: Mapping = field(default_factory=dict)

    def __post_init__(self):
        worlds = frozenset(self.worlds)
        object.__setattr__(self, "worlds", worlds)
        object.__setattr__(self, "agents", frozenset(self.agents))
        object.__setattr__(self, "valuation", {
            w: frozenset(self.valuation.get(w, ())) for w in worlds
        })
        object.__setattr__(self, "equiv", {
            i: frozenset(map(tuple, self.equiv.get(i, ()))) for i in self.agents
        })
        nb = {}
        for key, sets in self.nbhd.items():
            frozen = frozenset(frozenset(s) for s in sets)
            if frozen:
                nb[tuple(key)] = frozen
        object.__setattr__(self, "nbhd", nb)

    def neighborhood(self, i: str, w: str) -> frozenset:
        self.check_agent(i)
        self.check_world(w)
        return self.nbhd.get((i, w), frozenset())

    def with_nbhd(self, nbhd: Mapping) -> "LekModel":
        return replace(self, nbhd=nbhd)

    def restrict(self, keep: Iterable[str]) -> "LekModel":
        """Submodel on ``keep``: relations and neighbourhood sets are cut down to it."""
        keep = frozenset(keep) & self.worlds
        return LekModel(
            worlds=keep,
            agents=self.agents,
            valuation={w: self.valuation[w] for w in keep},
            equiv={i: {(a, b) for a, b in rel if a in keep and b in keep}
                   for i, rel in self.equiv.items()},
            nbhd={(i, w): {s & keep for s in sets}
                  for (i, w), sets in self.nbhd.items() if w in keep},
        )


@dataclass(frozen=True)
class DlcaModel(_ModelBase):
    """``pre`` maps ``(agent, "P"|"D")`` to the preorder's pair set."""

    worlds: frozenset
    agents: frozenset
    valuation: Mapping = field(default_factory=dict)
    equiv: Mapping = field(default_factory=dict)
    pre: Mapping = field(default_factory=dict)

    def __post_init__(self):
        worlds = frozenset(self.worlds)
        object.__setattr__(self, "worlds", worlds)
        object.__setattr__(self, "agents", frozenset(self.agents))
        object.__setattr__(self, "valuation", {
            w: frozenset(self.valuation.get(w, ())) for w in worlds
        })
        object.__setattr__(self, "equiv", {
            i: frozenset(map(tuple, self.equiv.get(i, ()))) for i in self.agents
        })
        object.__setattr__(self, "pre", {
            (i, flavor): frozenset(map(tuple, self.pre.get((i, flavor), ())))
            for i in self.agents for flavor in ("P", "D")
        })

    def nominals(self, w: str) -> frozenset:
        self.check_world(w)
        return frozenset(p for p in self.valuation[w] if isinstance(p, Nominal))

    def restrict(self, keep: Iterable[str]) -> "DlcaModel":
        keep = frozenset(keep) & self.worlds

        def cut(rel):
            return {(a, b) for a, b in rel if a in keep and b in keep}

        return DlcaModel(
            worlds=keep,
            agents=self.agents,
            valuation={w: self.valuation[w] for w in keep},
            equiv={i: cut(rel) for i, rel in self.equiv.items()},
            pre={k: cut(rel) for k, rel in self.pre.items()},
        )


def world_interval(m, w: str) -> Interval:
    return m.world_interval(w)
