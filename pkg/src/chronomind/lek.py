"""Timed explicit belief and knowledge: validation and model checking.

:class:`LekChecker` evaluates a formula at every world at once. Satisfaction
sets are boolean vectors indexed by the sorted world names and are cached per
subformula, so a formula is evaluated bottom-up in one pass over its syntax
tree.
"""
from __future__ import annotations

from typing import Optional

import numpy as np

from . import kernels
from .errors import DialectError, UnknownAgent
from .formulas import (
    Always, And, Atom, Believes, DynDlca, DynLek, Formula, Implies, Knows,
    Nominal, Not, Or,
)
from .intervals import Interval, is_subset
from .models import LekModel
from .timing import time_of


def world_interval(m: LekModel, w: str) -> Interval:
    return m.world_interval(w)


def relation_violations(rel: frozenset, worlds, label: str) -> list[str]:
    """Reflexivity, symmetry and transitivity failures of an equivalence relation."""
    out = []
    for a, b in sorted(rel):
        if a not in worlds or b not in worlds:
            out.append(f"{label}: pair ({a},{b}) mentions an unknown world")
    for w in sorted(worlds):
        if (w, w) not in rel:
            out.append(f"{label}: not reflexive at {w}")
    for a, b in sorted(rel):
        if (b, a) not in rel:
            out.append(f"{label}: not symmetric on ({a},{b})")
    succ: dict = {}
    for a, b in rel:
        succ.setdefault(a, set()).add(b)
    for a in sorted(succ):
        for b in sorted(succ[a]):
            for c in sorted(succ.get(b, ())):
                if c not in succ[a]:
                    out.append(f"{label}: not transitive on ({a},{b},{c})")
    return out


def validate_lek_model(m: LekModel) -> list[str]:
    """All violated model constraints, as human-readable strings (empty means valid)."""
    violations = []
    for i in sorted(m.agents):
        violations += relation_violations(m.equiv.get(i, frozenset()), m.worlds, f"equiv {i}")
    for (i, w) in sorted(m.nbhd):
        if i not in m.agents or w not in m.worlds:
            violations.append(f"neighbourhood ({i},{w}) names an unknown agent or world")
            continue
        reach = m.accessible(i, w)
        for x in sorted(m.nbhd[(i, w)], key=sorted):
            if not x <= reach:
                shown = "{" + " ".join(sorted(x)) + "}"
                violations.append(f"condition 1 at ({i},{w}): {shown} is not within R_{i}({w})")
    violations += condition2_violations(m)
    return violations


def condition2_violations(m: LekModel, agents=None) -> list[str]:
    out = []
    for i in sorted(agents if agents is not None else m.agents):
        for w, v in sorted(m.equiv.get(i, ())):
            if w in m.worlds and v in m.worlds and not m.neighborhood(i, w) <= m.neighborhood(i, v):
                out.append(f"condition 2 at ({i},{w},{v})")
    return out


class LekChecker:
    """Vectorised model checker for one (immutable) model.

    ``propagate`` selects how ``[op]`` formulas rebuild the model: see
    :func:`chronomind.mental.apply_op`.
    """

    def __init__(self, model: LekModel, propagate: bool = False):
        self.model = model
        self.propagate = propagate
        self.names = sorted(model.worlds)
        self.index = {w: k for k, w in enumerate(self.names)}
        n = len(self.names)
        intervals = [model.world_interval(w) for w in self.names]
        self.lo = np.array([I.lo for I in intervals], dtype=np.float64)
        self.hi = np.array([I.hi for I in intervals], dtype=np.float64)
        self.rel = {}
        self.sets = {}
        for i in model.agents:
            rel = np.zeros((n, n), dtype=np.bool_)
            for a, b in model.equiv.get(i, ()):
                if a in self.index and b in self.index:
                    rel[self.index[a], self.index[b]] = True
            self.rel[i] = rel
            rows, owner = [], []
            for w in self.names:
                for x in model.nbhd.get((i, w), ()):
                    rows.append(self.vector(x))
                    owner.append(self.index[w])
            sets = np.array(rows, dtype=np.bool_).reshape(len(rows), n)
            self.sets[i] = (sets, np.array(owner, dtype=np.int64))
        self._cache: dict = {}
        self._updated: dict = {}

    # -- helpers --

    def vector(self, worlds) -> np.ndarray:
        out = np.zeros(len(self.names), dtype=np.bool_)
        for w in worlds:
            if w in self.index:
                out[self.index[w]] = True
        return out

    def world_set(self, vec) -> frozenset:
        return frozenset(self.names[k] for k in np.flatnonzero(vec))

    def guard(self, interval: Interval) -> np.ndarray:
        """Worlds whose interval contains ``interval``."""
        return (self.lo <= interval.lo) & (interval.hi <= self.hi)

    def relation(self, i: str) -> np.ndarray:
        try:
            return self.rel[i]
        except KeyError:
            raise UnknownAgent(i) from None

    # -- evaluation --

    def holds(self, w: str, f: Formula) -> bool:
        self.model.check_world(w)
        return bool(self.sat(f)[self.index[w]])

    def extension(self, i: str, w: str, f: Formula) -> frozenset:
        self.model.check_world(w)
        return self.world_set(self.relation(i)[self.index[w]] & self.sat(f))

    def sat(self, f: Formula) -> np.ndarray:
        hit = self._cache.get(f)
        if hit is None:
            hit = self._eval(f)
            hit.flags.writeable = False
            self._cache[f] = hit
        return hit

    def _eval(self, f: Formula) -> np.ndarray:
        if isinstance(f, Atom):
            member = np.array([f in self.model.valuation[w] for w in self.names], dtype=np.bool_)
            return member & self.guard(f.interval)
        if isinstance(f, Not):
            return ~self.sat(f.sub) & self.guard(time_of(f.sub))
        if isinstance(f, (And, Or, Implies)):
            a, b = self.sat(f.left), self.sat(f.right)
            guard = self.guard(time_of(f.left)) & self.guard(time_of(f.right))
            if isinstance(f, And):
                return a & b & guard
            if isinstance(f, Or):
                return (a | b) & guard
            return (~a | b) & guard
        if isinstance(f, Believes):
            rel = self.relation(f.agent)
            sets, owner = self.sets[f.agent]
            found = kernels.nbhd_member(rel, self.sat(f.sub), sets, owner)
            return found & self.guard(time_of(f.sub))
        if isinstance(f, Knows):
            known = kernels.box(self.relation(f.agent), self.sat(f.sub))
            return known & self.guard(time_of(f.sub))
        if isinstance(f, Always):
            n = len(self.names)
            if not is_subset(time_of(f.sub), f.interval):
                return np.zeros(n, dtype=np.bool_)
            agents = sorted(self.model.agents) if f.agent is None else [f.agent]
            out = self.guard(f.interval)
            sub = self.sat(f.sub)
            for i in agents:
                out = out & kernels.box(self.relation(i), sub)
            return out
        if isinstance(f, DynLek):
            after = self.after(f.op, f.agent)
            return after.sat(f.sub) & self.guard(time_of(f.sub))
        if isinstance(f, (Nominal, DynDlca)):
            raise DialectError(f"{type(f).__name__} is not part of LEK")
        raise TypeError(f"not a formula: {f!r}")

    def after(self, op, agent: Optional[str] = None) -> "LekChecker":
        """Checker for the model transformed by ``op`` (every agent when ``agent`` is None)."""
        key = (op, agent)
        if key not in self._updated:
            from .mental import transform
            if agent is not None:
                self.relation(agent)
            updated = transform(self.model, op, agent, propagate=self.propagate, checker=self)
            self._updated[key] = LekChecker(updated, self.propagate)
        return self._updated[key]


def extension(m: LekModel, i: str, w: str, f: Formula) -> frozenset:
    """||f|| at ``w`` for agent ``i``: worlds satisfying ``f`` that ``i`` can reach from ``w``."""
    m.check_agent(i)
    return LekChecker(m).extension(i, w, f)


def lek_satisfies(m: LekModel, w: str, f: Formula, propagate: bool = False) -> bool:
    return LekChecker(m, propagate).holds(w, f)
