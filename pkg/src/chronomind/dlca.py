"""Timed dynamic logic of cognitive attitudes: program relations and truth.

Programs compile to boolean relation matrices. Every clause keeps only pairs
of worlds with equal derived intervals, so ``w R v`` always relates two
worlds that live over the same interval.

The intersection and union clauses follow the logic as defined, in
which ``π n λ`` is the union of the two relations and ``π u λ`` their
intersection. ``standard_pdl=True`` swaps them back to the usual reading.
"""
from __future__ import annotations

import numpy as np

from . import kernels
from .errors import DialectError, UnknownAgent
from .formulas import (
    LEK_ONLY, And, Atom, Converse, DesirePre, DynDlca, Equiv, Formula,
    Implies, Inter, Nominal, Not, NotDesire, NotPlausible, Or, PlausiblePre,
    Program, Seq, Test, Union,
)
from .intervals import Interval
from .lek import relation_violations
from .models import DlcaModel
from .timing import time_of

_FLAVOR = {PlausiblePre: "P", DesirePre: "D", NotPlausible: "P", NotDesire: "D"}


def validate_dlca_model(m: DlcaModel) -> list[str]:
    out = []
    worlds = sorted(m.worlds)
    for i in sorted(m.agents):
        eq = m.equiv.get(i, frozenset())
        out += relation_violations(eq, m.worlds, f"equiv {i}")
        for flavor in ("P", "D"):
            pre = m.pre.get((i, flavor), frozenset())
            label = f"pre {i} {flavor}"
            for w in worlds:
                if (w, w) not in pre:
                    out.append(f"{label}: not reflexive at {w}")
            succ: dict = {}
            for a, b in pre:
                succ.setdefault(a, set()).add(b)
            for a in sorted(succ):
                for b in sorted(succ[a]):
                    for c in sorted(succ.get(b, ())):
                        if c not in succ[a]:
                            out.append(f"{label}: not transitive on ({a},{b},{c})")
            for a, b in sorted(pre):
                if a not in m.worlds or b not in m.worlds:
                    out.append(f"{label}: pair ({a},{b}) mentions an unknown world")
                    continue
                if (a, b) not in eq:
                    out.append(f"constraint 1: ({a},{b}) in {label} but not in equiv {i}")
                if m.world_interval(a) != m.world_interval(b):
                    out.append(f"same-interval: ({a},{b}) in {label} relates "
                               f"{m.world_interval(a)} to {m.world_interval(b)}")
            for a, b in sorted(eq):
                if a < b and (a, b) not in pre and (b, a) not in pre:
                    out.append(f"constraint 2: {a} and {b} are equivalent for {i} "
                               f"but incomparable in {label}")
    owners: dict = {}
    for w in worlds:
        noms = m.nominals(w)
        if not noms:
            out.append(f"V_Nom ≠ ∅ fails at {w}")
        for x in noms:
            owners.setdefault(x, []).append(w)
    for x, ws in sorted(owners.items(), key=lambda kv: (kv[0].name, kv[0].t)):
        if len(ws) > 1:
            out.append(f"nominal {x.name}@{x.t} shared by {', '.join(ws)}")
    return out


class DlcaChecker:
    def __init__(self, model: DlcaModel, standard_pdl: bool = False):
        self.model = model
        self.standard_pdl = standard_pdl
        self.names = sorted(model.worlds)
        self.index = {w: k for k, w in enumerate(self.names)}
        intervals = [model.world_interval(w) for w in self.names]
        self.lo = np.array([I.lo for I in intervals], dtype=np.float64)
        self.hi = np.array([I.hi for I in intervals], dtype=np.float64)
        self.same = (self.lo[:, None] == self.lo[None, :]) & (self.hi[:, None] == self.hi[None, :])
        self.eq = {i: self.matrix(model.equiv.get(i, ())) for i in model.agents}
        self.pre = {key: self.matrix(rel) for key, rel in model.pre.items()}
        # pairs removed by the same-interval filter, per atomic program
        self.dropped: dict = {}
        self._rel: dict = {}
        self._sat: dict = {}

    def matrix(self, pairs) -> np.ndarray:
        n = len(self.names)
        out = np.zeros((n, n), dtype=np.bool_)
        for a, b in pairs:
            if a in self.index and b in self.index:
                out[self.index[a], self.index[b]] = True
        return out

    def pairs(self, mat: np.ndarray) -> frozenset:
        return frozenset((self.names[a], self.names[b]) for a, b in zip(*np.nonzero(mat)))

    def guard(self, interval: Interval) -> np.ndarray:
        return (self.lo <= interval.lo) & (interval.hi <= self.hi)

    def _equiv(self, agent: str) -> np.ndarray:
        try:
            return self.eq[agent]
        except KeyError:
            raise UnknownAgent(agent) from None

    # -- programs --

    def relation(self, p: Program) -> np.ndarray:
        hit = self._rel.get(p)
        if hit is None:
            hit = np.ascontiguousarray(self._relation(p))
            hit.flags.writeable = False
            self._rel[p] = hit
        return hit

    def _filtered(self, p: Program, raw: np.ndarray) -> np.ndarray:
        lost = raw & ~self.same
        if lost.any():
            self.dropped[p] = self.pairs(lost)
        return raw & self.same

    def _relation(self, p: Program) -> np.ndarray:
        if isinstance(p, Equiv):
            return self._filtered(p, self._equiv(p.agent))
        if isinstance(p, (PlausiblePre, DesirePre)):
            self._equiv(p.agent)
            return self._filtered(p, self.pre[(p.agent, _FLAVOR[type(p)])])
        if isinstance(p, (NotPlausible, NotDesire)):
            eq = self._equiv(p.agent)
            return self._filtered(p, eq & ~self.pre[(p.agent, _FLAVOR[type(p)])])
        if isinstance(p, Seq):
            return kernels.compose(self.relation(p.left), self.relation(p.right)) & self.same
        if isinstance(p, (Union, Inter)):
            a, b = self.relation(p.left), self.relation(p.right)
            as_union = isinstance(p, Inter) != self.standard_pdl
            return (a | b) if as_union else (a & b)
        if isinstance(p, Converse):
            return self.relation(p.sub).T.copy()
        if isinstance(p, Test):
            return np.diag(self.sat(p.formula))
        raise TypeError(f"not a program: {p!r}")

    # -- formulas --

    def holds(self, w: str, f: Formula) -> bool:
        self.model.check_world(w)
        return bool(self.sat(f)[self.index[w]])

    def sat(self, f: Formula) -> np.ndarray:
        hit = self._sat.get(f)
        if hit is None:
            hit = self._eval(f)
            hit.flags.writeable = False
            self._sat[f] = hit
        return hit

    def _eval(self, f: Formula) -> np.ndarray:
        if isinstance(f, (Atom, Nominal)):
            member = np.array([f in self.model.valuation[w] for w in self.names], dtype=np.bool_)
            return member & self.guard(time_of(f))
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
        if isinstance(f, DynDlca):
            boxed = kernels.box(self.relation(f.program), self.sat(f.sub))
            return boxed & self.guard(time_of(f.sub))
        if isinstance(f, LEK_ONLY):
            raise DialectError(f"{type(f).__name__} is not part of DLCA")
        raise TypeError(f"not a formula: {f!r}")


def program_relation(m: DlcaModel, p: Program, standard_pdl: bool = False) -> frozenset:
    chk = DlcaChecker(m, standard_pdl)
    return chk.pairs(chk.relation(p))


def dlca_satisfies(m: DlcaModel, w: str, f: Formula, standard_pdl: bool = False) -> bool:
    return DlcaChecker(m, standard_pdl).holds(w, f)
