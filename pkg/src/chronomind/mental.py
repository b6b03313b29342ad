"""Mental operations: neighbourhood updates that turn M into M^op.

Every operation is computed against the input model (extensions are taken
in M, not in the updated model) and fires at each world whose guard holds.
Only the acting agent's neighbourhoods change; worlds, valuation and the
epistemic relations are carried over untouched.

Per-world updates can leave two R_i-equivalent worlds with different
neighbourhoods, which breaks the requirement that equivalent worlds agree.
By default this is reported in ``OpOutcome.warnings``; with
``propagate=True`` each change is copied to the whole equivalence class.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import NotGround
from .formulas import (
    And, Atom, Believes, Conjoin, Implies, Infer, Knows, Learn, MentalOp, Not,
    Revise, is_literal,
)
from .intervals import INF, Interval, hull, intersect, is_subset, subtract
from .lek import LekChecker, condition2_violations
from .models import LekModel
from .timing import time_of, time_of_op

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Restructuring:
    """What a revision did to the belief ``atom``."""

    atom: Atom
    removed: Interval
    residuals: tuple


@dataclass(frozen=True)
class OpOutcome:
    model: LekModel
    changed: bool
    touched: frozenset = frozenset()
    propagated: frozenset = frozenset()
    restructured: Optional[Restructuring] = None
    warnings: tuple = field(default=())


# plan: world -> (sets to remove, sets to add)
Plan = dict


def _checker(m: LekModel, checker: Optional[LekChecker]) -> LekChecker:
    if checker is not None and checker.model is m:
        return checker
    return LekChecker(m)


def _fired(chk: LekChecker, mask: np.ndarray) -> list[str]:
    return [chk.names[k] for k in np.flatnonzero(mask)]


def plan_learn(chk: LekChecker, i: str, lit) -> Plan:
    if not is_literal(lit):
        raise NotGround(f"learning needs an atom or a negated atom, got {lit!r}")
    chk.relation(i)
    fires = chk.guard(time_of(lit))
    return {w: (set(), {chk.extension(i, w, lit)}) for w in _fired(chk, fires)}


def plan_conjoin(chk: LekChecker, i: str, left, right) -> Plan:
    both = chk.sat(And(Believes(i, left), Believes(i, right)))
    fires = both & chk.guard(time_of_op(Conjoin(left, right)))
    conj = And(left, right)
    return {w: (set(), {chk.extension(i, w, conj)}) for w in _fired(chk, fires)}


def plan_infer(chk: LekChecker, i: str, premise, conclusion) -> Plan:
    if not isinstance(conclusion, Atom):
        raise NotGround(f"inference concludes a ground atom, got {conclusion!r}")
    cond = chk.sat(And(Believes(i, premise), Knows(i, Implies(premise, conclusion))))
    # every timestamp of premise and conclusion must lie in the world's interval
    fires = cond & chk.guard(hull(time_of(premise), time_of(conclusion)))
    return {w: (set(), {chk.extension(i, w, conclusion)}) for w in _fired(chk, fires)}


def fresh_superinterval(inner: Interval, outer: Interval, taken) -> bool:
    """Is there an interval J with inner ⊊ J ⊆ outer that is not in ``taken``?"""
    if not is_subset(inner, outer):
        return False
    lo_choices = inner.lo - outer.lo + 1
    if inner.hi == INF:
        hi_choices = 1
    elif outer.hi == INF:
        return True
    else:
        hi_choices = outer.hi - inner.hi + 1
    candidates = lo_choices * hi_choices - 1
    used = sum(1 for J in set(taken)
               if J != inner and is_subset(inner, J) and is_subset(J, outer))
    return candidates > used


def plan_revise(chk: LekChecker, i: str, p, q) -> tuple[Plan, Optional[Restructuring]]:
    if not isinstance(p, Atom) or not isinstance(q, Atom):
        raise NotGround("revision applies to ground atoms only")
    m = chk.model
    tp, tq = p.interval, q.interval
    overlap = intersect(tp, tq)
    if overlap is None:
        return {}, None
    residuals = tuple(subtract(tq, tp))
    record = Restructuring(q, overlap, residuals)

    cond = (chk.sat(Believes(i, p)) & chk.sat(Believes(i, q))
            & chk.sat(Knows(i, Implies(p, Not(q)))) & chk.guard(time_of_op(Revise(p, q))))

    # blocking clause: a believed q over some J ⊋ T(p), other than T(q) itself
    vocab = {a for w in m.worlds for a in m.valuation[w]
             if isinstance(a, Atom) and a.signature == q.signature}
    blocked = np.zeros(len(chk.names), dtype=np.bool_)
    for a in vocab:
        J = a.interval
        if J != tp and J != tq and is_subset(tp, J):
            blocked |= chk.sat(Believes(i, a))
    # atoms outside every valuation have the empty extension
    taken = {a.interval for a in vocab} | {tq}
    for w in _fired(chk, cond & ~blocked):
        if frozenset() in m.neighborhood(i, w):
            if fresh_superinterval(tp, m.world_interval(w), taken):
                blocked[chk.index[w]] = True

    fires = cond & ~blocked
    stale = [q.over(overlap), q] + [a for a in vocab if intersect(a.interval, overlap)]
    plan = {}
    for w in _fired(chk, fires):
        remove = {chk.extension(i, w, a) for a in stale}
        add = {chk.extension(i, w, q.over(r)) for r in residuals}
        plan[w] = (remove, add)
    return plan, (record if plan else None)


def _plan(chk: LekChecker, i: str, op: MentalOp):
    if isinstance(op, Learn):
        return plan_learn(chk, i, op.literal), None
    if isinstance(op, Conjoin):
        return plan_conjoin(chk, i, op.left, op.right), None
    if isinstance(op, Infer):
        return plan_infer(chk, i, op.premise, op.conclusion), None
    if isinstance(op, Revise):
        return plan_revise(chk, i, op.perceived, op.believed)
    raise TypeError(f"not a mental operation: {op!r}")


def _commit(m: LekModel, i: str, plan: Plan, propagate: bool, nbhd: dict):
    changes = plan
    if propagate:
        changes = {}
        for w, (remove, add) in plan.items():
            for v in m.accessible(i, w):
                r, a = changes.setdefault(v, (set(), set()))
                r |= remove
                a |= add
    changed = set()
    for w, (remove, add) in sorted(changes.items()):
        old = m.neighborhood(i, w)
        new = (old - remove) | add
        if new != old:
            nbhd[(i, w)] = new
            changed.add(w)
    touched = frozenset((i, w) for w in changed if w in plan)
    spread = frozenset((i, w) for w in changed if w not in plan)
    return touched, spread


def apply_op(m: LekModel, i: str, op: MentalOp, *, propagate: bool = False,
             checker: Optional[LekChecker] = None) -> OpOutcome:
    """Apply ``op`` performed by agent ``i``; returns the new model and a report."""
    m.check_agent(i)
    chk = _checker(m, checker)
    plan, record = _plan(chk, i, op)
    nbhd = dict(m.nbhd)
    touched, spread = _commit(m, i, plan, propagate, nbhd)
    if not touched and not spread:
        return OpOutcome(m, False, restructured=None)
    out = m.with_nbhd(nbhd)
    warnings = ()
    if not propagate:
        before = set(condition2_violations(m, [i]))
        warnings = tuple(v for v in condition2_violations(out, [i]) if v not in before)
        for text in warnings:
            logger.warning("update broke neighbourhood %s", text)
    return OpOutcome(out, True, touched, spread, record, warnings)


def apply_learn(m, i, lit, **kw) -> OpOutcome:
    return apply_op(m, i, Learn(lit), **kw)


def apply_conjoin(m, i, left, right, **kw) -> OpOutcome:
    return apply_op(m, i, Conjoin(left, right), **kw)


def apply_infer(m, i, premise, conclusion, **kw) -> OpOutcome:
    return apply_op(m, i, Infer(premise, conclusion), **kw)


def apply_revise(m, i, perceived, believed, **kw) -> OpOutcome:
    return apply_op(m, i, Revise(perceived, believed), **kw)


def transform(m: LekModel, op: MentalOp, agent: Optional[str] = None, *,
              propagate: bool = False, checker: Optional[LekChecker] = None) -> LekModel:
    """M^op. With ``agent=None`` every agent performs ``op``, each against the input model."""
    if agent is not None:
        return apply_op(m, agent, op, propagate=propagate, checker=checker).model
    chk = _checker(m, checker)
    nbhd = dict(m.nbhd)
    dirty = False
    for i in sorted(m.agents):
        plan, _ = _plan(chk, i, op)
        touched, spread = _commit(m, i, plan, propagate, nbhd)
        dirty = dirty or bool(touched or spread)
    return m.with_nbhd(nbhd) if dirty else m
