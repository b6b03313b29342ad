"""Reference oracle for differential testing.

Everything here is deliberately naive: truth is decided world by world with
plain recursion, intervals are ``(lo, hi)`` tuples, and program relations are
decided pair by pair. Only the AST and the model containers are shared with
the main evaluators. Generators are deterministic functions of their seed.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Optional

from .formulas import (
    Always, And, Atom, Believes, Conjoin, Converse, DesirePre, DynDlca,
    DynLek, Equiv, Implies, Infer, Inter, Knows, Learn, Nominal, Not,
    NotDesire, NotPlausible, Or, PlausiblePre, Revise, Seq, Test, Union,
)
from .intervals import Interval
from .models import DlcaModel, LekModel

INF = math.inf


@dataclass(frozen=True)
class GenConfig:
    max_worlds: int = 6
    max_agents: int = 2
    max_time: int = 10
    max_formula_depth: int = 4
    seed: int = 0

    def __post_init__(self):
        for name in ("max_worlds", "max_agents", "max_time", "max_formula_depth"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


# -- naive interval helpers (tuples, no sharing with chronomind.intervals) --

def _inside(a, b) -> bool:
    return b[0] <= a[0] and a[1] <= b[1]


def _span(props):
    stamps = []
    for p in props:
        if isinstance(p, Atom):
            stamps.append((p.t1, p.t2))
        elif isinstance(p, Nominal):
            stamps.append((p.t, p.t))
    if not stamps:
        return (0, INF)
    return (min(s[0] for s in stamps), max(s[1] for s in stamps))


def _minus(a, b):
    """a \\ b for closed integer intervals, by cases."""
    if a[1] < b[0] or b[1] < a[0]:
        return [a]
    out = []
    if a[0] <= b[0] - 1:
        out.append((a[0], b[0] - 1))
    if b[1] != INF and b[1] + 1 <= a[1]:
        out.append((b[1] + 1, a[1]))
    return out


def naive_time(f):
    if isinstance(f, Atom):
        return (f.t1, f.t2)
    if isinstance(f, Nominal):
        return (f.t, f.t)
    if isinstance(f, (Not, Believes, Knows)):
        return naive_time(f.sub)
    if isinstance(f, (And, Or, Implies)):
        a, b = naive_time(f.left), naive_time(f.right)
        return (min(a[0], b[0]), max(a[1], b[1]))
    if isinstance(f, Always):
        return (f.interval.lo, f.interval.hi)
    if isinstance(f, DynLek):
        return naive_op_time(f.op)
    if isinstance(f, DynDlca):
        return naive_time(f.sub)
    raise TypeError(f)


def naive_op_time(op):
    if isinstance(op, Learn):
        return naive_time(op.literal)
    if isinstance(op, Conjoin):
        return naive_time(And(op.left, op.right))
    if isinstance(op, Infer):
        return naive_time(op.conclusion)
    if isinstance(op, Revise):
        rest = _minus(naive_time(op.believed), naive_time(op.perceived))
        if not rest:
            return naive_time(op.believed)
        return (rest[0][0], rest[-1][1])
    raise TypeError(op)


# -- naive LEK -------------------------------------------------------------

class _NaiveLek:
    def __init__(self, m: LekModel, propagate: bool = False):
        self.m = m
        self.propagate = propagate

    def interval(self, w):
        return _span(self.m.valuation[w])

    def reach(self, i, w):
        return {v for v in sorted(self.m.worlds) if (w, v) in self.m.equiv[i]}

    def ext(self, i, w, f):
        return frozenset(v for v in self.reach(i, w) if self.sat(v, f))

    def sat(self, w, f) -> bool:
        I = self.interval(w)
        if isinstance(f, Atom):
            return f in self.m.valuation[w] and _inside((f.t1, f.t2), I)
        if isinstance(f, Not):
            return (not self.sat(w, f.sub)) and _inside(naive_time(f.sub), I)
        if isinstance(f, (And, Or, Implies)):
            guard = _inside(naive_time(f.left), I) and _inside(naive_time(f.right), I)
            if not guard:
                return False
            if isinstance(f, And):
                return self.sat(w, f.left) and self.sat(w, f.right)
            if isinstance(f, Or):
                return self.sat(w, f.left) or self.sat(w, f.right)
            return (not self.sat(w, f.left)) or self.sat(w, f.right)
        if isinstance(f, Believes):
            if f.agent not in self.m.agents:
                raise KeyError(f.agent)
            ext = self.ext(f.agent, w, f.sub)
            return ext in self.m.nbhd.get((f.agent, w), frozenset()) and _inside(naive_time(f.sub), I)
        if isinstance(f, Knows):
            if not _inside(naive_time(f.sub), I):
                return False
            return all(self.sat(v, f.sub) for v in self.reach(f.agent, w))
        if isinstance(f, Always):
            J = (f.interval.lo, f.interval.hi)
            if not (_inside(naive_time(f.sub), J) and _inside(J, I)):
                return False
            agents = sorted(self.m.agents) if f.agent is None else [f.agent]
            return all(self.sat(v, f.sub) for i in agents for v in self.reach(i, w))
        if isinstance(f, DynLek):
            after = _NaiveLek(naive_update(self.m, f.op, f.agent, self.propagate), self.propagate)
            return after.sat(w, f.sub) and _inside(naive_time(f.sub), I)
        raise ValueError(f"not a LEK formula: {f!r}")


def _naive_changes(m: LekModel, i: str, op):
    """world -> (removed sets, added sets) where ``op`` by ``i`` fires."""
    ev = _NaiveLek(m)
    changes = {}
    for w in sorted(m.worlds):
        I = ev.interval(w)
        if isinstance(op, Learn):
            if _inside(naive_time(op.literal), I):
                changes[w] = (set(), {ev.ext(i, w, op.literal)})
        elif isinstance(op, Conjoin):
            ok = (ev.sat(w, Believes(i, op.left)) and ev.sat(w, Believes(i, op.right))
                  and _inside(naive_op_time(op), I))
            if ok:
                changes[w] = (set(), {ev.ext(i, w, And(op.left, op.right))})
        elif isinstance(op, Infer):
            span = naive_time(And(op.premise, op.conclusion))
            ok = (ev.sat(w, Believes(i, op.premise))
                  and ev.sat(w, Knows(i, Implies(op.premise, op.conclusion)))
                  and _inside(span, I))
            if ok:
                changes[w] = (set(), {ev.ext(i, w, op.conclusion)})
        elif isinstance(op, Revise):
            hit = _naive_revise_at(ev, m, i, w, op.perceived, op.believed)
            if hit is not None:
                changes[w] = hit
    return changes


def _naive_revise_at(ev: _NaiveLek, m, i, w, p, q):
    tp, tq = (p.t1, p.t2), (q.t1, q.t2)
    lo, hi = max(tp[0], tq[0]), min(tp[1], tq[1])
    if lo > hi:
        return None
    I = ev.interval(w)
    ok = (ev.sat(w, Believes(i, p)) and ev.sat(w, Believes(i, q))
          and ev.sat(w, Knows(i, Implies(p, Not(q))))
          and _inside(naive_op_time(Revise(p, q)), I))
    if not ok:
        return None
    # enumerate every J ⊋ T(p) inside I that could carry a believed q
    finite = [t for v in m.worlds for a in m.valuation[v] if isinstance(a, Atom)
              for t in (a.t1, a.t2) if t != INF]
    horizon = max(finite + [tp[0], tq[0]] + [t for t in (tp[1], tq[1]) if t != INF]) + 3
    if tp[1] == INF:
        highs = [INF] if I[1] == INF else []
    elif I[1] == INF:
        highs = list(range(tp[1], horizon)) + [INF]
    else:
        highs = list(range(tp[1], int(I[1]) + 1))
    for a in range(I[0], tp[0] + 1):
        for b in highs:
            J = (a, b)
            if J == tp or J == tq:
                continue
            if ev.sat(w, Believes(i, Atom(q.pred, a, b, q.args))):
                return None
    vocab = {a for v in m.worlds for a in m.valuation[v]
             if isinstance(a, Atom) and (a.pred, a.args) == (q.pred, q.args)}
    stale = [Atom(q.pred, lo, hi, q.args), q]
    stale += [a for a in vocab if not (a.t2 < lo or hi < a.t1)]
    removed = {ev.ext(i, w, a) for a in stale}
    added = {ev.ext(i, w, Atom(q.pred, r[0], r[1], q.args)) for r in _minus(tq, tp)}
    return removed, added


def naive_update(m: LekModel, op, agent: Optional[str] = None, propagate: bool = False) -> LekModel:
    """M^op computed directly from the definitions."""
    agents = sorted(m.agents) if agent is None else [agent]
    nbhd = {k: set(v) for k, v in m.nbhd.items()}
    for i in agents:
        changes = _naive_changes(m, i, op)
        if propagate:
            spread = {}
            for w, (rem, add) in changes.items():
                for v in sorted(m.worlds):
                    if (w, v) in m.equiv[i]:
                        r, a = spread.setdefault(v, (set(), set()))
                        r |= rem
                        a |= add
            changes = spread
        for w, (rem, add) in changes.items():
            cur = set(m.nbhd.get((i, w), frozenset()))
            nbhd[(i, w)] = (cur - rem) | add
    return LekModel(m.worlds, m.agents, m.valuation, m.equiv, nbhd)


# -- naive DLCA --------------------------------------------------------------

class _NaiveDlca:
    def __init__(self, m: DlcaModel, standard_pdl: bool = False):
        self.m = m
        self.standard_pdl = standard_pdl

    def interval(self, w):
        return _span(self.m.valuation[w])

    def rel(self, p, w, v) -> bool:
        if self.interval(w) != self.interval(v):
            return False
        m = self.m
        if isinstance(p, Equiv):
            return (w, v) in m.equiv[p.agent]
        if isinstance(p, PlausiblePre):
            return (w, v) in m.pre[(p.agent, "P")]
        if isinstance(p, DesirePre):
            return (w, v) in m.pre[(p.agent, "D")]
        if isinstance(p, NotPlausible):
            return (w, v) in m.equiv[p.agent] and (w, v) not in m.pre[(p.agent, "P")]
        if isinstance(p, NotDesire):
            return (w, v) in m.equiv[p.agent] and (w, v) not in m.pre[(p.agent, "D")]
        if isinstance(p, Seq):
            return any(self.rel(p.left, w, z) and self.rel(p.right, z, v) for z in sorted(m.worlds))
        if isinstance(p, (Union, Inter)):
            either = isinstance(p, Inter) != self.standard_pdl
            if either:
                return self.rel(p.left, w, v) or self.rel(p.right, w, v)
            return self.rel(p.left, w, v) and self.rel(p.right, w, v)
        if isinstance(p, Converse):
            return self.rel(p.sub, v, w)
        if isinstance(p, Test):
            return w == v and self.sat(w, p.formula)
        raise TypeError(p)

    def sat(self, w, f) -> bool:
        I = self.interval(w)
        if isinstance(f, (Atom, Nominal)):
            return f in self.m.valuation[w] and _inside(naive_time(f), I)
        if isinstance(f, Not):
            return (not self.sat(w, f.sub)) and _inside(naive_time(f.sub), I)
        if isinstance(f, (And, Or, Implies)):
            if not (_inside(naive_time(f.left), I) and _inside(naive_time(f.right), I)):
                return False
            a, b = self.sat(w, f.left), self.sat(w, f.right)
            return {And: a and b, Or: a or b, Implies: (not a) or b}[type(f)]
        if isinstance(f, DynDlca):
            if not _inside(naive_time(f.sub), I):
                return False
            return all(self.sat(v, f.sub) for v in sorted(self.m.worlds) if self.rel(f.program, w, v))
        raise ValueError(f"not a DLCA formula: {f!r}")


def naive_satisfies(m, w: str, f, *, propagate: bool = False, standard_pdl: bool = False) -> bool:
    if isinstance(m, LekModel):
        return _NaiveLek(m, propagate).sat(w, f)
    return _NaiveDlca(m, standard_pdl).sat(w, f)


def naive_relation(m: DlcaModel, p, standard_pdl: bool = False) -> frozenset:
    ev = _NaiveDlca(m, standard_pdl)
    ws = sorted(m.worlds)
    return frozenset((w, v) for w in ws for v in ws if ev.rel(p, w, v))


def naive_extension(m: LekModel, i: str, w: str, f) -> frozenset:
    return _NaiveLek(m).ext(i, w, f)


# -- generators --------------------------------------------------------------

PREDICATES = ("p", "q", "r", "s")
AGENT_NAMES = ("i", "j", "k", "l")


def _random_atom(rng: random.Random, horizon: int, preds=PREDICATES) -> Atom:
    t1 = rng.randint(0, horizon)
    t2 = INF if rng.random() < 0.1 else rng.randint(t1, horizon)
    args = (rng.choice(("box", "door", 1)),) if rng.random() < 0.15 else ()
    return Atom(rng.choice(preds), t1, t2, args)


def _random_partition(rng: random.Random, items: list) -> list:
    buckets = rng.randint(1, max(1, (len(items) + 1) // 2))
    labels = {x: rng.randrange(buckets) for x in items}
    classes: dict = {}
    for x in items:
        classes.setdefault(labels[x], []).append(x)
    return list(classes.values())


def random_lek_model(cfg: GenConfig, rng: Optional[random.Random] = None) -> LekModel:
    """A valid LEK model: random partitions, neighbourhoods uniform on each class."""
    rng = rng or random.Random(cfg.seed)
    n = rng.randint(1, cfg.max_worlds)
    worlds = [f"w{k}" for k in range(1, n + 1)]
    agents = list(AGENT_NAMES[: rng.randint(1, min(cfg.max_agents, len(AGENT_NAMES)))])
    pool = [_random_atom(rng, cfg.max_time) for _ in range(rng.randint(3, 7))]
    valuation = {}
    for w in worlds:
        size = 0 if rng.random() < 0.1 else rng.randint(1, min(4, len(pool)))
        valuation[w] = set(rng.sample(pool, size))
    spans = {w: _span(valuation[w]) for w in worlds}
    equiv, nbhd = {}, {}
    for i in agents:
        classes = _random_partition(rng, worlds)
        equiv[i] = {(a, b) for c in classes for a in c for b in c}
        for cls in classes:
            sets = set()
            for _ in range(rng.randint(0, 3)):
                kind = rng.random()
                if kind < 0.4:
                    sets.add(frozenset(w for w in cls if rng.random() < 0.5))
                else:
                    # extension of a pool literal, so beliefs are not all false
                    a = rng.choice(pool)
                    neg = kind > 0.8
                    sets.add(frozenset(
                        w for w in cls
                        if _inside((a.t1, a.t2), spans[w]) and ((a in valuation[w]) != neg)
                    ))
            for w in cls:
                if sets:
                    nbhd[(i, w)] = set(sets)
    return LekModel(worlds, agents, valuation, equiv, nbhd)


def random_dlca_model(cfg: GenConfig, rng: Optional[random.Random] = None) -> DlcaModel:
    """A valid DLCA model: same-interval groups, refined per agent, total preorders by rank."""
    rng = rng or random.Random(cfg.seed)
    n = rng.randint(1, cfg.max_worlds)
    worlds = [f"w{k}" for k in range(1, n + 1)]
    agents = list(AGENT_NAMES[: rng.randint(1, min(cfg.max_agents, len(AGENT_NAMES)))])
    H = cfg.max_time
    groups = _random_partition(rng, worlds)
    valuation = {}
    nom_id = 0
    for g in groups:
        lo = rng.randint(0, H)
        hi = INF if rng.random() < 0.1 else rng.randint(lo, H)
        for w in g:
            top = hi if hi != INF else H
            props = {Atom(rng.choice(PREDICATES), lo, rng.randint(lo, top)),
                     Atom(rng.choice(PREDICATES), rng.randint(lo, top), hi)}
            for _ in range(rng.randint(0, 2)):
                t1 = rng.randint(lo, top)
                props.add(Atom(rng.choice(PREDICATES), t1, rng.randint(t1, top)))
            nom_id += 1
            props.add(Nominal(f"x{nom_id}", rng.randint(lo, top)))
            valuation[w] = props
    equiv, pre = {}, {}
    for i in agents:
        classes = [c for g in groups for c in _random_partition(rng, g)]
        equiv[i] = {(a, b) for c in classes for a in c for b in c}
        for flavor in ("P", "D"):
            rank = {w: rng.randint(0, 2) for w in worlds}
            pre[(i, flavor)] = {(a, b) for c in classes for a in c for b in c if rank[a] <= rank[b]}
    return DlcaModel(worlds, agents, valuation, equiv, pre)


def random_revision_model(cfg: GenConfig, rng: Optional[random.Random] = None):
    """A valid model where ``rev(p, q)`` has a fair chance to fire; returns (model, op).

    Worlds carrying the perceived atom never carry the revised one, so the
    agent knows p -> ~q; both extensions are put in every neighbourhood.
    Some seeds add a wider q belief, which blocks the revision.
    """
    rng = rng or random.Random(cfg.seed)
    H = max(cfg.max_time, 4)
    t3 = rng.randint(0, H - 2)
    t4 = INF if rng.random() < 0.15 else rng.randint(t3 + 1, H)
    top = H if t4 == INF else t4
    t1 = rng.randint(t3, top)
    t2 = rng.choice((t1, rng.randint(t1, top), t4))
    p, q = Atom("p", t1, t2), Atom("q", t3, t4)
    n = rng.randint(2, max(2, cfg.max_worlds))
    worlds = [f"w{k}" for k in range(1, n + 1)]
    agents = list(AGENT_NAMES[: rng.randint(1, min(cfg.max_agents, len(AGENT_NAMES)))])
    frame = Atom("r", rng.randint(0, t3), INF if t4 == INF else rng.randint(t4, H + 2))
    valuation = {w: {frame} for w in worlds}
    valuation[worlds[0]].add(p)
    valuation[worlds[1]].add(q)
    wide = None
    if rng.random() < 0.25 and (t1 > 0 or t2 != INF):
        wide = Atom("q", max(0, t1 - 1), t2 if t2 == INF else t2 + 1)
    for w in worlds[2:]:
        roll = rng.random()
        if roll < 0.3:
            valuation[w].add(p)
        elif roll < 0.6:
            valuation[w].add(q)
        for r in _minus((t3, t4), (t1, t2)):
            if rng.random() < 0.4:
                valuation[w].add(Atom("q", r[0], r[1]))
        if wide is not None and rng.random() < 0.5:
            valuation[w].add(wide)
    spans = {w: _span(valuation[w]) for w in worlds}
    equiv, nbhd = {}, {}
    for i in agents:
        classes = [worlds] if rng.random() < 0.7 else _random_partition(rng, worlds)
        equiv[i] = {(a, b) for c in classes for a in c for b in c}
        for cls in classes:
            sets = set()
            for atom in (p, q) + ((wide,) if wide is not None else ()):
                sets.add(frozenset(w for w in cls if atom in valuation[w]
                                   and _inside((atom.t1, atom.t2), spans[w])))
            if rng.random() < 0.3:
                sets.add(frozenset(w for w in cls if rng.random() < 0.5))
            for w in cls:
                nbhd[(i, w)] = set(sets)
    return LekModel(worlds, agents, valuation, equiv, nbhd), Revise(p, q)


def model_atoms(m) -> list:
    return sorted({a for w in m.worlds for a in m.valuation[w] if isinstance(a, Atom)},
                  key=lambda a: (a.pred, a.t1, float(a.t2), tuple(map(str, a.args))))


def model_nominals(m) -> list:
    return sorted({a for w in m.worlds for a in m.valuation[w] if isinstance(a, Nominal)},
                  key=lambda a: (a.name, a.t))


def _pick_atom(rng, m, horizon):
    atoms = model_atoms(m)
    if atoms and rng.random() < 0.85:
        return rng.choice(atoms)
    return _random_atom(rng, horizon)


def random_objective(rng: random.Random, m, depth: int, horizon: int):
    """A Boolean combination of atoms (no modalities)."""
    if depth <= 0 or rng.random() < 0.4:
        return _pick_atom(rng, m, horizon)
    kind = rng.choice((Not, And, Or, Implies))
    if kind is Not:
        return Not(random_objective(rng, m, depth - 1, horizon))
    return kind(random_objective(rng, m, depth - 1, horizon),
                random_objective(rng, m, depth - 1, horizon))


def _believed_atoms(m: LekModel) -> list:
    """Model atoms some agent explicitly believes somewhere."""
    ev = _NaiveLek(m)
    out = []
    for a in model_atoms(m):
        if any(ev.ext(i, w, a) in sets for (i, w), sets in sorted(m.nbhd.items())):
            out.append(a)
    return out


def random_mental_op(rng: random.Random, m: LekModel, horizon: int = 10):
    kind = rng.random()
    if kind < 0.3:
        a = _pick_atom(rng, m, horizon)
        return Learn(Not(a) if rng.random() < 0.3 else a)
    if kind < 0.55:
        believed = _believed_atoms(m)
        if len(believed) >= 2 and rng.random() < 0.6:
            left, right = rng.sample(believed, 2)
            return Conjoin(left, right)
        depth = 1 if rng.random() < 0.3 else 0
        return Conjoin(random_objective(rng, m, depth, horizon), random_objective(rng, m, depth, horizon))
    if kind < 0.85:
        premise = random_objective(rng, m, 1 if rng.random() < 0.3 else 0, horizon)
        # prefer a conclusion that co-occurs with the premise somewhere
        company = [a for w in sorted(m.worlds) if premise in m.valuation[w]
                   for a in m.valuation[w] if isinstance(a, Atom)]
        if company and rng.random() < 0.7:
            conclusion = rng.choice(sorted(company, key=repr))
        else:
            conclusion = _pick_atom(rng, m, horizon)
        return Infer(premise, conclusion)
    q = _pick_atom(rng, m, horizon)
    if q.t2 == INF:
        lo = rng.randint(q.t1, q.t1 + 3)
        hi = rng.choice((INF, lo + rng.randint(0, 2)))
    else:
        lo = rng.randint(q.t1, q.t2)
        hi = rng.randint(lo, q.t2)
    p = Atom(rng.choice(PREDICATES), lo, hi)
    return Revise(p, q)


def random_lek_formula(rng: random.Random, m: LekModel, depth: int, horizon: int = 10):
    agents = sorted(m.agents)
    if depth <= 0 or rng.random() < 0.15:
        return _pick_atom(rng, m, horizon)
    roll = rng.random()
    sub = lambda: random_lek_formula(rng, m, depth - 1, horizon)  # noqa: E731
    if roll < 0.15:
        return Not(sub())
    if roll < 0.35:
        return rng.choice((And, Or, Implies))(sub(), sub())
    if roll < 0.6:
        return Believes(rng.choice(agents), sub())
    if roll < 0.78:
        return Knows(rng.choice(agents), sub())
    if roll < 0.9:
        if rng.random() < 0.5:
            lo, hi = _span(m.valuation[rng.choice(sorted(m.worlds))])
        else:
            lo = rng.randint(0, horizon)
            hi = INF if rng.random() < 0.3 else rng.randint(lo, horizon)
        agent = rng.choice(agents) if rng.random() < 0.3 else None
        return Always(Interval(lo, hi), sub(), agent)
    agent = rng.choice(agents) if rng.random() < 0.5 else None
    return DynLek(random_mental_op(rng, m, horizon), sub(), agent)


def random_program(rng: random.Random, m, depth: int, horizon: int = 10):
    agents = sorted(m.agents)
    if depth <= 0 or rng.random() < 0.3:
        cls = rng.choice((Equiv, PlausiblePre, DesirePre, NotPlausible, NotDesire))
        return cls(rng.choice(agents))
    roll = rng.random()
    if roll < 0.15:
        return Converse(random_program(rng, m, depth - 1, horizon))
    if roll < 0.27:
        return Test(random_dlca_formula(rng, m, min(depth - 1, 1), horizon))
    kind = rng.choice((Seq, Union, Inter))
    return kind(random_program(rng, m, depth - 1, horizon), random_program(rng, m, depth - 1, horizon))


def random_dlca_formula(rng: random.Random, m: DlcaModel, depth: int, horizon: int = 10):
    if depth <= 0 or rng.random() < 0.2:
        noms = model_nominals(m)
        if noms and rng.random() < 0.3:
            return rng.choice(noms)
        return _pick_atom(rng, m, horizon)
    roll = rng.random()
    if roll < 0.25:
        return Not(random_dlca_formula(rng, m, depth - 1, horizon))
    if roll < 0.5:
        return And(random_dlca_formula(rng, m, depth - 1, horizon),
                   random_dlca_formula(rng, m, depth - 1, horizon))
    return DynDlca(random_program(rng, m, min(depth - 1, 2), horizon),
                   random_dlca_formula(rng, m, depth - 1, horizon))


# -- shrinking ---------------------------------------------------------------

def _children(f) -> list:
    if isinstance(f, (Not, Always, Believes, Knows, DynLek, DynDlca)):
        return [f.sub]
    if isinstance(f, (And, Or, Implies)):
        return [f.left, f.right]
    return []


def shrink(model, formula, world: str, fails: Callable, valid: Callable = lambda m: True):
    """Greedily drop worlds and descend into subformulas while ``fails`` stays true.

    ``fails(model, formula, world)`` must hold for the input; the result is a
    (model, formula, world) triple that still fails and is locally minimal.
    """
    changed = True
    while changed:
        changed = False
        for w in sorted(model.worlds):
            if w == world:
                continue
            smaller = model.restrict(model.worlds - {w})
            if valid(smaller) and fails(smaller, formula, world):
                model, changed = smaller, True
                break
        if changed:
            continue
        for child in _children(formula):
            if fails(model, child, world):
                formula, changed = child, True
                break
    return model, formula, world
