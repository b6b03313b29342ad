"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are also collected and repeated in pytest's terminal summary, so
they show up without ``-s``.
"""
import itertools
import math
import random
import time

import numpy as np
import pytest

from chronomind import (
    DLCA, INF, LEK, And, Atom, Believes, Conjoin, Converse, DesirePre, DlcaChecker,
    Equiv, Infer, Interval, Knows, Learn, LekChecker, LekModel, NotDesire,
    NotPlausible, PlausiblePre, Seq, Test, apply_op, hull, intersect, is_subset,
    parse_formula, parse_mental_op, parse_model, parse_program, render_formula,
    render_model, render_op, render_program, subtract, validate_dlca_model,
    validate_lek_model,
)
from chronomind.oracle import (
    GenConfig, naive_relation, naive_satisfies, random_dlca_formula,
    random_dlca_model, random_lek_formula, random_lek_model, random_mental_op,
    random_program,
)

RESULTS: list = []


def report(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    RESULTS.append(line)
    print(line)


def lek_models(n):
    for seed in range(n):
        rng = random.Random(seed)
        yield seed, rng, random_lek_model(GenConfig(max_worlds=6, max_agents=2, max_time=10, seed=seed), rng)


# -- 1 ----------------------------------------------------------------------

HORIZON = 20


def _points(I):
    if I is None:
        return frozenset()
    return frozenset(range(I.lo, (HORIZON if I.hi == INF else I.hi) + 1))


def test_criterion_1_interval_oracle():
    start = time.perf_counter()
    ivs = [Interval(lo, hi) for lo in range(13) for hi in [*range(lo, 13), INF]]
    pts = {I: _points(I) for I in ivs}
    failures = 0
    for a, b in itertools.product(ivs, repeat=2):
        pa, pb = pts[a], pts[b]
        union = pa | pb
        failures += _points(hull(a, b)) != frozenset(range(min(union), max(union) + 1))
        failures += _points(intersect(a, b)) != pa & pb
        failures += frozenset().union(*(_points(p) for p in subtract(a, b))) != pa - pb
        failures += is_subset(a, b) != (pa <= pb)
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 5
    report(1, "interval algebra = pointwise sets", ok,
           f"{len(ivs) ** 2} pairs, {failures} failures, {elapsed:.2f}s < 5s")
    assert ok


# -- 2 ----------------------------------------------------------------------

def test_criterion_2_revision_identity():
    failures = cases = degenerate = 0
    for t3 in range(13):
        for t4 in range(t3, 13):
            for t1 in range(t3, t4 + 1):
                for t2 in range(t1, t4 + 1):
                    want = []
                    if t1 - 1 >= t3:
                        want.append(Interval(t3, t1 - 1))
                    if t2 + 1 <= t4:
                        want.append(Interval(t2 + 1, t4))
                    degenerate += len(want) < 2
                    failures += list(subtract(Interval(t3, t4), Interval(t1, t2))) != want
                    cases += 1
    ok = failures == 0 and degenerate > 0
    report(2, "subtract([t3,t4],[t1,t2]) = [t3,t1-1] u [t2+1,t4]", ok,
           f"{cases} cases, {degenerate} with empty pieces, {failures} failures")
    assert ok


# -- 3 ----------------------------------------------------------------------

def test_criterion_3_differential_lek():
    start = time.perf_counter()
    disagreements = checks = 0
    for seed, rng, m in lek_models(1000):
        chk = LekChecker(m)
        for _ in range(2):
            f = random_lek_formula(rng, m, rng.randint(1, 4))
            for w in sorted(m.worlds):
                checks += 1
                disagreements += chk.holds(w, f) != naive_satisfies(m, w, f)
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and elapsed < 60
    report(3, "lek_satisfies = naive_satisfies", ok,
           f"1000 models, {checks} checks, {disagreements} disagreements, {elapsed:.1f}s < 60s")
    assert ok


# -- 4 ----------------------------------------------------------------------

def _postcondition(op, agent):
    if isinstance(op, Learn):
        return Believes(agent, op.literal)
    if isinstance(op, Conjoin):
        return Believes(agent, And(op.left, op.right))
    if isinstance(op, Infer):
        return Believes(agent, op.conclusion)
    return None


def test_criterion_4_postconditions():
    failures = 0
    fired = {Learn: 0, Conjoin: 0, Infer: 0}
    idle = 0
    for seed, rng, m in lek_models(500):
        for _ in range(6):
            op = random_mental_op(rng, m)
            agent = rng.choice(sorted(m.agents))
            out = apply_op(m, agent, op)
            if not out.changed:
                idle += 1
                failures += out.model != m
                continue
            goal = _postcondition(op, agent)
            if goal is None:
                continue
            fired[type(op)] += 1
            after = LekChecker(out.model)
            failures += sum(not after.holds(w, goal) for _, w in out.touched)
    ok = failures == 0 and all(fired.values()) and idle > 0
    counts = ", ".join(f"{k.__name__} fired {v}" for k, v in fired.items())
    report(4, "mental-operation postconditions", ok, f"500 models, {counts}, {idle} idle, {failures} failures")
    assert ok


# -- 5 ----------------------------------------------------------------------

def _warning_counterexample() -> bool:
    val = {"w1": {Atom("p", 1, 2)}, "w2": {Atom("p", 1, 2), Atom("r", 4, 8)}}
    both = {(a, b) for a in val for b in val}
    m = LekModel(val, {"i"}, val, {"i": both}, {})
    off = apply_op(m, "i", Learn(Atom("r", 4, 8)))
    on = apply_op(m, "i", Learn(Atom("r", 4, 8)), propagate=True)
    return bool(off.warnings) and not on.warnings and validate_lek_model(on.model) == []


def test_criterion_5_validity_preservation():
    violations = steps = 0
    for seed, rng, m in lek_models(500):
        for _ in range(rng.randint(1, 5)):
            op = random_mental_op(rng, m)
            m = apply_op(m, rng.choice(sorted(m.agents)), op, propagate=True).model
            violations += len(validate_lek_model(m))
            steps += 1
    warned = _warning_counterexample()
    ok = violations == 0 and warned
    report(5, "validity preserved with propagation", ok,
           f"{steps} steps, {violations} violations, warning path {'triggered' if warned else 'silent'}")
    assert ok


# -- 6 ----------------------------------------------------------------------

def test_criterion_6_dlca_relation_laws():
    failures = programs = 0
    for seed in range(500):
        rng = random.Random(seed)
        m = random_dlca_model(GenConfig(seed=seed), rng)
        failures += bool(validate_dlca_model(m))
        chk = DlcaChecker(m)
        a, b, c = (random_program(rng, m, 2) for _ in range(3))
        failures += not np.array_equal(chk.relation(Converse(Converse(a))), chk.relation(a))
        failures += not np.array_equal(chk.relation(Seq(Seq(a, b), c)), chk.relation(Seq(a, Seq(b, c))))
        for i in sorted(m.agents):
            eq = chk.relation(Equiv(i))
            for pre, comp in ((PlausiblePre(i), NotPlausible(i)), (DesirePre(i), NotDesire(i))):
                x, y = chk.relation(pre), chk.relation(comp)
                failures += not np.array_equal(x | y, eq) or bool((x & y).any())
        f = random_dlca_formula(rng, m, 2)
        want = {(w, w) for w in m.worlds if naive_satisfies(m, w, f)}
        failures += chk.pairs(chk.relation(Test(f))) != want
        for _ in range(4):
            p = random_program(rng, m, rng.randint(0, 4))
            programs += 1
            failures += chk.pairs(chk.relation(p)) != naive_relation(m, p)
    ok = failures == 0
    report(6, "DLCA relation laws and naive_relation agreement", ok,
           f"500 models, {programs} sampled programs, {failures} failures")
    assert ok


# -- 7 ----------------------------------------------------------------------

def test_criterion_7_round_trip():
    failures = 0
    for seed in range(2000):
        rng = random.Random(seed)
        m = random_lek_model(GenConfig(seed=seed), rng)
        f = random_lek_formula(rng, m, rng.randint(0, 4))
        failures += parse_formula(render_formula(f), LEK) != f
        op = random_mental_op(rng, m)
        failures += parse_mental_op(render_op(op)) != op
        d = random_dlca_model(GenConfig(seed=seed), rng)
        g = random_dlca_formula(rng, d, rng.randint(0, 4))
        failures += parse_formula(render_formula(g), DLCA) != g
        p = random_program(rng, d, rng.randint(0, 4))
        failures += parse_program(render_program(p)) != p
        if seed < 300:
            failures += parse_model(render_model(m)) != m
            failures += parse_model(render_model(d)) != d
    ok = failures == 0
    report(7, "parse(render(x)) = x", ok, f"2000 ASTs per dialect, 600 model files, {failures} failures")
    assert ok


# -- 8 ----------------------------------------------------------------------

def scaling_model(n: int, seed: int = 0) -> LekModel:
    """n worlds, two agents, classes of about four worlds, a few sets per class."""
    rng = random.Random(seed)
    worlds = [f"w{k:03d}" for k in range(n)]
    val = {}
    for w in worlds:
        props = {Atom("r", 0, 12)}
        for pred in "pqs":
            if rng.random() < 0.5:
                lo = rng.randint(0, 6)
                props.add(Atom(pred, lo, lo + rng.randint(0, 4)))
        val[w] = props
    equiv, nbhd = {}, {}
    for i, size in (("i", 4), ("j", 8)):
        order = worlds[:]
        rng.shuffle(order)
        classes = [order[k:k + size] for k in range(0, n, size)]
        equiv[i] = {(a, b) for c in classes for a in c for b in c}
        for c in classes:
            sets = {frozenset(w for w in c if rng.random() < 0.5) for _ in range(3)}
            for w in c:
                nbhd[(i, w)] = sets
    return LekModel(worlds, ("i", "j"), val, equiv, nbhd)


FIXED = parse_formula(
    "(B[i] (p(1,3) | ~q(2,5)) -> K[j] r(0,12)) & G[0,12] (r(0,12) -> [+p(1,3)] B[i] p(1,3))"
)


def _eval_time(m: LekModel, world: str) -> float:
    best = math.inf
    for _ in range(5):
        start = time.perf_counter()
        LekChecker(m).holds(world, FIXED)
        best = min(best, time.perf_counter() - start)
    return best


def test_criterion_8_scaling():
    sizes = [4, 8, 16, 32, 64]
    _eval_time(scaling_model(8), "w000")  # warm up jit and caches
    times = [_eval_time(scaling_model(n), "w000") for n in sizes]
    slope = float(np.polyfit(np.log(sizes), np.log(times), 1)[0])
    ok = slope <= 2.2
    shown = ", ".join(f"{n}:{t * 1e3:.2f}ms" for n, t in zip(sizes, times))
    report(8, "evaluation time grows at most quadratically", ok, f"log-log slope {slope:.2f} <= 2.2; {shown}")
    assert ok
