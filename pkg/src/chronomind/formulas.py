"""Abstract syntax shared by the LEK and DLCA languages.

Formulas, mental operations and cognitive programs are frozen dataclasses,
so they hash and compare structurally and can key evaluation caches.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .intervals import Interval, TimePoint


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    """A timed atom ``pred(t1, t2, *args)``; the first two terms are timestamps."""

    pred: str
    t1: int
    t2: TimePoint
    args: tuple = ()

    def __post_init__(self):
        Interval(self.t1, self.t2)  # raises MalformedInterval

    @property
    def interval(self) -> Interval:
        return Interval(self.t1, self.t2)

    @property
    def signature(self) -> tuple:
        """Everything but the timestamps: atoms with the same signature talk about the same fact."""
        return (self.pred, self.args)

    def over(self, interval: Interval) -> "Atom":
        return Atom(self.pred, interval.lo, interval.hi, self.args)


@dataclass(frozen=True)
class Nominal(Formula):
    name: str
    t: int

    def __post_init__(self):
        Interval(self.t, self.t)


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Always(Formula):
    """``G[a,b] sub``; with ``agent`` set, only that agent's epistemic state is quantified."""

    interval: Interval
    sub: Formula
    agent: Optional[str] = None


@dataclass(frozen=True)
class Believes(Formula):
    agent: str
    sub: Formula


@dataclass(frozen=True)
class Knows(Formula):
    agent: str
    sub: Formula


@dataclass(frozen=True)
class DynLek(Formula):
    """``[op] sub``; ``agent=None`` means every agent performs the operation."""

    op: "MentalOp"
    sub: Formula
    agent: Optional[str] = None


@dataclass(frozen=True)
class DynDlca(Formula):
    program: "Program"
    sub: Formula


def iff(a: Formula, b: Formula) -> Formula:
    return And(Implies(a, b), Implies(b, a))


# -- mental operations ------------------------------------------------------

class MentalOp:
    __slots__ = ()


@dataclass(frozen=True)
class Learn(MentalOp):
    literal: Formula


@dataclass(frozen=True)
class Conjoin(MentalOp):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Infer(MentalOp):
    premise: Formula
    conclusion: Formula


@dataclass(frozen=True)
class Revise(MentalOp):
    perceived: Formula
    believed: Formula


# -- cognitive programs -----------------------------------------------------

class Program:
    __slots__ = ()


@dataclass(frozen=True)
class Equiv(Program):
    agent: str


@dataclass(frozen=True)
class PlausiblePre(Program):
    agent: str


@dataclass(frozen=True)
class DesirePre(Program):
    agent: str


@dataclass(frozen=True)
class NotPlausible(Program):
    agent: str


@dataclass(frozen=True)
class NotDesire(Program):
    agent: str


@dataclass(frozen=True)
class Seq(Program):
    left: Program
    right: Program


@dataclass(frozen=True)
class Union(Program):
    left: Program
    right: Program


@dataclass(frozen=True)
class Inter(Program):
    left: Program
    right: Program


@dataclass(frozen=True)
class Converse(Program):
    sub: Program


@dataclass(frozen=True)
class Test(Program):
    formula: Formula

    __test__ = False  # keep pytest from collecting it


ATOMIC_PROGRAMS = {
    "eq": Equiv,
    "pl": PlausiblePre,
    "ds": DesirePre,
    "npl": NotPlausible,
    "nds": NotDesire,
}
ATOMIC_PROGRAM_NAMES = {cls: name for name, cls in ATOMIC_PROGRAMS.items()}

LEK_ONLY = (Always, Believes, Knows, DynLek)
DLCA_ONLY = (Nominal, DynDlca)


def is_literal(f: Formula) -> bool:
    return isinstance(f, Atom) or (isinstance(f, Not) and isinstance(f.sub, Atom))


def subformulas(f: Formula):
    """Yield ``f`` and every formula nested in it (including inside operations and programs)."""
    yield f
    if isinstance(f, (Not, Always, Believes, Knows)):
        yield from subformulas(f.sub)
    elif isinstance(f, (And, Or, Implies)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, DynLek):
        for arg in op_arguments(f.op):
            yield from subformulas(arg)
        yield from subformulas(f.sub)
    elif isinstance(f, DynDlca):
        for test in program_tests(f.program):
            yield from subformulas(test)
        yield from subformulas(f.sub)


def op_arguments(op: MentalOp) -> tuple:
    if isinstance(op, Learn):
        return (op.literal,)
    if isinstance(op, Conjoin):
        return (op.left, op.right)
    if isinstance(op, Infer):
        return (op.premise, op.conclusion)
    if isinstance(op, Revise):
        return (op.perceived, op.believed)
    raise TypeError(f"not a mental operation: {op!r}")


def program_tests(p: Program):
    if isinstance(p, Test):
        yield p.formula
    elif isinstance(p, (Seq, Union, Inter)):
        yield from program_tests(p.left)
        yield from program_tests(p.right)
    elif isinstance(p, Converse):
        yield from program_tests(p.sub)


def formula_depth(f: Formula) -> int:
    if isinstance(f, (Atom, Nominal)):
        return 0
    if isinstance(f, (Not, Always, Believes, Knows)):
        return 1 + formula_depth(f.sub)
    if isinstance(f, (And, Or, Implies)):
        return 1 + max(formula_depth(f.left), formula_depth(f.right))
    if isinstance(f, (DynLek, DynDlca)):
        return 1 + formula_depth(f.sub)
    raise TypeError(f"not a formula: {f!r}")
