"""The time function: maps every formula (and mental operation) to an interval."""
from __future__ import annotations

from .formulas import (
    Always, And, Atom, Believes, Conjoin, DynDlca, DynLek, Formula, Implies,
    Infer, Knows, Learn, MentalOp, Nominal, Not, Or, Revise,
)
from .intervals import Interval, IntervalSet, hull, subtract


def time_of(f: Formula) -> Interval:
    if isinstance(f, Atom):
        return f.interval
    if isinstance(f, Nominal):
        return Interval(f.t, f.t)
    if isinstance(f, (Not, Believes, Knows)):
        return time_of(f.sub)
    if isinstance(f, (And, Or, Implies)):
        return hull(time_of(f.left), time_of(f.right))
    if isinstance(f, Always):
        return f.interval
    if isinstance(f, DynLek):
        return time_of_op(f.op)
    if isinstance(f, DynDlca):
        return time_of(f.sub)
    raise TypeError(f"not a formula: {f!r}")


def revision_residual(op: Revise) -> IntervalSet:
    """Where the revised belief survives: T(believed) minus T(perceived)."""
    return subtract(time_of(op.believed), time_of(op.perceived))


def time_of_op(op: MentalOp) -> Interval:
    if isinstance(op, Learn):
        return time_of(op.literal)
    if isinstance(op, Conjoin):
        return hull(time_of(op.left), time_of(op.right))
    if isinstance(op, Infer):
        return time_of(op.conclusion)
    if isinstance(op, Revise):
        # nothing survives when the perception covers the whole belief
        return revision_residual(op).hull() or time_of(op.believed)
    raise TypeError(f"not a mental operation: {op!r}")
