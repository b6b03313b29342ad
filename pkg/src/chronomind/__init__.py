"""chronomind: timed belief/knowledge logics with neighbourhood and preorder models."""
import logging

from .errors import (
    ChronomindError, DialectError, DuplicateWorld, MalformedInterval,
    NotGround, ParseError, UnknownAgent, UnknownWorld, UnknownWorldInRelation,
)
from .formulas import (
    Always, And, Atom, Believes, Conjoin, Converse, DesirePre, DynDlca,
    DynLek, Equiv, Implies, Infer, Inter, Knows, Learn, Nominal, Not,
    NotDesire, NotPlausible, Or, PlausiblePre, Revise, Seq, Test, Union, iff,
)
from .intervals import (
    INF, Interval, IntervalSet, hull, interval_new, intersect, is_subset,
    subtract,
)
from .timing import time_of, time_of_op
from .syntax import (
    DLCA, LEK, parse_formula, parse_mental_op, parse_program, render_formula,
    render_op, render_program,
)
from .models import DlcaModel, LekModel, world_interval
from .modelio import (
    load_model, parse_dlca_model, parse_lek_model, parse_model,
    render_dlca_model, render_lek_model, render_model, save_model,
)
from .lek import LekChecker, extension, lek_satisfies, validate_lek_model
from .mental import (
    OpOutcome, Restructuring, apply_conjoin, apply_infer, apply_learn,
    apply_op, apply_revise, transform,
)
from .dlca import DlcaChecker, dlca_satisfies, program_relation, validate_dlca_model

logging.getLogger(__name__).addHandler(logging.NullHandler())

__version__ = "0.1.0"
