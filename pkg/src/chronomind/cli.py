"""``chronomind`` command line.

Exit codes are shared by every subcommand: 0 for true/success, 1 for a false
verdict or model violations, 2 for operational errors (I/O, parse, dialect).
"""
from __future__ import annotations

import argparse
import re
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .dlca import DlcaChecker, validate_dlca_model
from .errors import ChronomindError
from .formulas import DynDlca, DynLek, subformulas
from .intervals import INF, Interval
from .lek import LekChecker, validate_lek_model
from .mental import apply_op
from .modelio import load_model, save_model
from .models import LekModel
from .syntax import (
    DLCA, LEK, parse_formula, parse_mental_op, render_formula, render_op,
    render_program,
)
from .timing import time_of


@dataclass
class RunReport:
    verdict: object  # True, False or "error"
    diagnostics: list = field(default_factory=list)
    elapsed: float = 0.0
    touched: Optional[frozenset] = None

    @property
    def exit_code(self) -> int:
        if self.verdict is True:
            return 0
        if self.verdict is False:
            return 1
        return 2


def _error(exc: BaseException) -> RunReport:
    kind = type(exc).__name__
    return RunReport("error", [f"error: {kind}: {exc}"])


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        try:
            report = fn(*args, **kwargs)
        except (ChronomindError, OSError, ValueError, KeyError) as exc:
            report = _error(exc)
        report.elapsed = time.perf_counter() - start
        return report
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _dialect(model) -> str:
    return LEK if isinstance(model, LekModel) else DLCA


def _checker(model, standard_pdl=False, propagate=False):
    if isinstance(model, LekModel):
        return LekChecker(model, propagate)
    return DlcaChecker(model, standard_pdl)


def _validate(model) -> list:
    if isinstance(model, LekModel):
        return validate_lek_model(model)
    return validate_dlca_model(model)


def _show_interval(I: Interval, horizon: Optional[int]) -> str:
    if horizon is not None and I.hi == INF:
        return f"{I} (points {I.lo}..{horizon})"
    return str(I)


@_timed
def run_validate(model_path) -> RunReport:
    model = load_model(model_path)
    violations = _validate(model)
    if violations:
        return RunReport(False, violations)
    return RunReport(True, [f"ok: {len(model.worlds)} worlds, {len(model.agents)} agents"])


@_timed
def run_check(model_path, world: str, formula_text: str, *, explain: bool = False,
              standard_pdl: bool = False, horizon: Optional[int] = None,
              propagate: bool = False, verbose: bool = False) -> RunReport:
    model = load_model(model_path)
    formula = parse_formula(formula_text, _dialect(model))
    chk = _checker(model, standard_pdl, propagate)
    verdict = chk.holds(world, formula)
    lines = [f"{'true' if verdict else 'false'}: {render_formula(formula)} at {world}"]
    if explain:
        lines += _explain(chk, world, formula, horizon)
    if (explain or verbose) and isinstance(chk, DlcaChecker):
        lines += _dropped(chk)
    return RunReport(verdict, lines)


def _explain(chk, world: str, formula, horizon: Optional[int]) -> list:
    I = chk.model.world_interval(world)
    k = chk.index[world]
    lines = [f"world {world} spans {_show_interval(I, horizon)}"]
    seen = set()
    ordered = []
    for g in subformulas(formula):
        if g not in seen and not _inside_dynamic(formula, g):
            seen.add(g)
            ordered.append(g)
    for g in reversed(ordered):
        T = time_of(g)
        fired = "guard ok" if I.lo <= T.lo and T.hi <= I.hi else "guard FAILS"
        value = "T" if chk.sat(g)[k] else "F"
        lines.append(f"  {value}  T={_show_interval(T, horizon)} {fired}  {render_formula(g)}")
        if isinstance(g, DynDlca) and isinstance(chk, DlcaChecker):
            succ = sorted(chk.names[j] for j in chk.relation(g.program)[k].nonzero()[0])
            lines.append(f"       successors of {world}: {' '.join(succ) or '(none)'}")
    return lines


def _dropped(chk: DlcaChecker) -> list:
    lines = []
    for prog, pairs in sorted(chk.dropped.items(), key=lambda kv: render_program(kv[0])):
        shown = " ".join(f"{a}->{b}" for a, b in sorted(pairs))
        lines.append(f"  same-interval filter dropped {shown} from {render_program(prog)}")
    return lines


def _inside_dynamic(root, g) -> bool:
    """Subformulas of an [op] body are evaluated in another model; skip them in explanations."""
    for f in subformulas(root):
        if isinstance(f, DynLek) and f is not g and any(h is g for h in subformulas(f.sub)):
            return True
    return False


@_timed
def run_extension(model_path, agent: str, world: str, formula_text: str) -> RunReport:
    model = load_model(model_path)
    if not isinstance(model, LekModel):
        return RunReport("error", ["error: extension needs a LEK model"])
    formula = parse_formula(formula_text, LEK)
    ext = LekChecker(model).extension(agent, world, formula)
    return RunReport(True, ["{" + " ".join(sorted(ext)) + "}"])


def _op_lines(outcome) -> list:
    lines = [f"changed: {'yes' if outcome.changed else 'no'}"]
    touched = " ".join(f"{i}@{w}" for i, w in sorted(outcome.touched))
    lines.append(f"touched: {touched or '(none)'}")
    if outcome.propagated:
        lines.append("propagated: " + " ".join(f"{i}@{w}" for i, w in sorted(outcome.propagated)))
    r = outcome.restructured
    if r is not None:
        lines.append(f"removed: {r.removed} from {render_formula(r.atom)}")
        lines.append("residuals: " + (" ".join(str(x) for x in r.residuals) or "(none)"))
    lines += [f"warning: {w}" for w in outcome.warnings]
    return lines


@_timed
def run_apply(model_path, agent: str, op_text: str, out_path, *, propagate: bool = False) -> RunReport:
    model = load_model(model_path)
    if not isinstance(model, LekModel):
        return RunReport("error", ["error: mental operations need a LEK model"])
    op = parse_mental_op(op_text)
    outcome = apply_op(model, agent, op, propagate=propagate)
    save_model(outcome.model, out_path)
    return RunReport(True, [f"applied {render_op(op)} by {agent}"] + _op_lines(outcome),
                     touched=outcome.touched)


_STEP = re.compile(r"agent\s+([A-Za-z_][A-Za-z0-9_]*)\s*:(.*)$")
_CHECK = re.compile(r"check\s+([A-Za-z_][A-Za-z0-9_]*)\s*:(.*)$")


@_timed
def run_trace(model_path, script_path, out_dir, *, propagate: bool = False) -> RunReport:
    """Run a script of ``agent i: <op>`` steps (and ``check w: <formula>`` probes)."""
    model = load_model(model_path)
    if not isinstance(model, LekModel):
        return RunReport("error", ["error: traces need a LEK model"])
    script = Path(script_path).read_text(encoding="utf-8").splitlines()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    save_model(model, out / "model_000.tlek")
    lines = ["step  op                                  changed  touched"]
    verdict = True
    touched_all = set()
    step = 0
    for lineno, raw in enumerate(script, 1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            if m := _CHECK.match(text):
                world, body = m.group(1), m.group(2).strip()
                holds = LekChecker(model, propagate).holds(world, parse_formula(body, LEK))
                verdict = verdict and holds
                lines.append(f"check {world}: {body} -> {'true' if holds else 'false'}")
                continue
            m = _STEP.match(text)
            if m is None:
                raise ValueError(f"line {lineno}: expected 'agent <i>: <op>' or 'check <w>: <formula>'")
            agent, op = m.group(1), parse_mental_op(m.group(2).strip())
            outcome = apply_op(model, agent, op, propagate=propagate)
        except (ChronomindError, ValueError, KeyError) as exc:
            lines.append(f"error at step {step + 1} (script line {lineno}): {type(exc).__name__}: {exc}")
            return RunReport("error", lines, touched=frozenset(touched_all))
        step += 1
        model = outcome.model
        save_model(model, out / f"model_{step:03d}.tlek")
        touched = " ".join(f"{i}@{w}" for i, w in sorted(outcome.touched)) or "-"
        changed = "yes" if outcome.changed else "no"
        lines.append(f"{step:>4}  {agent + ': ' + render_op(op):<34}  {changed:<7}  {touched}")
        for w in outcome.warnings:
            lines.append(f"      warning: {w}")
        touched_all |= outcome.touched
    return RunReport(verdict, lines, touched=frozenset(touched_all))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chronomind", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, world=False, agent=False, formula=False, out=False):
        p.add_argument("--model", required=True, help="model file (model lek / model dlca)")
        if world:
            p.add_argument("--world", required=True)
        if agent:
            p.add_argument("--agent", required=True)
        if formula:
            p.add_argument("--formula", required=True)
        if out:
            p.add_argument("--out", required=True)
        p.add_argument("--verbose", action="store_true", help="print elapsed time")

    common(sub.add_parser("validate", help="check model constraints"))
    p = sub.add_parser("check", help="evaluate a formula at a world")
    common(p, world=True, formula=True)
    p.add_argument("--explain", action="store_true", help="show every subformula verdict and guard")
    p.add_argument("--standard-pdl", action="store_true",
                   help="read 'u' as union and 'n' as intersection of relations")
    p.add_argument("--horizon", type=int, help="truncate INF to this point in diagnostics")
    p.add_argument("--propagate", action="store_true",
                   help="copy mental-operation updates across equivalence classes")
    common(sub.add_parser("extension", help="worlds in ||formula|| for an agent at a world"),
           world=True, agent=True, formula=True)
    p = sub.add_parser("apply", help="apply one mental operation and write the new model")
    common(p, agent=True, out=True)
    p.add_argument("--op", required=True, help="e.g. '+p(1,2)' or 'rev(p(5,6), q(3,9))'")
    p.add_argument("--propagate", action="store_true")
    p = sub.add_parser("trace", help="apply a script of operations, one model file per step")
    common(p, out=True)
    p.add_argument("--script", required=True)
    p.add_argument("--propagate", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        report = run_validate(args.model)
    elif args.command == "check":
        report = run_check(args.model, args.world, args.formula, explain=args.explain,
                           standard_pdl=args.standard_pdl, horizon=args.horizon,
                           propagate=args.propagate, verbose=args.verbose)
    elif args.command == "extension":
        report = run_extension(args.model, args.agent, args.world, args.formula)
    elif args.command == "apply":
        report = run_apply(args.model, args.agent, args.op, args.out, propagate=args.propagate)
    else:
        report = run_trace(args.model, args.script, args.out, propagate=args.propagate)
    stream = sys.stderr if report.verdict == "error" else sys.stdout
    for line in report.diagnostics:
        print(line, file=stream)
    if args.verbose:
        print(f"elapsed: {report.elapsed:.4f}s", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
