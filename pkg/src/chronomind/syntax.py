"""Concrete ASCII syntax: tokenizer, recursive-descent parser and renderer.

Formula precedence from tightest to loosest is ``~`` and the modal
prefixes, then ``&``, ``|`` and the right-associative ``->``.  Programs bind
``-`` and the postfix test ``?`` tightest, then ``;``, ``n`` and ``u``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .errors import DialectError, ParseError
from .formulas import (
    ATOMIC_PROGRAM_NAMES, ATOMIC_PROGRAMS, Always, And, Atom, Believes,
    Conjoin, Converse, DynDlca, DynLek, Formula, Implies, Infer, Inter, Knows,
    Learn, MentalOp, Nominal, Not, Or, Program, Revise, Seq, Test, Union,
)
from .intervals import INF, Interval, format_point

LEK = "LEK"
DLCA = "DLCA"

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)"
    r"|(?P<op>->|<=|[~&|()\[\],;?+\-@{}:])"
    r"|(?P<nat>\d+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
)

MOP_NAMES = ("cap", "inf", "rev")


@dataclass(frozen=True)
class Token:
    kind: str  # "op", "nat", "ident", "eof"
    text: str
    line: int
    col: int


def tokenize(text: str, line: int = 1, col: int = 1) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        chunk = m.group()
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, chunk, line, col))
        for ch in chunk:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


class Parser:
    """Recursive-descent parser over a token list for one dialect."""

    def __init__(self, text: str, dialect: str = LEK, line: int = 1, col: int = 1):
        if dialect not in (LEK, DLCA):
            raise ValueError(f"unknown dialect {dialect!r}")
        self.tokens = tokenize(text, line, col)
        self.pos = 0
        self.dialect = dialect

    # -- token helpers --

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def at(self, text: str, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok.kind in ("op", "ident") and tok.text == text

    def advance(self) -> Token:
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}")
        return self.advance()

    def error(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.peek()
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{message}, found {found}", tok.line, tok.col)

    def dialect_error(self, what: str):
        tok = self.peek()
        raise DialectError(f"{what} is not part of {self.dialect} (line {tok.line}, column {tok.col})")

    def nat(self) -> int:
        tok = self.peek()
        if tok.kind != "nat":
            self.error("expected a natural number")
        self.advance()
        return int(tok.text)

    def timepoint(self):
        if self.at("INF"):
            self.advance()
            return INF
        return self.nat()

    def ident(self) -> str:
        tok = self.peek()
        if tok.kind != "ident":
            self.error("expected an identifier")
        self.advance()
        return tok.text

    def finish(self):
        if self.peek().kind != "eof":
            self.error("unexpected trailing input")

    # -- formulas --

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.advance()
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.at("|"):
            self.advance()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.at("&"):
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if self.at("~"):
            self.advance()
            return Not(self.unary())
        if tok.kind == "ident" and tok.text in ("B", "K") and self.at("[", 1):
            if self.dialect != LEK:
                self.dialect_error(f"{tok.text}[..]")
            self.advance()
            self.expect("[")
            agent = self.ident()
            self.expect("]")
            cls = Believes if tok.text == "B" else Knows
            return cls(agent, self.unary())
        if tok.kind == "ident" and tok.text == "G" and self.at("[", 1):
            if self.dialect != LEK:
                self.dialect_error("G[..]")
            return self.always()
        if self.at("["):
            return self.dynamic()
        return self.primary()

    def always(self) -> Formula:
        self.advance()
        self.expect("[")
        agent = None
        if self.peek().kind == "ident":
            agent = self.ident()
            self.expect("]")
            self.expect("[")
        lo = self.nat()
        self.expect(",")
        hi = self.timepoint()
        self.expect("]")
        interval = Interval(lo, hi)  # MalformedInterval, as for atoms
        return Always(interval, self.unary(), agent)

    def dynamic(self) -> Formula:
        self.expect("[")
        if self.dialect == LEK:
            if self.looks_like_program():
                self.dialect_error("a cognitive program [..]")
            agent = None
            if self.peek().kind == "ident" and self.at(":", 1):
                agent = self.ident()
                self.advance()
            op = self.mental_op()
            self.expect("]")
            return DynLek(op, self.unary(), agent)
        if self.at("+") or (self.peek().text in MOP_NAMES and self.at("(", 1)):
            self.dialect_error("a mental operation [..]")
        prog = self.program()
        self.expect("]")
        return DynDlca(prog, self.unary())

    def looks_like_program(self) -> bool:
        return (
            self.peek().text in ATOMIC_PROGRAMS
            and self.at("(", 1)
            and self.peek(2).kind == "ident"
            and self.at(")", 3)
        )

    def primary(self) -> Formula:
        tok = self.peek()
        if self.at("("):
            self.advance()
            f = self.formula()
            self.expect(")")
            return f
        if tok.kind != "ident":
            self.error("expected a formula")
        if self.at("@", 1):
            if self.dialect != DLCA:
                self.dialect_error("a nominal")
            name = self.ident()
            self.advance()
            return Nominal(name, self.nat())
        return self.atom()

    def atom(self) -> Atom:
        pred = self.ident()
        self.expect("(")
        t1 = self.nat()
        self.expect(",")
        t2 = self.timepoint()
        args = []
        while self.at(","):
            self.advance()
            tok = self.peek()
            if tok.kind == "nat":
                args.append(self.nat())
            else:
                args.append(self.ident())
        self.expect(")")
        return Atom(pred, t1, t2, tuple(args))

    def literal(self) -> Formula:
        if self.at("~"):
            self.advance()
            return Not(self.atom())
        return self.atom()

    # -- mental operations --

    def mental_op(self) -> MentalOp:
        if self.at("+"):
            self.advance()
            return Learn(self.literal())
        name = self.peek().text
        if name not in MOP_NAMES or not self.at("(", 1):
            self.error("expected a mental operation (+, cap, inf, rev)")
        self.advance()
        self.expect("(")
        if name == "cap":
            a = self.formula()
            self.expect(",")
            b = self.formula()
            op = Conjoin(a, b)
        elif name == "inf":
            a = self.formula()
            self.expect(",")
            op = Infer(a, self.atom())
        else:
            a = self.atom()
            self.expect(",")
            op = Revise(a, self.atom())
        self.expect(")")
        return op

    # -- programs --

    def program(self) -> Program:
        p = self.program_inter()
        while self.at("u"):
            self.advance()
            p = Union(p, self.program_inter())
        return p

    def program_inter(self) -> Program:
        p = self.program_seq()
        while self.at("n"):
            self.advance()
            p = Inter(p, self.program_seq())
        return p

    def program_seq(self) -> Program:
        p = self.program_unary()
        while self.at(";"):
            self.advance()
            p = Seq(p, self.program_unary())
        return p

    def program_unary(self) -> Program:
        if self.at("-"):
            self.advance()
            return Converse(self.program_unary())
        if self.looks_like_program():
            cls = ATOMIC_PROGRAMS[self.advance().text]
            self.advance()
            agent = self.ident()
            self.advance()
            return cls(agent)
        # a test "formula?" and a parenthesised program can share a prefix
        start = self.pos
        try:
            f = self.formula()
            self.expect("?")
            return Test(f)
        except ParseError as formula_err:
            formula_pos = self.pos
            self.pos = start
            if not self.at("("):
                raise
            try:
                self.advance()
                p = self.program()
                self.expect(")")
                return p
            except ParseError:
                if self.pos >= formula_pos:
                    raise
                raise formula_err


def parse_formula(text: str, dialect: str = LEK) -> Formula:
    p = Parser(text, dialect)
    f = p.formula()
    p.finish()
    return f


def parse_program(text: str) -> Program:
    p = Parser(text, DLCA)
    prog = p.program()
    p.finish()
    return prog


def parse_mental_op(text: str) -> MentalOp:
    p = Parser(text, LEK)
    op = p.mental_op()
    p.finish()
    return op


def parse_atoms(text: str, dialect: str = LEK, line: int = 1, col: int = 1) -> list:
    """Parse a whitespace-separated list of atoms (and nominals, for DLCA)."""
    p = Parser(text, dialect, line, col)
    out = []
    while p.peek().kind != "eof":
        f = p.primary()
        if not isinstance(f, (Atom, Nominal)):
            p.error("expected an atom")
        out.append(f)
    return out


# -- rendering --------------------------------------------------------------

def render_atom(a: Atom) -> str:
    terms = [str(a.t1), format_point(a.t2)] + [str(x) for x in a.args]
    return f"{a.pred}({','.join(terms)})"


def render_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return render_atom(f)
    if isinstance(f, Nominal):
        return f"{f.name}@{f.t}"
    if isinstance(f, Not):
        return "~" + render_formula(f.sub)
    if isinstance(f, And):
        return f"({render_formula(f.left)} & {render_formula(f.right)})"
    if isinstance(f, Or):
        return f"({render_formula(f.left)} | {render_formula(f.right)})"
    if isinstance(f, Implies):
        return f"({render_formula(f.left)} -> {render_formula(f.right)})"
    if isinstance(f, Always):
        bounds = f"[{f.interval.lo},{format_point(f.interval.hi)}]"
        agent = f"[{f.agent}]" if f.agent is not None else ""
        return f"G{agent}{bounds} {render_formula(f.sub)}"
    if isinstance(f, Believes):
        return f"B[{f.agent}] {render_formula(f.sub)}"
    if isinstance(f, Knows):
        return f"K[{f.agent}] {render_formula(f.sub)}"
    if isinstance(f, DynLek):
        agent = f"{f.agent}: " if f.agent is not None else ""
        return f"[{agent}{render_op(f.op)}] {render_formula(f.sub)}"
    if isinstance(f, DynDlca):
        return f"[{render_program(f.program)}] {render_formula(f.sub)}"
    raise TypeError(f"not a formula: {f!r}")


def render_op(op: MentalOp) -> str:
    if isinstance(op, Learn):
        return "+" + render_formula(op.literal)
    if isinstance(op, Conjoin):
        return f"cap({render_formula(op.left)}, {render_formula(op.right)})"
    if isinstance(op, Infer):
        return f"inf({render_formula(op.premise)}, {render_formula(op.conclusion)})"
    if isinstance(op, Revise):
        return f"rev({render_formula(op.perceived)}, {render_formula(op.believed)})"
    raise TypeError(f"not a mental operation: {op!r}")


def render_program(p: Program) -> str:
    name = ATOMIC_PROGRAM_NAMES.get(type(p))
    if name is not None:
        return f"{name}({p.agent})"
    if isinstance(p, Seq):
        return f"({render_program(p.left)} ; {render_program(p.right)})"
    if isinstance(p, Union):
        return f"({render_program(p.left)} u {render_program(p.right)})"
    if isinstance(p, Inter):
        return f"({render_program(p.left)} n {render_program(p.right)})"
    if isinstance(p, Converse):
        return "-" + render_program(p.sub)
    if isinstance(p, Test):
        return render_formula(p.formula) + "?"
    raise TypeError(f"not a program: {p!r}")
