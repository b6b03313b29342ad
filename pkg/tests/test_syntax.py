import random

import pytest
from hypothesis import given, settings, strategies as st

from chronomind import (
    DLCA, INF, LEK, Always, And, Atom, Believes, Converse, DesirePre,
    DialectError, DynLek, Equiv, Interval, Learn, MalformedInterval, Not,
    ParseError, PlausiblePre, Revise, Seq, Test, Union, iff, parse_formula,
    parse_mental_op, parse_program, render_formula, render_op, render_program,
    time_of,
)
from chronomind.oracle import (
    GenConfig, random_dlca_formula, random_dlca_model, random_lek_formula,
    random_lek_model, random_mental_op, random_program,
)

P12 = Atom("p", 1, 2)


def test_formula_examples():
    assert parse_formula("B[i] open(1,3,door)") == Believes("i", Atom("open", 1, 3, ("door",)))
    assert parse_formula("G[2,5] p(3,4)") == Always(Interval(2, 5), Atom("p", 3, 4))
    assert parse_formula("[+ p(1,2)] B[i] p(1,2)") == DynLek(Learn(P12), Believes("i", P12))
    assert parse_formula("G[i][2,INF] p(3,4)") == Always(Interval(2, INF), Atom("p", 3, 4), "i")


def test_program_examples():
    assert parse_program("pl(i) ; eq(j)") == Seq(PlausiblePre("i"), Equiv("j"))
    assert parse_program("-(ds(i))") == Converse(DesirePre("i"))
    assert parse_program("(p(1,2)?) u eq(i)") == Union(Test(P12), Equiv("i"))


def test_render_examples():
    assert render_formula(Believes("i", P12)) == "B[i] p(1,2)"
    assert render_formula(And(P12, Atom("q", 2, 3))) == "(p(1,2) & q(2,3))"
    assert render_formula(Always(Interval(2, 5), Atom("p", 3, 4))) == "G[2,5] p(3,4)"
    assert render_op(Revise(Atom("p", 5, 6), Atom("q", 3, 9))) == "rev(p(5,6), q(3,9))"
    assert render_program(Seq(PlausiblePre("i"), Converse(Equiv("j")))) == "(pl(i) ; -eq(j))"


def test_precedence_and_associativity():
    f = parse_formula("~p(1,2) & q(1,2) | r(1,2) -> s(1,2) -> t(1,2)")
    assert render_formula(f) == "(((~p(1,2) & q(1,2)) | r(1,2)) -> (s(1,2) -> t(1,2)))"


def test_annotated_mental_op():
    f = parse_formula("[i: rev(p(5,6), q(3,9))] B[i] q(3,4)")
    assert f.agent == "i" and f.op == Revise(Atom("p", 5, 6), Atom("q", 3, 9))
    assert parse_formula(render_formula(f)) == f


def test_time_of_examples():
    assert time_of(parse_formula("open(1,3,door)")) == Interval(1, 3)
    assert time_of(parse_formula("p(1,2) & q(4,6)")) == Interval(1, 6)
    assert time_of(parse_formula("G[2,5] p(3,4)")) == Interval(2, 5)
    assert time_of(Not(P12)) == time_of(P12)
    assert time_of(iff(P12, Atom("q", 4, 6))) == Interval(1, 6)


@pytest.mark.parametrize("text, dialect", [
    ("x@4", LEK),
    ("B[i] p(1,2)", DLCA),
    ("K[i] p(1,2)", DLCA),
    ("G[1,2] p(1,2)", DLCA),
    ("[eq(i)] p(1,2)", LEK),
    ("[+p(1,2)] p(1,2)", DLCA),
])
def test_dialect_separation(text, dialect):
    with pytest.raises(DialectError):
        parse_formula(text, dialect)


def test_cross_dialect_productions_accepted_in_their_own_dialect():
    parse_formula("[(pl(i) ; eq(j)) n -nds(i)] (x@4 & ~p(1,2))", DLCA)
    parse_formula("[inf(p(1,2), q(2,3))] K[i] (p(1,2) -> q(2,3))", LEK)


def test_malformed_atom_interval():
    with pytest.raises(MalformedInterval):
        parse_formula("p(3,1)")
    with pytest.raises(MalformedInterval):
        parse_formula("G[5,2] p(3,4)")


def test_parse_error_position():
    with pytest.raises(ParseError) as err:
        parse_formula("p(1,2) &\n  ?")
    assert (err.value.line, err.value.col) == (2, 3)


@pytest.mark.parametrize("text", ["+p(1,2) & q(1,2)", "rev(p(1,2))", "inf(p(1,2), q(1,2) & r(1,2))"])
def test_bad_mental_ops(text):
    with pytest.raises(ParseError):
        parse_mental_op(text)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_lek_round_trip(seed):
    rng = random.Random(seed)
    m = random_lek_model(GenConfig(seed=seed), rng)
    f = random_lek_formula(rng, m, rng.randint(0, 4))
    assert parse_formula(render_formula(f), LEK) == f
    op = random_mental_op(rng, m)
    assert parse_mental_op(render_op(op)) == op


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_dlca_round_trip(seed):
    rng = random.Random(seed)
    m = random_dlca_model(GenConfig(seed=seed), rng)
    f = random_dlca_formula(rng, m, rng.randint(0, 4))
    assert parse_formula(render_formula(f), DLCA) == f
    p = random_program(rng, m, 3)
    assert parse_program(render_program(p)) == p
