import random

import pytest

from chronomind import (
    Atom, DuplicateWorld, LekModel, Nominal, ParseError, UnknownWorldInRelation,
    load_model, parse_dlca_model, parse_lek_model, parse_model, render_model,
    save_model, validate_dlca_model,
)
from chronomind.oracle import GenConfig, random_dlca_model, random_lek_model


def test_minimal_file():
    m = parse_lek_model("model lek\nagents: i\nworld w1:\n")
    assert m.worlds == {"w1"} and m.neighborhood("i", "w1") == frozenset()


def test_example_file(basic_model):
    m = basic_model
    assert isinstance(m, LekModel)
    assert Atom("q", 2, 3, ("box",)) in m.valuation["w1"]
    assert ("w1", "w2") in m.equiv["i"] and ("w1", "w3") not in m.equiv["i"]
    assert m.neighborhood("i", "w1") == {frozenset({"w1", "w2"})}
    assert parse_model(render_model(m)) == m


def test_undeclared_world_in_relation():
    text = "model lek\nagents: i\nworld w1:\nequiv i: w1 w2\n"
    with pytest.raises(UnknownWorldInRelation) as err:
        parse_lek_model(text)
    assert err.value.line == 4


def test_duplicate_world():
    with pytest.raises(DuplicateWorld):
        parse_lek_model("model lek\nagents: i\nworld w1:\nworld w1: p(1,2)\n")


@pytest.mark.parametrize("text", [
    "model dlca\nagents: i\nworld w1:\n",
    "agents: i\nworld w1:\n",
    "model lek\nagents: i\nworld w1: p(1,2\n",
    "model lek\nagents: i\nworld w1:\nnbhd j w1: {w1}\n",
    "model lek\nagents: i\nworld w1:\nbogus line\n",
])
def test_malformed_lek_files(text):
    with pytest.raises(ParseError):
        parse_lek_model(text)


def test_dlca_nominals():
    m = parse_dlca_model("model dlca\nagents: i\nworld w1: p(1,2) nom: x@4\n")
    assert m.nominals("w1") == {Nominal("x", 4)}


def test_shared_nominal_parses_then_fails_validation():
    text = ("model dlca\nagents: i\nworld w1: nom: x@4\nworld w2: nom: x@4\n"
            "equiv i: w1 | w2\npre i P: w1<=w1 w2<=w2\npre i D: w1<=w1 w2<=w2\n")
    m = parse_dlca_model(text)
    assert any("shared" in v for v in validate_dlca_model(m))


def test_empty_pre_section_parses():
    m = parse_dlca_model("model dlca\nagents: i\nworld w1: nom: x@1\nworld w2: nom: y@1\nequiv i: w1 w2\n")
    assert any(v.startswith("constraint 2") for v in validate_dlca_model(m))


def test_canonical_rendering_is_sorted(tmp_path):
    text = ("model lek\nagents: j i\nworld w2: q(2,3) p(1,2)\nworld w1:\n"
            "equiv i: w2 w1\nequiv j: w2 | w1\nnbhd i w2: {w2 w1} {w1}\nnbhd i w1: {w1 w2} {w1}\n")
    out = render_model(parse_lek_model(text))
    assert out.splitlines() == [
        "model lek",
        "agents: i j",
        "world w1:",
        "world w2: p(1,2) q(2,3)",
        "equiv i: w1 w2",
        "equiv j: w1 | w2",
        "nbhd i w1: {w1} {w1 w2}",
        "nbhd i w2: {w1} {w1 w2}",
    ]
    save_model(parse_lek_model(text), tmp_path / "m.tlek")
    assert (tmp_path / "m.tlek").read_text() == out


def test_random_models_round_trip():
    for seed in range(100):
        rng = random.Random(seed)
        m = random_lek_model(GenConfig(seed=seed), rng)
        assert parse_model(render_model(m)) == m
        d = random_dlca_model(GenConfig(seed=seed), rng)
        assert parse_model(render_model(d)) == d


def test_load_from_disk(data_dir):
    assert load_model(data_dir / "prefs.tdlca").agents == {"i"}
