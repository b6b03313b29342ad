import pytest

from chronomind import (
    Atom, LekModel, Not, validate_dlca_model,
    validate_lek_model,
)
from chronomind.oracle import (
    GenConfig, naive_satisfies, random_dlca_model, random_lek_model, shrink,
)


def test_config_bounds():
    with pytest.raises(ValueError):
        GenConfig(max_worlds=0)


def test_single_world_config():
    m = random_lek_model(GenConfig(max_worlds=1, seed=3))
    assert len(m.worlds) == 1 and validate_lek_model(m) == []


def test_generators_are_deterministic():
    for seed in range(20):
        assert random_lek_model(GenConfig(seed=seed)) == random_lek_model(GenConfig(seed=seed))
        assert random_dlca_model(GenConfig(seed=seed)) == random_dlca_model(GenConfig(seed=seed))


def test_generated_models_are_valid_and_bounded():
    for seed in range(200):
        cfg = GenConfig(seed=seed)
        m = random_lek_model(cfg)
        assert validate_lek_model(m) == [] and len(m.worlds) <= 6 and len(m.agents) <= 2
        d = random_dlca_model(cfg)
        assert validate_dlca_model(d) == [] and len(d.worlds) <= 6


def test_atom_clause_by_hand():
    m = LekModel({"w"}, {"i"}, {"w": {Atom("p", 1, 2)}}, {"i": {("w", "w")}}, {})
    assert naive_satisfies(m, "w", Atom("p", 1, 2))
    assert not naive_satisfies(m, "w", Atom("p", 1, 3))
    assert not naive_satisfies(m, "w", Not(Atom("p", 0, 2)))


def test_shrink_reduces_counterexample():
    # a planted "bug": any bare atom fails at a world carrying p
    def fails(model, formula, world):
        return "p" in {a.pred for a in model.valuation[world]} and isinstance(formula, Atom)

    m = random_lek_model(GenConfig(seed=1, max_worlds=6))
    w = sorted(m.worlds)[0]
    p = Atom("p", 1, 2)
    val = {v: set(m.valuation[v]) | ({p} if v == w else set()) for v in m.worlds}
    m = LekModel(m.worlds, m.agents, val, m.equiv, m.nbhd)
    small, g, world = shrink(m, Not(p), w, fails, valid=lambda x: validate_lek_model(x) == [])
    assert world == w and g == p
    assert small.worlds == {w}
