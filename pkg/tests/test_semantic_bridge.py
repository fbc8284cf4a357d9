import pytest

from src.core.algebra_catalog import boolean4, catalog, chain_algebra
from src.core.formula import BOT, TOP, Implies, all_formulas, parse, var
from src.core.heyting import Interpretation, PreconditionError, all_assignments, validate_algebra
from src.core.kripke import chain_model, identity_model, make_model, models_up_to, valid_in_model
from src.core.logger import read_latest_logs
from src.core.semantic_bridge import (
    PrimeFilterFrame,
    alg_to_kripke_check,
    closed_interpretation,
    closed_set_algebra,
    closed_sets,
    h_closed,
    is_algebra_isomorphic,
    is_model_isomorphic,
    kripke_to_alg_check,
    prime_filter_frame,
    validity_equiv_harness,
)

p0 = var(0)
LEM = parse("p0 | ~p0")
PEIRCE = parse("((p0 -> p1) -> p0) -> p0")

C2, C3 = chain_algebra(2), chain_algebra(3)
B4 = boolean4()


@pytest.fixture
def chain2():
    return chain_model(2, [[1]])


def test_closed_sets_examples(chain2):
    assert closed_sets(chain2) == [frozenset(), {1}, {0, 1}]
    assert closed_sets(identity_model(1)) == [frozenset(), {0}]
    assert closed_sets(identity_model(2)) == [frozenset(), {0}, {1}, {0, 1}]


def test_closed_set_algebras_match_the_catalog(chain2):
    assert is_algebra_isomorphic(closed_set_algebra(chain2).algebra, C3)
    assert is_algebra_isomorphic(closed_set_algebra(identity_model(1)).algebra, C2)
    assert is_algebra_isomorphic(closed_set_algebra(identity_model(2)).algebra, B4)
    assert not is_algebra_isomorphic(closed_set_algebra(chain_model(3)).algebra, B4)


def test_closed_set_algebras_are_heyting():
    for model in models_up_to(0, 3):
        assert validate_algebra(closed_set_algebra(model).algebra) == []


def test_closed_set_labels_and_elements(chain2):
    csa = closed_set_algebra(chain2)
    assert csa.algebra.labels == ("{}", "{w1}", "{w0,w1}")
    assert csa.element({1}) == 1
    with pytest.raises(PreconditionError):
        csa.element({0})


def test_h_closed_examples(chain2):
    assert h_closed(chain2, p0) == {1}
    assert h_closed(chain2, parse("~p0")) == frozenset()
    assert h_closed(chain2, LEM) == {1}


def test_kripke_to_alg_examples(chain2):
    assert kripke_to_alg_check(chain2, LEM)
    assert not valid_in_model(chain2, LEM)
    assert kripke_to_alg_check(chain2, Implies(p0, p0))
    classical = identity_model(2, [[0]])
    assert kripke_to_alg_check(classical, LEM) and valid_in_model(classical, LEM)


def test_kripke_to_alg_over_small_models():
    formulas = all_formulas([0, 1], 2)
    for model in models_up_to(2, 3):
        csa = closed_set_algebra(model)
        assert all(kripke_to_alg_check(model, phi, csa) for phi in formulas)


def test_closed_interpretation_sends_variables_to_truth_sets(chain2):
    interp = closed_interpretation(closed_set_algebra(chain2))
    assert interp.to_json() == {"p0": "{w1}"}


def test_prime_filter_frame_examples():
    model = prime_filter_frame(C3, Interpretation(C3, {0: 1}))
    assert is_model_isomorphic(model, chain_model(2, [[1]]))
    assert prime_filter_frame(C2, Interpretation(C2, {0: 1})).num_worlds == 1
    fork = prime_filter_frame(B4, Interpretation(B4, {0: 1}))
    assert fork.num_worlds == 2
    assert not fork.accessible(0, 1) and not fork.accessible(1, 0)
    assert fork.valuation[0] == {0}


def test_frame_keeps_its_filters():
    frame = PrimeFilterFrame.build(C3, Interpretation(C3, {0: 1}))
    assert frame.filters == ({2}, {1, 2})
    assert frame.model.accessible(0, 1) and not frame.model.accessible(1, 0)
    assert frame.model.valuation[0] == {1}


def test_alg_to_kripke_examples():
    assert alg_to_kripke_check(C3, Interpretation(C3, {0: 1}), LEM)
    assert alg_to_kripke_check(C3, Interpretation(C3, {0: 1}), TOP)
    assert alg_to_kripke_check(B4, Interpretation(B4, {0: 1}), LEM)


def test_alg_to_kripke_over_the_catalog():
    formulas = all_formulas([0, 1], 2)
    for h in catalog(max_size=6):
        for interp in all_assignments(h, [0, 1]):
            frame = PrimeFilterFrame.build(h, interp)
            assert all(alg_to_kripke_check(h, interp, phi, frame) for phi in formulas)


def test_model_isomorphism():
    fork_a = make_model(3, [(0, 1), (0, 2)], [[1]])
    fork_b = make_model(3, [(0, 1), (0, 2)], [[2]])
    assert is_model_isomorphic(fork_a, fork_b)
    assert not is_model_isomorphic(fork_a, make_model(3, [(0, 1), (0, 2)], [[0, 1, 2]]))
    assert not is_model_isomorphic(chain_model(2), chain_model(3))
    with pytest.raises(ValueError):
        is_model_isomorphic(identity_model(9), identity_model(9))


def test_harness_examples():
    formulas = [LEM, PEIRCE, Implies(BOT, p0)]
    report = validity_equiv_harness(formulas, list(models_up_to(2, 2)), catalog(max_size=6))
    assert report.ok
    lem, peirce, exfalso = report.entries
    assert not lem.kripke_valid and not lem.alg_valid
    assert not peirce.kripke_valid and not peirce.alg_valid
    assert exfalso.kripke_valid and exfalso.alg_valid
    assert lem.to_json()["alg_refuter"] == {"algebra": 1, "assignment": {"p0": "a"}}


def test_harness_over_depth_one_formulas():
    formulas = all_formulas([0, 1], 1)
    report = validity_equiv_harness(formulas, list(models_up_to(2, 2)), catalog(max_size=5))
    assert report.ok
    assert report.to_json()["ok"] is True
    messages = [e["message"] for e in read_latest_logs(5)]
    assert "Validity harness finished" in messages
