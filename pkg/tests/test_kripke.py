from itertools import permutations, product

import pytest

from src.core.derived_rules import CATALOG
from src.core.formula import BOT, TOP, And, Bottom, Implies, Or, Variable, all_formulas, neg, parse, var
from src.core.kripke import (
    KripkeModel,
    ModelFormatError,
    Monotonicity,
    Reflexivity,
    Transitivity,
    UnknownVariable,
    UnknownWorld,
    chain_model,
    check_monotone_eval,
    countermodel_search,
    enumerate_models,
    eval_formula,
    forces_set,
    identity_model,
    make_model,
    model_from_json,
    model_to_json,
    models_up_to,
    required_vars,
    sem_conseq_over,
    set_mask,
    truth_mask,
    truth_set,
    valid_in_model,
    validate_model,
)
from src.core.proof_kernel import AXIOMS, ARITY, Rule, axiom_conclusion, infer

p0, p1 = var(0), var(1)
LEM = parse("p0 | ~p0")
PEIRCE = parse("((p0 -> p1) -> p0) -> p0")


@pytest.fixture
def chain2():
    """w0 -> w1 with p0 true only at w1 and p1 false everywhere."""
    return chain_model(2, [[1], []])


def test_validate_model_examples():
    assert validate_model(identity_model(1, [[0]])) == []
    missing = KripkeModel(2, ((False, False), (False, True)))
    assert validate_model(missing) == [Reflexivity(0)]
    assert validate_model(make_model(2, [(0, 1)], [[0]])) == [Monotonicity(0, 0, 1)]
    open_chain = make_model(3, [(0, 1), (1, 2)], close=False)
    assert Transitivity(0, 1, 2) in validate_model(open_chain)
    assert str(Monotonicity(0, 0, 1)) == "Monotonicity(p0, w0, w1)"


def test_eval_examples(chain2):
    assert eval_formula(chain2, 0, LEM) is False
    assert eval_formula(chain2, 0, PEIRCE) is False
    assert eval_formula(chain2, 1, LEM) is True
    for w in range(2):
        assert eval_formula(chain2, w, TOP)
        assert not eval_formula(chain2, w, BOT)


def test_eval_rejects_unknown_world_and_variable(chain2):
    with pytest.raises(UnknownWorld):
        eval_formula(chain2, 2, p0)
    with pytest.raises(UnknownVariable):
        eval_formula(chain2, 0, var(5))


def test_valid_in_model_examples(chain2):
    assert valid_in_model(identity_model(1, [[]]), Implies(p0, p0))
    assert not valid_in_model(chain2, LEM)
    assert valid_in_model(chain2, Implies(BOT, p0))


def test_forces_set_examples(chain2):
    assert forces_set(chain2, 0, [])
    assert forces_set(chain2, 1, [p0])
    assert not forces_set(chain2, 0, [p0])


def test_sem_conseq_over_examples(chain2):
    models = list(models_up_to(1, 2))
    assert sem_conseq_over(models, [p0], p0).holds
    verdict = sem_conseq_over([chain2], [], LEM)
    assert verdict.fails
    assert verdict.witness == (0, 0)
    assert verdict.certificate == chain2
    assert sem_conseq_over([identity_model(1, [[0]])], [p0], And(p0, p0)).holds


def _brute_force_count(num_vars, num_worlds):
    """Counts models up to relabeling without the enumerator's canonical forms."""
    worlds = range(num_worlds)
    seen = set()
    for bits in product([False, True], repeat=num_worlds * num_worlds):
        rel = [[bits[i * num_worlds + j] for j in worlds] for i in worlds]
        if not all(rel[w][w] for w in worlds):
            continue
        if any(rel[a][b] and rel[b][c] and not rel[a][c] for a in worlds for b in worlds for c in worlds):
            continue
        for val in product(range(1 << num_worlds), repeat=num_vars):
            if any(m >> a & 1 and rel[a][b] and not m >> b & 1 for m in val for a in worlds for b in worlds):
                continue
            forms = []
            for perm in permutations(worlds):
                r = tuple(tuple(rel[perm.index(i)][perm.index(j)] for j in worlds) for i in worlds)
                v = tuple(sum(1 << perm[w] for w in worlds if m >> w & 1) for m in val)
                forms.append((r, v))
            seen.add(min(forms))
    return len(seen)


def test_enumerate_models_counts():
    assert len(list(enumerate_models(0, 1))) == 1
    assert len(list(enumerate_models(1, 1))) == 2
    assert len(list(enumerate_models(1, 2))) == 8
    for num_vars, num_worlds in [(1, 2), (1, 3), (2, 2)]:
        assert len(list(enumerate_models(num_vars, num_worlds))) == _brute_force_count(num_vars, num_worlds)


def test_enumerated_models_are_well_formed_and_deterministic():
    first = list(models_up_to(2, 3))
    assert first == list(models_up_to(2, 3))
    assert all(validate_model(m) == [] for m in first)


def test_countermodel_for_excluded_middle():
    model, world = countermodel_search([], LEM, 2)
    assert model == chain_model(2, [[1]])
    assert world == 0


def test_countermodel_for_peirce():
    model, world = countermodel_search([], PEIRCE, 2)
    assert model.num_worlds == 2
    assert world == 0
    assert not eval_formula(model, world, PEIRCE)


def test_theorems_have_no_countermodel():
    assert countermodel_search([], Implies(p0, p0), 5) is None
    assert countermodel_search([], Implies(BOT, p0), 4) is None


def test_countermodel_with_premises():
    model, world = countermodel_search([p0], p1, 1)
    assert model.num_worlds == 1
    assert eval_formula(model, world, p0) and not eval_formula(model, world, p1)
    with pytest.raises(ValueError):
        countermodel_search([], p0, 0)


def test_truth_sets_are_persistent(chain2):
    assert check_monotone_eval(chain2, [BOT])
    assert check_monotone_eval(identity_model(1, [[0]]), all_formulas([0], 2))
    family = all_formulas([0, 1], 2)
    for model in models_up_to(2, 3):
        assert check_monotone_eval(model, family), model_to_json(model)


def _classical(phi, row):
    """Truth-table value of phi under row, a tuple of booleans indexed by variable."""
    if isinstance(phi, Variable):
        return row[phi.var.index]
    if isinstance(phi, Bottom):
        return False
    left, right = _classical(phi.lhs, row), _classical(phi.rhs, row)
    if isinstance(phi, And):
        return left and right
    if isinstance(phi, Or):
        return left or right
    return (not left) or right


def test_one_world_models_are_truth_tables():
    formulas = all_formulas([0, 1], 2)
    for row in product([False, True], repeat=2):
        model = identity_model(1, [[0] if bit else [] for bit in row])
        for phi in formulas:
            assert eval_formula(model, 0, phi) == _classical(phi, row), (row, phi)


def test_identity_frames_are_classical():
    formulas = all_formulas([0, 1], 2)
    for model in models_up_to(2, 3):
        if any(model.accessible(i, j) for i in range(model.num_worlds) for j in range(model.num_worlds) if i != j):
            continue
        for w in range(model.num_worlds):
            row = tuple(w in model.valuation[v] for v in range(2))
            for phi in formulas:
                assert eval_formula(model, w, phi) == _classical(phi, row)
    for val in ([[]], [[0]], [[0, 1]], [[1]]):
        model = identity_model(2, val)
        assert valid_in_model(model, LEM)
        assert valid_in_model(model, parse("~~p0 -> p0"))


# Forcing only depends on truth sets, so one formula per truth set covers
# every instance over the depth <= 1 formulas in p0, p1.
SMALL_FORMULAS = all_formulas([0, 1], 1)
SMALL_MODELS = list(models_up_to(2, 3))


def _representatives(model, memo):
    found = {}
    for phi in SMALL_FORMULAS:
        found.setdefault(truth_mask(model, phi, memo), phi)
    return list(found.values())


def test_axioms_are_valid_in_small_models():
    for model in SMALL_MODELS:
        memo = {}
        reps = _representatives(model, memo)
        for rule in AXIOMS:
            for formulas in product(reps, repeat=ARITY[rule][0]):
                phi = axiom_conclusion(rule, formulas)
                assert truth_mask(model, phi, memo) == model.full_mask, (rule, phi)


INFERENCE_SHAPES = {
    Rule.MODUS_PONENS: lambda a, b, c: ((), (a, Implies(a, b))),
    Rule.SYLLOGISM: lambda a, b, c: ((), (Implies(a, b), Implies(b, c))),
    Rule.EXPORTATION: lambda a, b, c: ((), (Implies(And(a, b), c),)),
    Rule.IMPORTATION: lambda a, b, c: ((), (Implies(a, Implies(b, c)),)),
    Rule.EXPANSION: lambda a, b, c: ((c,), (Implies(a, b),)),
}


@pytest.mark.parametrize("rule", list(INFERENCE_SHAPES), ids=lambda r: r.value)
def test_inference_rules_preserve_forcing(rule):
    for model in SMALL_MODELS:
        memo = {}
        for a, b, c in product(_representatives(model, memo), repeat=3):
            formulas, premises = INFERENCE_SHAPES[rule](a, b, c)
            conclusion = infer(rule, formulas, premises)
            assert set_mask(model, premises, memo) & ~truth_mask(model, conclusion, memo) == 0, (rule, conclusion)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_rules_preserve_forcing(name):
    spec = CATALOG[name]
    for model in SMALL_MODELS:
        memo = {}
        for formulas in product(_representatives(model, memo), repeat=spec.arity):
            conclusion = spec.conclusion(*formulas)
            forced = set_mask(model, spec.hypotheses(*formulas), memo)
            assert forced & ~truth_mask(model, conclusion, memo) == 0, (name, formulas)


def test_truth_set_and_required_vars(chain2):
    assert truth_set(chain2, p0) == {1}
    assert truth_set(chain2, neg(p0)) == frozenset()
    assert required_vars([p0, Implies(var(3), BOT)]) == 4
    assert required_vars([BOT]) == 0


def test_model_json_round_trip(chain2):
    data = model_to_json(chain2)
    assert data == {"worlds": 2, "rel": [[0, 1]], "vars": 2, "val": {"p0": [1], "p1": []}}
    assert model_from_json(data) == chain2


def test_model_json_rejects_non_monotone():
    with pytest.raises(ModelFormatError) as info:
        model_from_json({"worlds": 2, "rel": [[0, 1]], "vars": 1, "val": {"p0": [0]}})
    assert info.value.violations == [Monotonicity(0, 0, 1)]
    with pytest.raises(ModelFormatError):
        model_from_json({"worlds": 1, "vars": 1, "val": {"q0": [0]}})
    with pytest.raises(ModelFormatError):
        model_from_json([1, 2])
