import pytest

from src.core.formula import BOT, And, Implies, Or, parse, var
from src.core.proof_kernel import (
    MalformedProof,
    PremiseNotInContext,
    ProofTerm,
    Rule,
    RuleShapeMismatch,
    check,
    contraction_conj,
    contraction_disj,
    exfalso,
    expansion,
    exportation,
    importation,
    infer,
    judge,
    modus_ponens,
    permutation_conj,
    permutation_disj,
    premise,
    premises_used,
    proof_from_json,
    proof_size,
    proof_to_json,
    syllogism,
    weaken,
    weakening_conj,
    weakening_disj,
)

p0, p1, p2 = var(0), var(1), var(2)


def test_premise_in_context():
    assert check({p0}, premise(p0)) == p0


def test_syllogism_of_weakenings():
    proof = syllogism(weakening_conj(p0, p1), weakening_disj(p0, p2))
    assert check(set(), proof) == Implies(And(p0, p1), Or(p0, p2))


def test_premise_outside_context_is_rejected_with_path():
    with pytest.raises(PremiseNotInContext) as info:
        check(set(), modus_ponens(premise(p0), exfalso(p0)))
    assert info.value.formula == p0
    assert info.value.path == (0,)


def test_modus_ponens_shape_mismatch():
    proof = modus_ponens(weakening_disj(p0, p1), weakening_conj(p0, p1))
    with pytest.raises(RuleShapeMismatch) as info:
        check(set(), proof)
    assert info.value.path == ()
    assert info.value.rule is Rule.MODUS_PONENS


def test_nested_error_path():
    bad = syllogism(weakening_conj(p0, p1), weakening_conj(p0, p1))
    with pytest.raises(RuleShapeMismatch) as info:
        check(set(), exportation(bad))
    assert info.value.path == (0,)


@pytest.mark.parametrize("proof, conclusion", [
    (contraction_disj(p0), "p0 | p0 -> p0"),
    (contraction_conj(p0), "p0 -> p0 & p0"),
    (weakening_disj(p0, p1), "p0 -> p0 | p1"),
    (weakening_conj(p0, p1), "p0 & p1 -> p0"),
    (permutation_disj(p0, p1), "p0 | p1 -> p1 | p0"),
    (permutation_conj(p0, p1), "p0 & p1 -> p1 & p0"),
    (exfalso(p1), "bot -> p1"),
])
def test_axiom_schemas(proof, conclusion):
    assert check(set(), proof) == parse(conclusion)


def test_exportation_and_importation():
    gamma = {parse("p0 & p1 -> p2")}
    exported = exportation(premise(parse("p0 & p1 -> p2")))
    assert check(gamma, exported) == parse("p0 -> p1 -> p2")
    assert check(gamma, importation(exported)) == parse("p0 & p1 -> p2")


def test_expansion():
    proof = expansion(p2, weakening_conj(p0, p1))
    assert check(set(), proof) == parse("p2 | p0 & p1 -> p2 | p0")


def test_infer_checks_arity():
    with pytest.raises(MalformedProof):
        infer(Rule.MODUS_PONENS, (), (p0,))
    assert infer(Rule.MODUS_PONENS, (), (p0, Implies(p0, p1))) == p1


def test_check_is_deterministic():
    proof = syllogism(weakening_conj(p0, p1), weakening_disj(p0, p2))
    assert check(set(), proof) == check(set(), proof)
    assert judge({p1}, proof).conclusion == check(set(), proof)


def test_weaken_examples():
    proof = exfalso(p1)
    assert weaken(set(), {p0}, proof) is proof
    assert check({p0}, proof) == Implies(BOT, p1)
    assert check({p0, p1}, weaken({p0}, {p0, p1}, premise(p0))) == p0
    assert weaken({p0}, {p0}, premise(p0)) == premise(p0)
    with pytest.raises(ValueError):
        weaken({p0, p1}, {p0}, premise(p0))


def test_nested_syllogism_size_and_premises():
    proof = syllogism(weakening_conj(p0, p1), syllogism(weakening_disj(p0, p0), contraction_disj(p0)))
    assert check(set(), proof) == Implies(And(p0, p1), p0)
    assert proof_size(proof) == 5
    assert premises_used(modus_ponens(premise(p0), premise(Implies(p0, p1)))) == {p0, Implies(p0, p1)}


def test_proof_json_round_trip():
    proof = syllogism(weakening_conj(p0, p1), weakening_disj(p0, p2))
    data = proof_to_json(proof)
    assert data == {
        "rule": "syllogism",
        "formulas": [],
        "subproofs": [
            {"rule": "weakening_conj", "formulas": ["p0", "p1"], "subproofs": []},
            {"rule": "weakening_disj", "formulas": ["p0", "p2"], "subproofs": []},
        ],
    }
    assert proof_from_json(data) == proof


def test_proof_json_rejects_bad_input():
    with pytest.raises(MalformedProof):
        proof_from_json({"rule": "cut"})
    with pytest.raises(MalformedProof):
        proof_from_json({"rule": "weakening_conj", "formulas": ["p0"]})
    with pytest.raises(MalformedProof) as info:
        proof_from_json({"rule": "exportation", "subproofs": [{"rule": "premise", "formulas": ["p0 &"]}]})
    assert info.value.path == (0,)


def test_malformed_node_in_check():
    with pytest.raises(MalformedProof):
        check(set(), ProofTerm(Rule.PREMISE, ()))
