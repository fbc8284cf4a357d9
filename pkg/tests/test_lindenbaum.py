import pytest

from src.core.formula import BOT, TOP, And, Implies, Or, iff, neg, var
from src.core.lindenbaum import (
    build_quotient,
    class_le,
    equiv,
    h_quot,
    h_quot_compositional,
    quotient_op_check,
    true_in_lt_check,
    two_class_algebra_order,
)
from src.core.oracle import Budget, Oracle, OracleInconclusive
from src.core.proof_kernel import check
from src.core.theories import OutOfUniverse, canonical_universe, make_universe

p0, p1 = var(0), var(1)


@pytest.fixture(scope="module")
def oracle():
    return Oracle(Budget())


@pytest.fixture(scope="module")
def closed_table(oracle):
    """Quotient of the 49 variable-free formulas of depth <= 2."""
    return build_quotient([], canonical_universe(0, 2), oracle)


def test_class_le_examples(oracle):
    assert class_le([], BOT, p0, oracle).holds
    verdict = class_le([], p0, Or(p0, p1), oracle)
    assert verdict.holds
    assert check([], verdict.certificate) == Implies(p0, Or(p0, p1))
    verdict = class_le([], Or(p0, p1), p0, oracle)
    assert verdict.fails and verdict.witness == Implies(Or(p0, p1), p0)


def test_equiv_examples(oracle):
    verdict = equiv([], p0, And(p0, p0), oracle)
    assert verdict.holds
    assert check([], verdict.certificate) == iff(p0, And(p0, p0))
    assert equiv([], p0, neg(neg(p0)), oracle).fails
    verdict = equiv([p0], p0, TOP, oracle)
    assert verdict.holds
    assert check([p0], verdict.certificate) == iff(p0, TOP)


def test_variable_free_formulas_form_two_classes(closed_table):
    assert len(closed_table.universe) == 49
    assert len(closed_table) == 2
    assert closed_table.representatives == (BOT, TOP)
    assert closed_table.provable_top == (False, True)
    assert two_class_algebra_order(closed_table) == (0, 1)


def test_small_quotients(oracle):
    assert len(build_quotient([p0], make_universe([p0, TOP]), oracle)) == 1
    table = build_quotient([], make_universe([p0, p1]), oracle)
    assert len(table) == 2
    assert table.order == ((True, False), (False, True))
    assert two_class_algebra_order(table) is None


def test_quotient_respects_connectives(oracle, closed_table):
    assert quotient_op_check([], closed_table.universe, oracle, closed_table)
    universe = make_universe([p0, TOP, And(p0, TOP), And(TOP, TOP)])
    assert quotient_op_check([p0], universe, oracle)
    assert quotient_op_check([], make_universe([p0]), oracle)


def test_h_quot_examples(closed_table):
    assert h_quot([], BOT, closed_table) == 0
    assert h_quot([], TOP, closed_table) == 1
    assert h_quot([], And(TOP, BOT), closed_table) == 0
    deep = Implies(And(Or(BOT, TOP), TOP), Implies(BOT, Or(BOT, BOT)))
    assert deep not in closed_table.universe
    assert h_quot([], deep, closed_table) == 1
    with pytest.raises(OutOfUniverse):
        h_quot([], p0, closed_table)
    assert h_quot_compositional(closed_table)


def test_true_in_lt_examples(oracle, closed_table):
    assert true_in_lt_check([], closed_table.universe, oracle, closed_table)
    assert true_in_lt_check([p0], canonical_universe(1, 1), oracle)
    assert true_in_lt_check([], make_universe([TOP]), oracle)


def test_quotient_json(oracle):
    table = build_quotient([], make_universe([BOT, TOP, And(BOT, BOT)]), oracle)
    assert table.to_json() == {
        "context": [],
        "classes": [["bot", "bot & bot"], ["bot -> bot"]],
        "representatives": ["bot", "bot -> bot"],
        "provable_top": [False, True],
        "order": [["bot", "bot -> bot"]],
    }


def test_quotient_needs_definitive_verdicts():
    # ~~p0 -> p0 needs a two-world countermodel
    with pytest.raises(OracleInconclusive):
        build_quotient([], make_universe([p0, neg(neg(p0))]), Oracle(Budget(max_worlds=1)))
