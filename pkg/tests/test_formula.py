import random

import pytest

from src.core import config
from src.core.formula import (
    BOT,
    TOP,
    And,
    Bottom,
    FormulaSyntaxError,
    Implies,
    Or,
    UnknownTokenError,
    Var,
    all_formulas,
    big_and,
    big_or,
    decode,
    depth,
    encode,
    iff,
    neg,
    pairing,
    parse,
    parse_list,
    random_formula,
    render,
    subformulas,
    unpair,
    var,
    variables,
)

p0, p1, p2 = var(0), var(1), var(2)


def test_parse_implication_is_right_associative():
    assert parse("p0 -> p1 -> p0") == Implies(p0, Implies(p1, p0))


def test_parse_negation_of_bot_is_top():
    assert parse("~bot") == Implies(Bottom(), Bottom())
    assert parse("top") == TOP


def test_parse_precedence():
    assert parse("p0 & p1 | p2") == Or(And(p0, p1), p2)
    assert parse("~p0 & p1") == And(neg(p0), p1)
    assert parse("p0 | p1 -> p2") == Implies(Or(p0, p1), p2)
    assert parse("p0 <-> p1") == iff(p0, p1)


def test_and_or_are_left_associative():
    assert parse("p0 & p1 & p2") == And(And(p0, p1), p2)
    assert parse("p0 | p1 | p2") == Or(Or(p0, p1), p2)


def test_operator_sugar_builds_formulas():
    assert (p0 & p1) >> (p0 | p2) == parse("p0 & p1 -> p0 | p2")
    assert ~p0 == neg(p0)


def test_syntax_error_reports_offset():
    with pytest.raises(FormulaSyntaxError) as info:
        parse("p0 &")
    assert info.value.offset == 4


def test_unknown_token():
    with pytest.raises(UnknownTokenError) as info:
        parse("p0 $ p1")
    assert info.value.offset == 3
    with pytest.raises(UnknownTokenError):
        parse("q1 -> p0")


def test_unbalanced_parenthesis():
    with pytest.raises(FormulaSyntaxError):
        parse("(p0 -> p1")
    with pytest.raises(FormulaSyntaxError):
        parse("p0 -> p1)")


def test_parse_list():
    assert parse_list("") == []
    assert parse_list("  ") == []
    assert parse_list("p0, p1 -> p0") == [p0, Implies(p1, p0)]


def test_render_examples():
    assert render(Implies(BOT, BOT)) == "bot -> bot"
    assert render(Or(And(p0, p1), p2)) == "p0 & p1 | p2"
    assert render(var(7)) == "p7"
    assert render(Implies(Implies(p0, p1), p0)) == "(p0 -> p1) -> p0"
    assert render(And(p0, And(p1, p2))) == "p0 & (p1 & p2)"


def test_var_equality_by_index():
    assert Var(3) == Var(3)
    assert Var(3) != Var(4)
    with pytest.raises(ValueError):
        Var(-1)


def test_pairing_examples():
    assert pairing(0, 0) == 0
    assert pairing(0, 1) == 2
    assert pairing(1, 0) == 4


def test_pairing_is_injective_on_small_grid():
    seen = {}
    for x in range(51):
        for y in range(51):
            n = pairing(x, y)
            assert n not in seen
            seen[n] = (x, y)
            assert unpair(n) == (x, y)


def test_pairing_rejects_negatives():
    with pytest.raises(ValueError):
        pairing(-1, 0)


def test_encode_examples():
    assert encode(BOT) == 0
    assert encode(p0) == 2
    assert encode(And(BOT, BOT)) == 10


def test_decode_examples():
    assert decode(0) == BOT
    assert decode(10) == And(BOT, BOT)
    assert decode(1) is None
    assert decode(2) == p0


def test_encoding_is_injective_and_invertible():
    formulas = all_formulas([0, 1], 2)
    codes = [encode(phi) for phi in formulas]
    assert len(set(codes)) == len(formulas)
    for phi, code in zip(formulas, codes):
        assert decode(code) == phi


def test_encode_handles_deep_formulas():
    phi = p0
    for _ in range(6):
        phi = Implies(phi, p1)
    assert decode(encode(phi)) == phi


def test_render_parse_round_trip():
    for phi in all_formulas([0, 1], 2):
        assert parse(render(phi)) == phi
    rng = random.Random(config.RANDOM_SEED)
    for _ in range(300):
        phi = random_formula(rng, [0, 1, 2], 8)
        assert parse(render(phi)) == phi


def test_subformulas_examples():
    assert subformulas(BOT) == {BOT}
    assert subformulas(Implies(p0, p0)) == {p0, Implies(p0, p0)}
    phi = And(p0, Or(p0, BOT))
    assert subformulas(phi) == {p0, BOT, Or(p0, BOT), phi}


def test_variables_examples():
    assert variables(BOT) == frozenset()
    assert variables(Implies(p0, p1)) == {Var(0), Var(1)}
    assert variables(neg(var(3))) == {Var(3)}


def test_big_and_big_or_seeds():
    assert big_and([]) == TOP
    assert big_or([]) == BOT
    assert big_and([p0]) == And(p0, TOP)
    assert big_or([p0, p1]) == Or(p0, Or(p1, BOT))


def test_all_formulas_counts_and_depths():
    assert all_formulas([], 0) == [BOT]
    assert len(all_formulas([], 1)) == 4
    assert len(all_formulas([], 2)) == 49
    assert len(all_formulas([0, 1], 1)) == 30
    assert max(depth(phi) for phi in all_formulas([0], 2)) == 2
