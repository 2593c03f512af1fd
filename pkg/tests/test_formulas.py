import pytest
from hypothesis import given, strategies as st

from depth2kit.errors import FormulaSyntaxError
from depth2kit.formulas import (
    And, Bottom, Box, Diamond, Iff, Implies, Not, Or, Top, Var,
    axiom, meet_axiom, parse_formula, print_formula, rule_p2, variables,
)


def test_parse_basic():
    assert parse_formula("p -> <>p") == Implies(Var("p"), Diamond(Var("p")))
    assert parse_formula("~<>p & q") == And(Not(Diamond(Var("p"))), Var("q"))
    assert parse_formula("1") == Top()
    assert parse_formula("0") == Bottom()


def test_parse_precedence_and_associativity():
    assert parse_formula("a -> b -> c") == Implies(
        Var("a"), Implies(Var("b"), Var("c")))
    assert parse_formula("a & b | c") == Or(And(Var("a"), Var("b")), Var("c"))
    assert parse_formula("a <-> b <-> c") == Iff(Iff(Var("a"), Var("b")), Var("c"))
    assert parse_formula("[]<>p") == Box(Diamond(Var("p")))


def test_parse_error_position():
    with pytest.raises(FormulaSyntaxError) as err:
        parse_formula("(<p")
    assert err.value.position == 2
    assert err.value.expected  # nonempty expected-token set

    with pytest.raises(FormulaSyntaxError):
        parse_formula("p ->")
    with pytest.raises(FormulaSyntaxError):
        parse_formula("p q")
    with pytest.raises(FormulaSyntaxError):
        parse_formula("")


def test_print_basic():
    assert print_formula(Diamond(Var("p"))) == "<>p"
    assert print_formula(Implies(Box(Var("p")), Diamond(Var("p")))) == "[]p -> <>p"
    assert print_formula(Iff(Var("a"), Iff(Var("b"), Var("c")))) == "a <-> (b <-> c)"
    assert print_formula(And(Not(Diamond(Var("p"))), Var("q"))) == "~<>p & q"


def test_axiom_catalog():
    assert print_formula(axiom("T")) == "p -> <>p"
    assert print_formula(axiom("B2")) == "<>([]q & <>[]p & ~p) -> q"
    assert print_formula(axiom("D")) == "[]p -> <>p"
    assert print_formula(axiom("Dum")) == "[]([](p -> []p) -> p) & <>[]p -> p"
    assert print_formula(axiom("Grz")) == "[](<>(p & <>~p) | p) -> p"
    assert print_formula(axiom("M")) == "[]<>p -> <>[]p"
    assert print_formula(axiom("R1")) == "p & <>[]p -> []p"
    assert print_formula(axiom("H3")) == "[]([]p -> q) | []([]q -> p)"
    # aliases
    assert axiom(".2") == axiom("G2")
    assert axiom(".3") == axiom("H3")
    assert axiom(".1") == axiom("M")
    with pytest.raises(KeyError):
        axiom("X9")


def test_meet_axiom_examples():
    combined = meet_axiom(axiom("T"), axiom("4"))
    assert print_formula(combined) == "[](v0 -> <>v0) | [](<><>v1 -> <>v1)"
    assert print_formula(meet_axiom(Top(), Top())) == "[]1 | []1"


def test_meet_axiom_disjoint_variables():
    for formula in (axiom("B2"), axiom("Dum"), axiom("K")):
        combined = meet_axiom(formula, formula)
        assert isinstance(combined, Or)
        left_vars = variables(combined.left)
        right_vars = variables(combined.right)
        assert left_vars and right_vars
        assert not left_vars & right_vars


def test_rule_p2():
    rule = rule_p2()
    assert len(rule.premises) == 1
    assert print_formula(rule.premises[0]) == "<>p & <>~p"
    assert rule.conclusion == Bottom()
    assert str(rule) == "<>p & <>~p / 0"


_names = st.sampled_from(["p", "q", "r", "ab1", "x_y"])
_formulas = st.deferred(
    lambda: st.one_of(
        st.builds(Var, _names),
        st.just(Top()),
        st.just(Bottom()),
        st.builds(Not, _formulas),
        st.builds(Diamond, _formulas),
        st.builds(Box, _formulas),
        st.builds(And, _formulas, _formulas),
        st.builds(Or, _formulas, _formulas),
        st.builds(Implies, _formulas, _formulas),
        st.builds(Iff, _formulas, _formulas),
    )
)


@given(_formulas)
def test_print_parse_round_trip(formula):
    assert parse_formula(print_formula(formula)) == formula


@given(_formulas)
def test_print_is_whitespace_normal(formula):
    text = print_formula(formula)
    assert parse_formula(" " + text.replace(" ", "  ") + " ") == formula
