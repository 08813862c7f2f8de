from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from qplane.parser import (
    ElaborationError,
    ExprSyntaxError,
    LexError,
    Node,
    ParseError,
    elaborate,
    parse,
    unparse,
)
from qplane.plane import PlaneElement, X, Y, normal_order_word, pe_mul, q_exp
from qplane.qcomb import q_factorial
from qplane.ring import QINV, LaurentPoly, Q, RatFun

from strategies import expressions

x, y, q, qinv = Node("x"), Node("y"), Node("q"), Node("qinv")


def strip(node):
    """Drop source positions so trees compare structurally."""
    return Node(node.kind, tuple(strip(c) for c in node.children), node.value)


def test_parse_product():
    assert strip(parse("y*x")) == Node("mul", (y, x))


def test_parse_reversed_argument():
    tree = strip(parse("expq(x + y + (1 - qinv)*y*x)"))
    one = Node("num", value=Fraction(1))
    expected = Node("expq", (
        Node("add", (
            Node("add", (x, y)),
            Node("mul", (Node("mul", (Node("sub", (one, qinv)), y)), x)),
        )),
    ))
    assert tree == expected


def test_precedence():
    # ^ binds tighter than unary minus, which binds tighter than *
    assert strip(parse("-x^2")) == Node("neg", (Node("pow", (x,), value=2),))
    assert strip(parse("-x*y")) == Node("mul", (Node("neg", (x,)), y))
    assert strip(parse("x + y*x")) == Node("add", (x, Node("mul", (y, x))))
    assert strip(parse("x*y*x")) == Node("mul", (Node("mul", (x, y)), x))


def test_rational_literal():
    assert strip(parse("3/4")) == Node("num", value=Fraction(3, 4))
    assert strip(parse("x*1/2")) == Node("mul", (x, Node("num", value=Fraction(1, 2))))
    # a divisor does not swallow the next "/": x/2/3 = (x/2)/3
    two, three = Node("num", value=Fraction(2)), Node("num", value=Fraction(3))
    assert strip(parse("x/2/3")) == Node("div", (Node("div", (x, two)), three))


@pytest.mark.parametrize("text", ["x^(2)", "x^-1", "q^-1", "x^y"])
def test_exponent_must_be_bare_natural(text):
    with pytest.raises(ExprSyntaxError) as info:
        parse(text)
    assert info.value.position == 2


def test_power_is_not_associative():
    with pytest.raises(ExprSyntaxError):
        parse("x^2^3")


@pytest.mark.parametrize("text,pos", [("x + $", 4), ("xy", 0), ("x * z", 4), ("2 # 3", 2)])
def test_lexical_errors(text, pos):
    with pytest.raises(LexError) as info:
        parse(text)
    assert info.value.position == pos


@pytest.mark.parametrize("text,pos", [("", 0), ("x +", 3), ("(x", 2), ("x)", 1), ("expq x", 5), ("x y", 2), ("1/0", 2)])
def test_syntax_errors(text, pos):
    with pytest.raises(ExprSyntaxError) as info:
        parse(text)
    assert info.value.position == pos


def test_error_mentions_expected_tokens():
    with pytest.raises(ExprSyntaxError) as info:
        parse("(x")
    assert "')'" in info.value.expected


def test_deep_nesting_is_a_diagnostic():
    with pytest.raises(ParseError):
        parse("(" * 5000 + "x" + ")" * 5000)
    with pytest.raises(ParseError):
        parse("-" * 5000 + "x")


@given(st.text(alphabet="xyq inv expq()+-*/^0123456789$", max_size=40))
def test_parser_is_total(text):
    try:
        parse(text)
    except ParseError as exc:
        assert 0 <= exc.position <= len(text)


@given(st.text(max_size=30))
def test_parser_is_total_on_arbitrary_text(text):
    try:
        parse(text)
    except ParseError:
        pass


# -- elaboration ---------------------------------------------------------------

def test_elaborate_commutation():
    assert elaborate(parse("y*x"), 6) == normal_order_word("yx")


def test_elaborate_direct_lhs():
    half = RatFun(1, 1 + Q)
    expected = PlaneElement({(0, 0): 1, (1, 0): 1, (0, 1): 1, (2, 0): half, (1, 1): 1, (0, 2): half})
    assert elaborate(parse("expq(x)*expq(y)"), 2) == expected


def test_elaborate_reversed_rhs():
    assert elaborate(parse("expq(x + y + (1 - qinv)*y*x)"), 5) == q_exp(X + Y + PlaneElement.monomial(1, 1, Q - 1), 5)


def test_elaborate_constant_term_error_has_position():
    with pytest.raises(ElaborationError) as info:
        elaborate(parse("x + expq(1+x)"), 3)
    assert info.value.position == 4


def test_elaborate_division():
    assert elaborate(parse("x/(1+q)"), 3) == PlaneElement.monomial(1, 0, RatFun(1, 1 + Q))
    with pytest.raises(ElaborationError):
        elaborate(parse("x/y"), 3)
    with pytest.raises(ElaborationError):
        elaborate(parse("x/(q - q)"), 3)


def test_elaborate_scalars_and_powers():
    assert elaborate(parse("qinv^2*q"), 3) == PlaneElement.scalar(QINV)
    assert elaborate(parse("x^9"), 4).is_zero()
    assert elaborate(parse("(1+x)^3"), 2) == PlaneElement({(0, 0): 1, (1, 0): 3, (2, 0): 3})
    assert elaborate(parse("x"), 0).is_zero()


@given(expressions)
def test_unparse_parse_preserves_value(tree):
    text = unparse(tree)
    try:
        expected = elaborate(tree, 4)
    except ElaborationError:
        assume(False)
    assert elaborate(parse(text), 4) == expected


@given(expressions, st.integers(0, 5))
def test_render_round_trip(tree, order):
    try:
        value = elaborate(tree, order)
    except ElaborationError:
        assume(False)
    assert elaborate(parse(value.to_expr()), order) == value


def test_render_round_trip_of_exponential_coefficients():
    value = elaborate(parse("expq(x + y + (1 - qinv)*y*x)*expq(3/2*qinv*x)"), 5)
    assert elaborate(parse(value.to_expr()), 5) == value


def test_long_operator_chain():
    assert elaborate(parse(" + ".join(["x"] * 300)), 2) == PlaneElement.monomial(1, 0, 300)
    with pytest.raises(ParseError):
        parse(" + ".join(["x"] * 5000))


def test_huge_literal_is_a_diagnostic():
    with pytest.raises(LexError):
        parse("9" * 5000)
    assert strip(parse("1" * 50)) == Node("num", value=Fraction(int("1" * 50)))
