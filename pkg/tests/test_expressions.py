import math
import random

import pytest

from pqbbh.expressions import (
    Binary,
    Call,
    ExpressionDomainError,
    ExpressionSyntaxError,
    Negate,
    Number,
    Variable,
    as_function,
    eval_expression,
    format_expression,
    parse_expression,
)


def ev(text, t=0.0):
    return eval_expression(parse_expression(text), t)


class TestParsing:
    def test_metric(self):
        assert ev("t/(1+t)", 1.0) == 0.5

    def test_exp(self):
        assert ev("exp(-t)", 0.0) == 1.0

    def test_constant(self):
        assert ev("3.5", 17.0) == 3.5

    def test_damped_sine_at_zero(self):
        assert ev("sin(t)/(1+t)", 0.0) == 0.0

    def test_whitespace(self):
        assert ev("  1 +  2 * t ", 3.0) == 7.0

    @pytest.mark.parametrize(
        "text,want",
        [("1e3", 1000.0), ("2.5e-1", 0.25), (".5", 0.5), ("4.", 4.0), ("1E+2", 100.0)],
    )
    def test_number_literals(self, text, want):
        assert ev(text) == want

    def test_structure(self):
        ast = parse_expression("2*t+1")
        assert ast == Binary("+", Binary("*", Number(2.0), Variable()), Number(1.0))


class TestPrecedence:
    @pytest.mark.parametrize(
        "text,want",
        [
            ("2^3^2", 512.0),  # right associative
            ("(2^3)^2", 64.0),
            ("-2^2", -4.0),  # power binds tighter than unary minus
            ("2^-3", 0.125),
            ("2+3*4", 14.0),
            ("2*3+4", 10.0),
            ("8/4/2", 1.0),
            ("2*3^2", 18.0),
            ("-(1+2)", -3.0),
            ("2--1", 3.0),  # binary minus, then a unary-minus factor
            ("--2", None),  # a factor takes at most one leading minus
        ],
    )
    def test_cases(self, text, want):
        if want is None:
            with pytest.raises(ExpressionSyntaxError):
                parse_expression(text)
        else:
            assert ev(text, 0.0) == want

    def test_power_in_term(self):
        assert ev("(1+t)^2", 2.0) == 9.0

    def test_unary_factor_inside_product(self):
        # term := factor ("*" factor)* admits a leading minus per factor
        assert ev("2*-3") == -6.0


class TestSyntaxErrors:
    def test_offset_reported(self):
        with pytest.raises(ExpressionSyntaxError) as err:
            parse_expression("2**3")
        assert err.value.offset == 2

    def test_expected_tokens(self):
        with pytest.raises(ExpressionSyntaxError) as err:
            parse_expression("2+")
        assert "NUMBER" in err.value.expected

    def test_unknown_identifier(self):
        with pytest.raises(ExpressionSyntaxError, match="unknown identifier 'foo'"):
            parse_expression("foo(t)")

    def test_call_needs_parens(self):
        with pytest.raises(ExpressionSyntaxError) as err:
            parse_expression("exp t")
        assert "(" in err.value.expected

    def test_unbalanced(self):
        with pytest.raises(ExpressionSyntaxError):
            parse_expression("(1+t")

    def test_trailing_input(self):
        with pytest.raises(ExpressionSyntaxError, match="trailing"):
            parse_expression("1 2")

    def test_empty(self):
        with pytest.raises(ExpressionSyntaxError):
            parse_expression("   ")

    def test_bad_character(self):
        with pytest.raises(ExpressionSyntaxError) as err:
            parse_expression("1 + $")
        assert err.value.offset == 4


class TestDomainErrors:
    def test_log_names_node_and_t(self):
        with pytest.raises(ExpressionDomainError, match=r"log\(t\).*t=0.0"):
            ev("log(t)", 0.0)

    def test_division_by_zero(self):
        with pytest.raises(ExpressionDomainError, match="division by zero"):
            ev("1/t", 0.0)

    def test_sqrt_of_negative(self):
        with pytest.raises(ExpressionDomainError):
            ev("sqrt(t-1)", 0.0)

    def test_fractional_power_of_negative(self):
        with pytest.raises(ExpressionDomainError):
            ev("(t-2)^0.5", 0.0)

    def test_overflow_is_domain_error(self):
        with pytest.raises(ExpressionDomainError):
            ev("exp(t)", 1000.0)

    def test_non_finite_t_rejected(self):
        with pytest.raises(ExpressionDomainError):
            ev("t", math.inf)


def _random_ast(rng, depth):
    if depth == 0:
        return rng.choice([Number(round(rng.uniform(0, 9), 2)), Variable()])
    kind = rng.randrange(4)
    if kind == 0:
        return Negate(_random_ast(rng, depth - 1))
    if kind == 1:
        return Call(rng.choice(["exp", "sin", "cos", "abs"]), _random_ast(rng, depth - 1))
    op = rng.choice(["+", "-", "*", "/", "^"])
    return Binary(op, _random_ast(rng, depth - 1), _random_ast(rng, depth - 1))


class TestRoundTrip:
    @pytest.mark.parametrize(
        "text",
        [
            "t/(1+t)",
            "2^3^2",
            "(2^3)^2",
            "-t^2",
            "(-t)^2",
            "1+-2",
            "t*-2",
            "exp(-t)*sin(t)/(1+t^2)",
            "sqrt(abs(t-3))",
            "1.5e-2*t",
        ],
    )
    def test_parsed_text_round_trips(self, text):
        ast = parse_expression(text)
        assert parse_expression(format_expression(ast)) == ast

    def test_random_asts_round_trip(self):
        rng = random.Random(2718)
        for _ in range(300):
            ast = _random_ast(rng, rng.randint(1, 5))
            assert parse_expression(format_expression(ast)) == ast

    def test_as_function(self):
        f = as_function(parse_expression("t^2+1"))
        assert f(3.0) == 10.0
