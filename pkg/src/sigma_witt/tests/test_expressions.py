import pytest

from sigma_witt.algebra.coeff import FieldDescriptor
from sigma_witt.algebra.ring import RingDescriptor
from sigma_witt.algebra.sampling import make_rng, random_element
from sigma_witt.cli.expressions import (
    format_coefficient,
    format_element,
    parse_constant,
    parse_element,
    parse_endomorphism,
    tokenize,
)
from sigma_witt.core.errors import (
    ExponentDomainError,
    ExpressionError,
    ExpressionSyntaxError,
    UnknownSymbol,
    UsageError,
)

QQ_Q = FieldDescriptor.rational_functions("q")
LAURENT = RingDescriptor.univariate(QQ_Q, "t", laurent=True)
POLY = RingDescriptor.univariate(QQ_Q, "t")
PLAIN = RingDescriptor.univariate(FieldDescriptor.rationals(), "t")
CYCLO = RingDescriptor.univariate(FieldDescriptor.cyclotomic(5), "t")
MULTI = RingDescriptor(FieldDescriptor.rational_functions("q1", "q2"), ("x1", "x2"), (True, True))
MIXED = RingDescriptor(FieldDescriptor.cyclotomic(6), ("x", "y"), (True, False))

RING_SHAPES = [LAURENT, POLY, PLAIN, CYCLO, MULTI, MIXED]


def test_tokenize_positions():
    tokens = tokenize("1 + q*t^2")
    assert [t.text for t in tokens] == ["1", "+", "q", "*", "t", "^", "2", ""]
    assert [t.position for t in tokens][:5] == [0, 2, 4, 5, 6]


def test_parse_two_term_element():
    a = parse_element("1 + q*t^2", LAURENT)
    assert len(a) == 2
    assert a == parse_element("q * t ^ 2+1", LAURENT)


def test_parse_negative_laurent_exponent():
    q = LAURENT.coefficients.parameter("q")
    assert parse_element("t^-3 * (1 - q)", LAURENT) == LAURENT.monomial((-3,), 1 - q)


def test_negative_exponent_rejected_in_polynomial_ring():
    with pytest.raises(ExponentDomainError):
        parse_element("t^-1", PLAIN)
    with pytest.raises(ExponentDomainError):
        parse_element("(1 + t)^-1", LAURENT)


def test_exact_division():
    assert parse_element("(t^2 - 1)/(t - 1)", PLAIN) == parse_element("t + 1", PLAIN)
    assert parse_element("3/2*t", PLAIN) == PLAIN.monomial((1,), PLAIN.coefficients.convert(3) / 2)
    with pytest.raises(ExpressionError):
        parse_element("1/t", PLAIN)
    with pytest.raises(ExpressionError):
        parse_element("t/0", PLAIN)


def test_syntax_errors_carry_position():
    with pytest.raises(ExpressionSyntaxError) as err:
        parse_element("1 + * t", POLY)
    assert err.value.position == 4
    with pytest.raises(ExpressionSyntaxError) as err:
        parse_element("1 $ t", POLY)
    assert err.value.position == 2
    with pytest.raises(ExpressionSyntaxError):
        parse_element("(1 + t", POLY)
    with pytest.raises(ExpressionSyntaxError):
        parse_element("", POLY)
    assert issubclass(ExpressionSyntaxError, UsageError)


def test_unknown_symbols():
    with pytest.raises(UnknownSymbol) as err:
        parse_element("1 + s*t", POLY)
    assert err.value.position == 4
    with pytest.raises(UnknownSymbol):
        parse_element("zeta(3)", CYCLO)
    with pytest.raises(UnknownSymbol):
        parse_element("zeta(5)", POLY)


def test_zeta_power():
    assert parse_element("zeta(5)^5", CYCLO) == CYCLO.one()
    assert parse_element("zeta(5)^-1 * zeta(5)", CYCLO) == CYCLO.one()


def test_parse_constant():
    q = POLY.coefficients.parameter("q")
    assert parse_constant("q^2 - 1", POLY) == q ** 2 - 1
    with pytest.raises(ExpressionError):
        parse_constant("q*t", POLY)


def test_format_canonical_order():
    assert format_element(POLY.zero()) == "0"
    assert format_element(parse_element("t^3 - 2 + q*t", POLY)) == "-2 + q*t + t^3"
    assert format_element(parse_element("-(1 + q)", POLY)) == "-(1 + q)"
    assert format_element(parse_element("(1 + q) + t", POLY)) == "(1 + q) + t"
    assert format_element(parse_element("1 + x1^-1*x2", MULTI)) == "x1^-1*x2 + 1"


def test_format_coefficient():
    q = POLY.coefficients.parameter("q")
    assert format_coefficient(POLY, q - 1) == "-(1 - q)"
    assert format_coefficient(POLY, POLY.coefficients.zero) == "0"
    assert format_coefficient(POLY, 1 / (1 + q)) == "1/(1 + q)"


@pytest.mark.parametrize("ring", RING_SHAPES, ids=str)
def test_round_trip_random_elements(ring):
    rng = make_rng(2024)
    for _ in range(200):
        a = random_element(ring, rng, 4, 8, 5)
        assert parse_element(format_element(a), ring) == a


def test_parse_endomorphism():
    sigma = parse_endomorphism("t -> q*t^3", LAURENT)
    assert sigma.exponents == ((3,),)
    assert sigma.scalars[0] == LAURENT.coefficients.parameter("q")

    sigma = parse_endomorphism("x1 -> q1*x1", MULTI)
    assert sigma.exponents == ((1, 0), (0, 1))
    assert sigma.scalars[1] == MULTI.coefficients.one

    with pytest.raises(UnknownSymbol):
        parse_endomorphism("z -> 2*z", LAURENT)
    with pytest.raises(ExpressionError):
        parse_endomorphism("t -> q*t; t -> t", LAURENT)
    with pytest.raises(ExpressionSyntaxError):
        parse_endomorphism("t = q*t", LAURENT)


def test_signed_integer_literals():
    assert parse_element("1 + -2*t", POLY) == parse_element("1 - 2*t", POLY)
    assert parse_element("t*-3", POLY) == parse_element("-3*t", POLY)
    assert parse_element("t^2 - -1", POLY) == parse_element("t^2 + 1", POLY)
    assert parse_element("(-1)*t", POLY) == parse_element("t*-1", POLY)
    with pytest.raises(ExpressionSyntaxError) as err:
        parse_element("1 + - t", POLY)
    assert err.value.position == 4
