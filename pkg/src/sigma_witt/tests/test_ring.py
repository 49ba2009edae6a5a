import pytest

from sigma_witt.algebra.coeff import FieldDescriptor
from sigma_witt.algebra.ring import (
    RingDescriptor,
    canonical_associate,
    divides,
    exact_divide,
    gcd_normalized,
    is_unit,
    poly_arithmetic,
    unit_inverse,
    window_exponents,
)
from sigma_witt.algebra.sampling import make_rng, random_element
from sigma_witt.core.errors import (
    AllZero,
    DivisionByZero,
    MixedRings,
    NotDivisible,
    UnsupportedMultivariateGcd,
)

QQ_Q = FieldDescriptor.rational_functions("q")
POLY = RingDescriptor.univariate(QQ_Q, "t")
LAURENT = RingDescriptor.univariate(QQ_Q, "t", laurent=True)
PLAIN = RingDescriptor.univariate(FieldDescriptor.rationals(), "t")


def _q(ring):
    return ring.coefficients.parameter("q")


def test_ring_descriptor_validation():
    with pytest.raises(ValueError):
        RingDescriptor(QQ_Q, ("t", "t"), (False, False))
    with pytest.raises(ValueError):
        RingDescriptor(QQ_Q, ("q",), (False,))
    with pytest.raises(ValueError):
        RingDescriptor(QQ_Q, ("t",), ())
    assert str(LAURENT) == "QQ(q)[t^±1]"


def test_terms_are_canonical():
    t = POLY.variable("t")
    a = t ** 2 + 1 - t ** 2
    assert a == POLY.one()
    assert (t - t).is_zero
    assert list((t ** 3 + t + 2).terms) == [(0,), (1,), (3,)]


def test_negative_exponent_rejected_outside_laurent():
    with pytest.raises(ValueError):
        PLAIN.monomial((-1,))
    assert LAURENT.monomial((-1,)).degree() == -1


def test_mixed_rings():
    with pytest.raises(MixedRings):
        POLY.variable("t") + LAURENT.variable("t")


def test_units():
    t = LAURENT.variable("t")
    assert is_unit(t.scale(_q(LAURENT)))
    assert not is_unit(POLY.variable("t"))
    assert unit_inverse(t ** 3) == LAURENT.monomial((-3,))
    assert t ** -2 == LAURENT.monomial((-2,))
    with pytest.raises(NotDivisible):
        unit_inverse(t + 1)


def test_exact_divide():
    t = PLAIN.variable("t")
    assert exact_divide(t ** 2 - 1, t - 1) == t + 1
    with pytest.raises(NotDivisible):
        exact_divide(t ** 2 + 1, t - 1)
    with pytest.raises(DivisionByZero):
        exact_divide(t, PLAIN.zero())
    assert exact_divide(PLAIN.zero(), t) == PLAIN.zero()


def test_exact_divide_respects_laurent_variables():
    t = PLAIN.variable("t")
    with pytest.raises(NotDivisible):
        exact_divide(1 + t, t)

    s = LAURENT.variable("t")
    assert exact_divide(1 + s, s) == s ** -1 + 1
    assert exact_divide(s ** -2 - s ** 2, s ** -1 + s) == s ** -1 - s
    assert divides(1 - s, 1 - s ** 5)


def test_gcd_of_monomials():
    t = POLY.variable("t")
    q = _q(POLY)
    a = t.scale(1 - q)
    b = (t ** 2).scale(1 - q ** 2)
    assert gcd_normalized([a, b]) == t


def test_gcd_univariate_euclid():
    t = PLAIN.variable("t")
    assert gcd_normalized([t ** 2 - 1, t ** 2 + 2 * t + 1]) == t + 1
    assert gcd_normalized([(t - 1).scale(3), t ** 3 - 1]) == t - 1
    assert gcd_normalized([t ** 2 + 1, t + 1]) == PLAIN.one()


def test_gcd_laurent_ignores_monomial_factors():
    s = LAURENT.variable("t")
    assert gcd_normalized([s ** -1 + 1, s + s ** 2]) == 1 + s


def test_gcd_errors():
    with pytest.raises(AllZero):
        gcd_normalized([PLAIN.zero(), PLAIN.zero()])
    ring = RingDescriptor(FieldDescriptor.rationals(), ("x", "y"), (False, False))
    x, y = ring.variable("x"), ring.variable("y")
    with pytest.raises(UnsupportedMultivariateGcd):
        gcd_normalized([x + y, x * x - y * y])
    assert gcd_normalized([x * y, x * x]) == x


def test_canonical_associate():
    t = PLAIN.variable("t")
    assert canonical_associate((t + t ** 2 * 2) * 2) == t + (t ** 2).scale(2)
    s = LAURENT.variable("t")
    assert canonical_associate((s ** 3 + s ** 4).scale(_q(LAURENT))) == 1 + s
    assert canonical_associate(1 - s) == canonical_associate(s - 1)


def test_window_exponents_order():
    assert window_exponents(LAURENT, 1) == [(0,), (-1,), (1,)]
    assert window_exponents(POLY, 2) == [(0,), (1,), (2,)]
    ring = RingDescriptor(QQ_Q, ("x", "y"), (True, True))
    assert len(window_exponents(ring, 2)) == 25
    assert window_exponents(ring, 1)[0] == (0, 0)


def test_poly_arithmetic():
    t = POLY.variable("t")
    q = _q(POLY)
    a, b = t + 1, t.scale(q)
    assert poly_arithmetic(a, b, "add") == a + b
    assert poly_arithmetic(a, b, "sub") == 1 + t.scale(1 - q)
    assert poly_arithmetic(a, b, "mul") == (t ** 2).scale(q) + t.scale(q)
    with pytest.raises(ValueError):
        poly_arithmetic(a, b, "div")
    with pytest.raises(TypeError):
        poly_arithmetic(a, q, "add")
    with pytest.raises(MixedRings):
        poly_arithmetic(a, LAURENT.variable("t"), "add")


CYCLOTOMIC = RingDescriptor.univariate(FieldDescriptor.cyclotomic(5), "t")
MIXED = RingDescriptor(QQ_Q, ("x", "y"), (True, False))


@pytest.mark.parametrize("ring", [PLAIN, POLY, LAURENT, CYCLOTOMIC, MIXED], ids=str)
def test_exact_divide_recovers_random_factors(ring):
    rng = make_rng(21)
    for _ in range(300):
        a = random_element(ring, rng, 4, 6, 5)
        b = random_element(ring, rng, 3, 6, 5)
        assert exact_divide(a * b, b) == a
        assert poly_arithmetic(a * b, a, "sub") == a * (b - 1)


@pytest.mark.parametrize("ring", [PLAIN, POLY, LAURENT, CYCLOTOMIC], ids=str)
def test_gcd_scales_with_a_common_factor(ring):
    rng = make_rng(8)
    for _ in range(40):
        a, b, c = (random_element(ring, rng, 3, 4, 5) for _ in range(3))
        g = gcd_normalized([a * c, b * c])
        assert g == gcd_normalized([gcd_normalized([a, b]) * c])
        assert divides(g, a * c) and divides(g, b * c)
