import pytest

from sigma_witt.algebra.coeff import FieldDescriptor
from sigma_witt.algebra.deform import (
    GProvenance,
    bracket,
    compute_g,
    cyclic_sigma_sum,
    generalized_jacobi_residual,
    hom_jacobi_residual,
    is_partial_surjective,
    leibniz_residual,
    make_algebra,
    partial,
    search_hom_jacobi,
    sigma1_apply,
    sigma_identity_residual,
    skew_residual,
    twist_residual,
    unit_bracket_residual,
)
from sigma_witt.algebra.endo import Answer, Endomorphism, fixed_by_sigma
from sigma_witt.algebra.ring import RingDescriptor, window_exponents
from sigma_witt.algebra.sampling import make_rng, random_coefficient, random_element
from sigma_witt.cli.expressions import format_element, parse_element
from sigma_witt.core.errors import InvalidOverride, SigmaIsIdentityOnSample
from sigma_witt.families import build_family


def _sample(W, seed, count, arity, max_terms=3):
    rng = make_rng(seed)
    return [[random_element(W.ring, rng, max_terms, 6, 5) for _ in range(arity)] for _ in range(count)]


def test_jackson_derivative_format(qwitt_poly):
    t = qwitt_poly.ring.variable("t")
    assert format_element(partial(qwitt_poly, t ** 3)) == "(1 + q + q^2)*t^2"
    assert not partial(qwitt_poly, qwitt_poly.ring.one())
    assert qwitt_poly.provenance is GProvenance.PRESET_OVERRIDE
    assert format_element(qwitt_poly.g) == "(1 - q)*t"
    assert format_element(qwitt_poly.delta) == "q"


def test_jackson_derivative_up_to_degree_fifty(qwitt_poly):
    t = qwitt_poly.ring.variable("t")
    field = qwitt_poly.ring.coefficients
    q = field.parameter("q")
    q_integer, power = field.zero, field.one
    for k in range(1, 51):
        q_integer, power = q_integer + power, power * q
        assert partial(qwitt_poly, t ** k) == (t ** (k - 1)).scale(q_integer)


@pytest.mark.parametrize("k", [-2, -1, 1, 2])
def test_qwitt_laurent_delta(k):
    W = build_family("qwitt_laurent", {"k": str(k)}).build_algebra()
    q = W.ring.coefficients.parameter("q")
    assert W.delta == W.ring.constant(W.ring.coefficients.pow(q, k))
    if k == 2:
        assert format_element(W.delta) == "q^2"


def test_bracket_and_sigma1(qwitt_poly):
    t = qwitt_poly.ring.variable("t")
    assert format_element(bracket(qwitt_poly, t, t ** 2)) == "q*t^2"
    assert format_element(sigma1_apply(qwitt_poly, t)) == "2*q*t"


@pytest.mark.parametrize("s", [3, 4, 5])
def test_power_twist_geometric_derivative(s):
    W = build_family("power_twist", {"s": str(s)}).build_algebra()
    q = W.ring.coefficients.parameter("q")
    T = W.ring.monomial((s - 1,), q)
    assert W.g == W.ring.one() - T
    expected = W.ring.zero()
    power = T
    for _ in range(s - 1):
        expected = expected + power
        power = power * T
    assert partial(W, T) == expected


def test_power_twist_s3_partial(power_twist):
    p = parse_element("q*t^2", power_twist.ring)
    assert format_element(partial(power_twist, p)) == "q*t^2 + q^2*t^4"


@pytest.mark.parametrize("s", [-1, -2])
def test_power_twist_negative_s_g(s):
    W = build_family("power_twist", {"s": str(s)}).build_algebra()
    q = W.ring.coefficients.parameter("q")
    assert W.g == W.ring.one() - W.ring.monomial((1 - s,), 1 / q)


def test_multi_laurent_constants(multi_laurent):
    W = multi_laurent
    assert W.g == W.ring.one() and W.delta == W.ring.one()
    q1, q2 = (W.ring.coefficients.parameter(n) for n in ("q1", "q2"))
    m = W.ring.monomial((2, -3))
    assert partial(W, m) == m.scale(1 - q1 ** 2 * q2 ** -3)


def test_compute_g_for_cubic_twist():
    field = FieldDescriptor.rational_functions("q")
    ring = RingDescriptor.univariate(field, "t", laurent=True)
    q = ring.coefficients.parameter("q")
    sigma = Endomorphism(ring, (q,), ((3,),))
    g, report = compute_g(ring, sigma, 4)
    assert g == ring.monomial((2,)) - ring.constant(1 / q)
    assert report.samples > 0
    W = make_algebra(ring, sigma, window=4)
    assert W.provenance is GProvenance.COMPUTED_GCD


def test_compute_g_short_circuits_on_a_unit(multi_laurent):
    g, report = compute_g(multi_laurent.ring, multi_laurent.sigma, 6)
    assert g == multi_laurent.ring.one()
    assert report.short_circuit


def test_identity_sigma_rejected():
    ring = RingDescriptor.univariate(FieldDescriptor.rationals(), "t")
    with pytest.raises(SigmaIsIdentityOnSample):
        make_algebra(ring, Endomorphism.identity(ring))


def test_override_must_be_an_associate():
    with pytest.raises(InvalidOverride):
        build_family("qwitt_poly", {"g": "t^2"}).build_algebra()
    W = build_family("qwitt_poly", {"g": "3*t"}).build_algebra()
    assert W.provenance is GProvenance.PRESET_OVERRIDE


@pytest.mark.parametrize("fixture", ["qwitt_poly", "qwitt_laurent", "power_twist", "multi_laurent"])
def test_axiom_residuals_vanish(fixture, request):
    W = request.getfixturevalue(fixture)
    for a, b in _sample(W, 1, 15, 2):
        assert not leibniz_residual(W, a, b)
        assert not skew_residual(W, a, b)
        assert not twist_residual(W, a)
        assert not sigma_identity_residual(W, a)
        assert not unit_bracket_residual(W, a)
    for a, b, c in _sample(W, 2, 6, 3, max_terms=2):
        assert not generalized_jacobi_residual(W, a, b, c)


@pytest.mark.parametrize("fixture", ["qwitt_poly", "qwitt_laurent", "multi_laurent"])
def test_hom_jacobi_holds_for_constant_delta(fixture, request):
    W = request.getfixturevalue(fixture)
    assert W.delta_in_field
    for a, b, c in _sample(W, 3, 6, 3, max_terms=2):
        assert not hom_jacobi_residual(W, a, b, c)


@pytest.mark.parametrize("s", [3, 4, -1, -2])
def test_hom_jacobi_vanishes_for_non_constant_delta(s):
    W = build_family("power_twist", {"s": str(s)}).build_algebra()
    assert not W.delta_in_field
    for a, b, c in _sample(W, 5, 6, 3, max_terms=3):
        assert not hom_jacobi_residual(W, a, b, c)
        assert not cyclic_sigma_sum(W, a, b, c)


def test_hom_jacobi_on_mixed_triple(power_twist):
    a, b, c = (parse_element(text, power_twist.ring) for text in ("t^-1", "1 + t", "t^2"))
    assert not hom_jacobi_residual(power_twist, a, b, c)


def test_monomial_search_finds_no_hom_jacobi_witness(power_twist):
    search = search_hom_jacobi(power_twist, 3)
    assert not search.found
    assert search.searched == 35
    assert search.to_dict() == {"bound": 3, "searched": 35, "triple": None, "residual": None}


def test_partial_surjectivity(qwitt_poly, qwitt_laurent):
    assert is_partial_surjective(qwitt_poly).answer is Answer.YES

    root = build_family("qwitt_poly", {"q": "zeta(5)"}).build_algebra()
    check = is_partial_surjective(root)
    assert check.answer is Answer.NO
    assert format_element(check.witness) == "t^4"

    check = is_partial_surjective(qwitt_laurent)
    assert check.answer is Answer.NO
    assert format_element(check.witness) == "t^-1"

    k2 = build_family("qwitt_laurent", {"k": "2"}).build_algebra()
    assert format_element(is_partial_surjective(k2).witness) == "t^-2"

    assert is_partial_surjective(build_family("power_twist", {"s": "3"}).build_algebra()).answer is Answer.UNKNOWN


def test_degree_drops_up_to_degree_thirty(qwitt_poly):
    t = qwitt_poly.ring.variable("t")
    for k in range(1, 31):
        d = partial(qwitt_poly, t ** k)
        assert d and d.degree() == k - 1


@pytest.mark.parametrize("k", [-2, 1, 3])
def test_qwitt_laurent_partial_of_powers(k):
    W = build_family("qwitt_laurent", {"k": str(k)}).build_algebra()
    t = W.ring.variable("t")
    q = W.ring.coefficients.parameter("q")
    assert not partial(W, W.ring.one())
    for m in [m for m in range(-12, 13) if m]:
        assert partial(W, t ** m) == (t ** (m - k)).scale(1 - q ** m)


@pytest.mark.parametrize("s", [3, 4])
def test_power_twist_partial_of_powers(s):
    W = build_family("power_twist", {"s": str(s)}).build_algebra()
    t = W.ring.variable("t")
    q = W.ring.coefficients.parameter("q")
    T = W.ring.monomial((s - 1,), q)
    for m in range(1, 8):
        geometric = sum((T ** j for j in range(m)), W.ring.zero())
        assert partial(W, t ** m) == t ** m * geometric
        # t^-m - q^-m t^-sm = -q^-m t^-sm (1 - T^m)
        assert partial(W, t ** -m) == -(t ** (-s * m)).scale(q ** -m) * geometric


def test_multi_laurent_partial_of_monomials(multi_laurent):
    W = multi_laurent
    q1, q2 = (W.ring.coefficients.parameter(n) for n in ("q1", "q2"))
    for e in window_exponents(W.ring, 4):
        m = W.ring.monomial(e)
        assert partial(W, m) == m.scale(1 - q1 ** e[0] * q2 ** e[1])


@pytest.mark.parametrize("name, params", [
    ("qwitt_laurent", {"q": "zeta(4)", "k": "1"}),
    ("qwitt_poly", {"q": "zeta(3)"}),
    ("multi_laurent", {"n": "2", "q1": "q", "q2": "q"}),
])
def test_constants_form_a_subring(name, params):
    W = build_family(name, params).build_algebra()
    fixed = [e for e in window_exponents(W.ring, 8) if fixed_by_sigma(W.sigma, W.ring.monomial(e))]
    assert len(fixed) > 2
    rng = make_rng(4)

    def constant():
        picks = rng.choice(len(fixed), size=3)
        return sum((W.ring.monomial(fixed[int(i)], random_coefficient(W.ring, rng)) for i in picks), W.ring.zero())

    assert not partial(W, W.ring.one())
    for _ in range(30):
        a, b = constant(), constant()
        assert not partial(W, a) and not partial(W, b)
        assert not partial(W, a * b)
        assert not partial(W, a + b) and not partial(W, a - b)
        assert not partial(W, -a)
