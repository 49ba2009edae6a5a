import pytest

from sigma_witt.algebra.coeff import FieldDescriptor
from sigma_witt.algebra.endo import (
    Answer,
    Endomorphism,
    endo_apply,
    fixed_by_sigma,
    generator_preimages,
    is_epimorphism,
    is_monomorphism,
)
from sigma_witt.algebra.ring import RingDescriptor
from sigma_witt.algebra.sampling import make_rng, random_element
from sigma_witt.core.errors import MixedRings, NegativeExponentOnNonUnit, UnsupportedSigma

QQ_Q = FieldDescriptor.rational_functions("q")
LAURENT = RingDescriptor.univariate(QQ_Q, "t", laurent=True)
POLY = RingDescriptor.univariate(QQ_Q, "t")
TWO = RingDescriptor(FieldDescriptor.rationals(), ("x", "y"), (True, True))


def _q(ring):
    return ring.coefficients.parameter("q")


def test_apply_diagonal():
    sigma = Endomorphism.diagonal(POLY, (_q(POLY),))
    t = POLY.variable("t")
    q = _q(POLY)
    assert sigma.apply(t ** 3 + 1) == (t ** 3).scale(q ** 3) + 1
    assert sigma.eigenvalue((4,)) == q ** 4
    assert sigma(t) == sigma.apply(t)


def test_power_and_compose():
    sigma = Endomorphism(LAURENT, (_q(LAURENT),), ((3,),))
    twice = sigma.power(2)
    assert twice.exponents == ((9,),)
    assert twice.scalars[0] == _q(LAURENT) ** 4
    assert sigma.power(0).is_identity


def test_from_images_rejects_non_monomials():
    t = POLY.variable("t")
    with pytest.raises(UnsupportedSigma):
        Endomorphism.from_images(POLY, [t + 1])
    with pytest.raises(UnsupportedSigma):
        Endomorphism(POLY, (0,), ((1,),))


def test_images_must_stay_in_ring():
    with pytest.raises(NegativeExponentOnNonUnit):
        Endomorphism(POLY, (1,), ((-1,),))
    mixed = RingDescriptor(FieldDescriptor.rationals(), ("x", "y"), (True, False))
    with pytest.raises(NegativeExponentOnNonUnit):
        Endomorphism(mixed, (1, 1), ((1, 1), (0, 1)))


def test_apply_rejects_other_ring():
    sigma = Endomorphism.diagonal(POLY, (_q(POLY),))
    with pytest.raises(MixedRings):
        sigma.apply(LAURENT.variable("t"))


def test_power_twist_is_not_epimorphism_but_is_monomorphism():
    sigma = Endomorphism(LAURENT, (_q(LAURENT),), ((3,),))
    epi = is_epimorphism(sigma)
    assert epi.answer is Answer.NO
    assert epi.witness == LAURENT.variable("t")
    assert is_monomorphism(sigma).answer is Answer.YES
    with pytest.raises(UnsupportedSigma):
        generator_preimages(sigma)


def test_inversion_is_an_automorphism_of_laurent_ring():
    sigma = Endomorphism(LAURENT, (_q(LAURENT),), ((-1,),))
    assert is_epimorphism(sigma).answer is Answer.YES
    preimage = generator_preimages(sigma)["t"]
    assert sigma.apply(preimage) == LAURENT.variable("t")


def test_polynomial_epimorphism():
    q = _q(POLY)
    diagonal = Endomorphism.diagonal(POLY, (q,))
    assert is_epimorphism(diagonal).answer is Answer.YES
    assert generator_preimages(diagonal)["t"] == POLY.variable("t").scale(1 / q)

    square = Endomorphism(POLY, (1,), ((2,),))
    check = is_epimorphism(square)
    assert check.answer is Answer.NO
    assert check.witness == POLY.variable("t")


def test_singular_exponent_matrix():
    sigma = Endomorphism(TWO, (1, 1), ((1, 1), (1, 1)))
    assert is_epimorphism(sigma).answer is Answer.NO
    mono = is_monomorphism(sigma)
    assert mono.answer is Answer.NO
    assert mono.witness
    assert not sigma.apply(mono.witness)


def test_fixed_by_sigma():
    sigma = Endomorphism.diagonal(TWO, (2, 2))
    assert fixed_by_sigma(sigma, TWO.monomial((1, -1)))
    assert not fixed_by_sigma(sigma, TWO.variable("x"))
    assert sigma.to_dict() == {"x": "2*x", "y": "2*y"}


def _sigma(name):
    if name == "diagonal":
        return Endomorphism.diagonal(POLY, (_q(POLY),))
    if name == "cubic_twist":
        return Endomorphism(LAURENT, (_q(LAURENT),), ((3,),))
    if name == "inversion":
        return Endomorphism(LAURENT, (_q(LAURENT),), ((-1,),))
    return Endomorphism(TWO, (2, 3), ((1, 1), (0, -1)))


@pytest.mark.parametrize("name", ["diagonal", "cubic_twist", "inversion", "two_variable"])
def test_sigma_is_a_ring_homomorphism(name):
    sigma = _sigma(name)
    ring = sigma.ring
    rng = make_rng(17)
    assert endo_apply(sigma, ring.one()) == ring.one()
    assert not endo_apply(sigma, ring.zero())
    for _ in range(50):
        a = random_element(ring, rng, 3, 5, 5)
        b = random_element(ring, rng, 3, 5, 5)
        assert endo_apply(sigma, a * b) == endo_apply(sigma, a) * endo_apply(sigma, b)
        assert endo_apply(sigma, a + b) == endo_apply(sigma, a) + endo_apply(sigma, b)
        assert endo_apply(sigma.power(2), a) == endo_apply(sigma, endo_apply(sigma, a))
