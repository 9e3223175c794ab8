from collections import Counter
from fractions import Fraction
from math import gcd, lcm

import pytest

from eiscong.arith import DomainError, euler_phi
from eiscong.characters import (DirichletCharacter, bernoulli_B1,
                                bernoulli_B2, character_from_label,
                                character_with_value, chi_in_XS,
                                enumerate_characters, gauss_sum,
                                quadratic_character)
from eiscong.cyclotomic import CyclotomicField, cyclotomic_polynomial
from eiscong import polys


def test_enumeration():
    assert [c.order for c in enumerate_characters(3)] == [1, 2]
    c11 = Counter(c.order for c in enumerate_characters(11))
    assert c11 == {1: 1, 2: 1, 5: 4, 10: 4}
    c5 = [c for c in enumerate_characters(5) if not c.is_trivial()]
    assert sorted(c.order for c in c5) == [2, 4, 4]
    for f in (1, 2, 8, 12, 16, 15, 24, 35):
        chars = enumerate_characters(f)
        assert len(chars) == euler_phi(f)
        assert len({c.label() for c in chars}) == len(chars)


def test_values_and_multiplicativity():
    q11 = quadratic_character(11)
    assert q11.value(2) == CyclotomicField(2).from_rational(-1)
    assert q11.value(11).is_zero()
    phi10 = character_with_value(11, 2, 10, 1)
    assert phi10.value(2) == CyclotomicField(10).zeta(1)
    # complete multiplicativity on units
    for chi in enumerate_characters(12) + [phi10]:
        f, k = chi.modulus, chi.order
        for a in range(1, f):
            for b in range(1, f):
                if gcd(a * b, f) == 1:
                    ea, eb, eab = (chi.value_exponent(a), chi.value_exponent(b),
                                   chi.value_exponent(a * b))
                    assert (ea + eb) % k == eab


def test_conductor_primitive_part():
    q11 = quadratic_character(11)
    xi = (q11 * q11).primitive_part()
    assert xi.conductor() == 1 and xi.is_trivial()
    phi10 = character_with_value(11, 2, 10, 1)
    xi = (phi10 * phi10).primitive_part()
    assert xi.conductor() == 11 and xi.order == 5
    assert DirichletCharacter.trivial(12).conductor() == 1
    q3 = quadratic_character(3)
    assert q3.extend(12).conductor() == 3
    assert q3.extend(12).primitive_part() == q3


def test_gauss_sums():
    assert gauss_sum(quadratic_character(5)) ** 2 == CyclotomicField(5).from_rational(5)
    assert gauss_sum(quadratic_character(11)) ** 2 == CyclotomicField(11).from_rational(-11)
    assert gauss_sum(DirichletCharacter.trivial()) == CyclotomicField(1).one()
    with pytest.raises(DomainError):
        gauss_sum(quadratic_character(3).extend(12))


def test_gauss_sum_identity_small_fields():
    """tau(chi) tau(chi^-1) = chi(-1) f via full field arithmetic, f <= 21."""
    for f in range(3, 22):
        for chi in enumerate_characters(f):
            if not chi.is_primitive() or chi.is_trivial():
                continue
            if euler_phi(lcm(f, chi.order)) > 200:
                continue
            t1, t2 = gauss_sum(chi), gauss_sum(chi.inverse())
            L = lcm(t1.field.m, t2.field.m)
            assert t1.embed(L) * t2.embed(L) == chi.value(-1).embed(L) * f
            # |tau|^2 = f with conjugation zeta -> zeta^{-1}
            assert t1 * t1.conjugate() == CyclotomicField(t1.field.m).from_rational(f)


def test_gauss_sum_identity_all_conductors_to_60():
    """tau(chi)tau(chi^-1) = chi(-1) f and tau(chi)conj(tau(chi)) = f for every
    primitive chi of conductor <= 60, via the tensor-algebra reduction."""
    from helpers import check_gauss_identity

    for f in range(3, 61):
        for chi in enumerate_characters(f):
            if chi.is_primitive() and not chi.is_trivial():
                check_gauss_identity(chi)


def test_bernoulli_B1():
    assert bernoulli_B1(quadratic_character(3)).rational_value() == Fraction(-1, 3)
    assert bernoulli_B1(quadratic_character(11)).rational_value() == -1
    with pytest.raises(DomainError):
        bernoulli_B1(DirichletCharacter.trivial())
    # vanishing on even characters, conductor <= 60
    for f in range(3, 61):
        for chi in enumerate_characters(f):
            if chi.is_trivial() or not chi.is_even():
                continue
            assert bernoulli_B1(chi).is_zero()


def test_bernoulli_B2():
    assert bernoulli_B2(DirichletCharacter.trivial()).rational_value() == Fraction(1, 6)
    assert bernoulli_B2(DirichletCharacter.trivial(12)).rational_value() == Fraction(1, 6)
    assert bernoulli_B2(quadratic_character(5)).rational_value() == Fraction(4, 5)
    phi10 = character_with_value(11, 2, 10, 1)
    xi_inv = ((phi10 * phi10).primitive_part()).inverse()
    K5 = CyclotomicField(5)
    want = K5.element(
        [Fraction(61, 33), Fraction(-59, 33), Fraction(-23, 33), Fraction(-47, 33), Fraction(13, 33)]
    )
    assert bernoulli_B2(xi_inv) == want
    # parity: B2 vanishes on odd characters, conductor <= 60
    for f in range(3, 61):
        for chi in enumerate_characters(f):
            if chi.is_primitive() and chi.is_odd():
                assert bernoulli_B2(chi).is_zero()


def test_chi_in_XS():
    assert not chi_in_XS(quadratic_character(7), 121)
    cubic7 = next(c for c in enumerate_characters(7) if c.order == 3)
    assert chi_in_XS(cubic7, 121)
    ord11_23 = next(c for c in enumerate_characters(23) if c.order == 11)
    assert not chi_in_XS(ord11_23, 23)  # gcd(conductor, N) != 1
    assert chi_in_XS(ord11_23, 121)
    cubic13 = next(c for c in enumerate_characters(13) if c.order == 3)
    assert not chi_in_XS(cubic13, 121)  # 13 = 1 mod 4


def test_labels_roundtrip():
    for f in (3, 5, 11, 12):
        for chi in enumerate_characters(f):
            assert character_from_label(chi.label()) == chi
    assert character_from_label("11.2.1") == quadratic_character(11)
    with pytest.raises(DomainError):
        character_from_label("11.3.1")


def test_xs_parity():
    from eiscong.characters import xs_parity

    cubic7 = next(c for c in enumerate_characters(7) if c.order == 3)
    assert xs_parity(cubic7) == "+"
    sextic7 = next(c for c in enumerate_characters(7) if c.order == 6)
    assert xs_parity(sextic7) == "-"
