import random
from fractions import Fraction
from math import gcd, prod

import pytest

from eiscong.arith import (divisors, euler_phi, is_squarefree, prime_divisors,
                           primes_up_to, valuation)
from eiscong.characters import (character_with_value, enumerate_characters,
                                gauss_sum, quadratic_character)
from eiscong.cusps import (Cusp, CuspDivisor, D_NML, D_divisor,
                           DivisorUndefinedError, beta_constant, beta_tilde,
                           boundary_divisor, closed_form_boundary, cusp_count,
                           cusp_from_fraction, enumerate_cusps,
                           gamma0_equivalent, pullback_pi_l, pullback_pi_paren,
                           verify_boundary)
from eiscong.cyclotomic import CyclotomicField
from eiscong.eisenstein import EisensteinParams


def test_cusp_counts_up_to_1000():
    for N in range(1, 1001):
        assert cusp_count(N) == sum(euler_phi(gcd(d, N // d)) for d in divisors(N))
    for N in (11, 121, 4, 234, 725):
        assert len(enumerate_cusps(N)) == cusp_count(N)
    assert len(enumerate_cusps(11)) == 2
    assert len(enumerate_cusps(121)) == 12
    assert len(enumerate_cusps(4)) == 3


def test_normal_form_against_equivalence_oracle():
    rng = random.Random(17)
    for N in (12, 28, 45, 121, 90):
        # the cusp classifier agrees with the classical equivalence criterion
        fracs = []
        for _ in range(40):
            b = rng.randrange(0, 3 * N)
            a = rng.randrange(1, 3 * N)
            if gcd(a, b) != 1:
                continue
            fracs.append((a, b))
        for f1 in fracs:
            for f2 in fracs:
                same_class = cusp_from_fraction(N, *f1) == cusp_from_fraction(N, *f2)
                assert same_class == gamma0_equivalent(N, f1, f2), (N, f1, f2)


def test_normal_form_gamma0_invariance():
    rng = random.Random(23)
    for N in (12, 121, 234):
        for _ in range(40):
            a = rng.randrange(1, 4 * N)
            b = rng.randrange(0, 4 * N)
            if gcd(a, b) != 1:
                continue
            # gamma = [[p, q], [r*N, s]] with det 1
            r = rng.randrange(-3, 4)
            if r == 0:
                p, q, s = 1, rng.randrange(-5, 6), 1
            else:
                p = rng.randrange(1, 12)
                while gcd(p, r * N) != 1:
                    p += 1
                g, s, q = _xgcd(p, -r * N)
                assert g == 1
            assert p * s - q * r * N == 1
            a2, b2 = p * a + q * b, r * N * a + s * b
            assert cusp_from_fraction(N, a, b) == cusp_from_fraction(N, a2, b2)


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def test_ram_index_and_width():
    assert cusp_from_fraction(121, 1, 11).ram_index() == 1
    assert cusp_from_fraction(725, 1, 5).ram_index() == 29
    assert cusp_from_fraction(121, 1, 121).ram_index() == 1   # infinity
    assert cusp_from_fraction(11, 0, 1).width() == 11          # the cusp 0
    assert cusp_from_fraction(121, 1, 11).field_torsion() == 11
    assert cusp_from_fraction(242, 1, 11).field_torsion() == 11
    assert cusp_from_fraction(121, 1, 121).field_torsion() == 1


def test_ram_ratio_two_implementations():
    """e(pi_(l); x, y) = e_{Gamma0(Al)}(x) / e_{Gamma0(A)}(y) equals the
    closed-form case split (l when nu_l(d) <= nu_l(A/d), else 1), checked on
    all cusps of all levels <= 400."""
    for l in (2, 3, 5):
        for A in range(1, 401):
            Al = A * l
            for c in enumerate_cusps(Al):
                a, b = c.canonical_rep()
                y = cusp_from_fraction(A, a, b)
                ratio = Fraction(c.ram_index(), y.ram_index())
                assert ratio.denominator == 1
                d = y.d
                closed = l if valuation(d, l) <= valuation(A // d, l) else 1
                # the ratio formula is per preimage cusp; the closed form is
                # stated for the (1:d)-type cusps, where both must agree
                if c.d == d or c.d == d * l ** valuation(c.d // gcd(c.d, d), l):
                    pass
                if c.d == d:
                    assert int(ratio) == closed, (A, l, c)


def test_pullback_degree_equals_index():
    """deg(pi^* D) = [Gamma0(A) : Gamma0(Al)] deg(D) for both coverings on
    every level <= 200 (random integer divisors)."""
    rng = random.Random(31)
    K1 = CyclotomicField(1)
    for A in range(1, 201):
        l = rng.choice((2, 3, 5))
        index = l + 1 if A % l else l
        support = {}
        for c in enumerate_cusps(A):
            v = rng.randrange(-4, 5)
            if v:
                support[c] = K1.from_rational(v)
        D = CuspDivisor(A, support)
        deg = D.degree()
        d1 = pullback_pi_paren(D, l).degree()
        d2 = pullback_pi_l(D, l).degree()
        assert d1 == deg * index, (A, l, "pi_(l)")
        assert d2 == deg * index, (A, l, "pi_l")


def test_D_divisor_basics():
    phi = quadratic_character(11)
    D = D_divisor(121, 11, phi)
    assert len(D.support) == 10
    assert D.degree().is_zero()
    vals = sorted(v.rational_value() for v in D.support.values())
    assert vals == [-1] * 5 + [1] * 5
    # conductor condition violated
    with pytest.raises(DivisorUndefinedError):
        D_divisor(121, 1, phi)
    with pytest.raises(DivisorUndefinedError):
        D_divisor(22, 11, phi)
    # degree = sum of phi over units = 0 for nontrivial phi
    phi10 = character_with_value(11, 2, 10, 1)
    assert D_divisor(121, 11, phi10).degree().is_zero()
    # f^2 case of the appendix proposition: euler_phi(f) cusps
    assert len(D_divisor(49, 7, quadratic_character(7)).support) == 6


def test_pullback_four_case_table():
    """The four cases of the covering pullback table, against the generic
    cusp-level implementation."""
    phi = quadratic_character(3)

    def DD(N, d):
        return D_divisor(N, d, phi)

    # case l coprime to A and d: pi_(l)* D_{A,d} = l D + phi(l) D_{dl}
    A, d, l = 9, 3, 2
    lhs = pullback_pi_paren(DD(A, d), l)
    rhs = DD(A * l, d).scale(l) + DD(A * l, d * l).scale(phi.value(l))
    assert lhs == rhs
    # pi_l* D_{A,d} = l D_{dl} + phi(l) D_d
    lhs = pullback_pi_l(DD(A, d), l)
    rhs = DD(A * l, d * l).scale(l) + DD(A * l, d).scale(phi.value(l))
    assert lhs == rhs
    # case l | A/d, nu_l(d) <= nu_l(A/d): pi_(l)* = l D_d
    A, d, l = 18, 3, 2
    assert pullback_pi_paren(DD(A, d), l) == DD(A * l, d).scale(l)
    # case l | d, nu_l(A/d) <= nu_l(d): pi_l* = l D_{dl}
    A, d, l = 18, 6, 2
    assert pullback_pi_l(DD(A, d), l) == DD(A * l, d * l).scale(l)
    # case l | A/d, nu_l(d) > nu_l(A/d): pi_(l)* = D_d
    A, d, l = 288, 24, 2  # nu_2(24) = 3 > nu_2(12) = 2
    assert pullback_pi_paren(DD(A, d), l) == DD(A * l, d)
    # case l not dividing d, l | A/d for pi_l*: D_{dl} + phi(l) D_d
    A, d, l = 18, 3, 2
    lhs = pullback_pi_l(DD(A, d), l)
    rhs = DD(A * l, d * l) + DD(A * l, d).scale(phi.value(l))
    assert lhs == rhs


def test_beta_tilde_goldens_121_234():
    phi = quadratic_character(11)
    assert beta_tilde(EisensteinParams(phi, 121, 1, 1)) == gauss_sum(phi) * 605
    phi3 = quadratic_character(3)
    t3 = gauss_sum(phi3)
    for (M, L), c in [((1, 26), 36), ((2, 13), 108), ((26, 1), 1512), ((13, 2), 504)]:
        assert beta_tilde(EisensteinParams(phi3, 234, M, L)) == t3 * c, (M, L)


def test_beta_tilde_goldens_725():
    phi2 = quadratic_character(5)
    t2 = gauss_sum(phi2)
    assert beta_tilde(EisensteinParams(phi2, 725, 1, 29)) == t2 * 700
    assert beta_tilde(EisensteinParams(phi2, 725, 29, 1)) == t2 * 21000
    for e in (1, 3):
        phi = character_with_value(5, 2, 4, 1).power(e)
        tinv = gauss_sum(phi.inverse())
        m = 20
        prodt = t2.embed(m) * tinv.embed(m)
        assert beta_tilde(EisensteinParams(phi, 725, 1, 29)) == prodt * 140
        # the (M,L) = (29,1) value from the displayed unsimplified expression
        # (5^4 * 29^2 / (4*5)) * (tau(phi^{-1}) / sqrt 5) * (4/5) * (1 - 1/29^2)
        want = (
            tinv.embed(m)
            / t2.embed(m)
            * Fraction(5 ** 4 * 29 ** 2, 20)
            * Fraction(4, 5)
            * (1 - Fraction(1, 29 ** 2))
        )
        got = beta_tilde(EisensteinParams(phi, 725, 29, 1))
        assert got == want
        assert got == prodt * 4200  # 30x the (1,29) value, as in the quadratic pair


def test_beta_tilde_order_ten_121():
    phi = character_with_value(11, 2, 10, 1)
    xi = (phi * phi).primitive_part()
    from eiscong.characters import bernoulli_B2

    m = 110
    want = (
        gauss_sum(phi.inverse()).embed(m)
        * gauss_sum(xi).embed(m)
        * bernoulli_B2(xi.inverse()).embed(m)
        * Fraction(121, 4)
    )
    assert beta_tilde(EisensteinParams(phi, 121, 1, 1)) == want


def test_boundary_121():
    phi = quadratic_character(11)
    P = EisensteinParams(phi, 121, 1, 1)
    D = boundary_divisor(P)
    assert D == D_divisor(121, 11, phi).scale(gauss_sum(phi) * 55)
    assert D.degree().is_zero()
    # the coefficient at infinity is 0
    inf = cusp_from_fraction(121, 1, 0)
    assert D.coefficient(inf).is_zero()


def test_verify_boundary_paper_sets():
    phi3 = quadratic_character(3)
    for (M, L) in [(1, 26), (2, 13), (26, 1), (13, 2)]:
        assert verify_boundary(EisensteinParams(phi3, 234, M, L))
    for phi in [c for c in enumerate_characters(5) if not c.is_trivial()]:
        for (M, L) in [(1, 29), (29, 1)]:
            assert verify_boundary(EisensteinParams(phi, 725, M, L))
    for phi in [c for c in enumerate_characters(11) if not c.is_trivial()][:3]:
        assert verify_boundary(EisensteinParams(phi, 121, 1, 1))


def test_verify_boundary_randomized_pgood():
    from helpers import random_pgood_params

    rng = random.Random(99)
    for P in random_pgood_params(rng, 25):
        assert verify_boundary(P), P.label()


def test_verify_boundary_detects_mutation():
    phi = quadratic_character(11)
    P = EisensteinParams(phi, 121, 1, 1)
    lhs = boundary_divisor(P)
    rhs = closed_form_boundary(P)
    # flip the sign of one coefficient in the closed form
    cusp, val = next(iter(sorted(rhs.support.items(), key=lambda kv: (kv[0].d, kv[0].x))))
    mutated = CuspDivisor(rhs.level, {**rhs.support, cusp: -val})
    assert lhs == rhs
    assert lhs != mutated
    assert lhs.first_mismatch(mutated) == cusp


def test_divisor_support_rationality_pgood():
    """Divisors of p-good parameter sets live on Q(zeta_p)-rational cusps."""
    from helpers import random_pgood_params

    rng = random.Random(7)
    for P in random_pgood_params(rng, 8):
        D = boundary_divisor(P)
        p = P.f
        for c in D.support:
            assert p % c.field_torsion() == 0, (P.label(), c)


def test_twelve_beta_tilde_integral():
    """12*beta-tilde lies in Z[zeta_f, phi] for 100 random valid parameter sets."""
    from helpers import random_valid_params

    rng = random.Random(47)
    for P in random_valid_params(rng, 100):
        bt = beta_tilde(P) * 12
        assert bt.is_integral(), (P.label(), str(bt))


def test_printer():
    phi = quadratic_character(11)
    D = D_divisor(121, 11, phi)
    lines = D.pretty_lines()
    assert len(lines) == 10 and lines[0].startswith("[1;11]@121 : ")


def test_D_divisor_pair():
    from eiscong.cusps import D_divisor_pair

    phi = quadratic_character(11)
    assert D_divisor_pair(121, 11, phi, phi.inverse()) == D_divisor(121, 11, phi)
    phi10 = character_with_value(11, 2, 10, 1)
    # non-inverse pair: the eigenspace vanishes
    assert not D_divisor_pair(121, 11, phi, phi10).support
    with pytest.raises(DivisorUndefinedError):
        D_divisor_pair(22, 11, phi, phi.inverse())


def test_verify_boundary_general_parameters():
    """The boundary theorem holds beyond p-good levels: refinement prime
    powers, p | f slashes and promotions, squared promotion primes, and even
    conductors (the general-recursion bookkeeping is the sensitive part)."""
    chi4 = next(c for c in enumerate_characters(4) if c.is_primitive())
    chi8 = next(c for c in enumerate_characters(8) if c.is_primitive() and c.order == 2)
    chi9 = next(c for c in enumerate_characters(9) if c.is_primitive())
    cases = [
        (quadratic_character(3), 9 * 8, 8, 1),        # nu_2(M) = 3
        (quadratic_character(3), 9 * 16, 1, 16),      # nu_2(L) = 4
        (quadratic_character(3), 9 * 4 * 25, 4, 25),
        (quadratic_character(3), 9 * 3 * 5, 1, 5),    # delta_3 = 1 promotion
        (quadratic_character(3), 9 * 9 * 5, 9, 5),    # nu_3(M) = n_3 = 2
        (quadratic_character(3), 9 * 2 * 49, 1, 2),   # squared promotion prime
        (character_with_value(5, 2, 4, 1), 100, 4, 1),
        (chi4, 144, 9, 1),
        (chi8, 192, 3, 1),
        (chi9, 162, 1, 2),                            # f = 9, order-6 character
        (quadratic_character(3), 27, 1, 1),
        (quadratic_character(3), 54, 3, 2),
    ]
    for phi, N, M, L in cases:
        P = EisensteinParams(phi, N, M, L)
        assert verify_boundary(P), P.label()
