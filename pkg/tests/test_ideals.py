import pytest

from eiscong.arith import DomainError
from eiscong.characters import (character_with_value, enumerate_characters,
                                quadratic_character)
from eiscong.eisenstein import EisensteinParams
from eiscong.ideals import (candidate_characteristics, cuspidal_order,
                            descriptor, eisenstein_character, s1_set, s2_set)


def test_cuspidal_order_121():
    phi = quadratic_character(11)
    P = EisensteinParams(phi, 121, 1, 1)
    order = cuspidal_order(P)
    assert order == 605 ** 10 * 11 ** 5
    assert order % 5 == 0


def test_cuspidal_order_galois_invariance():
    # conjugate characters give ideals of equal index
    for f, N, ML in ((5, 725, (1, 29)), (11, 121, (1, 1))):
        by_order = {}
        for phi in enumerate_characters(f):
            if phi.is_trivial():
                continue
            P = EisensteinParams(phi, N, *ML)
            by_order.setdefault(phi.order, set()).add(cuspidal_order(P))
        for k, vals in by_order.items():
            assert len(vals) == 1, (f, k, vals)


def test_12_saturation():
    phi = quadratic_character(3)
    P = EisensteinParams(phi, 234, 13, 2)
    from eiscong.cusps import beta_tilde
    from eiscong.lattices import ideal_index, numerator_ideal

    order = cuspidal_order(P)
    order12 = ideal_index(numerator_ideal(beta_tilde(P) * 12))
    deg = P.field().degree
    assert order12 % order == 0
    assert (12 ** deg * order) % order12 == 0


def test_s_sets():
    assert sorted(s1_set(121)) == [2, 3, 5]
    assert sorted(s1_set(725)) == [2, 3, 5, 7]
    assert sorted(s1_set(4)) == [3]
    assert sorted(s2_set(121, 11)) == [2, 3, 5, 11]
    assert 5 in s2_set(121, 11)  # via the order-10 character's B2 norm
    assert sorted(s2_set(725, 5)) == [2, 3, 5]
    assert sorted(s2_set(9, 3)) == [3]
    with pytest.raises(DomainError):
        s2_set(33, 3)


def test_candidate_characteristics():
    assert sorted(candidate_characteristics(121, 11).union) == [2, 3, 5, 11]
    assert sorted(candidate_characteristics(725, 5).union) == [2, 3, 5, 7]
    rep = candidate_characteristics(234, 3)
    assert 7 in rep.union and rep.provenance()[7] == ["S1"]
    with pytest.raises(DomainError):
        candidate_characteristics(10, 3)


def test_eisenstein_character_reduction():
    phi10 = character_with_value(11, 2, 10, 1)
    eps = eisenstein_character(phi10, 5)
    assert eps.order == 2 and eps == quadratic_character(11)
    phi4 = character_with_value(5, 2, 4, 1)
    assert eisenstein_character(phi4, 7) == phi4
    phi5 = next(c for c in enumerate_characters(11) if c.order == 5)
    assert eisenstein_character(phi5, 5).is_trivial()


DISPLAY_121 = (
    "<5, U_11, {T_r - 1 - r : r = 1, 3, 4, 5, 9} (mod 11), "
    "{T_r + 1 + r : r = 2, 6, 7, 8, 10} (mod 11)>"
)
DISPLAY_725_F7 = (
    "<7, U_5, U_29 - 1, {T_r - 1 - r : r = 1, 4} (mod 5), "
    "{T_r + 1 + r : r = 2, 3} (mod 5)>"
)
DISPLAY_725_F49 = (
    "<7, U_5, U_29 + 1, {T_r - 1 - r : r = 1} (mod 5), "
    "{T_r + 1 + r : r = 4} (mod 5), {T_r^2 + (1 - r)^2 : r = 2, 3} (mod 5)>"
)
# the paper prints U_13 - 1; U_13 - 13 eps^{-1}(13) = U_13 - 13 = U_13 + 1 (mod 7),
# matching a_13(234.2.a.b) = -1
DISPLAY_234 = (
    "<7, U_3, U_2 + 1, U_13 + 1, {T_r - 1 - r : r = 1} (mod 3), "
    "{T_r + 1 + r : r = 2} (mod 3)>"
)


def test_descriptor_displays():
    d = descriptor(EisensteinParams(quadratic_character(11), 121, 1, 1), 5)
    assert d.render() == DISPLAY_121
    assert d.residue_field() == "F_5"
    d = descriptor(EisensteinParams(quadratic_character(5), 725, 1, 29), 7)
    assert d.render() == DISPLAY_725_F7
    assert d.residue_field() == "F_7"
    phi4 = character_with_value(5, 2, 4, 1)
    d = descriptor(EisensteinParams(phi4, 725, 1, 29), 7)
    assert d.render() == DISPLAY_725_F49
    assert d.residue_field() == "F_49"
    d = descriptor(EisensteinParams(quadratic_character(3), 234, 13, 2), 7)
    assert d.render() == DISPLAY_234
    assert d.residue_field() == "F_7"


def test_descriptor_conjugates_and_errors():
    # order-10 character at l = 5 reduces to the quadratic: same display
    phi10 = character_with_value(11, 2, 10, 1)
    d = descriptor(EisensteinParams(phi10, 121, 1, 1), 5)
    assert d.render() == DISPLAY_121
    with pytest.raises(DomainError):
        descriptor(EisensteinParams(quadratic_character(11), 121, 1, 1), 3)  # l | 6p
    with pytest.raises(DomainError):
        descriptor(EisensteinParams(quadratic_character(11), 121, 1, 1), 11)
    phi5 = next(c for c in enumerate_characters(11) if c.order == 5)
    with pytest.raises(DomainError):
        descriptor(EisensteinParams(phi5, 121, 1, 1), 5)  # trivial reduction


def test_descriptor_json_stability():
    import json

    d = descriptor(EisensteinParams(quadratic_character(5), 725, 29, 1), 7)
    j1 = json.dumps(d.to_json(), sort_keys=True)
    j2 = json.dumps(
        descriptor(EisensteinParams(quadratic_character(5), 725, 29, 1), 7).to_json(),
        sort_keys=True,
    )
    assert j1 == j2
    payload = json.loads(j1)
    assert payload["residue_field"] == "F_7"
    assert payload["M"] == 29
    # U_29 - 29*eps^{-1}(29) = U_29 - 29 = U_29 - 1 (mod 7)
    assert "U_29 - 1" in payload["u_generators"]


def test_descriptor_higher_degree_groups():
    """Order-5 character at l = 7: residue field F_7^4, quartic T_r relations
    render in expanded form without error."""
    phi5 = next(c for c in enumerate_characters(11) if c.order == 5)
    d = descriptor(EisensteinParams(phi5, 121, 1, 1), 7)
    assert d.residue_field() == "F_2401"
    assert any(g.degree == 4 for g in d.tr_groups)
    text = d.render()
    assert "T_r^4" in text and text.startswith("<7, U_11, ")
