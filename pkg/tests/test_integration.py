"""Cross-module checks that don't belong to any single unit module."""

import pytest

from eiscong.arith import DomainError
from eiscong.characters import quadratic_character
from eiscong.cusps import D_divisor, boundary_divisor
from eiscong.eisenstein import EisensteinParams
from eiscong.newforms import NetworkUnavailable
from eiscong.scanner import full_scan


def test_full_scan_missing_data_is_actionable(tmp_path, monkeypatch):
    monkeypatch.setenv("EISCONG_CACHE", str(tmp_path))
    with pytest.raises(NetworkUnavailable, match="eiscong fetch"):
        full_scan(99, 3)


def test_full_scan_bound_exceeding_fixture(monkeypatch):
    with pytest.raises(DomainError, match="coefficients"):
        full_scan(121, 11, bound=1000)


def test_divisor_json_export():
    phi = quadratic_character(11)
    D = D_divisor(121, 11, phi)
    payload = D.to_json()
    assert len(payload) == 10
    assert payload[0]["b"] == 11 and payload[0]["level"] == 121
    assert {"a", "b", "d", "class", "level", "coefficient"} <= set(payload[0])
    # sorted by (d, class)
    assert [p["class"] for p in payload] == sorted(p["class"] for p in payload)


def test_boundary_coefficient_at_one_over_p():
    """a_0 at the cusp [1; p] is beta / N' for p-good levels (the identity the
    order proof reads off)."""
    from eiscong.cusps import beta_constant, cusp_from_fraction

    phi = quadratic_character(5)
    P = EisensteinParams(phi, 725, 1, 29)
    D = boundary_divisor(P)
    c = cusp_from_fraction(725, 1, 5)
    assert c.ram_index() == 29
    assert D.coefficient(c) == beta_constant(P)


def test_readme_worked_example():
    from eiscong import (EisensteinParams, beta_tilde, build_E, cuspidal_order,
                         full_scan, gauss_sum, quadratic_character,
                         verify_boundary)

    phi = quadratic_character(11)
    P = EisensteinParams(phi, 121, 1, 1)
    assert build_E(P, 12).pretty().startswith("q - 3*q^2 + 4*q^3")
    assert beta_tilde(P) == gauss_sum(phi) * 605
    assert cuspidal_order(P) == 605 ** 10 * 11 ** 5
    assert verify_boundary(P).ok
    res = full_scan(121, 11)
    assert res.hits[0].descriptor.render() == (
        "<5, U_11, {T_r - 1 - r : r = 1, 3, 4, 5, 9} (mod 11), "
        "{T_r + 1 + r : r = 2, 6, 7, 8, 10} (mod 11)>"
    )
