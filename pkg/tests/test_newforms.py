import io
import json
from fractions import Fraction

import pytest

from eiscong.newforms import (NetworkUnavailable, NewformDataError,
                              bundled_newforms, fetch_newforms, load_newforms,
                              parse_newforms)


def test_bundled_levels():
    recs = bundled_newforms(121)
    assert [r.label for r in recs] == ["121.2.a.a", "121.2.a.b", "121.2.a.c", "121.2.a.d"]
    assert all(r.degree == 1 for r in recs)
    recs = bundled_newforms(234)
    assert len(recs) == 5 and all(r.degree == 1 for r in recs)
    recs = bundled_newforms(725)
    assert len(recs) == 12
    assert sorted(r.degree for r in recs) == [1, 2, 2, 3, 3, 4, 4, 5, 5, 5, 5, 6]


def test_bundled_paper_coefficients():
    d121 = next(r for r in bundled_newforms(121) if r.label == "121.2.a.d")
    got = [r[0] for r in (d121.coefficient(n) for n in range(1, 13))]
    assert got == [1, 2, -1, 2, 1, -2, 2, 0, -2, 2, 0, -2]

    b725 = next(r for r in bundled_newforms(725) if r.label == "725.2.a.b")
    assert b725.field_poly == (-2, 0, 1)
    assert b725.coefficient(2) == (1, 1)       # 1 + sqrt 2
    assert b725.coefficient(6) == (-3, -2)
    assert b725.coefficient(14) == (4, 2)

    l725 = next(r for r in bundled_newforms(725) if r.label == "725.2.a.l")
    assert l725.field_poly == (-1, 0, 41, 0, -13, 0, 1)
    # beta-basis record: a_2 = beta_1 converts to the power-basis vector e_1
    assert l725.coefficient(2) == (0, 1, 0, 0, 0, 0)
    # a_3 = beta_1 - beta_4 = x - (x^5 - 12x^3 + 35x)/2
    assert l725.coefficient(3) == (
        Fraction(0), Fraction(-33, 2), Fraction(0), Fraction(6), Fraction(0), Fraction(-1, 2),
    )
    # a_6 = 2 - beta_3 = 2 - (x^4 - 8x^2 + 5)/2
    assert l725.coefficient(6) == (
        Fraction(-1, 2), Fraction(0), Fraction(4), Fraction(0), Fraction(-1, 2), Fraction(0),
    )


def test_load_empty_and_errors(tmp_path):
    assert load_newforms(io.StringIO("")) == []
    with pytest.raises(NewformDataError):
        load_newforms(io.StringIO("not json"))
    good = {
        "label": "x", "level": 11, "weight": 2, "field_poly": [0, 1], "an": [[1], [-2]],
    }
    assert len(parse_newforms([good])) == 1
    bad = dict(good, field_poly=[0, 2])
    with pytest.raises(NewformDataError, match="monic"):
        parse_newforms([bad])
    bad = dict(good, an=[[2], [1]])
    with pytest.raises(NewformDataError, match="a_1"):
        parse_newforms([bad])
    bad = dict(good, an=[[1.0], [1]])
    with pytest.raises(NewformDataError, match="ints"):
        parse_newforms([bad])
    bad = dict(good)
    del bad["level"]
    with pytest.raises(NewformDataError, match="level"):
        parse_newforms([bad])
    # non weight-2 records are filtered, not fatal
    assert parse_newforms([dict(good, weight=4)]) == []


def test_multiplicativity_spot_check():
    rec = {
        "label": "x", "level": 35, "weight": 2, "field_poly": [0, 1],
        "an": [[1], [1], [1], [-1], [0], [2]],  # a_6 should be a_2 a_3 = 1
    }
    with pytest.raises(NewformDataError, match="a_6"):
        parse_newforms([rec])
    rec["an"][5] = [1]
    assert len(parse_newforms([rec])) == 1


class _FakeResponse:
    def __init__(self, status, payload):
        self.status_code = status
        self._payload = payload

    def json(self):
        if isinstance(self._payload, Exception):
            raise self._payload
        return self._payload


class _FakeSession:
    def __init__(self, response=None, exc=None):
        self.response = response
        self.exc = exc
        self.calls = []

    def get(self, url, params=None, timeout=None):
        self.calls.append((url, params))
        if self.exc:
            raise self.exc
        return self.response


def test_fetch_and_cache(tmp_path):
    data = [
        {"label": "11.2.a.a", "level": 11, "weight": 2, "field_poly": [0, 1],
         "an": [[1], [-2], [-1], [2], [1], [2]]},
    ]
    session = _FakeSession(_FakeResponse(200, {"data": data}))
    recs = fetch_newforms(11, endpoint="http://x/api", cache_dir=tmp_path, session=session)
    assert len(recs) == 1 and recs[0].label == "11.2.a.a"
    assert (tmp_path / "newforms_11.json").exists()
    # offline serves the cache
    recs2 = fetch_newforms(11, cache_dir=tmp_path, offline=True)
    assert recs2 == recs
    # network failure with warm cache -> cache + warning
    import requests

    failing = _FakeSession(exc=requests.ConnectionError("down"))
    with pytest.warns(UserWarning, match="cached"):
        recs3 = fetch_newforms(11, endpoint="http://x/api", cache_dir=tmp_path, session=failing)
    assert recs3 == recs


def test_fetch_errors(tmp_path):
    import requests

    failing = _FakeSession(exc=requests.ConnectionError("down"))
    with pytest.raises(NetworkUnavailable):
        fetch_newforms(13, endpoint="http://x/api", cache_dir=tmp_path, session=failing)
    with pytest.raises(NetworkUnavailable):
        fetch_newforms(13, cache_dir=tmp_path, offline=True)
    bad_shape = _FakeSession(_FakeResponse(200, {"rows": []}))
    with pytest.raises(NewformDataError):
        fetch_newforms(13, endpoint="http://x/api", cache_dir=tmp_path, session=bad_shape)
    http500 = _FakeSession(_FakeResponse(500, {}))
    with pytest.raises(NetworkUnavailable):
        fetch_newforms(13, endpoint="http://x/api", cache_dir=tmp_path, session=http500)
    # malformed remote payload -> typed error, nothing cached
    bad_rec = _FakeSession(_FakeResponse(200, {"data": [{"label": 1}]}))
    with pytest.raises(NewformDataError):
        fetch_newforms(13, endpoint="http://x/api", cache_dir=tmp_path, session=bad_rec)
    assert not (tmp_path / "newforms_13.json").exists()


def test_cache_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("EISCONG_CACHE", str(tmp_path))
    data = [{"label": "14.2.a.a", "level": 14, "weight": 2, "field_poly": [0, 1],
             "an": [[1], [-1], [-2], [1], [0], [2]]}]
    session = _FakeSession(_FakeResponse(200, {"data": data}))
    fetch_newforms(14, endpoint="http://x/api", session=session)
    assert (tmp_path / "newforms_14.json").exists()
