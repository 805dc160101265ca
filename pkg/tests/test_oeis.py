from __future__ import annotations

import random
from fractions import Fraction

import httpx
import pytest

from gkp.errors import (
    Infeasible,
    MalformedLine,
    MalformedResponse,
    NetworkError,
    NonConsecutiveIndex,
    NotInFixtures,
    PrefixTooShallow,
)
from gkp.exact import triangle
from gkp.oeis import (
    TriangleLayout,
    fetch,
    fixture_manifest,
    identify,
    layout_for,
    parse_bfile,
    verify_against,
    _equations,
)
from gkp.params import ParamTuple

from conftest import random_tuple

F = Fraction

TABLE_FAMILIES = {
    "A173018": (0, 1, 1, 1, -1, 0),
    "A008292": (0, 1, 1, 1, -1, 0),
    "A008517": (0, 1, 1, 2, -1, -1),
    "A019538": (0, 1, 0, 0, 1, 0),
    "A008277": (0, 1, 0, 0, 0, 1),
    "A008297": (-1, -1, 1, 0, 0, -1),
    "A105278": (1, 1, -1, 0, 0, 1),
    "A094587": (1, -1, 0, 0, 0, 1),
    "A008279": (0, 0, 1, 0, 1, 0),
    "A007318": (0, 0, 1, 0, 0, 1),
    "A132393": (1, 0, -1, 0, 0, 1),
}


def test_parse_bfile():
    assert parse_bfile("0 1\n1 1\n2 1\n") == (1, 1, 1)
    assert parse_bfile("# comment\n5 7\n6 -2\n") == (7, -2)
    with pytest.raises(MalformedLine):
        parse_bfile("abc")
    with pytest.raises(MalformedLine):
        parse_bfile("1 2 3")
    with pytest.raises(NonConsecutiveIndex):
        parse_bfile("0 1\n2 1\n")
    with pytest.raises(MalformedLine):
        parse_bfile("# only comments\n")


def test_fetch_fixture_and_offline_miss(tmp_path):
    entry = fetch("A007318", cache_dir=tmp_path, offline=True)
    assert entry.source == "fixture"
    assert entry.values[:6] == (1, 1, 1, 1, 2, 1)
    with pytest.raises(NotInFixtures):
        fetch("A000000", cache_dir=tmp_path, offline=True)
    with pytest.raises(ValueError):
        fetch("007318", cache_dir=tmp_path, offline=True)


def test_fetch_network_and_cache(tmp_path):
    body = "0 1\n1 2\n2 4\n"

    def handler(request: httpx.Request) -> httpx.Response:
        assert request.url.path == "/A000079/b000079.txt"
        return httpx.Response(200, text=body)

    client = httpx.Client(transport=httpx.MockTransport(handler), base_url="https://oeis.example")
    entry = fetch("A000079", cache_dir=tmp_path, offline=False, base_url="https://oeis.example", client=client)
    assert entry.source == "network"
    assert entry.values == (1, 2, 4)
    assert (tmp_path / "b000079.txt").read_text() == body
    # second fetch hits the cache, no network involved
    entry2 = fetch("A000079", cache_dir=tmp_path, offline=True)
    assert entry2.source == "cache"
    assert entry2.values == entry.values


def test_fetch_network_errors(tmp_path):
    def err_handler(request):
        return httpx.Response(500, text="boom")

    client = httpx.Client(transport=httpx.MockTransport(err_handler), base_url="https://x")
    with pytest.raises(NetworkError):
        fetch("A000001", cache_dir=tmp_path, base_url="https://x", client=client)

    def bad_handler(request):
        return httpx.Response(200, text="not a bfile")

    client = httpx.Client(transport=httpx.MockTransport(bad_handler), base_url="https://x")
    with pytest.raises(MalformedResponse):
        fetch("A000001", cache_dir=tmp_path, base_url="https://x", client=client)
    assert not (tmp_path / "b000001.txt").exists()  # malformed responses are not cached


def test_cache_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("GKP_CACHE_DIR", str(tmp_path))
    (tmp_path / "b000045.txt").write_text("0 0\n1 1\n2 1\n")
    entry = fetch("A000045", offline=True)
    assert entry.source == "cache"
    assert entry.values == (0, 1, 1)


@pytest.mark.parametrize("anum", sorted(TABLE_FAMILIES))
def test_verify_table_families(anum):
    p = ParamTuple.of(*TABLE_FAMILIES[anum])
    entry = fetch(anum, offline=True)
    report = verify_against(p, entry, layout_for(anum), 10)
    assert report.matched, report
    assert report.rows_checked >= 10


def test_verify_mismatch_and_noninteger():
    entry = fetch("A008277", offline=True)
    report = verify_against(ParamTuple.of(0, 1, 1, 1, -1, 0), entry, layout_for("A008277"), 8)
    assert not report.matched
    assert report.first_mismatch == {"n": 1, "k": 1, "expected": 1, "got": 0}
    frac = ParamTuple.of(0, 1, F(1, 2), 0, 0, 1)
    report = verify_against(frac, fetch("A007318", offline=True), layout_for("A007318"), 6)
    assert not report.matched and "not an integer" in report.note


def test_layout_cells():
    full = TriangleLayout(0, 0, 0)
    assert list(full.cells(6)) == [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]
    short = TriangleLayout(1, 0, -1)
    assert list(short.cells(6)) == [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)]
    shifted = TriangleLayout(1, 1, 0)
    assert list(shifted.cells(6)) == [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)]


def test_manifest_covers_all_fixture_families():
    manifest = fixture_manifest()
    for anum in TABLE_FAMILIES:
        assert anum in manifest


def test_identify_round_trip(rng: random.Random):
    for _ in range(40):
        p = random_tuple(rng)
        t = triangle(p, 6)
        fam = identify(t)
        eqs = _equations(t.rows, 6)
        vals = p.as_tuple()
        assert all(sum(c * v for c, v in zip(row[:-1], vals)) == row[-1] for row in eqs)
        assert triangle(fam.particular, 6).rows == t.rows
        for w in (F(1), F(-1, 2)):
            member = fam.member([w] * fam.dim)
            assert triangle(member, 6).rows == t.rows


def test_identify_pascal_family():
    fam = identify(triangle(ParamTuple.of(0, 0, 1, 0, 0, 1), 6))
    assert fam.dim >= 1
    for w in (F(1), F(2), F(-3, 2)):
        member = fam.member([w] * fam.dim)
        assert triangle(member, 8).rows == triangle(ParamTuple.of(0, 0, 1, 0, 0, 1), 8).rows


def test_identify_diagonal_prefix_dim_two():
    rows = [[1], [0, 1], [0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 0, 1]]
    fam = identify(rows)
    assert fam.dim >= 2


def test_identify_errors():
    with pytest.raises(Infeasible):
        identify([[1], [1, 1], [1, 3, 1], [1, 5, 5, 1]])  # no tuple gives rows 2,3 jointly
    with pytest.raises(PrefixTooShallow):
        identify([[1], [1, 1], [1, 2, 1]])
    with pytest.raises(ValueError):
        identify([[1], [1, 1]])
    with pytest.raises(Infeasible):
        identify([[2], [1, 1], [1, 2, 1]])
