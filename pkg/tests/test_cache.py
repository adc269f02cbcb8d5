import os

from stirlab.cache import ENV_VAR, RowCache, default_cache_dir
from stirlab.triangles import Triangle, TriangleKind

KIND = TriangleKind.restricted2(3)


def _filled(n):
    t = Triangle(KIND)
    t.extend_to(n)
    return t


def test_round_trip(tmp_path):
    c = RowCache(tmp_path)
    assert c.save(_filled(30)) == 31
    assert c.load(KIND) == _filled(30).rows


def test_warm_is_transparent(tmp_path):
    c = RowCache(tmp_path)
    c.save(_filled(25))
    t = Triangle(KIND)
    assert c.warm(t) == 26
    t.extend_to(40)
    assert t.rows == _filled(40).rows


def test_grows_but_never_shrinks(tmp_path):
    c = RowCache(tmp_path)
    c.save(_filled(20))
    assert c.save(_filled(10)) == 21
    assert c.save(_filled(35)) == 36
    assert len(c.load(KIND)) == 36


def test_corruption_is_ignored(tmp_path):
    c = RowCache(tmp_path)
    c.save(_filled(15))
    p = c.path(KIND)
    data = bytearray(p.read_bytes())
    i = data.index(b"\n0,1,3,1\n")
    data[i + 3] = ord("9")  # flip a digit
    p.write_bytes(bytes(data))
    assert c.load(KIND) == []
    # and is overwritten by the next save
    c.save(_filled(15))
    assert c.load(KIND) == _filled(15).rows


def test_truncation_is_ignored(tmp_path):
    c = RowCache(tmp_path)
    c.save(_filled(15))
    p = c.path(KIND)
    p.write_bytes(p.read_bytes()[:-30])
    assert c.load(KIND) == []


def test_wrong_kind_header(tmp_path):
    c = RowCache(tmp_path)
    c.save(_filled(5))
    os.replace(c.path(KIND), c.path(TriangleKind.restricted2(4)))
    assert c.load(TriangleKind.restricted2(4)) == []


def test_env_var(monkeypatch, tmp_path):
    monkeypatch.setenv(ENV_VAR, str(tmp_path / "x"))
    assert default_cache_dir() == tmp_path / "x"
