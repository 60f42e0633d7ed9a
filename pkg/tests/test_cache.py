import json

from kerov.algebra import CumulantPoly, Family
from kerov.cache import ENGINE_VERSION, ENV_VAR, NullCache, PolyCache, default_path

F = Family.FREE
P = CumulantPoly(F, {(4,): 1, (2,): 1})


def test_put_save_get(tmp_path):
    path = tmp_path / "sub" / "c.json"
    c = PolyCache(path)
    assert c.get(3) is None
    c.put(3, P)
    c.save()
    again = PolyCache(path)
    assert again.get(3) == P
    doc = json.loads(path.read_text())
    entry = doc["entries"][ENGINE_VERSION]["3"]
    assert entry["k"] == 3 and entry["engine_version"] == ENGINE_VERSION


def test_corrupted_entry_is_ignored(tmp_path):
    path = tmp_path / "c.json"
    c = PolyCache(path)
    c.put(3, P)
    c.save()
    doc = json.loads(path.read_text())
    doc["entries"][ENGINE_VERSION]["3"]["poly"] = json.dumps([{"coeff": "2", "partition": [4]}])
    path.write_text(json.dumps(doc))
    assert PolyCache(path).get(3) is None


def test_unreadable_file_starts_empty(tmp_path):
    path = tmp_path / "c.json"
    path.write_text("not json")
    assert PolyCache(path).get(1) is None


def test_engine_versions_are_separate(tmp_path):
    path = tmp_path / "c.json"
    c = PolyCache(path, engine_version="other")
    c.put(3, P)
    c.save()
    assert PolyCache(path).get(3) is None
    assert PolyCache(path, engine_version="other").get(3) == P


def test_default_path_honours_env(monkeypatch, tmp_path):
    monkeypatch.setenv(ENV_VAR, str(tmp_path / "x.json"))
    assert default_path() == tmp_path / "x.json"


def test_null_cache():
    c = NullCache()
    c.put(3, P)
    c.save()
    assert c.get(3) is None
