import json
from pathlib import Path

import pytest
from hypothesis import given

from strategies import algebras

from powclo import fixtures as F
from powclo.errors import SchemaError
from powclo.fileformat import algebra_from_dict, algebra_to_dict, dump, dumps, load, loads
from powclo.power import build_extended_power, build_relational_power

ALGEBRAS = Path(__file__).resolve().parent.parent / "algebras"


@pytest.mark.parametrize("name", ["sl2", "sl3v", "chain3", "lz2", "lzrz", "z2", "rb4"])
def test_shipped_files_match_fixtures(name):
    alg, rs = load(ALGEBRAS / f"{name}.json")
    fixture = F.BY_NAME[name]()
    assert (alg.size, alg.signature, alg.tables) == (fixture.size, fixture.signature, fixture.tables)
    assert rs is None


def test_broken_file():
    with pytest.raises(SchemaError, match="entry 3"):
        load(ALGEBRAS / "broken.json")


def test_relations_block():
    alg, rs = load(ALGEBRAS / "sl2_relations.json")
    assert [s for s, _, _ in rs.relations] == ["R", "S"]
    rel = build_relational_power(rs)
    pa = build_extended_power(alg)
    for a in range(1, 4):
        for b in range(1, 4):
            assert rel.apply("R", a, b) == pa.op("m", a, b)


@pytest.mark.parametrize("text, message", [
    ("[]", "top level"),
    ('{"carrier": 2}', "required"),
    ('{"carrier": 0, "ops": []}', "positive"),
    ('{"carrier": true, "ops": []}', "positive"),
    ('{"carrier": 2, "ops": [], "extra": 1}', "unknown keys"),
    ('{"carrier": 2, "ops": [{"symbol": "m", "arity": 2, "table": [0, 0, 0]}]}', "4 entries"),
    ('{"carrier": 2, "ops": [{"symbol": "m", "arity": 2}]}', "exactly"),
    ('{"carrier": 2, "ops": [{"symbol": "", "arity": 1, "table": [0, 0]}]}', "symbol"),
    ('{"carrier": 2, "ops": [{"symbol": "u", "arity": -1, "table": []}]}', "arity"),
    ('{"carrier": 2, "labels": ["a", "a"], "ops": []}', "labels"),
    ('{"carrier": 2, "ops": [], "relations": [{"symbol": "R", "arity": 0, "tuples": []}]}', "arity"),
    ('{"carrier": 2, "ops": [], "relations": [{"symbol": "R", "arity": 1, "tuples": [[2]]}]}', "bad tuple"),
    ("{not json", "invalid JSON"),
])
def test_schema_errors(text, message):
    with pytest.raises(SchemaError, match=message):
        loads(text)


def test_missing_file(tmp_path):
    with pytest.raises(SchemaError, match="cannot read"):
        load(tmp_path / "nope.json")


@given(algebras(max_size=4, arities=(0, 1, 2)))
def test_round_trip(alg):
    again, _ = loads(dumps(alg))
    assert (again.name, again.size, again.signature, again.tables) == \
        (alg.name, alg.size, alg.signature, alg.tables)


@pytest.mark.parametrize("make", [F.sl2, F.sl3v, F.lzrz])
def test_power_output_round_trip(make, tmp_path):
    pa = build_extended_power(make())
    path = tmp_path / "p.json"
    dump(pa.algebra, path)
    again, _ = load(path)
    assert again.tables == pa.algebra.tables
    assert again.labels == pa.algebra.labels
    assert "+" in again.symbols


def test_relations_round_trip():
    alg, rs = load(ALGEBRAS / "sl2_relations.json")
    data = json.loads(dumps(alg, rs))
    alg2, rs2 = algebra_from_dict(data)
    assert rs2.relations == rs.relations
    assert algebra_to_dict(alg2, rs2) == data
