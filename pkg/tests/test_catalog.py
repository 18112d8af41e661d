import json

import pytest

from rgfins.catalog import CatalogRecord, Store, sweep_table
from rgfins.errors import CorruptRecord
from rgfins.regularity import classify


@pytest.fixture
def store(tmp_path):
    return Store(tmp_path / "catalog.jsonl")


def test_put_get_round_trip(store):
    rec = CatalogRecord.from_report(classify("221 121", "vertical"), gf="num_coeffs=[0,1]; den_coeffs=[1,-2]")
    store.put(rec)
    got = store.get(("121 221", "vertical", "rgf"))
    assert got.to_json() == rec.to_json()
    assert store.get(("111", "vertical", "rgf")) is None


def test_last_write_wins(store):
    store.put(CatalogRecord("121", "vertical", "rgf", "Undecided"))
    store.put(CatalogRecord("121", "vertical", "rgf", "Regular"))
    assert store.get(("121", "vertical", "rgf")).verdict == "Regular"
    assert len(store) == 1


def test_corrupt_lines(tmp_path):
    path = tmp_path / "bad.jsonl"
    good = CatalogRecord("121", "vertical", "rgf", "Regular").to_json()
    path.write_text(good + "\n{not json\n" + json.dumps({"basis": "12"}) + "\n")
    with pytest.raises(CorruptRecord) as err:
        Store(path).records()
    assert err.value.lineno == 2
    lenient = Store(path, lenient=True)
    assert len(lenient.records()) == 1
    assert [e.lineno for e in lenient.skipped] == [2, 3]


def test_consistency_check():
    ok = CatalogRecord("121", "vertical", "rgf", "Regular", gf="num_coeffs=[0,1]; den_coeffs=[1,-2]", counts=[0, 1, 2, 4])
    bad = CatalogRecord("121", "vertical", "rgf", "Regular", gf="num_coeffs=[0,1]; den_coeffs=[1,-2]", counts=[0, 1, 2, 5])
    assert ok.consistent() and not bad.consistent()


def test_sweep_small_and_resume(store):
    table = sweep_table(store, basis_sizes=[1, 2])
    assert table.row(1).cells() == [1, 13, 2, 5, 6, 0]
    assert table.row(2).classes == 78 and table.row(2).horizontal == 58
    assert table.classified == 2 * (13 + 78)
    again = sweep_table(store, basis_sizes=[1, 2])
    assert again.classified == 0
    assert again.to_csv() == table.to_csv()
    regular_v1 = list(store.scan(verdict="Regular", encoding="vertical", basis_size=1))
    assert sorted(r.basis for r in regular_v1) == ["112", "121"]


def test_either_matches_records(store):
    table = sweep_table(store, basis_sizes=[2])
    recs = store.records()
    regular = {b for (b, _, _), r in recs.items() if r.verdict == "Regular"}
    assert table.row(2).either == len(regular)


def test_table_formats(store):
    table = sweep_table(store, basis_sizes=[1])
    csv_text = table.to_csv().splitlines()
    assert csv_text[0] == "basis_size,classes,vertical,horizontal,either,undecided"
    assert csv_text[1] == "1,13,2,5,6,0"
    assert csv_text[-1].startswith("total,")
    text = table.to_text().splitlines()
    assert len({len(line) for line in text}) == 1


def test_parallel_sweep_matches_serial(tmp_path):
    serial = sweep_table(Store(tmp_path / "a.jsonl"), basis_sizes=[2, 3])
    parallel = sweep_table(Store(tmp_path / "b.jsonl"), basis_sizes=[2, 3], jobs=2)
    assert serial.to_csv() == parallel.to_csv()
