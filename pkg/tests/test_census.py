import json

import pytest

from octacensus import census
from octacensus.census import CensusConfig, CensusError, CensusRecord

SMALL = CensusConfig(r_max=4, match_budget=300, matched_types=("S1+S1", "S2+S1"))


@pytest.fixture(scope="module")
def small(tmp_path_factory):
    out = tmp_path_factory.mktemp("census")
    return census.run_census(SMALL, out), out


def test_config_digest():
    assert SMALL.digest() == CensusConfig(r_max=4, match_budget=300,
                                          matched_types=("S1+S1", "S2+S1"), threads=4).digest()
    assert SMALL.digest() != CensusConfig(r_max=4, match_budget=300, seed=2,
                                          matched_types=("S1+S1", "S2+S1")).digest()
    assert len(SMALL.digest()) == 64


def test_records_cover_all_orbits(small):
    result, _ = small
    records = result.records
    assert len(records) == 298
    assert [r.row_id for r in records] == list(range(298))
    order = [census._boundary_order(r.boundary) for r in records]
    assert order == sorted(order)
    assert all(len(r.tv) == 2 for r in records)
    assert sum(r.orbit_size for r in records) == 8505


def test_invariant_checks_pass(small):
    result, _ = small
    failed = [e.name for e in result.invariant_checks if not e.passed]
    assert failed == []


def test_unmatched_types_are_singletons(small):
    result, _ = small
    for r in result.records:
        if r.boundary not in SMALL.matched_types:
            assert r.match_class == r.row_id


def test_match_classes_refine_fingerprints(small):
    result, _ = small
    for b in census.REFERENCE["boundary_distribution"]:
        assert result.classes("fingerprint", b) <= result.classes("match", b)


def test_json_roundtrip(small):
    result, out = small
    loaded = census.load_records(out / "census.jsonl")
    assert [r.to_json() for r in loaded] == [r.to_json() for r in result.records]
    obj = result.records[0].to_json()
    assert obj["schema"] == census.SCHEMA_VERSION
    assert obj["provenance"]["config_digest"] == SMALL.digest()
    assert CensusRecord.from_json(json.loads(json.dumps(obj))).to_json() == obj


def test_output_files(small):
    _, out = small
    names = sorted(p.name for p in out.iterdir())
    assert names == ["census.csv", "census.jsonl", "report.csv", "report.json",
                     "triangulations.txt"]
    header = (out / "census.csv").read_text().splitlines()[0]
    assert header.endswith("tv_3,tv_4")
    report = json.loads((out / "report.json").read_text())
    assert report["config_digest"] == SMALL.digest()
    assert {e["name"] for e in report["entries"]} >= {"raw_count", "orbit_count", "S3_homology"}
    assert (out / "triangulations.txt").read_text().count("## row") == 298


def test_rerun_is_byte_identical(small, tmp_path):
    _, out = small
    census.run_census(SMALL, tmp_path)
    for p in out.iterdir():
        assert (tmp_path / p.name).read_bytes() == p.read_bytes(), p.name


def test_reference_comparison(small):
    result, _ = small
    by_name = {e.name: e for e in result.report.entries}
    for name in ("raw_count", "orbit_count", "orbit_sizes", "S3_single_edge_class",
                 "S3_homology", "S2+S1_homology", "euler_identity", "boundary_S2"):
        assert by_name[name].passed, name
    assert by_name["boundary_S3"].computed == 56


def test_refined_fingerprints_never_merge(small):
    result, _ = small
    base = result.classes("fingerprint", "S1")
    assert census.refined_fingerprint_classes(result.records, "S1", 5) >= base


def test_export_errors(small, tmp_path):
    result, _ = small
    with pytest.raises(ValueError):
        census.export(result.records, "xml", tmp_path / "x")
    with pytest.raises(CensusError):
        census.export(result.records, "jsonl", tmp_path / "missing" / "x.jsonl")
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(CensusError):
        census.write_outputs(result, blocker / "sub")
