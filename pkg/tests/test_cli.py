import json

import pytest

from octacensus import census
from octacensus.cli import build_parser, main


@pytest.fixture(scope="module")
def records_file(tmp_path_factory):
    out = tmp_path_factory.mktemp("cli")
    config = census.CensusConfig(r_max=3, match_budget=100, matched_types=("S2+S1",))
    census.run_census(config, out)
    return out / "census.jsonl"


def test_enumerate_json(capsys):
    assert main(["enumerate"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["summary"]["raw_count"] == 8505
    assert data["summary"]["orbits"] == 298
    assert len(data["rows"]) == 298


def test_classify_csv(capsys):
    assert main(["classify", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("encoding,boundary")
    assert len(lines) == 299


def test_homology_writes_file(tmp_path, capsys):
    assert main(["homology", "--out", str(tmp_path)]) == 0
    data = json.loads((tmp_path / "homology.json").read_text())
    assert data["summary"]["S3"] == {"Z^3": 52, "Z_3 + Z^3": 4}
    assert "wrote" in capsys.readouterr().out


def test_tv_low_level(capsys):
    assert main(["tv", "--rmax", "3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert set(data["rows"][0]) >= {"encoding", "boundary", "tv_3"}


def test_report_from_records(records_file, capsys):
    assert main(["report", "--records", str(records_file)]) == 0
    assert "S3: 56 patterns" in capsys.readouterr().out


def test_report_against_published_exit_code(records_file, capsys):
    # closed manifolds give only 15 fingerprint classes, so this check fails
    code = main(["report", "--against-paper", "--records", str(records_file)])
    captured = capsys.readouterr()
    assert code == 1
    assert "PASS raw_count" in captured.out
    assert "fingerprint_lower_bound_empty" in captured.err


def test_census_io_error_exit_code(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code = main(["census", "--rmax", "3", "--budget", "0", "--out", str(blocker / "x")])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_parser_defaults():
    args = build_parser().parse_args(["match"])
    assert args.seed == 1 and args.budget == 10_000 and args.rmax == 8
    with pytest.raises(SystemExit):
        build_parser().parse_args(["nonsense"])
