import json
from pathlib import Path

import jsonschema
import pytest

from topoqd.cli import main

GOLDEN = Path(__file__).parent / "golden"
SCHEMA = json.loads(
    (Path(__file__).parent.parent / "schemas" / "topoqd-output.schema.json").read_text()
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return doc


def test_verify_s3(capsys):
    doc = run_json(capsys, "verify", "--group", "S3", "--max-genus", "2")
    assert doc["data"]["all_pass"] is True
    by_id = {r["id"]: r for r in doc["data"]["relations"]}
    assert by_id["R1"]["lhs"] == [3, 11]
    assert by_id["R2"]["lhs"] == [11, 11]
    assert by_id["R3"]["lhs"] == 36
    assert doc["schema_version"] == "1"


def test_every_subcommand_validates(capsys, tmp_path):
    run_json(capsys, "group", "info", "--group", "Q8")
    run_json(capsys, "sectors", "--group", "S3", "--genus", "2", "--enumerate")
    run_json(capsys, "fuse", "points", "--group", "S3", "0", "1", "1")
    run_json(capsys, "fuse", "loops", "--group", "S3", "--mu", "C_r", "--nu", "C_r")
    run_json(capsys, "pairing", "--group", "Z2", "--manifold", "t2")
    run_json(capsys, "dump-chartable", "--group", "Z4")
    run_json(capsys, "report", "--group", "Z3", "--max-genus", "2")


def test_fuse_points_values(capsys):
    doc = run_json(capsys, "fuse", "points", "--group", "S3", "2", "2", "2")
    assert doc["data"]["N_ab_c"] == 1
    assert doc["data"]["invariant_dim_abc"] == 1


def test_sectors_oracle_flag(capsys):
    doc = run_json(capsys, "sectors", "--group", "S3", "--genus", "2", "--oracle")
    assert doc["data"]["oracle_count"] == doc["data"]["count"] == 11


def test_trivial_group_file(capsys, tmp_path):
    path = tmp_path / "trivial.grp"
    path.write_text("table 1\n0\n")
    doc = run_json(capsys, "verify", "--group", str(path), "--max-genus", "2")
    assert doc["data"]["all_pass"] is True
    assert all(r["status"] == "pass" for r in doc["data"]["relations"])


def test_input_error_exit_2(capsys, tmp_path):
    code, out, err = run_cli(capsys, "sectors", "--group", "nonexistent.grp")
    assert code == 2 and "input error" in err

    bad = tmp_path / "bad.grp"
    bad.write_text(
        "table 5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n"
    )
    code, out, err = run_cli(capsys, "sectors", "--group", str(bad))
    assert code == 2
    assert "witness" in err  # diagnostic names the witness triple


def test_cap_exit_3(capsys, monkeypatch):
    code, out, err = run_cli(capsys, "sectors", "--group", "A5", "--genus", "3",
                             "--enumerate", "--enum-cap", "100")
    assert code == 3 and "cap exceeded" in err
    monkeypatch.setenv("TOPOQD_ENUM_CAP", "10")
    code, out, err = run_cli(capsys, "sectors", "--group", "S3", "--genus", "2",
                             "--enumerate")
    assert code == 3
    monkeypatch.setenv("TOPOQD_ELEM_CAP", "5")
    code, out, err = run_cli(capsys, "group", "info", "--group", "A5")
    assert code == 3


def test_byte_identical_runs(capsys):
    _, out1, _ = run_cli(capsys, "report", "--group", "S3", "--max-genus", "2")
    _, out2, _ = run_cli(capsys, "report", "--group", "S3", "--max-genus", "2")
    assert out1 == out2


def test_thread_count_independent(capsys):
    _, single, _ = run_cli(capsys, "sectors", "--group", "A4", "--genus", "3",
                           "--enumerate", "--threads", "1")
    _, multi, _ = run_cli(capsys, "sectors", "--group", "A4", "--genus", "3",
                          "--enumerate", "--threads", "4")
    assert single == multi


def test_tsv_format(capsys):
    code, out, err = run_cli(capsys, "verify", "--group", "Z2", "--format", "tsv")
    assert code == 0
    lines = [l for l in out.splitlines() if l]
    assert all("\t" in l for l in lines)
    assert any(l.startswith("data.all_pass\tTrue") for l in lines)


@pytest.mark.parametrize("golden,argv", [
    ("s3_genus2_sectors.md",
     ["sectors", "--group", "S3", "--genus", "2", "--enumerate", "--format", "md"]),
    ("s3_fuse_rr.md",
     ["fuse", "loops", "--group", "S3", "--mu", "C_r", "--nu", "C_r", "--format", "md"]),
    ("s3_fuse_ss.md",
     ["fuse", "loops", "--group", "S3", "--mu", "C_s", "--nu", "C_s", "--format", "md"]),
    ("s3_fuse_rs_borromean.md",
     ["fuse", "loops", "--group", "S3", "--mu", "C_r", "--nu", "C_s",
      "--borromean", "--format", "md"]),
    ("s3_chartable.md",
     ["dump-chartable", "--group", "S3", "--format", "md"]),
])
def test_golden_tables(capsys, golden, argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0
    assert out == (GOLDEN / golden).read_text()
