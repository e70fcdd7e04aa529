from __future__ import annotations

import json
import subprocess
import sys

import pytest

from bmcycles.cli import RunConfig, build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_adm_listing(capsys):
    code, out, _ = run(capsys, "adm", "--datum", "GL2", "--lambda", "1,0")
    assert code == 0
    assert json.loads(out)["count"] == 3
    code, out, _ = run(capsys, "adm", "--datum", "GL2", "--lambda", "0,0")
    assert [e["elt"] for e in json.loads(out)["elements"]] == [{"w": [1, 2], "nu": [0, 0]}]
    code, out, _ = run(capsys, "adm", "--datum", "GL2", "--lambda", "1,0", "--regular", "--translations")
    elts = [e["elt"] for e in json.loads(out)["elements"]]
    assert elts == [{"w": [1, 2], "nu": [0, 1]}, {"w": [1, 2], "nu": [1, 0]}]


def test_adm_errors(capsys):
    code, _, err = run(capsys, "adm", "--datum", "GL2", "--lambda", "0,1")
    assert code == 2 and err.startswith("NotDominant:")
    code, _, err = run(capsys, "adm", "--datum", "GL3", "--lambda", "2,1,0", "--cap", "3")
    assert code == 2 and err.startswith("CapExceeded:")


def test_reconstruct(capsys, tmp_path):
    out_file = tmp_path / "table.json"
    code, _, err = run(capsys, "reconstruct", "--datum", "GL2", "--p", "5", "--zeta", "0", "--region", "default")
    assert code == 2 and err.startswith("RegionNotGeneric:") and "h_rho" in err
    code, out, _ = run(
        capsys, "reconstruct", "--datum", "GL2", "--p", "5", "--zeta", "0", "--region", "default",
        "--genericity", "formal", "--out", str(out_file),
    )
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert doc["report"]["all_pass"] and doc["report"]["relations_checked"] > 0
    assert out == ""
    code, _, err = run(capsys, "reconstruct", "--datum", "GL2", "--p", "3", "--zeta", "0")
    assert code == 2 and err.startswith("RegionNotGeneric:")
    code, _, err = run(capsys, "reconstruct", "--datum", "GL3", "--p", "7")
    assert code == 2 and err.startswith("OracleGap:")
    code, out, _ = run(capsys, "reconstruct", "--p", "11", "--format", "table")
    assert code == 0 and "2 cycles" in out


def test_reconstruct_is_byte_stable(capsys):
    args = ("reconstruct", "--p", "7", "--zeta", "1", "--genericity", "formal")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_verify(capsys, tmp_path):
    rho = tmp_path / "rho.json"
    flag = tmp_path / "flag.json"
    run(capsys, "localize", "--class", "rho", "--out", str(rho))
    run(capsys, "localize", "--class", "flag", "--out", str(flag))
    code, out, _ = run(capsys, "verify", "recognition", "--class", str(rho), "--format", "table")
    assert code == 0 and out.strip() == "pass"
    code, out, _ = run(capsys, "verify", "recognition", "--class", str(flag), "--format", "table")
    assert code == 1 and out.strip() == "fail(1)"
    code, out, _ = run(capsys, "verify", "residues", "--class", str(rho))
    assert code == 0
    code, out, _ = run(capsys, "verify", "weyl", "--datum", "GL3", "--lambda", "1,1,0")
    assert code == 0 and json.loads(out)["verdict"] == "pass"


def test_verify_relations_from_table(capsys, tmp_path):
    table = tmp_path / "t.json"
    run(capsys, "reconstruct", "--p", "7", "--genericity", "formal", "--out", str(table))
    doc = json.loads(table.read_text())
    table.write_text(json.dumps(doc["table"]))
    pres = doc["report"]["relations"][0]["presentation"]
    mu = ",".join(map(str, pres["mu"]))
    w = ",".join(map(str, pres["w"]))
    code, out, _ = run(capsys, "verify", "relation", "--p", "7", "--mu", mu, "--w", w, "--genericity", "formal", "--table", str(table))
    assert code == 0, out
    code, _, err = run(capsys, "verify", "relation", "--p", "7", "--mu", mu, "--w", w, "--table", str(table))
    assert code == 2 and err.startswith("NotGeneric:")


def test_verify_accepts_reconstruct_output_and_named_classes(capsys, tmp_path):
    report = tmp_path / "report.json"
    common = ("--datum", "GL2", "--p", "5", "--zeta", "0", "--genericity", "formal")
    code, _, _ = run(capsys, "reconstruct", *common, "--out", str(report))
    assert code == 0 and "report" in json.loads(report.read_text())
    code, out, _ = run(capsys, "verify", "relation", *common, "--table", str(report), "--mu", "1,-1", "--w", "e")
    assert code == 0 and json.loads(out)["verdict"] == "pass"
    code, out, _ = run(
        capsys, "verify", "ht", *common, "--table", str(report), "--mu", "1,-2", "--w", "2,1", "--lambda", "1,0"
    )
    assert code == 0 and json.loads(out)["verdict"] == "pass"
    code, _, _ = run(capsys, "verify", "recognition", "--datum", "GL2", "--class", "rho")
    assert code == 0
    code, _, _ = run(capsys, "verify", "residues", "--datum", "GL3", "--class", "lambda", "--lambda", "2,1,0")
    assert code == 0


def test_other_commands(capsys):
    code, out, _ = run(capsys, "genericity", "--lambda", "3,0", "--p", "7", "--m", "2")
    assert code == 0 and json.loads(out)["generic"]
    code, out, _ = run(capsys, "genericity", "--lambda", "3,0", "--p", "7", "--m", "3")
    assert code == 1
    code, out, _ = run(capsys, "weights", "--lambda", "2,0")
    assert json.loads(out)["dimension"] == 3
    code, out, _ = run(capsys, "factor", "--elt", "e;2,-1")
    doc = json.loads(out)
    assert code == 0 and doc["w1"]["w"] in ([1, 2], [2, 1])
    code, _, err = run(capsys, "factor", "--elt", "2,1;0,1")
    assert code == 2 and err.startswith("NotRegular:")
    code, out, _ = run(capsys, "present", "--w", "2,1", "--mu", "3,1", "--p", "5")
    doc = json.loads(out)
    assert doc["point"] == ["2/3", "1/3"] and doc["lowest_alcove"]
    code, out, _ = run(capsys, "oracle", "--p", "5")
    assert code == 0 and json.loads(out)["pi_symmetric"]
    code, out, _ = run(capsys, "localize", "--class", "lambda", "--lambda", "2,0")
    assert len(json.loads(out)["support"]) == 2


def test_oracle_file_validation(capsys, tmp_path):
    f = tmp_path / "o.json"
    run(capsys, "oracle", "--p", "7", "--out", str(f))
    code, _, _ = run(capsys, "oracle", "--in", str(f))
    assert code == 0
    doc = json.loads(f.read_text())
    doc["entries"][0]["mult"] = 3
    f.write_text(json.dumps(doc))
    code, _, err = run(capsys, "oracle", "--in", str(f))
    assert code == 2 and err.startswith("InvariantViolation:")


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["adm"])
    assert exc.value.code == 2
    capsys.readouterr()
    code, _, err = run(capsys, "verify", "relation")
    assert code == 2 and err.startswith("SchemaError:")


def test_run_config_round_trip():
    args = build_parser().parse_args(["reconstruct", "--p", "5"])
    cfg = RunConfig.from_args(args)
    assert RunConfig.from_json(json.loads(json.dumps(cfg.to_json()))) == cfg


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bmcycles", "adm", "--lambda", "1,0", "--format", "table"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("3 elements")
