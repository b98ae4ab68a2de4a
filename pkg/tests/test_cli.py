import json
import subprocess
import sys

from topsub.cli import main


def test_no_arguments_is_a_usage_error(capsys):
    assert main([]) == 2
    assert "usage" in capsys.readouterr().err


def test_decode_worked_example(capsys, tmp_path):
    out = tmp_path / "dec.json"
    rc = main(["decode", "--code", "honeycomb12", "--error", "Z4 X8", "--alg", "cubic-projection", "--out", str(out)])
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["syndrome"] == [1, 0, 0, 1, 1, 0, 1]
    assert data["estimate"] == "X1 Z7"
    assert data["equivalent_to_error"] is True
    run = json.loads((tmp_path / "dec.run.json").read_text())
    assert run["subcommand"] == "decode" and str(out) in run["outputs"]


def test_decode_from_syndrome_bits(capsys):
    assert main(["decode", "--code", "honeycomb12", "--syndrome", "1001101"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["estimate"] == "X1 Z7"
    assert main(["decode", "--code", "honeycomb12", "--syndrome", "101"]) == 1


def test_verify_reports(capsys):
    assert main(["verify", "--family", "tscc-sqoct", "--size", "1"]) == 0
    text = capsys.readouterr().out
    assert "n: expected 48, got 48 -> PASS" in text
    assert "not searched" in text


def test_domain_errors_exit_one(capsys):
    assert main(["build", "--family", "nonsense", "--size", "2"]) == 1
    assert main(["verify", "--family", "ssc-square"]) == 1
    assert "error:" in capsys.readouterr().err


def test_export_formats(tmp_path):
    listing = tmp_path / "gens.txt"
    assert main(["export", "--code", "honeycomb12", "--out", str(listing)]) == 0
    text = listing.read_text()
    assert "stabilizer" in text and "Y12" in text
    dot = tmp_path / "c.dot"
    assert main(["export", "--code", "ssc-square:2", "--format", "dot", "--out", str(dot)]) == 0
    assert dot.read_text().startswith("graph")


def test_sweep_then_threshold(tmp_path, capsys):
    csv_path = tmp_path / "s.csv"
    args = ["sweep", "--family", "ssc-square", "--sizes", "2,3", "--p-min", "0.02", "--p-max", "0.1",
            "--p-step", "0.04", "--trials", "100", "--seed", "1", "--workers", "1", "--out", str(csv_path)]
    assert main(args) == 0
    assert csv_path.read_text().startswith("family,lattice_size")
    rc = main(["threshold", str(csv_path)])
    assert rc in (0, 1)


def test_config_file_supplies_defaults(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"code": "honeycomb12", "error": "X1"}))
    assert main(["decode", "--config", str(cfg)]) == 0
    assert json.loads(capsys.readouterr().out)["estimate"]


def test_console_script_module():
    proc = subprocess.run([sys.executable, "-m", "topsub.cli"], capture_output=True, text=True)
    assert proc.returncode == 2
