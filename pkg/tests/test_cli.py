import json
from pathlib import Path

import pytest

from sawlab.cli import main
from sawlab.io import domain_to_json
from sawlab.lattice import rectangle_domain


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_walks_csv(capsys):
    code, out, _ = run(capsys, "count-walks", "--max-n", "4")
    assert code == 0
    assert out.splitlines() == ["n,count", "1,4", "2,12", "3,36", "4,100"]


def test_zm_value(capsys):
    code, out, _ = run(capsys, "zm", "--m", "0", "--x", "0.5")
    assert code == 0
    assert out.strip().splitlines()[-1] == "0,0.5,0.0625"


def test_partitions(capsys):
    code, out, _ = run(capsys, "partitions", "--A", "6")
    assert code == 0
    assert out.strip().splitlines()[-1] == "6,4"


def test_json_format(capsys):
    code, out, _ = run(capsys, "count-walks", "--max-n", "2", "--format", "json")
    assert code == 0
    assert json.loads(out) == [
        {"n": 1, "count": 4},
        {"n": 2, "count": 12},
    ]


def test_usage_error_exit_64(capsys):
    code, _, err = run(capsys, "count-walks")
    assert code == 64


def test_unknown_command_exit_64(capsys):
    code, _, _ = run(capsys, "no-such-command")
    assert code == 64


def test_precondition_exit_2(capsys):
    code, _, err = run(capsys, "count-squared", "--n", "3")
    assert code == 2


def test_resource_limit_exit_3(capsys, tmp_path):
    dom = rectangle_domain(20, 20, (0, 0), (19, 19))
    path = tmp_path / "big.json"
    path.write_text(domain_to_json(dom))
    code, _, err = run(
        capsys, "sample-exact", "--domain", str(path), "--x", "0.5"
    )
    assert code == 3
    assert "resource" in err.lower()


def test_unfold_round_trip(capsys):
    code, out, _ = run(capsys, "unfold", "--walk", "0,0:RRUL")
    assert code == 0
    lines = dict(l.split(",", 1) for l in out.strip().splitlines()[1:])
    assert lines["walk"].startswith("0,0:")


def test_out_dir_writes_artifacts_and_manifest(capsys, tmp_path):
    out_dir = tmp_path / "arts"
    code, _, _ = run(
        capsys, "count-walks", "--max-n", "3", "--out", str(out_dir)
    )
    assert code == 0
    csv_text = (out_dir / "count-walks.csv").read_text()
    assert csv_text == "n,count\n1,4\n2,12\n3,36\n"
    manifest = json.loads((out_dir / "count-walks.manifest.json").read_text())
    assert manifest["command"] == "count-walks"
    assert manifest["parameters"]["max_n"] == "3"


def test_byte_identical_across_threads(capsys, tmp_path):
    outs = []
    for threads in ("1", "4"):
        d = tmp_path / f"t{threads}"
        code, _, _ = run(
            capsys,
            "count-walks", "--max-n", "8", "--threads", threads, "--out", str(d),
        )
        assert code == 0
        outs.append((d / "count-walks.csv").read_bytes())
    assert outs[0] == outs[1]


def test_sample_mcmc_deterministic(capsys, tmp_path):
    dom = rectangle_domain(3, 3, (0, 0), (2, 2))
    path = tmp_path / "dom.json"
    path.write_text(domain_to_json(dom))
    args = (
        "sample-mcmc", "--domain", str(path), "--x", "0.6",
        "--n-samples", "5", "--seed", "3",
    )
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2
    assert len(out1.strip().splitlines()) == 6  # header + 5 walks


def test_config_file_supplies_flags(capsys, tmp_path):
    cfg = tmp_path / "cfg.txt"
    cfg.write_text("max-n=3\n")
    code, out, _ = run(capsys, "count-walks", "--config", str(cfg))
    assert code == 0
    assert out.splitlines()[-1] == "3,36"


def test_explicit_flags_beat_config(capsys, tmp_path):
    cfg = tmp_path / "cfg.txt"
    cfg.write_text("max-n=3\n")
    code, out, _ = run(
        capsys, "count-walks", "--config", str(cfg), "--max-n", "2"
    )
    assert code == 0
    assert out.splitlines()[-1] == "2,12"


def test_spacefill_csv(capsys):
    code, out, _ = run(
        capsys,
        "spacefill", "--radii", "6", "--x", "0.6", "--n-samples", "5",
        "--burn-in", "50", "--thinning", "2",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "radius,mean_largest_hole,std_largest_hole,mean_length,theta"
    assert lines[1].startswith("6,")


def test_report_runs(capsys):
    code, out, _ = run(capsys, "report", "--max-n", "6")
    assert code == 0
    assert "mu_lower" in out and "walks_6" in out
