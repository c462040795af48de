import json
import re

import pytest

from qillum import __version__
from qillum.cli import main

FLOAT12 = re.compile(r"^-?\d\.\d{11}e[+-]\d{2,3}$")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_crossover_text(capsys):
    code, out, err = run(capsys, "crossover")
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert lines[0].startswith("crossover_n_s: 0.295355")
    residual = float(lines[1].split(":")[1])
    assert abs(residual) < 1e-10


def test_crossover_json_schema(capsys):
    code, out, _ = run(capsys, "crossover", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1
    assert report["version"] == __version__
    assert "config" in report and "rows" in report
    assert 0.290 < report["rows"][0]["crossover_n_s"] < 0.300


def test_bounds_text_fields(capsys):
    code, out, _ = run(
        capsys, "bounds", "--ns", "0.01", "--nb", "100", "--kappa", "0.01",
        "--copies", "1000000",
    )
    assert code == 0
    fields = dict(line.split(": ", 1) for line in out.splitlines())
    assert fields["model"] == "three-mode"
    assert fields["analytic_domain"] == "closed-form"
    qb = float(fields["bhattacharyya_bound"])
    qc = float(fields["chernoff_bound"])
    assert 0.0 < qc <= qb < 0.5
    assert FLOAT12.match(fields["bhattacharyya_bound"])


def test_bounds_blind_target_is_coin_toss(capsys):
    for model in ("two-mode", "three-mode", "coherent"):
        code, out, _ = run(capsys, "bounds", "--kappa", "0", "--model", model)
        assert code == 0
        fields = dict(line.split(": ", 1) for line in out.splitlines())
        assert float(fields["bhattacharyya_bound"]) == pytest.approx(0.5, abs=1e-8)


def test_bounds_invalid_input_exit_2(capsys):
    code, out, err = run(capsys, "bounds", "--kappa", "2")
    assert code == 2
    assert out == ""
    assert len(err.strip().splitlines()) == 1
    assert err.startswith("error:")


def test_bounds_rejects_csv_format(capsys):
    code, _, err = run(capsys, "bounds", "--format", "csv")
    assert code == 2 and "format" in err


def test_sweep_csv_contract(capsys):
    code, out, _ = run(capsys, "sweep", "--count", "10")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n_s,gamma2,gamma3,ratio"
    assert len(lines) == 11
    for line in lines[1:]:
        cells = line.split(",")
        assert len(cells) == 4
        assert all(FLOAT12.match(cell) for cell in cells)
    first = lines[1].split(",")
    assert float(first[3]) > 1.0  # quantum advantage at weak signal


def test_sweep_extras_canonical_order(capsys):
    code, out, _ = run(
        capsys, "sweep", "--count", "3", "--extras", "chernoff3,qb2", "--nb", "30"
    )
    assert code == 0
    header = out.splitlines()[0]
    assert header == "n_s,gamma2,gamma3,ratio,qb2,chernoff3"


def test_sweep_validation_exit_codes(capsys):
    assert run(capsys, "sweep", "--count", "1")[0] == 2
    assert run(capsys, "sweep", "--start", "1.0", "--stop", "0.5")[0] == 2
    assert run(capsys, "sweep", "--start", "0", "--spacing", "log")[0] == 2
    assert run(capsys, "sweep", "--extras", "nope")[0] == 2


def test_sweep_files_deterministic(tmp_path, capsys):
    outputs = []
    for tag in ("a", "b"):
        csv_path = tmp_path / f"{tag}.csv"
        svg_path = tmp_path / f"{tag}.svg"
        args = ["sweep", "--count", "12", "--out", str(csv_path), "--plot", str(svg_path)]
        assert main(args) == 0
        capsys.readouterr()
        outputs.append((csv_path.read_bytes(), svg_path.read_bytes()))
    assert outputs[0][0] == outputs[1][0]
    assert outputs[0][1] == outputs[1][1]
    svg = outputs[0][1].decode("utf-8")
    assert svg.startswith("<svg")
    assert 'viewBox="0 0 800 600"' in svg
    assert "<polyline" in svg
    assert svg.count("stroke-dasharray") == 2  # unity guide and crossover guide
    assert b"\r" not in outputs[0][0]


def test_sweep_json_report(capsys):
    code, out, _ = run(capsys, "sweep", "--count", "4", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1
    assert report["diagnostics"]["rows"] == 4
    assert len(report["rows"]) == 4
    assert report["config"]["spacing"] == "log"


def test_sweep_other_parameter(capsys):
    code, out, _ = run(
        capsys, "sweep", "--param", "nB", "--start", "10", "--stop", "1000",
        "--count", "3", "--ns", "0.05",
    )
    assert code == 0
    lines = out.splitlines()
    values = {line.split(",")[0] for line in lines[1:]}
    assert len(values) == 1  # n_s column stays fixed while nB sweeps


def test_unwritable_output_exit_3(tmp_path, capsys):
    target = tmp_path / "missing-dir" / "x.csv"
    code, _, err = run(capsys, "sweep", "--count", "3", "--out", str(target))
    assert code == 3 and err.startswith("error:")


def test_config_precedence(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nns=0.5\nnb=50\n", encoding="utf-8")

    code, out, _ = run(capsys, "bounds", "--config", str(cfg))
    fields = dict(line.split(": ", 1) for line in out.splitlines())
    assert float(fields["n_signal"]) == 0.5
    assert float(fields["n_background"]) == 50.0

    monkeypatch.setenv("QI_NS", "0.3")
    code, out, _ = run(capsys, "bounds", "--config", str(cfg))
    fields = dict(line.split(": ", 1) for line in out.splitlines())
    assert float(fields["n_signal"]) == 0.3  # env beats config

    code, out, _ = run(capsys, "bounds", "--config", str(cfg), "--ns", "0.2")
    fields = dict(line.split(": ", 1) for line in out.splitlines())
    assert float(fields["n_signal"]) == 0.2  # flag beats env


def test_config_file_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("volume=11\n", encoding="utf-8")
    assert run(capsys, "bounds", "--config", str(bad))[0] == 2
    assert run(capsys, "bounds", "--config", str(tmp_path / "absent.cfg"))[0] == 3


def test_env_validation(monkeypatch, capsys):
    monkeypatch.setenv("QI_NS", "many")
    assert run(capsys, "bounds")[0] == 2
    monkeypatch.delenv("QI_NS")
    monkeypatch.setenv("QI_THREADS", "zero")
    assert run(capsys, "sweep", "--count", "3", "--extras", "qb2")[0] == 2
    monkeypatch.setenv("QI_THREADS", "2")
    assert run(capsys, "sweep", "--count", "3", "--extras", "qb2")[0] == 0


def test_state_info_absent_state(capsys):
    code, out, _ = run(capsys, "state-info", "--ns", "0.2", "--nb", "5", "--state", "rho")
    assert code == 0
    fields = dict(
        line.split(": ", 1) for line in out.splitlines() if ": " in line and not line.startswith(" ")
    )
    assert fields["modes"] == "3"
    assert fields["physical"] == "yes"
    assert float(fields["log_negativity_mode0_vs_rest"]) == 0.0
    assert float(fields["log_negativity_mode1_vs_rest"]) == pytest.approx(
        0.36492207949367494, abs=1e-9
    )


def test_state_info_probe_at_max_correlation_is_not_pure(capsys):
    code, out, _ = run(capsys, "state-info", "--ns", "0.2", "--state", "initial3")
    assert code == 0
    fields = dict(
        line.split(": ", 1) for line in out.splitlines() if ": " in line and not line.startswith(" ")
    )
    # the maximally correlated probe sits outside the physical cone
    assert fields["pure"] == "no"
    assert fields["physical"] == "no"


def test_state_info_json(capsys):
    code, out, _ = run(
        capsys, "state-info", "--ns", "0.1", "--nb", "20", "--state", "sigma",
        "--format", "json",
    )
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row["modes"] == 3
    assert len(row["covariance"]) == 6
    assert len(row["symplectic_eigenvalues"]) == 3


def test_oracle_check_table(capsys):
    code, out, _ = run(
        capsys, "oracle-check", "--ns", "0.1", "--nb", "0.3", "--kappa", "0.1",
        "--cutoff", "20",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == [
        "s", "gaussian_qs", "oracle_qs", "relative_gap", "tail_budget", "flag"
    ]
    assert len(lines) == 5
    assert all(line.endswith("ok") for line in lines[1:4])
    assert lines[4] == "flagged: 0"


def test_oracle_check_blind_target(capsys):
    code, out, _ = run(
        capsys, "oracle-check", "--ns", "0.1", "--nb", "0.3", "--kappa", "0",
        "--cutoff", "15", "--s-grid", "0.5",
    )
    assert code == 0
    cells = out.splitlines()[1].split()
    assert float(cells[1]) == pytest.approx(1.0, abs=1e-9)
    assert float(cells[2]) == pytest.approx(1.0, abs=1e-9)


def test_oracle_check_cap_exit_4(capsys):
    code, _, err = run(
        capsys, "oracle-check", "--ns", "0.1", "--nb", "0.3", "--cutoff", "70"
    )
    assert code == 4 and "cap" in err


def test_oracle_check_bad_s_grid(capsys):
    assert run(capsys, "oracle-check", "--s-grid", "0,0.5")[0] == 2
    assert run(capsys, "oracle-check", "--s-grid", "x")[0] == 2


def test_argparse_errors_keep_exit_2(capsys):
    assert main(["bounds", "--copies", "lots"]) == 2
    capsys.readouterr()
    assert main(["no-such-command"]) == 2
    capsys.readouterr()
