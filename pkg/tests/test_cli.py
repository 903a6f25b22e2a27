import csv
import io
import json

import pytest

from pionless_qre.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_estimate_qsp_reference_case(capsys):
    code, out, err = _run(
        capsys,
        "estimate", "--method", "qsp", "--eta", "16", "--d", "3", "--m", "3",
        "--eps", "0.1", "--time", "cross:10",
    )
    assert code == 0 and err == ""
    payload = json.loads(out)
    assert payload["method"] == "qsp"
    assert payload["qubits"] == {"system": 144, "ancilla": 68, "total": 212}
    assert payload["t_count"] == 100335026
    assert payload["t_count_scientific"] == "1.003e+08"
    assert payload["R"] == 26817
    assert set(payload["lambda"]) == {"lambda_T", "lambda_V", "lambda_H"}
    assert payload["time"]["kind"] == "crossing"
    assert payload["time"]["t_mev_inv"] == pytest.approx(0.3889102154365305)


def test_estimate_trotter_reference_case(capsys):
    code, out, _ = _run(
        capsys,
        "estimate", "--method", "trotter2", "--eta", "16",
        "--eps", "0.1", "--time", "response:100",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["r"] == 895
    assert payload["qubits"]["total"] == 201
    assert set(payload["lambda"]) == {"lambda_T", "alpha"}
    assert sum(payload["breakdown"].values()) == payload["t_count"]


def test_estimate_output_is_deterministic(capsys):
    argv = ["estimate", "--method", "trotter4", "--eta", "8", "--time", "t:0.2"]
    _, first, _ = _run(capsys, *argv)
    _, second, _ = _run(capsys, *argv)
    assert first == second


def test_estimate_time_forms(capsys):
    for text, kind in (
        ("t:0.5", "explicit"),
        ("explicit:0.5", "explicit"),
        ("cross:10", "crossing"),
        ("crossing:10", "crossing"),
        ("response:100", "response"),
    ):
        code, out, _ = _run(
            capsys, "estimate", "--method", "qsp", "--time", text
        )
        assert code == 0
        assert json.loads(out)["time"]["kind"] == kind


def test_estimate_rejects_bad_accuracy(capsys):
    code, out, err = _run(
        capsys, "estimate", "--method", "qsp", "--eps", "0", "--time", "t:1"
    )
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_estimate_rejects_unresolvable_time(capsys):
    # a frequency window wider than the spectral span gives t = 0
    code, _, err = _run(
        capsys, "estimate", "--method", "qsp", "--time", "response:1e9"
    )
    assert code == 2
    assert "time" in err


def test_estimate_unknown_method_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["estimate", "--method", "qsp9", "--time", "t:1"])
    assert exc.value.code == 2


def test_estimate_honors_params_file(capsys, tmp_path):
    path = tmp_path / "params.cfg"
    path.write_text("c_mev = -10.0\ng_mev = 20.0\n")
    code, out, _ = _run(
        capsys,
        "estimate", "--method", "qsp", "--eta", "16", "--time", "t:0.1",
        "--params", str(path),
    )
    assert code == 0
    payload = json.loads(out)
    # lambda_V = 16 (3*10 + 4*20)/2 = 880
    assert payload["lambda"]["lambda_V"] == pytest.approx(880.0)


def test_sweep_csv_format(capsys):
    code, out, _ = _run(
        capsys,
        "sweep", "--methods", "trotter2,qsp", "--axis", "m", "--values", "1,3",
        "--eta", "16", "--eps", "0.1", "--time", "response:100",
        "--format", "csv",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# schema=1"
    # the fixed-settings comment omits the swept axis
    assert lines[1].startswith("# fixed:")
    assert " m=" not in lines[1]
    assert "eta=16" in lines[1]
    rows = list(csv.DictReader(line for line in lines if not line.startswith("#")))
    assert len(rows) == 4
    ok = {(r["method"], r["axis"]): r for r in rows}
    assert ok[("trotter2", "3")]["t_count"] == "86263367"
    assert ok[("qsp", "3")]["total_qubits"] == "212"
    assert ok[("qsp", "3")]["status"] == "ok"
    # the m=1 QSP row reports its failure and keeps the stream going
    bad = ok[("qsp", "1")]
    assert bad["t_count"] == ""
    assert "m >= 2" in bad["status"]


def test_sweep_json_format(capsys):
    code, out, _ = _run(
        capsys,
        "sweep", "--methods", "qsp", "--axis", "eta", "--values", "4,8",
        "--time", "t:0.05", "--format", "json",
    )
    assert code == 0
    rows = json.loads(out)
    assert [r["axis"] for r in rows] == [4, 8]
    assert all(r["status"] == "ok" for r in rows)
    assert rows[1]["t_count"] > rows[0]["t_count"]


def test_sweep_range_values(capsys):
    code, out, _ = _run(
        capsys,
        "sweep", "--methods", "qsp", "--axis", "m", "--values", "2..4",
        "--time", "t:0.05", "--format", "json",
    )
    assert code == 0
    assert [r["axis"] for r in json.loads(out)] == [2, 3, 4]


def test_verify_subcommand(capsys):
    code, out, _ = _run(capsys, "verify", "--filter", "umatch/eta2")
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert len(payload["cases"]) == 1
    assert payload["cases"][0]["case"] == "umatch/eta2-d1-m2"
    assert payload["cases"][0]["passed"] is True


def test_verify_rejects_corrupt_params_before_running(capsys, tmp_path):
    path = tmp_path / "params.cfg"
    path.write_text("mu_mev = -1.0\n")
    code, out, err = _run(
        capsys, "verify", "--filter", "umatch/eta2", "--params", str(path)
    )
    assert code == 2
    assert out == ""
    assert err.startswith("error:")
