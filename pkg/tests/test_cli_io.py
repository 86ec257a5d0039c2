import csv
import io
import json
import math

import pytest

from torsion_growth.core.config import EngineConfig
from torsion_growth.core.errors import ParseError, ValidationError
from torsion_growth.interface import formats
from torsion_growth.interface.cli import main
from torsion_growth.interface.job_manager import JobManager, JobSpec, ResultRecord, parse_range

SL2_COMPLEX = {
    "format": "group-ring-complex",
    "label": "free(S,T)",
    "basis_sizes": [1, 2],
    "boundaries": [[[[[[1], 1], [[], -1]], [[[2], 1], [[], -1]]]]],
    "group": {"generators": [[[0, -1], [1, 0]], [[1, 1], [0, 1]]]},
}


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def error_payload(err):
    return json.loads(err.strip().splitlines()[-1])


def record_data(out):
    return json.loads(out)["data"]


# Commands

def test_dims(capsys):
    status, out, _ = run(capsys, "dims", "--weight", "A2:1,0", "--m", "10")
    assert status == 0
    data = record_data(out)
    assert data["dimension"] == 66
    assert data["theta_twist"] == "A2:0,1"
    assert not data["theta_fixed"]


def test_dims_with_so_rank(capsys):
    status, out, _ = run(capsys, "dims", "--weight", "D:1,1", "--m", "2", "--d", "1")
    assert status == 0
    assert record_data(out)["so_module_rank"] == 10


def test_verify_lens_space(capsys):
    status, out, _ = run(capsys, "verify", "--lens", "5,1")
    assert status == 0
    data = record_data(out)
    assert data["holds"] is True
    assert data["torsion"]["t_squared"] == {"numerator": "625", "denominator": "1"}
    assert data["torsion"]["t"] == "25"
    assert [d["elementary_divisors"] for d in data["degrees"]] == [[], [5], [], [5]]


def test_torsion_of_lens_space(capsys):
    status, out, _ = run(capsys, "torsion", "--lens", "7,3")
    assert status == 0
    assert record_data(out)["torsion"]["t"] == "49"


def test_constants_sl3(capsys):
    status, out, _ = run(capsys, "constants", "--sl3", "--liminf")
    assert status == 0
    sl3 = record_data(out)["sl3"]
    assert sl3["status"] == "ok"
    assert sl3["constant"] == "4/9"
    assert sl3["prediction"].startswith("-4.1887902047863")
    assert sl3["liminf_bound"].startswith("0.6981317007977")
    assert sl3["degree3_target"] == sl3["liminf_bound"]


def test_constants_so_and_sl2(capsys):
    status, out, _ = run(capsys, "constants", "--so", "3,1", "--m", "2", "--liminf", "--sl2", "3")
    assert status == 0
    data = record_data(out)
    assert data["so"]["rational_factor"] == -1
    assert data["so"]["rank"] == 10
    assert data["so"]["rank_leading_coefficient"] == "4"
    assert data["so"]["liminf_bound"].startswith("12.566370614359")
    assert data["sl2"]["benchmark"].startswith("5.729577951308")


def test_random_then_cohomology(capsys, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "random", "--shape", "2,4,2", "--seed", "7", "-o", str(first))[0] == 0
    assert run(capsys, "random", "--shape", "2,4,2", "--seed", "7", "-o", str(second))[0] == 0
    assert first.read_bytes() == second.read_bytes()
    cochain = tmp_path / "cochain.json"
    cochain.write_text(json.dumps(json.loads(first.read_text())["data"]["cochain"]))
    status, out, _ = run(capsys, "cohomology", "--cochain", str(cochain))
    assert status == 0
    data = record_data(out)
    assert data["dims"] == [2, 4, 2]
    assert all(d["free_rank"] == 0 for d in data["degrees"])
    assert data["exact_over_q"]


def test_lens_files_round_trip_through_verify(capsys, tmp_path):
    record = tmp_path / "lens.json"
    assert run(capsys, "lens", "--lens", "5,2", "-o", str(record))[0] == 0
    data = json.loads(record.read_text())["data"]
    complex_path, module_path = tmp_path / "cx.json", tmp_path / "mod.json"
    complex_path.write_text(json.dumps(data["complex"]))
    module_path.write_text(json.dumps(data["module"]))
    status, out, _ = run(capsys, "verify", "--complex", str(complex_path), "--module", str(module_path))
    assert status == 0
    assert record_data(out)["alternating_product"]["numerator"] == "25"


def test_fit_series(capsys, tmp_path):
    series = tmp_path / "series.csv"
    series.write_text("m,value\n" + "".join(f"{m},{2 * m * m + 3 * m}\n" for m in range(1, 11)))
    status, out, _ = run(capsys, "fit", "--series", str(series), "--degree", "2")
    assert status == 0
    data = record_data(out)
    assert float(data["leading_coefficient"]) == pytest.approx(2)
    assert float(data["coefficients"][1]) == pytest.approx(3)


def test_fit_sl3_report(capsys):
    status, out, _ = run(capsys, "fit", "--sl3-report", "2,1", "--m-range", "1:20")
    assert status == 0
    report = record_data(out)["report"]
    assert report["formula"] == "3"
    assert report["printed"] == "5"
    assert report["printed_agrees"] is False


# Errors and exit statuses

@pytest.mark.parametrize("argv, status, code", [
    (["dims", "--weight", "A2:x"], 2, "parse"),
    (["dims", "--weight", "A2:-1,0"], 3, "validation"),
    (["verify", "--lens", "4,2"], 3, "validation"),
    (["constants", "--sl3", "--weight", "A2:2,2"], 6, "acyclicity"),
    (["constants"], 3, "validation"),
    (["random", "--shape", "2,1"], 3, "validation"),
])
def test_error_statuses(capsys, argv, status, code):
    result, out, err = run(capsys, *argv)
    assert result == status
    assert out == ""
    payload = error_payload(err)
    assert payload["error"] == code
    assert payload["exit_status"] == status


def test_malformed_json_reports_its_line(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "dims": [1, 1],\n  "coboundaries": [,]\n}\n')
    status, _, err = run(capsys, "cohomology", "--cochain", str(bad))
    assert status == 2
    payload = error_payload(err)
    assert payload["line"] == 3
    assert payload["source"] == str(bad)


def test_missing_field_is_a_parse_error(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"rank": 1}))
    with pytest.raises(ParseError):
        formats.load_module(str(path))
    with pytest.raises(ParseError):
        formats.load_cochain(str(tmp_path / "missing.json"))


# Sweeps

def test_lens_sweep(capsys):
    status, out, _ = run(capsys, "sweep", "--recipe", "lens", "--m-range", "2:5")
    assert status == 0
    lines = out.strip().splitlines()
    assert lines[0] == (
        "m,rank,H0,H1,H2,H3,log_alternating_product,log_torsion,identity_holds,prediction,relative_error,error")
    assert len(lines) == 5
    assert lines[1].startswith("2,1,1,2,1,2,")
    assert all(line.split(",")[8] == "True" for line in lines[1:])


def test_lens_sweep_rows_match_their_prediction(capsys):
    status, out, _ = run(capsys, "sweep", "--recipe", "lens", "--m-range", "3,5,7", "--q", "2")
    assert status == 0
    for row in csv.DictReader(io.StringIO(out)):
        assert float(row["prediction"]) == pytest.approx(2 * math.log(int(row["m"])))
        assert float(row["relative_error"]) < 1e-30


def test_empty_sweep_has_only_a_header(capsys):
    status, out, _ = run(capsys, "sweep", "--recipe", "lens", "--m-range", "5:4")
    assert status == 0
    assert len(out.strip().splitlines()) == 1


def test_lens_sweep_records_failing_rows(capsys):
    status, out, _ = run(capsys, "sweep", "--recipe", "lens", "--m-range", "4,5", "--q", "2")
    assert status == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["error"] == "validation: gcd(4, 2) = 2; lens parameters must be coprime"
    assert rows[0]["rank"] == ""
    assert rows[1]["identity_holds"] == "True" and rows[1]["error"] == ""


def test_sym_sweep(capsys, tmp_path):
    path = tmp_path / "free.json"
    path.write_text(json.dumps(SL2_COMPLEX))
    status, out, _ = run(capsys, "sweep", "--recipe", "sym", "--m-range", "0:4", "--complex", str(path))
    assert status == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("m,rank,H0,H1,")
    for m, line in enumerate(lines[1:]):
        cells = line.split(",")
        assert int(cells[1]) == m + 1
        assert cells[-1] == ""
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [row["prediction"] == "" for row in rows] == [False, True, False, True, False]
    assert float(rows[4]["prediction"]) == pytest.approx(8 / math.pi)
    assert all(row["relative_error"] == "" for row in rows)


def test_so_rank_sweep(capsys):
    status, out, _ = run(capsys, "sweep", "--recipe", "so-rank", "--so", "3,1", "--m-range", "1,2,3")
    assert status == 0
    ranks = [int(line.split(",")[1]) for line in out.strip().splitlines()[1:]]
    assert ranks == [6, 10, 14]


def test_parallel_sweep_keeps_rows_in_order():
    job = JobSpec("sweep", {"recipe": "lens", "m_range": "2:9"})
    serial, _ = JobManager(EngineConfig()).sweep(job)
    parallel, _ = JobManager(EngineConfig(workers=2)).sweep(job)
    assert [row["m"] for row in parallel] == list(range(2, 10))
    assert parallel == serial


def test_parse_range():
    assert parse_range("1:7:3") == [1, 4, 7]
    assert parse_range("3,5") == [3, 5]
    with pytest.raises(ValidationError):
        parse_range("1:5:0")
    with pytest.raises(ValidationError):
        parse_range("a:b")


# Records and configuration

def test_result_record_round_trip():
    record = ResultRecord({"command": "dims"}, {"dimension": 3}, timing=0.5)
    assert ResultRecord.from_dict(json.loads(record.to_json())) == record


def test_job_spec_validation():
    with pytest.raises(ValidationError):
        JobSpec("dims")
    with pytest.raises(ValidationError):
        JobSpec("bogus")
    with pytest.raises(ValidationError):
        JobSpec("random", {"shape": "1,1"}, seed=-1)
    spec = JobSpec("lens", {"lens": "5,1", "extra": None})
    assert spec.echo() == {"command": "lens", "params": {"lens": "5,1"}, "inputs": {}, "seed": 0}


def test_precision_from_environment():
    assert EngineConfig.from_env({"TORSION_GROWTH_PRECISION": "30"}).precision_digits == 30
    assert EngineConfig.from_env({"TORSION_GROWTH_PRECISION": " "}).precision_digits == 50
    with pytest.raises(ValidationError):
        EngineConfig.from_env({"TORSION_GROWTH_PRECISION": "many"})
    with pytest.raises(ValidationError):
        EngineConfig.from_env({"TORSION_GROWTH_PRECISION": "5"})
