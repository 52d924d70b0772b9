"""Command-line surface: outputs, exit codes, JSON round trips."""

import json

from click.testing import CliRunner

from jackalg.algebra import BasisPolynomial, GammaPoly
from jackalg.cli import main
from jackalg.lassalle import compute_K
from jackalg.partitions import Partition


def run(*args):
    return CliRunner().invoke(main, args)


def test_kerov_golden_json():
    res = run("kerov", "--mu", "[2]", "--basis", "R")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["schema"] == "jackalg/1"
    body = BasisPolynomial.from_json({"basis": doc["basis"], "terms": doc["terms"]})
    assert body == compute_K(Partition([2]))
    # R_3 + gamma R_2, nothing else
    assert body.coefficient(Partition([3])) == GammaPoly.one()
    assert body.coefficient(Partition([2])) == GammaPoly.gamma()
    assert len(body.terms) == 2


def test_lmu_round_trip():
    res = run("lmu", "--mu", "[2,2]")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    body = BasisPolynomial.from_json({"basis": doc["basis"], "terms": doc["terms"]})
    assert body.basis == "M"
    assert body.coefficient(Partition([3, 3])) == GammaPoly.one()


def test_pmf_value_and_exit():
    res = run("pmf", "--n", "2", "--alpha", "2", "--lambda", "[2]")
    assert res.exit_code == 0
    assert res.output.strip() == "1/3"


def test_decimal_alpha_on_exact_path_is_usage_error():
    res = run("pmf", "--n", "2", "--alpha", "2.0", "--lambda", "[2]")
    assert res.exit_code == 2


def test_bad_partition_names_flag():
    res = run("theta", "--mu", "[2,x]", "--lambda", "[3]", "--alpha", "1")
    assert res.exit_code == 2
    assert "--mu" in res.output


def test_theta_matches_oracle_subcommand():
    a = run("theta", "--mu", "[2,1]", "--lambda", "[3]", "--alpha", "1/4")
    b = run("oracle", "theta", "--mu", "[2,1]", "--lambda", "[3]", "--alpha", "1/4")
    assert a.exit_code == 0 and b.exit_code == 0
    assert a.output == b.output


def test_cconst_output_format():
    res = run(
        "cconst", "--mu", "[2]", "--nu", "[2]", "--pi", "[3]",
        "--n", "10", "--alpha", "2",
    )
    assert res.exit_code == 0
    assert "sqrt(2)" in res.output


def test_gconst_json():
    res = run("gconst", "--mu", "[2]", "--nu", "[2]")
    doc = json.loads(res.output)
    assert doc["schema"] == "jackalg/1"
    assert doc["coefficients"]["[2,2]"] == ["1"]
    assert GammaPoly.from_json(doc["coefficients"]["[3]"]) == GammaPoly.const(4)


def test_sample_csv_and_determinism():
    a = run("sample", "--n", "15", "--alpha", "0.5", "--reps", "4", "--seed", "9")
    b = run("sample", "--n", "15", "--alpha", "0.5", "--reps", "4", "--seed", "9")
    assert a.exit_code == 0
    assert a.output == b.output
    rows = a.output.strip().split("\n")
    assert len(rows) == 4
    for i, row in enumerate(rows):
        idx, part = row.split(",", 1)
        assert int(idx) == i
        assert Partition.parse(part).size() == 15


def test_shape_csv():
    res = run("shape", "--lambda", "[3,1]", "--alpha", "1.0")
    assert res.exit_code == 0
    rows = res.output.strip().split("\n")
    assert all(len(r.split(",")) == 2 for r in rows)


def test_mc_json_schema_and_threads_invariance():
    a = run(
        "mc", "--n", "10", "--alpha", "2.0", "--reps", "100",
        "--seed", "4", "--stats", "w2", "--threads", "1",
    )
    b = run(
        "mc", "--n", "10", "--alpha", "2.0", "--reps", "100",
        "--seed", "4", "--stats", "w2", "--threads", "4",
    )
    assert a.exit_code == 0 and b.exit_code == 0
    da, db = json.loads(a.output), json.loads(b.output)
    assert da["schema"] == "jackalg/1"
    da.pop("runtime"), db.pop("runtime")
    assert da == db


def test_mc_unknown_stat_is_usage_error():
    res = run(
        "mc", "--n", "10", "--alpha", "2.0", "--reps", "100",
        "--seed", "4", "--stats", "w9",
    )
    assert res.exit_code == 2


def test_verify_fast():
    res = run("verify", "--level", "fast")
    assert res.exit_code == 0
    assert "passed" in res.output
