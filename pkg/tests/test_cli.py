"""End-to-end command line behavior: files, exit codes, determinism."""

import json
import os

import pytest

from hpofla import cli
from hpofla.canon import dumps_canonical, write_text_atomic

REPORT_KEYS = ["metadata", "fdc", "locality", "neutrality", "plateaus"]


def run_cli(*argv):
    return cli.run(list(argv))


@pytest.fixture()
def fixture_dir(tmp_path):
    """A generated benchmark table plus its schema."""
    out = tmp_path / "fixture"
    code = run_cli("generate", "--rows", "120", "--numeric", "2", "--categorical", "1",
                   "--arity", "3", "--seed", "5", "--out", str(out))
    assert code == 0
    return out


def read_report(out_dir):
    with open(os.path.join(out_dir, "report.json"), encoding="utf-8") as fh:
        return json.load(fh)


def test_generate_writes_table_and_schema(fixture_dir):
    names = sorted(os.listdir(fixture_dir))
    assert names == ["schema.json", "table.csv"]
    header = (fixture_dir / "table.csv").read_text().splitlines()[0]
    assert header == "x00,x01,c00,fitness"
    schema = json.loads((fixture_dir / "schema.json").read_text())
    assert [f["name"] for f in schema["features"]] == ["x00", "x01", "c00"]


def test_all_runs_every_analysis(fixture_dir, tmp_path):
    out = tmp_path / "out"
    code = run_cli("all", "--input", str(fixture_dir / "table.csv"),
                   "--schema", str(fixture_dir / "schema.json"), "--out", str(out))
    assert code == 0
    assert sorted(os.listdir(out)) == ["fdc_points.csv", "locality_bins.csv",
                                       "neutrality.csv", "report.json"]
    doc = read_report(out)
    assert list(doc.keys()) == REPORT_KEYS
    assert doc["metadata"]["sample_size"] == 120
    assert doc["metadata"]["command"] == "all"
    assert doc["fdc"] is not None and doc["locality"] is not None
    assert doc["neutrality"] is not None and doc["plateaus"] is not None
    assert doc["metadata"]["optimal_fitness"] == 100.0


@pytest.mark.parametrize("command, extra_files, null_keys", [
    ("fdc", ["fdc_points.csv"], ["locality", "neutrality", "plateaus"]),
    ("locality", ["locality_bins.csv"], ["fdc", "neutrality", "plateaus"]),
    ("neutrality", ["neutrality.csv"], ["fdc", "locality", "plateaus"]),
    ("diagnose", [], ["fdc", "locality", "neutrality"]),
])
def test_each_subcommand_writes_its_own_outputs(fixture_dir, tmp_path,
                                                command, extra_files, null_keys):
    out = tmp_path / command
    code = run_cli(command, "--input", str(fixture_dir / "table.csv"),
                   "--schema", str(fixture_dir / "schema.json"), "--out", str(out))
    assert code == 0
    assert sorted(os.listdir(out)) == sorted(["report.json"] + extra_files)
    doc = read_report(out)
    for key in null_keys:
        assert doc[key] is None, key
    assert doc["metadata"]["command"] == command


def test_plots_flag_adds_svgs(fixture_dir, tmp_path):
    out = tmp_path / "out"
    code = run_cli("all", "--input", str(fixture_dir / "table.csv"),
                   "--schema", str(fixture_dir / "schema.json"),
                   "--plots", "--out", str(out))
    assert code == 0
    names = set(os.listdir(out))
    assert {"fdc.svg", "locality.svg", "neutrality.svg"} <= names


def test_reruns_are_byte_identical(fixture_dir, tmp_path):
    outs = []
    for tag, workers in (("a", "1"), ("b", "1"), ("c", "3")):
        out = tmp_path / tag
        code = run_cli("all", "--input", str(fixture_dir / "table.csv"),
                       "--schema", str(fixture_dir / "schema.json"),
                       "--plots", "--workers", workers, "--out", str(out))
        assert code == 0
        outs.append(out)
    names = sorted(os.listdir(outs[0]))
    for other in outs[1:]:
        assert sorted(os.listdir(other)) == names
        for name in names:
            assert (outs[0] / name).read_bytes() == (other / name).read_bytes(), name


def test_dump_flags(fixture_dir, tmp_path):
    out = tmp_path / "out"
    code = run_cli("fdc", "--input", str(fixture_dir / "table.csv"),
                   "--schema", str(fixture_dir / "schema.json"),
                   "--dump-distances", "--dump-neighbors", "--out", str(out))
    assert code == 0
    n = 120
    dist_lines = (out / "distances.csv").read_text().splitlines()
    assert len(dist_lines) == 1 + n * (n - 1) // 2
    nb_lines = (out / "neighbors.csv").read_text().splitlines()
    assert nb_lines[0] == "row,neighbor"
    # the adjacency dump is symmetric, so rows appear twice per undirected pair
    assert (len(nb_lines) - 1) % 2 == 0
    # dump switches never leak into the report
    rerun = tmp_path / "plain"
    assert run_cli("fdc", "--input", str(fixture_dir / "table.csv"),
                   "--schema", str(fixture_dir / "schema.json"), "--out", str(rerun)) == 0
    assert (out / "report.json").read_bytes() == (rerun / "report.json").read_bytes()


def test_sample_flag_subsamples_with_seed(fixture_dir, tmp_path):
    out1 = tmp_path / "s1"
    out2 = tmp_path / "s2"
    for out in (out1, out2):
        code = run_cli("fdc", "--input", str(fixture_dir / "table.csv"),
                       "--schema", str(fixture_dir / "schema.json"),
                       "--sample", "40", "--seed", "9", "--out", str(out))
        assert code == 0
    doc = read_report(out1)
    assert doc["metadata"]["sample_requested"] == 40
    assert doc["metadata"]["sample_size"] == 40
    assert doc["metadata"]["seed"] == 9
    assert doc["fdc"]["n_points"] == 40
    assert (out1 / "report.json").read_bytes() == (out2 / "report.json").read_bytes()
    out3 = tmp_path / "s3"
    assert run_cli("fdc", "--input", str(fixture_dir / "table.csv"),
                   "--schema", str(fixture_dir / "schema.json"),
                   "--sample", "40", "--seed", "10", "--out", str(out3)) == 0
    assert (out1 / "fdc_points.csv").read_bytes() != (out3 / "fdc_points.csv").read_bytes()


def test_minimize_flag_flips_the_optimum(tmp_path):
    fx = tmp_path / "fx"
    assert run_cli("generate", "--rows", "50", "--numeric", "1", "--seed", "3",
                   "--out", str(fx)) == 0
    out = tmp_path / "out"
    assert run_cli("fdc", "--input", str(fx / "table.csv"),
                   "--schema", str(fx / "schema.json"),
                   "--minimize", "--out", str(out)) == 0
    doc = read_report(out)
    assert doc["metadata"]["maximize"] is False
    # with affine fitness the minimum is the row farthest from the planted one
    out_max = tmp_path / "outmax"
    assert run_cli("fdc", "--input", str(fx / "table.csv"),
                   "--schema", str(fx / "schema.json"), "--out", str(out_max)) == 0
    assert doc["metadata"]["optimal_fitness"] < read_report(out_max)["metadata"]["optimal_fitness"]


def test_schema_inference_path(tmp_path):
    table = tmp_path / "t.csv"
    table.write_text("lr,opt,fitness\n0.1,adam,90\n0.2,sgd,10\n0.3,adam,55\n")
    out = tmp_path / "out"
    assert run_cli("fdc", "--input", str(table), "--out", str(out)) == 0
    doc = read_report(out)
    assert doc["metadata"]["schema_file"] is None
    assert doc["metadata"]["n_features"] == 2


def test_fitness_col_override(tmp_path):
    table = tmp_path / "t.csv"
    table.write_text("lr,opt,score\n0.1,adam,90\n0.2,sgd,10\n")
    out = tmp_path / "out"
    assert run_cli("fdc", "--input", str(table), "--fitness-col", "score",
                   "--out", str(out)) == 0
    assert read_report(out)["metadata"]["fitness_column"] == "score"


def test_priors_label_appears_in_report(tmp_path):
    fx = tmp_path / "fx"
    assert run_cli("generate", "--rows", "400", "--numeric", "1", "--categorical", "1",
                   "--arity", "2", "--seed", "0", "--inject", "0.2:50.0",
                   "--out", str(fx)) == 0
    priors = tmp_path / "priors.json"
    priors.write_text('{"classA": 0.5, "classB": 0.9}\n')
    out = tmp_path / "out"
    assert run_cli("diagnose", "--input", str(fx / "table.csv"),
                   "--schema", str(fx / "schema.json"),
                   "--priors", str(priors), "--out", str(out)) == 0
    doc = read_report(out)
    labels = {p["majority_class_label"] for p in doc["plateaus"]}
    assert "classA" in labels


def test_diagnose_threshold_flags_are_honored(fixture_dir, tmp_path):
    out = tmp_path / "out"
    assert run_cli("diagnose", "--input", str(fixture_dir / "table.csv"),
                   "--schema", str(fixture_dir / "schema.json"),
                   "--min-count-frac", "1.0", "--min-diversity", "1.0",
                   "--out", str(out)) == 0
    assert read_report(out)["plateaus"] == []


def test_missing_input_exits_1_without_partial_output(tmp_path):
    out = tmp_path / "out"
    code = run_cli("all", "--input", str(tmp_path / "absent.csv"), "--out", str(out))
    assert code == 1
    assert not out.exists()


def test_bad_flag_values_exit_1(fixture_dir, tmp_path, capsys):
    table = str(fixture_dir / "table.csv")
    out = str(tmp_path / "out")
    assert run_cli("fdc", "--input", table, "--c", "0", "--out", out) == 1
    assert run_cli("fdc", "--input", table, "--sample", "1", "--out", out) == 1
    assert run_cli("fdc", "--input", table, "--no-such-flag", "--out", out) == 1
    assert run_cli("nonsense", "--input", table, "--out", out) == 1
    assert run_cli("fdc", "--out", out) == 1
    err = capsys.readouterr().err
    assert "error:" in err


def test_malformed_table_exits_1(tmp_path, capsys):
    table = tmp_path / "t.csv"
    table.write_text("a,fitness\n1,2,3\n")
    out = tmp_path / "out"
    assert run_cli("fdc", "--input", str(table), "--out", str(out)) == 1
    assert "error:" in capsys.readouterr().err
    assert not out.exists()


def test_bad_priors_exit_1(fixture_dir, tmp_path):
    priors = tmp_path / "p.json"
    priors.write_text("[]")
    assert run_cli("diagnose", "--input", str(fixture_dir / "table.csv"),
                   "--priors", str(priors), "--out", str(tmp_path / "out")) == 1
    priors.write_text('{"a": "high"}')
    assert run_cli("diagnose", "--input", str(fixture_dir / "table.csv"),
                   "--priors", str(priors), "--out", str(tmp_path / "out2")) == 1


def test_generate_bad_inject_exits_1(tmp_path):
    assert run_cli("generate", "--rows", "10", "--numeric", "1",
                   "--inject", "0.5", "--out", str(tmp_path / "x")) == 1
    assert run_cli("generate", "--rows", "10", "--numeric", "1",
                   "--inject", "a:b", "--out", str(tmp_path / "x")) == 1


def test_internal_failure_exits_2(fixture_dir, tmp_path, monkeypatch, capsys):
    def explode(doc, n):
        raise RuntimeError("forced inconsistency")

    monkeypatch.setattr(cli, "validate_report", explode)
    code = run_cli("fdc", "--input", str(fixture_dir / "table.csv"),
                   "--schema", str(fixture_dir / "schema.json"),
                   "--out", str(tmp_path / "out"))
    assert code == 2
    assert "internal error: RuntimeError" in capsys.readouterr().err


def test_report_is_valid_canonical_json(fixture_dir, tmp_path):
    out = tmp_path / "out"
    assert run_cli("all", "--input", str(fixture_dir / "table.csv"),
                   "--schema", str(fixture_dir / "schema.json"), "--out", str(out)) == 0
    raw = (out / "report.json").read_text()
    assert raw == dumps_canonical(json.loads(raw))
