import json

import numpy as np
import pytest

from lxdr import attribution, cli
from lxdr.experiments import CSV_HEADER


def _write_csv(tmp_path, rows=20, cols=3, seed=0, name="data.csv"):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((rows, cols))
    lines = [",".join(f"c{j}" for j in range(cols))]
    lines += [",".join(repr(float(v)) for v in row) for row in X]
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture()
def iris_model(tmp_path):
    path = tmp_path / "pca.json"
    rc = cli.main(["--output", str(path), "fit", "--data", "iris",
                   "--method", "pca", "--components", "3"])
    assert rc == 0
    return str(path)


def test_fit_stdout_is_pure_json(capsys):
    rc = cli.main(["fit", "--data", "iris", "--method", "pca",
                   "--components", "2"])
    out = capsys.readouterr().out
    assert rc == 0
    doc = json.loads(out)          # whole stream must be the artifact
    assert doc["kind"] == "pca"
    assert len(doc["components"]) == 2
    assert len(doc["components"][0]) == 4


def test_fit_variance_rule_picks_smallest(capsys):
    rc = cli.main(["fit", "--data", "iris", "--method", "pca",
                   "--variance", "0.95"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["components"]) == 2


def test_fit_rejects_nonpositive_components(capsys):
    rc = cli.main(["fit", "--data", "iris", "--method", "pca",
                   "--components", "0"])
    assert rc == 2
    err = capsys.readouterr().err
    assert "error:" in err


def test_fit_output_file_keeps_stdout_empty(tmp_path, capsys):
    out = tmp_path / "m.json"
    rc = cli.main(["--output", str(out), "fit", "--data", "iris",
                   "--method", "pca", "--components", "2"])
    assert rc == 0
    assert capsys.readouterr().out == ""
    json.loads(out.read_text(encoding="utf-8"))


def test_fit_missing_data_file_is_runtime_error(capsys):
    rc = cli.main(["fit", "--data", "/nope/missing.csv", "--method", "pca",
                   "--components", "2"])
    assert rc == 1
    assert "error:" in capsys.readouterr().err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["fit", "--data", "iris", "--method", "tsne",
                  "--components", "2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:   # --value and --to-mean clash
        cli.main(["whatif", "--data", "iris", "--model", "x", "--instance",
                  "0", "--feature", "0", "--value", "1", "--to-mean"])
    assert exc.value.code == 2


def test_explain_round_trip(iris_model, capsys):
    rc = cli.main(["explain", "--data", "iris", "--model", iris_model,
                   "--instance", "3", "--k", "50", "--auto-alpha",
                   "--reference-pca"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["slopes"]) == 3
    assert len(doc["slopes"][0]) == 4
    assert doc["weights_difference"] < 1e-3
    assert doc["orientation"] == "components_by_features"


def test_explain_k_out_of_range(iris_model, capsys):
    rc = cli.main(["explain", "--data", "iris", "--model", iris_model,
                   "--instance", "0", "--k", "151"])
    assert rc == 1
    assert "out of range" in capsys.readouterr().err


def test_explain_instance_index_out_of_range(iris_model, capsys):
    rc = cli.main(["explain", "--data", "iris", "--model", iris_model,
                   "--instance", "150"])
    assert rc == 1
    assert "out of range" in capsys.readouterr().err


def test_explain_inline_instance(iris_model, capsys):
    rc = cli.main(["explain", "--data", "iris", "--model", iris_model,
                   "--instance", "5.1,3.5,1.4,0.2", "--k", "20"])
    assert rc == 0
    json.loads(capsys.readouterr().out)


def test_explain_inline_instance_wrong_length(iris_model, capsys):
    rc = cli.main(["explain", "--data", "iris", "--model", iris_model,
                   "--instance", "1.0,2.0"])
    assert rc == 1
    assert "4 features" in capsys.readouterr().err


def test_explain_inline_instance_unparseable(iris_model, capsys):
    rc = cli.main(["explain", "--data", "iris", "--model", iris_model,
                   "--instance", "a,b,c,d"])
    assert rc == 2


def test_seed_determinism_for_ae(tmp_path, capsys):
    data = _write_csv(tmp_path, rows=25, cols=3)
    argv = ["fit", "--data", str(data), "--method", "ae",
            "--components", "2", "--epochs", "3"]
    assert cli.main(["--seed", "7"] + argv) == 0
    first = capsys.readouterr().out
    assert cli.main(["--seed", "7"] + argv) == 0
    assert capsys.readouterr().out == first
    assert cli.main(["--seed", "8"] + argv) == 0
    assert capsys.readouterr().out != first


def test_env_seed_override(tmp_path, capsys, monkeypatch):
    data = _write_csv(tmp_path, rows=25, cols=3)
    argv = ["fit", "--data", str(data), "--method", "ae",
            "--components", "2", "--epochs", "3"]
    assert cli.main(["--seed", "11"] + argv) == 0
    explicit = capsys.readouterr().out

    monkeypatch.setenv("LXDR_SEED", "11")
    assert cli.main(argv) == 0
    assert capsys.readouterr().out == explicit

    # an explicit --seed always beats the environment
    assert cli.main(["--seed", "12"] + argv) == 0
    assert capsys.readouterr().out != explicit

    monkeypatch.setenv("LXDR_SEED", "abc")
    assert cli.main(argv) == 2


def test_eval_tables_emits_schema_csv(capsys):
    rc = cli.main(["eval", "--suite", "tables", "--datasets", "iris",
                   "--methods", "pca", "--instance-limit", "3",
                   "--no-timing"])
    assert rc == 0
    out = capsys.readouterr().out
    lines = out.strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert len(lines) == 5          # lxdr/gxdr x two metrics
    assert all(len(line.split(",")) == 11 for line in lines[1:])


def test_eval_tables_no_timing_is_reproducible(capsys):
    argv = ["--seed", "3", "eval", "--suite", "tables", "--datasets",
            "iris", "--methods", "pca", "--instance-limit", "2",
            "--no-timing"]
    assert cli.main(argv) == 0
    first = capsys.readouterr().out
    assert cli.main(argv) == 0
    assert capsys.readouterr().out == first


def test_eval_scaling_small_grid(capsys):
    rc = cli.main(["eval", "--suite", "scaling", "--features", "10",
                   "--queries", "2", "--no-timing"])
    assert rc == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert len(lines) == 1 + 3 * 2      # three k values, two metrics
    assert all(line.startswith("synthetic-10,pca,lxdr,10,")
               for line in lines[1:])


def test_whatif_noop_keeps_projection(iris_model, capsys, iris):
    current = float(iris.features[0, 2])
    rc = cli.main(["whatif", "--data", "iris", "--model", iris_model,
                   "--instance", "0", "--feature", "2",
                   "--value", repr(current)])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["before"] == doc["after"]
    assert doc["prediction_before"] is None


def test_whatif_to_mean_moves_projection(iris_model, capsys):
    rc = cli.main(["whatif", "--data", "iris", "--model", iris_model,
                   "--instance", "0", "--feature", "2", "--to-mean"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["before"] != doc["after"]


def test_whatif_feature_out_of_range(iris_model, capsys):
    rc = cli.main(["whatif", "--data", "iris", "--model", iris_model,
                   "--instance", "0", "--feature", "9", "--to-mean"])
    assert rc == 1
    assert "out of range" in capsys.readouterr().err


def test_whatif_with_predictor_reports_predictions(iris_model, tmp_path,
                                                   capsys):
    pred = attribution.RidgePredictor(
        coefficients=np.array([1.0, -2.0, 0.5]), intercept=0.25, alpha=1.0)
    ppath = tmp_path / "pred.json"
    ppath.write_text(json.dumps(attribution.predictor_to_dict(pred)),
                     encoding="utf-8")
    rc = cli.main(["whatif", "--data", "iris", "--model", iris_model,
                   "--instance", "0", "--feature", "2", "--to-mean",
                   "--predictor", str(ppath)])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    manual = float(np.array(doc["after"]) @ pred.coefficients
                   + pred.intercept)
    assert doc["prediction_after"] == pytest.approx(manual, rel=1e-12)
    assert doc["prediction_before"] != doc["prediction_after"]
