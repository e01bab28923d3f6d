import json

import numpy as np
import pytest

from opineq.cli import main
from opineq.harness import (
    CSV_HEADER,
    CampaignReport,
    InstanceSpec,
    campaign_specs,
    emit_report,
    random_pair,
    run_campaign,
    to_csv,
    to_json,
)
from opineq.matcore import eigenvalues


def test_instance_spec_validation():
    with pytest.raises(ValueError):
        InstanceSpec(dim=0, interval=(1, 2), seed=0)
    with pytest.raises(ValueError):
        InstanceSpec(dim=2, interval=(2, 1), seed=0)
    with pytest.raises(ValueError):
        InstanceSpec(dim=2, interval=(1, 2), seed=-1)


def test_random_pair_deterministic_and_bounded():
    spec = InstanceSpec(dim=6, interval=(0.5, 4.0), seed=7)
    A1, B1 = random_pair(spec)
    A2, B2 = random_pair(spec)
    assert np.array_equal(A1.array, A2.array) and np.array_equal(B1.array, B2.array)
    eta = 0.05 * 3.5
    for M in (A1, B1):
        lam = eigenvalues(M)
        assert lam[0] >= 0.5 + eta - 1e-12 and lam[-1] <= 4.0 - eta + 1e-12
    A3, _ = random_pair(InstanceSpec(dim=6, interval=(0.5, 4.0), seed=8))
    assert not np.array_equal(A1.array, A3.array)


def test_dim_one_is_scalar():
    spec = InstanceSpec(dim=1, interval=(1.0, 2.0), seed=3, function="inverse")
    A, B = random_pair(spec)
    assert A.shape == (1, 1)
    report = run_campaign([spec])
    assert report.ok and report.theorems["levin_steckin"].passes == 1


def test_empty_report_serialization():
    assert to_json(CampaignReport()) == '{"instances":0,"theorems":{},"failures":[]}'
    assert to_csv(CampaignReport()) == ",".join(CSV_HEADER) + "\n"
    assert run_campaign([]).instances == 0


def test_campaign_small_grid():
    specs = campaign_specs(30)
    report = run_campaign(specs)
    assert report.ok and report.exit_status == 0
    data = json.loads(to_json(report))
    assert data["instances"] == 30
    assert list(data["theorems"]) == ["hermite_hadamard", "fejer", "levin_steckin",
                                      "ostrowski_reverse", "gateaux_reverse",
                                      "cebysev_reverse", "lupas_reverse"]
    # vee skips the reverses that need a non-decreasing, differentiable weight
    assert data["theorems"]["lupas_reverse"]["skipped"] == 10
    assert data["theorems"]["hermite_hadamard"]["skipped"] == 0
    lines = to_csv(report).splitlines()
    assert lines[0] == ",".join(CSV_HEADER) and len(lines) == 8


def test_domain_failure_is_recorded_not_raised():
    spec = InstanceSpec(dim=2, interval=(-1.0, 1.0), seed=0, function="log")
    report = run_campaign([spec], theorems="levin_steckin")
    assert report.exit_status == 1
    (failure,) = report.failures
    assert failure.theorem_id == "levin_steckin" and "SpectrumOutOfDomain" in failure.reason


def test_unsupported_function_is_a_failure():
    spec = InstanceSpec(dim=2, interval=(0.5, 2.0), seed=0, function="power:3")
    report = run_campaign([spec], theorems="hermite_hadamard,levin_steckin")
    assert len(report.failures) == 2 and not report.ok


def test_unknown_theorem_rejected():
    with pytest.raises(ValueError):
        run_campaign(campaign_specs(1), theorems="nope")


def test_output_is_byte_identical_and_worker_invariant(tmp_path):
    specs = campaign_specs(20)
    a = emit_report(run_campaign(specs), "json", tmp_path / "a.json")
    b = emit_report(run_campaign(specs, workers=4), "json", tmp_path / "b.json")
    assert a == b
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    assert emit_report(run_campaign(specs), "csv") == emit_report(run_campaign(specs, workers=3), "csv")


def test_cli_run(tmp_path, capsys):
    out = tmp_path / "r.json"
    status = main(["run", "--dim", "3", "--seeds", "0:4", "--fn", "inverse",
                   "--weight", "bump", "--out", str(out)])
    assert status == 0
    data = json.loads(out.read_text())
    assert data["instances"] == 5 and data["failures"] == []
    assert main(["run", "--dim", "2", "--seeds", "1,2", "--format", "csv"]) == 0
    assert capsys.readouterr().out.splitlines()[-8].startswith("theorem_id")
    assert main(["run", "--dim", "2", "--interval=-1:1", "--fn", "log", "--seeds", "0"]) == 1


def test_cli_examples_and_validate_weight(tmp_path, capsys):
    assert main(["examples", "--dim", "3", "--seed", "2"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 19 and "FAIL" not in out
    assert main(["validate-weight", "bump"]) == 0
    table = tmp_path / "w.csv"
    table.write_text("t,p\n0,0\n0.5,0.5\n1,1\n")
    assert main(["validate-weight", f"table:{table}"]) == 1
