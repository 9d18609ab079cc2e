import json

import numpy as np
import pytest
import scipy.linalg

from comovement import (
    FactorSpec,
    correlate,
    correlation_to_csv,
    collective_report,
    generate_blocks,
    load_csv,
    panel_returns,
    align,
)
from comovement.cli import main
from conftest import gaussian_correlation


def run_cli(*args):
    return main([str(a) for a in args])


def synth_csv(tmp_path, name="prices.csv", blocks="6:0.9,6:0.9", n=12, t=400, seed=7):
    path = tmp_path / name
    assert run_cli("synth", "--n", n, "--t", t, "--blocks", blocks, "--seed", seed, "--out", path) == 0
    return path


def test_synth_output_feeds_ingest(tmp_path):
    path = synth_csv(tmp_path)
    series = load_csv(path, layout="wide")
    assert len(series) == 12
    panel = align(series)
    spec = FactorSpec(n=12, t=400, seed=7, blocks=[(6, 0.9), (6, 0.9)])
    rp = generate_blocks(spec)
    np.testing.assert_allclose(panel_returns(panel).returns, rp.returns, atol=1e-12)


def test_run_writes_all_artifacts(tmp_path, capsys):
    path = synth_csv(tmp_path)
    out = tmp_path / "artifacts"
    code = run_cli(
        "run", "--input", path, "--ensemble", 10, "--seed", 3, "--out", out,
        "--threshold", 0.3,
    )
    assert code == 0
    expected = {
        "report.json",
        "pr.csv",
        "npr.csv",
        "independency_hist.csv",
        "dendrogram.newick",
        "communities.csv",
        "heatmap.csv",
        "heatmap_order.json",
        "manifest.json",
    }
    assert {p.name for p in out.iterdir()} == expected
    report = json.loads((out / "report.json").read_text())
    assert len(report["labels"]) == 12
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["seed"] == 3
    assert manifest["rng"] == "PCG64"
    assert len(manifest["input_sha256"]) == 64
    assert set(manifest["artifacts"]) == expected - {"manifest.json"}


def test_run_twice_is_byte_identical(tmp_path):
    path = synth_csv(tmp_path)
    out = tmp_path / "artifacts"
    assert run_cli("run", "--input", path, "--ensemble", 8, "--seed", 5, "--out", out) == 0
    first = {p.name: p.read_bytes() for p in out.iterdir()}
    assert run_cli("run", "--input", path, "--ensemble", 8, "--seed", 5, "--out", out) == 0
    second = {p.name: p.read_bytes() for p in out.iterdir()}
    assert first == second


def test_emit_subsetting(tmp_path):
    path = synth_csv(tmp_path)
    out = tmp_path / "subset"
    assert run_cli(
        "run", "--input", path, "--ensemble", 4, "--seed", 1, "--out", out,
        "--emit", "report",
    ) == 0
    assert {p.name for p in out.iterdir()} == {
        "report.json", "pr.csv", "npr.csv", "manifest.json"
    }


def test_analyze_matches_in_memory_pipeline(tmp_path):
    path = synth_csv(tmp_path)
    out = tmp_path / "analysis"
    assert run_cli("analyze", "--input", path, "--ensemble", 12, "--seed", 9, "--out", out) == 0
    blob = json.loads((out / "report.json").read_text())

    panel = align(load_csv(path))
    C = correlate(panel_returns(panel))
    report = collective_report(C, 12, 9)
    np.testing.assert_allclose(blob["delta"], report.delta, atol=1e-8)
    np.testing.assert_allclose(blob["lambda"], report.eigenvalues, atol=1e-10)


def test_date_filter_excluding_everything_exits_2(tmp_path, capsys):
    path = synth_csv(tmp_path)
    code = run_cli(
        "run", "--input", path, "--out", tmp_path / "x",
        "--from", "2000-01-03", "--to", "2000-01-04",
    )
    assert code == 2
    err = capsys.readouterr().err
    assert "insufficient overlap" in err and "ingest" in err
    assert not (tmp_path / "x").exists() or not list((tmp_path / "x").iterdir())


def test_missing_input_exits_2(tmp_path, capsys):
    assert run_cli("run", "--input", tmp_path / "nope.csv", "--out", tmp_path / "y") == 2


def test_unwritable_out_dir_exits_4(tmp_path, capsys):
    path = synth_csv(tmp_path)
    # parent of --out is a regular file: mkdir raises an OS error
    assert run_cli("run", "--input", path, "--out", path / "sub", "--ensemble", 2) == 4


def test_rpr_matches_hand_computation(tmp_path, capsys):
    # 3x3 fixture, M=1, fixed seed: recompute delta from scratch with an
    # independent eigensolver, replaying only the documented shuffle stream
    from comovement import CorrelationMatrix

    values = np.array([[1.0, 0.5, 0.2], [0.5, 1.0, -0.1], [0.2, -0.1, 1.0]])
    C = CorrelationMatrix(labels=["aa", "bb", "cc"], values=values)
    fixture = tmp_path / "corr.csv"
    correlation_to_csv(C, fixture)

    seed = 123
    assert run_cli("rpr", "--input", fixture, "--ensemble", 1, "--seed", seed) == 0
    payload = json.loads(capsys.readouterr().out)

    def mean_pr(matrix):
        _, U = scipy.linalg.eigh(matrix)
        return float(np.mean(1.0 / np.sum(U**4, axis=0)))

    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed).spawn(1)[0]))
    iu = np.triu_indices(3, k=1)
    shuffled = np.zeros((3, 3))
    shuffled[iu] = rng.permutation(values[iu])
    shuffled = shuffled + shuffled.T
    np.fill_diagonal(shuffled, 1.0)
    expected = (mean_pr(shuffled) - mean_pr(values)) / mean_pr(shuffled)

    assert payload["delta"] == pytest.approx(expected, abs=1e-10)
    assert payload["delta_std"] == 0.0
    assert payload["ensemble_meta"] == {"count": 1, "seed": seed, "rng": "PCG64"}


def test_rpr_writes_json_file(tmp_path):
    C = gaussian_correlation(5, 40, seed=3)
    fixture = tmp_path / "corr.csv"
    correlation_to_csv(C, fixture)
    out = tmp_path / "rpr.json"
    assert run_cli("rpr", "--input", fixture, "--ensemble", 4, "--seed", 2, "--out", out) == 0
    blob = json.loads(out.read_text())
    assert set(blob) == {"delta", "delta_std", "ensemble_meta"}


def test_cluster_subcommand_newick_arity(tmp_path):
    C = gaussian_correlation(9, 50, seed=6)
    fixture = tmp_path / "corr.csv"
    correlation_to_csv(C, fixture)
    out = tmp_path / "clusters"
    assert run_cli("cluster", "--input", fixture, "--threshold", 0.3, "--out", out) == 0
    newick = (out / "dendrogram.newick").read_text()
    assert newick.count("(") == 8  # N-1 internal nodes
    blob = json.loads((out / "dendrogram.json").read_text())
    assert len(blob["merges"]) == 8
    assert sorted(blob["leaf_order"]) == list(range(9))


def test_synth_then_cluster_recovers_blocks(tmp_path):
    path = synth_csv(tmp_path, blocks="6:0.9,6:0.9", t=2000, seed=8)
    out = tmp_path / "full"
    assert run_cli("run", "--input", path, "--ensemble", 4, "--seed", 2, "--out", out) == 0
    rows = (out / "communities.csv").read_text().strip().splitlines()[1:]
    groups = {}
    for row in rows:
        label, cid = row.split(",")
        groups.setdefault(cid, []).append(label)
    communities = sorted(sorted(v) for v in groups.values())
    assert communities == [
        [f"A{i:03d}" for i in range(6)],
        [f"A{i:03d}" for i in range(6, 12)],
    ]


def test_numerical_failure_exits_3(tmp_path, monkeypatch, capsys):
    import comovement.cli as cli_module
    from comovement import NumericalError

    C = gaussian_correlation(4, 30, seed=1)
    fixture = tmp_path / "corr.csv"
    correlation_to_csv(C, fixture)

    def explode(*args, **kwargs):
        raise NumericalError("did not converge")

    monkeypatch.setattr(cli_module, "relative_participation_ratio", explode)
    assert run_cli("rpr", "--input", fixture, "--ensemble", 2, "--seed", 1) == 3
    assert "numerical error" in capsys.readouterr().err
