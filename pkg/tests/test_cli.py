import json

import numpy as np
import pytest

from anpolar.cli import main
from anpolar.tables import read_construction, read_manifest, read_tsv


def run_cli(*args):
    return main(list(args))


def write_config(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_unknown_subcommand_exits_2(capsys):
    assert run_cli("frobnicate") == 2
    capsys.readouterr()


def test_capacity_sweep_explicit_pair(tmp_path):
    cfg = write_config(tmp_path, "p_t = 10.0\nh = 1.0, 0.4\ng = 0.2, 0.9\ngrid_points = 50\n")
    assert run_cli("capacity-sweep", "--config", cfg, "--out", str(tmp_path)) == 0
    header, rows = read_tsv(tmp_path / "results.tsv")
    assert header == ["pair_id", "p_u", "c_b", "c_e", "c_s"]
    assert len(rows) == 50
    # raw secrecy capacity may be negative; never NaN
    assert all(np.isfinite(float(r[4])) for r in rows)


def test_capacity_sweep_no_eavesdropper_means_cs_equals_cb(tmp_path):
    cfg = write_config(tmp_path, "p_t = 5.0\nh = 1.0, 0.0\ng = 0.0, 0.0\ngrid_points = 20\n")
    assert run_cli("capacity-sweep", "--config", cfg, "--out", str(tmp_path)) == 0
    _, rows = read_tsv(tmp_path / "results.tsv")
    for r in rows:
        assert float(r[4]) == pytest.approx(float(r[1 + 1]), abs=1e-12)  # c_s == c_b


def test_capacity_sweep_random_pairs_require_seed(tmp_path, capsys):
    cfg = write_config(tmp_path, "p_t = 10.0\nnum_pairs = 2\n")
    assert run_cli("capacity-sweep", "--config", cfg, "--out", str(tmp_path)) == 2
    assert "seed" in capsys.readouterr().err
    assert run_cli("capacity-sweep", "--config", cfg, "--seed", "5", "--out", str(tmp_path)) == 0


def test_capacity_sweep_seeded_pairs_show_interior_maximum(tmp_path):
    cfg = write_config(tmp_path, "p_t = 10.0\nnum_pairs = 3\nn_a = 2\ngrid_points = 120\n")
    assert run_cli("capacity-sweep", "--config", cfg, "--seed", "7", "--out", str(tmp_path)) == 0
    _, rows = read_tsv(tmp_path / "results.tsv")
    interior = 0
    for pid in sorted({r[0] for r in rows}):
        cs = [float(r[4]) for r in rows if r[0] == pid]
        best = cs.index(max(cs))
        if 0 < best < len(cs) - 1 and cs[best] > 0:
            interior += 1
    assert interior >= 1


def test_capacity_sweep_budget_growth_recovers_case3(tmp_path):
    # a pair that is infeasible at P_t=10 gains a positive maximum at P_t=20
    base = (
        "h = -1.20599977, -1.06834465\ng = 1.67576729, 2.00267356\n"
        "sigma_b_sq = 1.0\nsigma_e_sq = 0.25\ngrid_points = 400\n"
    )
    cfg10 = write_config(tmp_path, "p_t = 10.0\n" + base, "c10.cfg")
    cfg20 = write_config(tmp_path, "p_t = 20.0\n" + base, "c20.cfg")
    out10 = tmp_path / "o10"
    out20 = tmp_path / "o20"
    assert run_cli("capacity-sweep", "--config", cfg10, "--out", str(out10)) == 0
    assert run_cli("capacity-sweep", "--config", cfg20, "--out", str(out20)) == 0
    _, rows10 = read_tsv(out10 / "results.tsv")
    _, rows20 = read_tsv(out20 / "results.tsv")
    max10 = max(float(r[4]) for r in rows10)
    max20 = max(float(r[4]) for r in rows20)
    assert max10 <= 0.0
    assert max20 > 0.0


def test_power_opt_with_gains(tmp_path, capsys):
    cfg = write_config(
        tmp_path, "p_t = 10.0\nn_a = 4\nbob_gain = 4.0\neve_gain = 0.0\neve_an_gain = 0.5\n"
    )
    assert run_cli("power-opt", "--config", cfg) == 0
    out = capsys.readouterr().out
    assert "feasible = true" in out
    p_u = float(out.splitlines()[0].split("=")[1])
    assert p_u == pytest.approx(10.0, rel=1e-3)


def test_power_opt_missing_inputs(tmp_path, capsys):
    cfg = write_config(tmp_path, "p_t = 10.0\n")
    assert run_cli("power-opt", "--config", cfg) == 2
    capsys.readouterr()


def test_construct_ga_zero_snr_all_half(tmp_path):
    cfg = write_config(tmp_path, "n_exponent = 5\nsnr = 0.0\nmethod = ga\n")
    assert run_cli("construct", "--config", cfg, "--out", str(tmp_path)) == 0
    cons = read_construction(tmp_path / "construction.json")
    assert np.allclose(cons.reliability, 0.5)


def test_construct_mc_deterministic_files(tmp_path):
    cfg = write_config(tmp_path, "n_exponent = 6\nsnr = 1.5\nmethod = mc\nsamples = 2000\n")
    out1 = tmp_path / "a"
    out2 = tmp_path / "b"
    assert run_cli("construct", "--config", cfg, "--seed", "42", "--out", str(out1)) == 0
    assert run_cli("construct", "--config", cfg, "--seed", "42", "--out", str(out2)) == 0
    assert (out1 / "construction.json").read_bytes() == (out2 / "construction.json").read_bytes()


def test_construct_mc_requires_seed(tmp_path, capsys):
    cfg = write_config(tmp_path, "n_exponent = 6\nsnr = 1.5\nmethod = mc\n")
    assert run_cli("construct", "--config", cfg, "--out", str(tmp_path)) == 2
    capsys.readouterr()


def test_config_rejects_unknown_keys(tmp_path, capsys):
    cfg = write_config(tmp_path, "n_exponent = 6\nsnr = 1.5\nmethod = ga\ntypo_key = 1\n")
    assert run_cli("construct", "--config", cfg, "--out", str(tmp_path)) == 2
    err = capsys.readouterr().err
    assert "typo_key" in err and "line 4" in err


def test_simulate_csi_end_to_end(tmp_path, capsys):
    cfg = write_config(
        tmp_path,
        "n_a = 2\np_t = 3.0\nn_exponents = 6, 8\nnum_pairs = 3\nbits_per_pair = 200\n",
    )
    out = tmp_path / "run"
    assert run_cli("simulate-csi", "--config", cfg, "--seed", "6", "--out", str(out)) == 0
    capsys.readouterr()
    header, rows = read_tsv(out / "results.tsv")
    assert header[:6] == ["pair_id", "n", "block_length", "status", "bob_ber", "eve_ber"]
    assert len(rows) == 6
    sheader, srows = read_tsv(out / "summary.tsv")
    assert sheader == ["n", "block_length", "bob_ber", "eve_ber", "pairs_ok", "pairs_skipped"]
    manifest = read_manifest(out / "manifest.json")
    assert manifest["status"] == "complete"
    assert manifest["command"] == "simulate-csi"
    assert manifest["seed"] == 6


def test_simulate_csi_missing_seed_is_config_error(tmp_path, capsys):
    cfg = write_config(tmp_path, "num_pairs = 2\n")
    assert run_cli("simulate-csi", "--config", cfg, "--out", str(tmp_path)) == 2
    capsys.readouterr()


def test_simulate_csi_reproducible_and_worker_independent(tmp_path, capsys):
    cfg = write_config(
        tmp_path,
        "n_a = 2\np_t = 3.0\nn_exponents = 6\nnum_pairs = 4\nbits_per_pair = 100\nseed = 9\n",
    )
    outs = []
    for name, workers in (("w1", "1"), ("w2", "2"), ("w8", "8")):
        out = tmp_path / name
        assert (
            run_cli("simulate-csi", "--config", cfg, "--workers", workers, "--out", str(out)) == 0
        )
        outs.append((out / "results.tsv").read_bytes())
    capsys.readouterr()
    assert outs[0] == outs[1] == outs[2]


def test_simulate_csi_rerun_from_manifest(tmp_path, capsys):
    cfg = write_config(
        tmp_path, "n_a = 2\nn_exponents = 6\nnum_pairs = 2\nbits_per_pair = 100\n"
    )
    first = tmp_path / "first"
    assert run_cli("simulate-csi", "--config", cfg, "--seed", "31", "--out", str(first)) == 0
    manifest = read_manifest(first / "manifest.json")
    replay_cfg = tmp_path / "replay.cfg"
    replay_cfg.write_text(manifest["config_text"])
    second = tmp_path / "second"
    assert (
        run_cli(
            "simulate-csi",
            "--config",
            str(replay_cfg),
            "--seed",
            str(manifest["seed"]),
            "--out",
            str(second),
        )
        == 0
    )
    capsys.readouterr()
    assert (first / "results.tsv").read_bytes() == (second / "results.tsv").read_bytes()
    assert (first / "summary.tsv").read_bytes() == (second / "summary.tsv").read_bytes()


def test_simulate_cdi_end_to_end(tmp_path, capsys):
    cfg = write_config(
        tmp_path,
        "n_a = 2\nn_exponent = 7\nnum_h = 2\nnum_g_per_h = 2\neta_samples = 2000\n"
        "bits_per_pair = 100\n",
    )
    out = tmp_path / "cdi"
    assert run_cli("simulate-cdi", "--config", cfg, "--seed", "3", "--out", str(out)) == 0
    capsys.readouterr()
    _, rows = read_tsv(out / "results.tsv")
    assert len(rows) == 4
    sheader, srows = read_tsv(out / "summary.tsv")
    assert sheader == ["series", "mean_ber", "frac_zero_ber", "pairs_ok", "pairs_skipped"]
    assert {r[0] for r in srows} == {"bob", "eve"}


def test_missing_config_file(tmp_path, capsys):
    assert run_cli("simulate-csi", "--config", str(tmp_path / "nope.cfg"), "--seed", "1") == 2
    capsys.readouterr()


def test_version_flag(capsys):
    assert run_cli("--version") == 0
    assert "anpolar" in capsys.readouterr().out
