"""Command-line front end.

Subcommands: capacity-sweep, power-opt, construct, simulate-csi,
simulate-cdi.  Every run is driven by a flat key=value config file plus a
``--seed``; experiment commands refuse to run without a seed so there is no
silent nondeterminism.  Exit codes: 0 success, 2 configuration error,
3 runtime/numeric error.
"""

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from ._backend import kernel_backend
from .capacity import ChannelGains, optimize_power_allocation, secrecy_rate_curve
from .configfile import Field, format_kv, resolve
from .errors import AnpolarError, ConfigError
from .polar import construct_ga, construct_mc, select_info_set
from .precoding import orthonormal_decomposition
from .sim import (
    CdiExperimentConfig,
    CsiExperimentConfig,
    run_cdi_experiment,
    run_csi_experiment,
    sample_rayleigh_vector,
    substream,
)
from .tables import RunManifest, write_construction, write_tsv

_RESULT_COLUMNS = [
    "pair_id",
    "n",
    "block_length",
    "status",
    "bob_ber",
    "eve_ber",
    "secrecy_rate",
    "c_s",
    "k_bob",
    "k_eve",
    "secret_bits",
    "bob_bit_errors",
    "eve_bit_errors",
]

_SWEEP_SCHEMA = [
    Field("p_t", "float", required=True),
    Field("n_a", "int", default=2),
    Field("sigma_b_sq", "float", default=1.0),
    Field("sigma_e_sq", "float", default=1.0),
    Field("grid_points", "int", default=200),
    Field("num_pairs", "int", default=0),
    Field("h", "float_list", default=()),
    Field("g", "float_list", default=()),
    Field("seed", "int", default=None),
]

_POWER_SCHEMA = [
    Field("p_t", "float", required=True),
    Field("n_a", "int", default=None),
    Field("sigma_b_sq", "float", default=1.0),
    Field("sigma_e_sq", "float", default=1.0),
    Field("h", "float_list", default=()),
    Field("g", "float_list", default=()),
    Field("bob_gain", "float", default=None),
    Field("eve_gain", "float", default=None),
    Field("eve_an_gain", "float", default=None),
    Field("seed", "int", default=None),
]

_CONSTRUCT_SCHEMA = [
    Field("n_exponent", "int", required=True),
    Field("snr", "float", required=True),
    Field("method", "str", default="ga"),
    Field("samples", "int", default=20000),
    Field("k", "int", default=None),
    Field("seed", "int", default=None),
]

_CSI_SCHEMA = [
    Field("n_a", "int", default=4),
    Field("p_t", "float", default=3.0),
    Field("sigma_b_sq", "float", default=1.0),
    Field("sigma_e_sq", "float", default=1.0),
    Field("delta", "float", default=0.11),
    Field("n_exponents", "int_list", default=(4, 6, 8, 10)),
    Field("num_pairs", "int", default=100),
    Field("bits_per_pair", "int", default=1000),
    Field("construction", "str", default="ga"),
    Field("mc_samples", "int", default=20000),
    Field("seed", "int", default=None),
]

_CDI_SCHEMA = [
    Field("n_a", "int", default=4),
    Field("p_t", "float", default=5.0),
    Field("sigma_b_sq", "float", default=1.0),
    Field("sigma_e_sq_true", "float", default=1.0),
    Field("p0", "float", default=0.85),
    Field("delta", "float", default=0.14),
    Field("n_exponent", "int", default=12),
    Field("num_h", "int", default=30),
    Field("num_g_per_h", "int", default=30),
    Field("eta_samples", "int", default=20000),
    Field("bits_per_pair", "int", default=1000),
    Field("construction", "str", default="ga"),
    Field("mc_samples", "int", default=20000),
    Field("seed", "int", default=None),
]


def _load_config(args, schema):
    text = ""
    if args.config:
        path = Path(args.config)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        text = path.read_text(encoding="utf-8")
    return resolve(schema, text, overrides={"seed": args.seed})


def _require_seed(cfg, command):
    if cfg.get("seed") is None:
        raise ConfigError(f"{command} requires a seed (--seed or 'seed' in the config)")


def _out_dir(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _records_rows(records):
    return [
        (
            r.pair_id,
            r.n,
            1 << r.n,
            r.status,
            r.bob_ber,
            r.eve_ber,
            r.secrecy_rate,
            r.c_s,
            r.k_bob,
            r.k_eve,
            r.secret_bits,
            r.bob_bit_errors,
            r.eve_bit_errors,
        )
        for r in records
    ]


def cmd_capacity_sweep(args):
    cfg = _load_config(args, _SWEEP_SCHEMA)
    explicit = len(cfg["h"]) > 0
    if explicit:
        if len(cfg["h"]) != len(cfg["g"]):
            raise ConfigError("h and g must have the same length")
        pairs = [(np.array(cfg["h"]), np.array(cfg["g"]))]
        cfg = dict(cfg, n_a=len(cfg["h"]))
    else:
        if cfg["num_pairs"] < 1:
            raise ConfigError("provide h/g vectors or num_pairs >= 1")
        _require_seed(cfg, "capacity-sweep with random pairs")
        pairs = []
        for pair_id in range(cfg["num_pairs"]):
            rng = substream(cfg["seed"], pair_id, 0)
            pairs.append(
                (
                    sample_rayleigh_vector(cfg["n_a"], 1.0, rng),
                    sample_rayleigh_vector(cfg["n_a"], 1.0, rng),
                )
            )

    out = _out_dir(args)
    manifest = _manifest(out, "capacity-sweep", cfg, args, ["results.tsv"])
    rows = []
    grid = cfg["p_t"] * np.arange(1, cfg["grid_points"] + 1) / cfg["grid_points"]
    for pair_id, (h, g) in enumerate(pairs):
        basis = orthonormal_decomposition(h)
        gains = ChannelGains(
            bob_gain=float(h @ basis.p) ** 2,
            eve_gain=float(g @ basis.p) ** 2,
            eve_an_gain=float(np.sum((g @ basis.Z) ** 2)),
        )
        c_s, c_b, c_e = secrecy_rate_curve(
            gains, cfg["sigma_b_sq"], cfg["sigma_e_sq"], cfg["p_t"], cfg["n_a"], grid
        )
        for p_u, cb, ce, cs in zip(grid, c_b, c_e, c_s):
            rows.append((f"p{pair_id:03d}", p_u, cb, ce, cs))
    write_tsv(out / "results.tsv", ["pair_id", "p_u", "c_b", "c_e", "c_s"], rows)
    manifest.finalize()
    print(f"wrote {out / 'results.tsv'} ({len(rows)} rows)")
    return 0


def cmd_power_opt(args):
    cfg = _load_config(args, _POWER_SCHEMA)
    if len(cfg["h"]) > 0:
        h = np.array(cfg["h"])
        g = np.array(cfg["g"])
        if h.size != g.size:
            raise ConfigError("h and g must have the same length")
        basis = orthonormal_decomposition(h)
        gains = ChannelGains(
            bob_gain=float(h @ basis.p) ** 2,
            eve_gain=float(g @ basis.p) ** 2,
            eve_an_gain=float(np.sum((g @ basis.Z) ** 2)),
        )
        n_a = h.size
    else:
        missing = [k for k in ("bob_gain", "eve_gain", "eve_an_gain", "n_a") if cfg[k] is None]
        if missing:
            raise ConfigError(f"power-opt needs h/g or explicit gains; missing {missing}")
        gains = ChannelGains(cfg["bob_gain"], cfg["eve_gain"], cfg["eve_an_gain"])
        n_a = cfg["n_a"]
    opt = optimize_power_allocation(
        gains, cfg["sigma_b_sq"], cfg["sigma_e_sq"], cfg["p_t"], n_a
    )
    print(f"p_u_opt = {opt.p_u_opt!r}")
    print(f"p_v_opt = {opt.p_v_opt!r}")
    print(f"c_s_max = {opt.c_s_max!r}")
    print(f"feasible = {'true' if opt.feasible else 'false'}")
    return 0


def cmd_construct(args):
    cfg = _load_config(args, _CONSTRUCT_SCHEMA)
    if cfg["method"] not in ("ga", "mc"):
        raise ConfigError("method must be 'ga' or 'mc'")
    if cfg["n_exponent"] < 1 or cfg["n_exponent"] > 20:
        raise ConfigError("n_exponent must be in [1, 20]")
    if cfg["method"] == "mc":
        _require_seed(cfg, "construct with method=mc")
        if cfg["samples"] < 1:
            raise ConfigError("samples must be >= 1")
    out = _out_dir(args)
    manifest = _manifest(out, "construct", cfg, args, ["construction.json"])
    if cfg["method"] == "mc":
        cons = construct_mc(cfg["snr"], cfg["n_exponent"], cfg["samples"], cfg["seed"])
    else:
        cons = construct_ga(cfg["snr"], cfg["n_exponent"])
    if cfg["k"] is not None:
        cons = select_info_set(cons, cfg["k"])
    write_construction(out / "construction.json", cons)
    manifest.finalize()
    print(f"wrote {out / 'construction.json'}")
    return 0


def cmd_simulate_csi(args):
    cfg = _load_config(args, _CSI_SCHEMA)
    _require_seed(cfg, "simulate-csi")
    config = CsiExperimentConfig(**cfg)
    out = _out_dir(args)
    manifest = _manifest(out, "simulate-csi", cfg, args, ["results.tsv", "summary.tsv"])
    records, summary = run_csi_experiment(config, workers=_workers(args))
    write_tsv(out / "results.tsv", _RESULT_COLUMNS, _records_rows(records))
    write_tsv(
        out / "summary.tsv",
        ["n", "block_length", "bob_ber", "eve_ber", "pairs_ok", "pairs_skipped"],
        [
            (s["n"], s["block_length"], s["bob_ber"], s["eve_ber"], s["pairs_ok"], s["pairs_skipped"])
            for s in summary
        ],
    )
    manifest.finalize()
    for s in summary:
        print(
            f"N=2^{s['n']:<2d} bob_ber={s['bob_ber']:.3e} eve_ber={s['eve_ber']:.3e} "
            f"ok={s['pairs_ok']} skipped={s['pairs_skipped']}"
        )
    return 0


def cmd_simulate_cdi(args):
    cfg = _load_config(args, _CDI_SCHEMA)
    _require_seed(cfg, "simulate-cdi")
    config = CdiExperimentConfig(**cfg)
    out = _out_dir(args)
    manifest = _manifest(out, "simulate-cdi", cfg, args, ["results.tsv", "summary.tsv"])
    records, summary, _ = run_cdi_experiment(config, workers=_workers(args))
    write_tsv(out / "results.tsv", _RESULT_COLUMNS, _records_rows(records))
    write_tsv(
        out / "summary.tsv",
        ["series", "mean_ber", "frac_zero_ber", "pairs_ok", "pairs_skipped"],
        [
            (s["series"], s["mean_ber"], s["frac_zero_ber"], s["pairs_ok"], s["pairs_skipped"])
            for s in summary
        ],
    )
    manifest.finalize()
    for s in summary:
        print(
            f"{s['series']}: mean_ber={s['mean_ber']:.3e} frac_zero={s['frac_zero_ber']:.3f} "
            f"ok={s['pairs_ok']} skipped={s['pairs_skipped']}"
        )
    return 0


def _workers(args):
    # worker count affects scheduling only, never results
    if args.workers is not None:
        if args.workers < 1:
            raise ConfigError("--workers must be >= 1")
        return args.workers
    return os.cpu_count() or 1


def _manifest(out_dir, command, cfg, args, output_names):
    workers = _workers(args) if hasattr(args, "workers") else 1
    return RunManifest(
        out_dir / "manifest.json",
        command=command,
        config_text=format_kv(cfg),
        seed=cfg.get("seed"),
        workers=workers,
        version=__version__,
        backend=kernel_backend(),
        outputs=output_names,
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="anpolar",
        description="Secure polar coding over MISO wiretap fading channels",
    )
    parser.add_argument("--version", action="version", version=f"anpolar {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, with_workers=False):
        p = sub.add_parser(name)
        p.add_argument("--config", type=str, default=None, help="key=value config file")
        p.add_argument("--seed", type=int, default=None, help="master RNG seed")
        p.add_argument("--out", type=str, default=".", help="output directory")
        if with_workers:
            p.add_argument(
                "--workers",
                type=int,
                default=None,
                help="parallel workers (default: available cores; does not change results)",
            )
        p.set_defaults(fn=fn)
        return p

    add("capacity-sweep", cmd_capacity_sweep)
    add("power-opt", cmd_power_opt)
    add("construct", cmd_construct)
    add("simulate-csi", cmd_simulate_csi, with_workers=True)
    add("simulate-cdi", cmd_simulate_cdi, with_workers=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (AnpolarError, ValueError, FloatingPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
