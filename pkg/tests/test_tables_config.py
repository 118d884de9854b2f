import math

import numpy as np
import pytest

from anpolar.configfile import Field, format_kv, parse_kv_text, resolve
from anpolar.errors import ConfigError
from anpolar.polar import construct_ga, construct_mc, select_info_set
from anpolar.tables import (
    RunManifest,
    read_construction,
    read_manifest,
    read_tsv,
    write_construction,
    write_tsv,
)

SCHEMA = [
    Field("p_t", "float", required=True),
    Field("n_a", "int", default=2),
    Field("name", "str", default="x"),
    Field("flag", "bool", default=False),
    Field("lengths", "int_list", default=()),
    Field("seed", "int", default=None),
]


def test_parse_kv_basics():
    values, lines = parse_kv_text("a = 1\n# comment\n\nb = two # trailing\n")
    assert values == {"a": "1", "b": "two"}
    assert lines["b"] == 4


def test_parse_kv_errors_carry_line_numbers():
    with pytest.raises(ConfigError, match="line 2"):
        parse_kv_text("a = 1\nnot a pair\n")
    with pytest.raises(ConfigError, match="duplicate"):
        parse_kv_text("a = 1\na = 2\n")


def test_resolve_types_and_defaults():
    cfg = resolve(SCHEMA, "p_t = 2.5\nlengths = 4, 6,8\nflag = true\n")
    assert cfg["p_t"] == 2.5
    assert cfg["lengths"] == (4, 6, 8)
    assert cfg["flag"] is True
    assert cfg["n_a"] == 2


def test_resolve_rejects_unknown_keys():
    with pytest.raises(ConfigError, match="unknown config keys.*line 1"):
        resolve(SCHEMA, "p_tt = 2.5\np_t = 1.0\n")


def test_resolve_missing_required_and_bad_type():
    with pytest.raises(ConfigError, match="missing required"):
        resolve(SCHEMA, "n_a = 4\n")
    with pytest.raises(ConfigError, match="line 1"):
        resolve(SCHEMA, "p_t = abc\n")


def test_resolve_overrides_take_precedence():
    cfg = resolve(SCHEMA, "p_t = 1.0\nseed = 3\n", overrides={"seed": 99})
    assert cfg["seed"] == 99
    cfg = resolve(SCHEMA, "p_t = 1.0\nseed = 3\n", overrides={"seed": None})
    assert cfg["seed"] == 3


def test_format_kv_round_trips_floats():
    text = format_kv({"x": 0.1 + 0.2, "lengths": (4, 8), "flag": True, "n": 7})
    values, _ = parse_kv_text(text)
    assert float(values["x"]) == 0.1 + 0.2
    assert values["flag"] == "true"


def test_tsv_round_trips_binary64(tmp_path):
    path = tmp_path / "t.tsv"
    vals = [0.1, 1.0 / 3.0, 6.04e-3, math.pi, float("nan"), 5.01e-1]
    write_tsv(path, ["a", "b"], [(i, v) for i, v in enumerate(vals)])
    header, rows = read_tsv(path)
    assert header == ["a", "b"]
    for (i, v), row in zip(enumerate(vals), rows):
        back = float(row[1])
        assert back == v or (math.isnan(back) and math.isnan(v))
        assert np.float64(back).tobytes() == np.float64(v).tobytes()


def test_construction_cache_round_trip(tmp_path):
    cons = select_info_set(construct_mc(1.37, 6, 2000, seed=21), 40)
    path = tmp_path / "cons.json"
    write_construction(path, cons)
    back = read_construction(path)
    assert back.n == cons.n
    assert back.method == "mc"
    assert back.num_samples == 2000
    assert back.seed == 21
    assert back.snr == cons.snr
    assert np.array_equal(back.info_set, cons.info_set)
    assert back.reliability.tobytes() == cons.reliability.tobytes()


def test_construction_cache_rejects_foreign_files(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"format": "something-else"}')
    with pytest.raises(ValueError):
        read_construction(path)


def test_ga_construction_round_trip(tmp_path):
    cons = construct_ga(2.25, 8)
    path = tmp_path / "ga.json"
    write_construction(path, cons)
    back = read_construction(path)
    assert back.reliability.tobytes() == cons.reliability.tobytes()


def test_partition_record_round_trip(tmp_path):
    from anpolar.tables import read_partition_record, write_partition_record
    from anpolar.wiretap import build_partition, partition_record

    bob = construct_ga(4.0, 4)
    eve = construct_ga(0.25, 4)
    part = build_partition(bob, eve, 10, 3)
    record = partition_record(part, bob, eve)
    path = tmp_path / "partition.json"
    write_partition_record(path, record)
    back = read_partition_record(path)
    assert back == record
    with pytest.raises(ValueError):
        write_partition_record(path, {"format": "other"})


def test_manifest_lifecycle(tmp_path):
    path = tmp_path / "manifest.json"
    manifest = RunManifest(
        path,
        command="simulate-csi",
        config_text="p_t = 3.0\n",
        seed=7,
        workers=2,
        version="0.1.0",
        backend="py",
        outputs=["results.tsv"],
    )
    early = read_manifest(path)
    assert early["status"] == "running"
    assert early["seed"] == 7
    manifest.finalize()
    done = read_manifest(path)
    assert done["status"] == "complete"
    assert done["duration_seconds"] >= 0
    assert done["config_text"] == "p_t = 3.0\n"
    assert done["assumptions"]["eve_knows_an_realization"] is False
