"""Result tables, construction cache files, and run manifests.

Tables are tab-separated text with a header row, ``.`` decimal separator,
and full binary64 round-trip formatting (``repr``) for floats, so re-parsing
a file reproduces the exact bit patterns.  The construction cache and the
manifest are JSON; Python's JSON float rendering is repr-based and therefore
also lossless.
"""

import json
import time
from pathlib import Path

import numpy as np

from .polar import PolarConstruction


def format_cell(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def write_tsv(path, header, rows):
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("\t".join(header) + "\n")
        for row in rows:
            fh.write("\t".join(format_cell(cell) for cell in row) + "\n")


def read_tsv(path):
    """Returns (header, rows) with cells kept as strings."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ValueError(f"{path}: empty table")
    header = lines[0].split("\t")
    return header, [line.split("\t") for line in lines[1:] if line]


def write_construction(path, construction: PolarConstruction):
    record = {
        "format": "anpolar-construction",
        "version": 1,
        "n": construction.n,
        "snr": construction.snr,
        "method": construction.method,
        "num_samples": construction.num_samples,
        "seed": construction.seed,
        "info_set": [int(i) for i in construction.info_set],
        "reliability": [float(r) for r in construction.reliability],
    }
    Path(path).write_text(json.dumps(record, indent=1) + "\n", encoding="utf-8")


def read_construction(path) -> PolarConstruction:
    record = json.loads(Path(path).read_text(encoding="utf-8"))
    if record.get("format") != "anpolar-construction":
        raise ValueError(f"{path}: not a construction cache file")
    return PolarConstruction(
        n=int(record["n"]),
        reliability=np.array(record["reliability"], dtype=np.float64),
        info_set=np.array(record["info_set"], dtype=np.int64),
        snr=float(record["snr"]),
        method=str(record["method"]),
        num_samples=int(record["num_samples"]),
        seed=record["seed"],
    )


def write_partition_record(path, record: dict):
    """Persist a wiretap partition export record (see wiretap.partition_record)."""
    if record.get("format") != "anpolar-partition":
        raise ValueError("not a partition export record")
    Path(path).write_text(json.dumps(record, indent=1) + "\n", encoding="utf-8")


def read_partition_record(path) -> dict:
    record = json.loads(Path(path).read_text(encoding="utf-8"))
    if record.get("format") != "anpolar-partition":
        raise ValueError(f"{path}: not a partition export record")
    return record


class RunManifest:
    """Manifest written before results are finalized, then completed.

    Captures everything needed to reproduce the run bitwise: command name,
    resolved config (as canonical key=value text), master seed, tool
    version, kernel backend, and the output paths.  Wall-clock duration and
    status are filled in by :meth:`finalize`.
    """

    def __init__(self, path, command, config_text, seed, workers, version, backend, outputs):
        self.path = Path(path)
        self._started = time.perf_counter()
        self.data = {
            "tool": "anpolar",
            "version": version,
            "command": command,
            "seed": seed,
            "workers": workers,
            "backend": backend,
            "config_text": config_text,
            "outputs": outputs,
            "assumptions": {
                "eve_knows_an_realization": False,
                "eve_knows_own_noise_variance": True,
            },
            "status": "running",
            "duration_seconds": None,
        }
        self._write()

    def _write(self):
        self.path.write_text(
            json.dumps(self.data, indent=1, sort_keys=True) + "\n", encoding="utf-8"
        )

    def finalize(self):
        self.data["status"] = "complete"
        self.data["duration_seconds"] = time.perf_counter() - self._started
        self._write()


def read_manifest(path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))
