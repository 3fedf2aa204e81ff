"""Serialization of reports: stable JSON documents and delimited exports.

Reports are deterministic functions of (config, seed): keys are emitted in a
fixed order, floats use the shortest round-trip representation, and divergent
norms are encoded as {"divergent": true, "growth": [...]} rather than a JSON
infinity.
"""
from __future__ import annotations

import json

SCHEMA_VERSION = 1


def _sanitize(obj):
    import numpy as np

    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_sanitize(v) for v in obj.tolist()]
    return obj


def report_document(config: dict, body: dict, provenance: dict) -> dict:
    return _sanitize(
        {
            "schema_version": SCHEMA_VERSION,
            "config": config,
            **body,
            "provenance": provenance,
        }
    )


def dump_json(document: dict, path) -> None:
    with open(path, "w") as fh:
        json.dump(_sanitize(document), fh, indent=2)
        fh.write("\n")


def dump_block_csv(per_block_table, path) -> None:
    with open(path, "w") as fh:
        fh.write("k,value\n")
        for k, v in per_block_table:
            fh.write(f"{int(k)},{float(v)!r}\n")


def dump_trajectory_csv(estimate, path) -> None:
    with open(path, "w") as fh:
        fh.write("restart,iteration,ratio\n")
        for restart, iteration, ratio in estimate.trajectory_rows():
            fh.write(f"{restart},{iteration},{float(ratio)!r}\n")
