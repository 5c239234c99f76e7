"""Quantum Darwinism on qubit interaction digraphs."""

import csv
import io
import json

from ._qdarwin import (
    NumericalError,
    ValidationError,
    artifact_version,
    dimension_formula,
    dims,
)
from . import _qdarwin

__all__ = [
    "NumericalError",
    "ValidationError",
    "artifact_version",
    "canonical_config",
    "config_hash",
    "dimension_formula",
    "dims",
    "run",
]


def _dump(config):
    return config if isinstance(config, str) else json.dumps(config)


def run(config, with_state=False):
    """Run one experiment. Returns a dict with 'summary', 'pip' rows and optionally 'state'."""
    raw = _qdarwin.run(_dump(config), with_state)
    rows = [{k: (int(v) if k == "L" else float(v)) for k, v in r.items()}
            for r in csv.DictReader(io.StringIO(raw["pip_csv"]))]
    out = {"summary": json.loads(raw["summary"]), "pip": rows, "pip_csv": raw["pip_csv"]}
    if with_state:
        out["state"] = raw["state"]
    return out


def config_hash(config):
    return _qdarwin.config_hash(_dump(config))


def canonical_config(config):
    return json.loads(_qdarwin.canonical_config(_dump(config)))
