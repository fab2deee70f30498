"""Fundamental gap experiments for -Laplacian + V on convex domains."""

import json
import os

import numpy as np

from ._core import (
    ConfigError,
    DomainError,
    HypothesisFailed,
    SolverError,
    csv_header,
    theta,
    beta_bound,
    deficit_bound,
)
from . import _core

__all__ = [
    "ConfigError",
    "DomainError",
    "HypothesisFailed",
    "SolverError",
    "converge",
    "csv_header",
    "oracle",
    "run",
    "solve",
    "sweep",
    "theta",
    "beta_bound",
    "deficit_bound",
]


def _text(config):
    if isinstance(config, dict):
        return json.dumps(config)
    if isinstance(config, (str, os.PathLike)) and os.path.isfile(config):
        with open(config, encoding="utf-8") as f:
            return f.read()
    if isinstance(config, str):
        return config
    raise TypeError("config must be a dict, a JSON string or a path")


def run(config):
    """Run one configuration and return the report as a dict."""
    return json.loads(_core.run_json(_text(config)))


def sweep(config, axis, values):
    """One run per value; returns (rows, csv_text)."""
    doc, csv = _core.sweep_json(_text(config), axis, [float(v) for v in values])
    return json.loads(doc)["rows"], csv


def converge(config, levels):
    """Grid refinement table as a dict."""
    return json.loads(_core.converge_json(_text(config), int(levels)))


def oracle(config):
    """Iterative versus dense eigenvalues as a dict."""
    return json.loads(_core.oracle_json(_text(config)))


def solve(config):
    """Two lowest eigenpairs; nodal arrays are numpy arrays."""
    out = _core.solve(_text(config))
    for key in ("points", "u1", "u2", "potential"):
        out[key] = np.asarray(out[key])
    return out
