"""Self-dual instanton identities in harmonic space, checked numerically."""

import json

import numpy as np

from ._twistor import (
    ChargeMismatch,
    GridTooCoarse,
    NotInImage,
    StepTooLarge,
    ZeroModeAmbiguous,
    analyticity_residual,
    bpst_connection,
    chern_density,
    commutator_check,
    flatness_residual,
    monomial_integral,
    prepotential,
    reconstruct_connection,
    self_duality_ratio,
    series_terms,
    topological_charge,
    transgression,
    transgression_closed_form,
)
from . import _twistor

SERIES_DIRECTION = np.array([0.5, -0.5, 0.5, 0.5])


def series_point(t, rho=1.0):
    """A point with |x|^2/rho^2 = t, off every coordinate axis."""
    return np.sqrt(t) * rho * SERIES_DIRECTION


def verify_theorem(rho=1.0, r_max=None, n=400, order=30, mode="series"):
    """Radial check of ch = sigma * Laplacian^2 T; returns the report as a dict."""
    return json.loads(_twistor._verify_theorem(rho, r_max or 8.0 * rho, n, order, mode))


def run_identity_suite(seed=20240601, groups=(), corrupt_epsilon=False):
    return json.loads(_twistor._run_identity_suite(seed, list(groups), corrupt_epsilon))


def execute(command, **options):
    """Same as the command-line tool; options use RunConfig field names."""
    config = {
        "command": command,
        "rho": 1.0,
        "order": 30,
        "r_max": None,
        "n": None,
        "stretch": 4.0,
        "fd_step": 0.0,
        "seed": 20240601,
        "format": "json",
        "mode": "series",
        "groups": [],
        "point": None,
        "t": None,
    }
    config.update(options)
    if config["r_max"] is None:
        config["r_max"] = (100.0 if command == "charge" else 8.0) * config["rho"]
    if config["n"] is None:
        config["n"] = 4000 if command == "charge" else 400
    if config["point"] is not None:
        config["point"] = [float(v) for v in config["point"]]
    return json.loads(_twistor._execute(json.dumps(config)))


__all__ = [name for name in dir() if not name.startswith("_")]
