"""Lagrangian immersions from integer quadric systems."""

import json

from ._core import (
    SUITE_CLASSIFY,
    SUITE_CN,
    SUITE_CPN,
    SUITE_LATTICE,
    SUITE_SCAN,
    HminlagError,
    analyze_json,
    classify,
    classify_projective,
    cp_mean_curvature_norm,
    hermite_normal_form,
    lagrangian_defect,
    lattice,
    mean_curvature,
    mean_curvature_oracle,
    phi,
    sample_points,
)

__version__ = "0.3.0"


def analyze(config, suites=0):
    """Run the analysis on a config dict and return the report as a dict."""
    return json.loads(analyze_json(json.dumps(config), suites))


__all__ = [
    "SUITE_CLASSIFY",
    "SUITE_CN",
    "SUITE_CPN",
    "SUITE_LATTICE",
    "SUITE_SCAN",
    "HminlagError",
    "analyze",
    "analyze_json",
    "classify",
    "classify_projective",
    "cp_mean_curvature_norm",
    "hermite_normal_form",
    "lagrangian_defect",
    "lattice",
    "mean_curvature",
    "mean_curvature_oracle",
    "phi",
    "sample_points",
]
