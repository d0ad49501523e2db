import math

import numpy as np
import pytest

import hminlag

ELLIPSE = [[1], [2]]
SPHERE_CONE = [[1, 1], [1, 1], [1, -1]]


def test_lattice_values():
    lat = hminlag.lattice(SPHERE_CONE)
    assert lat["dual_basis"] == [["1/2", "1/2"], ["1/2", "-1/2"]]
    assert len(lat["gamma"]) == 4
    assert lat["free_action"]
    assert hminlag.lattice(ELLIPSE)["e"] == [3]


def test_hnf():
    assert hminlag.hermite_normal_form([[2, 0], [0, 2], [1, 1]]) == [[1, 1], [0, 2]]


def test_samples_and_geometry():
    us = hminlag.sample_points(ELLIPSE, [1.0], 20, seed=4)
    assert len(us) == 20
    for u in us:
        u = np.asarray(u)
        assert u[0] ** 2 + 2 * u[1] ** 2 == pytest.approx(1.0, abs=1e-12)
        y = np.array([0.3])
        z = hminlag.phi(ELLIPSE, [1.0], u, y)
        assert np.allclose(np.abs(z), np.abs(u))
        assert hminlag.lagrangian_defect(ELLIPSE, [1.0], u, y) < 1e-10
        h = np.asarray(hminlag.mean_curvature(ELLIPSE, [1.0], u, y))
        assert np.linalg.norm(h) == pytest.approx(3 / math.sqrt(u[0] ** 2 + 4 * u[1] ** 2), rel=1e-12)


def test_cp_curvature():
    rows = [[1], [1], [-2]]
    u = np.array([0.5, 0.5, math.sqrt(0.25)])
    u /= np.linalg.norm(u)
    assert hminlag.cp_mean_curvature_norm(rows, u, np.array([0.1])) < 1e-3


def test_classify():
    assert hminlag.classify(ELLIPSE, [1.0]) == "KleinBottle(2)"
    assert hminlag.classify(SPHERE_CONE, [1.0, 0.0]) == "SphereTimesTorus(3)"
    assert hminlag.classify_projective([[1], [2], [-3]]) == "KleinBottle(2)"


def test_analyze_report():
    cfg = {"name": "e", "n": 2, "k": 1, "E": ELLIPSE, "d": [1.0], "sample_count": 30, "scan_count": 200}
    report = hminlag.analyze(cfg, hminlag.SUITE_LATTICE | hminlag.SUITE_CLASSIFY)
    assert report["summary"]["all_pass"] is True
    assert report["topology"]["label"] == "KleinBottle(2)"


def test_config_error_raises():
    with pytest.raises(hminlag.HminlagError):
        hminlag.analyze({"n": 2, "k": 5, "E": ELLIPSE, "d": [1.0]})
