"""Smoke tests for the _ergo pybind11 module (run by ctest with PYTHONPATH set)."""

import json
import math
import os

import pytest

import _ergo as ergo

DATA_DIR = os.environ.get("ERGO_DATA_DIR", "")


def test_version():
    assert ergo.__version__


def test_resample_midpoint():
    assert ergo.resample([0.0, 1.0], [0.0, 10.0], [0.5]) == [5.0]


def test_resample_out_of_range_raises():
    with pytest.raises(ergo.ErgoError):
        ergo.resample([0.0, 1.0], [0.0, 10.0], [2.0])


def test_frame_and_pose():
    frame = ergo.build_frame([0, 0, 0], [1, 0, 0], [0, 1, 0])
    assert frame.axes[2] == pytest.approx([0, 0, 1])
    elevation, plane, undefined = ergo.shoulder_pose([0, 0, 1], [0.3, 0, 1], frame)
    assert elevation == pytest.approx(90.0)
    assert plane == pytest.approx(0.0)
    assert not undefined


def test_cable_force_right_angle():
    points = [[0, 0, 0], [1, 0, 0], [1, 1, 0], [1, 2, 0], [1, 3, 0], [1, 4, 0]]
    wraps = ergo.cable_wrap_angles(points)
    assert wraps[0] == pytest.approx(math.pi / 2)
    force = ergo.node_force(points, 100.0, 1)
    magnitude = math.sqrt(sum(c * c for c in force))
    assert magnitude == pytest.approx(100.0 * math.sqrt(2.0))
    assert ergo.node_pressure(magnitude, 0.002) == pytest.approx(magnitude / 0.002)


def test_quad_area_unit_square():
    area, gap = ergo.quad_area([0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0])
    assert area == pytest.approx(1.0)
    assert gap == pytest.approx(0.0, abs=1e-12)


def test_cuff_solver_round_trip():
    radius, theta = 0.045, 0.6
    chord = 2 * radius * math.sin(theta)
    arc = radius * (2 * math.pi - 2 * theta)
    assert ergo.solve_cuff_radius(chord, arc) == pytest.approx(radius, rel=1e-9)
    assert ergo.cuff_dv(0.96 * radius, radius) == pytest.approx(0.0784)


def test_hysteresis_circle():
    n = 1000
    x = [math.cos(2 * math.pi * i / n) for i in range(n)]
    y = [math.sin(2 * math.pi * i / n) for i in range(n)]
    area, orientation = ergo.hysteresis_loop(x, y)
    assert area == pytest.approx(math.pi, rel=0.01)
    assert orientation == 1


@pytest.mark.skipif(not DATA_DIR, reason="ERGO_DATA_DIR not set")
def test_full_pipeline(tmp_path):
    scenario = os.path.join(DATA_DIR, "scenarios", "constant-tension.json")
    dataset = str(tmp_path / "dataset")
    assert ergo.synth(scenario, dataset) == 0
    assert ergo.verify(dataset) == 0

    out = str(tmp_path / "out")
    assert ergo.analyze(
        os.path.join(dataset, "config.json"),
        os.path.join(dataset, "markers.csv"),
        os.path.join(dataset, "sensors.csv"),
        out,
    ) == 0
    summary = json.load(open(os.path.join(out, "summary.json")))
    assert summary["overall"]["max_pressure_node"] == "p2"
    assert ergo.report(out, str(tmp_path / "report")) == 0
