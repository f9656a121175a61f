import json
import math
import os
from pathlib import Path

import numpy as np
import pytest

import firstlook as fl

SOURCE = Path(os.environ.get("FIRSTLOOK_SOURCE_DIR", Path(__file__).resolve().parents[2]))


def table_camera():
    return fl.CameraModel.from_degrees(69.4, 45.0, 0.8, 0.8)


def test_overlap_steps_match_closed_form():
    d_hov, d_vov = fl.overlap_steps(table_camera(), 20.0)
    assert d_hov == pytest.approx(2 * math.tan(math.radians(69.4) / 2) * 20 * 0.2, rel=1e-12)
    assert d_vov == pytest.approx(2 * math.tan(math.radians(45.0) / 2) * 20 * 0.2, rel=1e-12)


def test_frame_and_errors():
    f = fl.compute_frame([0, 0, 0], [3, 0, 4])
    np.testing.assert_allclose(f.nu_x, [0.6, 0, 0.8], atol=1e-12)
    np.testing.assert_allclose(f.nu_z, [-0.8, 0, 0.6], atol=1e-12)
    with pytest.raises(fl.FirstLookError) as info:
        fl.compute_frame([0, 0, 0], [0, 0, 5])
    assert info.value.code == "DegenerateViewDirection"


def test_kd_index_matches_numpy():
    rng = np.random.default_rng(0)
    pts = rng.uniform(0, 100, size=(500, 3))
    index = fl.KdIndex(pts)
    assert len(index) == 500
    for q in rng.uniform(0, 100, size=(50, 3)):
        point, dist, pid = index.nearest(q)
        d = np.linalg.norm(pts - q, axis=1)
        assert pid == int(np.argmin(d))
        assert dist == pytest.approx(d.min(), rel=1e-12)


def test_predict_path_on_wall():
    y, z = np.meshgrid(np.arange(-20, 60, 0.1), np.arange(0, 20, 0.1))
    wall = np.column_stack([np.full(y.size, 20.0), y.ravel(), z.ravel()])
    steps = fl.predict_path(fl.Pose([0, 0, 10], 0.0), wall, fl.PlannerConfig(), table_camera())
    assert len(steps) == 5
    d_hov, _ = fl.overlap_steps(table_camera(), 20.0)
    for k, s in enumerate(steps, start=1):
        assert s.pose.position[1] == pytest.approx(k * d_hov, abs=0.2)
        assert abs(s.range - 20.0) < 0.2


def test_scan_and_cloud_to_cloud():
    params = fl.SurfaceParams()
    params.y_min, params.y_max = -30.0, 30.0
    mesh = fl.make_surface(fl.SurfaceKind.Plane, params)
    cloud = fl.scan(mesh, fl.Pose([0, 0, 30], 0.0))
    assert cloud.shape[1] == 3 and cloud.shape[0] > 100
    np.testing.assert_allclose(cloud[:, 0], 20.0, atol=1e-9)
    stats = fl.cloud_to_cloud(cloud, cloud)
    assert stats["mean"] == 0.0 and stats["max"] == 0.0
    assert fl.downsample(cloud, 10, 1).shape == (10, 3)


def test_run_and_replay(tmp_path):
    scenario = fl.parse_scenario(SOURCE / "tests" / "data" / "golden_scenario.yaml")
    status, report = fl.run_mission(scenario, tmp_path)
    assert status == "done"
    assert json.loads(report)["completed"] is True
    assert fl.replay(tmp_path / "run_log.csv") == report
