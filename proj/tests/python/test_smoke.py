"""Smoke tests for the Python facade: every exposed operation round-trips."""

import math
import os
import tempfile

import pytest

import helios


def test_special_functions():
    assert helios.bessel_j0(1.0) == pytest.approx(0.7651976865579666, abs=1e-12)
    assert helios.bessel_y0(1.0) == pytest.approx(0.08825696421567696, abs=1e-12)
    h = helios.hankel1_0(1.0)
    assert h.real == pytest.approx(0.7651976865579666, abs=1e-12)
    assert h.imag == pytest.approx(0.08825696421567696, abs=1e-12)
    with pytest.raises(ValueError):
        helios.bessel_y0(-1.0)


def test_forward_and_localization():
    sources = [(1.0, 0.0, 5.0)]
    trace = helios.measure(sources, 7.0, math.pi / 2, 51, 4.0, sigma=0.05, seed=3)
    assert len(trace) == 51
    assert trace[0][0] == pytest.approx(-math.pi / 2)

    peaks = helios.localize({4.0: trace}, 7.0, math.pi / 2, n_peaks=1)
    assert peaks[0][0] == pytest.approx(1.0, abs=1e-12)
    assert peaks[0][1] == pytest.approx(0.0, abs=1e-12)

    nx, ny, values = helios.indicator_grid({4.0: trace}, 7.0, math.pi / 2)
    assert (nx, ny) == (101, 101)
    assert len(values) == nx * ny
    assert all(0.0 <= v <= 1.0 for v in values)

    assert helios.mae([(3.0, 4.0)], [(0.0, 0.0)]) == pytest.approx(5.0)


def test_bounds():
    assert helios.prior_bound(4.0) == pytest.approx(1.0 / 60.0)
    root = helios.posterior_root(4.0, 6.0, theta=4.1715, lam=5.0)
    assert root == pytest.approx(1.0392e-2, rel=1e-3)


def test_densify_baselines():
    nodes = [(x, complex(x * x, -x)) for x in (-1.0, -0.5, 0.0, 0.5, 1.0)]
    for kind in ("pl", "pq", "poly"):
        dense = helios.densify(kind, nodes, [-1.0, -0.25, 0.5, 1.0])
        assert len(dense) == 4
        assert dense[0][1] == pytest.approx(complex(1.0, 1.0), abs=1e-12)
    with pytest.raises(ValueError):
        helios.densify("cubic", nodes, [0.0])


def test_dataset_training_round_trip():
    with tempfile.TemporaryDirectory() as tmp:
        data = os.path.join(tmp, "d.bin")
        model = os.path.join(tmp, "m.donx")
        n = helios.generate_dataset(
            data, 6.5, math.pi / 2, sensors=4, k=1.0, n_sources=1,
            n_cfg=20, n_aux=8, sigma=0.0, seed=5,
        )
        assert n == 160
        losses = helios.train_model(
            data, model, hidden=16, q=8, batch=32, iters=40, seed=5
        )
        assert len(losses) == 40
        assert all(math.isfinite(v) for v in losses)

        info = helios.model_info(model)
        assert "DONX v1" in info
        assert "sensor_count = 4" in info

        sparse = helios.measure([(0.3, -0.2, 6.0)], 6.5, math.pi / 2, 4, 1.0)
        dense = helios.predict_dense(model, sparse, n_points=32)
        assert len(dense) == 32
        assert all(math.isfinite(v.real) and math.isfinite(v.imag) for _, v in dense)


def test_experiment_report(tmp_path, monkeypatch):
    monkeypatch.setenv("HELIOS_OUT_DIR", str(tmp_path))
    params = helios.run_example_2_1(seed=3)
    assert params["prior_bound"].startswith("0.01666")
    assert (tmp_path / "example-2-1" / "3" / "report.txt").exists()
