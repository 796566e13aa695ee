"""Smoke tests for the python bindings: each main operation is exercised once
with cheap parameters; heavy numerical validation lives in the C++ suite."""

import json
import math
import os

import pytest

import bsdelab


def test_version_string():
    assert bsdelab.__version__ == "0.1.0"


def test_abs_envelopes_collapse_onto_base():
    g = bsdelab.Generator.abs_z()
    lower = bsdelab.Envelope(g, 4.0, bsdelab.EnvelopeSide.Lower)
    upper = bsdelab.Envelope(g, 4.0, bsdelab.EnvelopeSide.Upper)
    for z in [-2.0, -0.3, 0.0, 0.7, 1.9]:
        assert lower.eval1(0.0, z) == abs(z)
        assert upper.eval1(0.0, z) == abs(z)


def test_power_envelope_sandwich_and_radius():
    g = bsdelab.Generator.power_z(1.5, 2.0 / 3.0)
    n = 8.0
    lower = bsdelab.Envelope(g, n, bsdelab.EnvelopeSide.Lower)
    upper = bsdelab.Envelope(g, n, bsdelab.EnvelopeSide.Upper)
    assert lower.radius == pytest.approx(bsdelab.search_radius(g, n))
    for k in range(-30, 31):
        z = k / 10.0
        base = g.eval1(0.0, z)
        assert lower.eval1(0.0, z) <= base <= upper.eval1(0.0, z)


def test_envelope_property_suite():
    g = bsdelab.Generator.power_z(1.5, 2.0 / 3.0)
    out = bsdelab.verify_envelope_properties(g, [4.0, 8.0], step=0.25, seed=1)
    assert out["pass"] is True
    assert out["num_violations"] == 0
    assert len(out["rows"]) == 2
    assert out["rows"][0]["max_gap"] <= out["rows"][0]["pointwise_gap_bound"] + 1e-9


def test_solver_heat_oracle():
    # Zero driver with terminal x^2: the value at the origin is exactly T.
    grid = bsdelab.GridConfig(
        T=0.1, num_time_steps=64, domain_half_width=3.0, num_space_points=61,
        lipschitz_cap=1.0,
    )
    out = bsdelab.solve_fd(
        bsdelab.Generator.zero(),
        bsdelab.TerminalCondition.polynomial([0.0, 0.0, 1.0]),
        grid,
    )
    assert out["y0"] == pytest.approx(0.1, abs=2e-3)


def test_grid_helpers():
    grid = bsdelab.GridConfig(
        T=0.1, num_time_steps=64, domain_half_width=3.0, num_space_points=61,
        lipschitz_cap=1.0,
    )
    coarse = bsdelab.half_resolution(grid)
    assert coarse.num_space_points == 31
    assert coarse.num_time_steps == bsdelab.min_time_steps(0.1, coarse.dx(), 1.0)
    with pytest.raises(ValueError):
        bad = bsdelab.GridConfig(
            T=1.0, num_time_steps=4, domain_half_width=3.0, num_space_points=601,
            lipschitz_cap=1.0,
        )
        bad.validate()


def test_path_bundle_and_stats():
    bundle = bsdelab.PathBundle(7, 2000, 16, 1.0)
    stats = bsdelab.path_bundle_stats(bundle)
    assert stats["mean_within_tolerance"] is True
    assert 0.8 < stats["var_terminal"] < 1.2
    again = bsdelab.PathBundle(7, 2000, 16, 1.0)
    assert bundle.terminal_values() == again.terminal_values()


def test_squeeze_small():
    grid = bsdelab.GridConfig(
        T=0.1, num_time_steps=96, domain_half_width=3.0, num_space_points=61,
        lipschitz_cap=8.0,
    )
    out = bsdelab.run_squeeze(
        bsdelab.Generator.abs_z(),
        bsdelab.TerminalCondition.cosine(),
        grid,
        [2.0, 4.0, 8.0],
        seed=3,
    )
    assert out["pass"] is True
    assert [row["gap"] for row in out["rows"]] == [0.0, 0.0, 0.0]
    assert out["certificate"]["extrapolated_limit"] == 0.0


def test_sqrt_family_values_and_residual():
    assert bsdelab.sqrt_family_value(0.0, 0.5) == 0.0
    assert bsdelab.sqrt_family_value(1.0, 0.0) == pytest.approx(0.25, abs=1e-14)
    for c in (0.0, 0.5, 1.0):
        assert bsdelab.verify_sqrt_family(c, 1000) <= 2.0 / 1000.0


def test_quartic_residual_shrinks():
    coarse = bsdelab.verify_quartic_solution(1.0, seed=9, num_paths=500,
                                             num_steps=64, T=0.25)
    fine = bsdelab.verify_quartic_solution(1.0, seed=9, num_paths=500,
                                           num_steps=256, T=0.25)
    assert fine["mean_sup"] < coarse["mean_sup"]
    assert fine["num_paths"] == 500


def test_run_experiment_file_and_validation(tmp_path):
    config = {
        "experiment": "counterexample_sqrt",
        "c_values": [0.0, 0.5, 1.0],
        "num_time_steps": 200,
        "seed": 1,
    }
    config_path = tmp_path / "sqrt.json"
    config_path.write_text(json.dumps(config))
    out_dir = tmp_path / "out"
    rc = bsdelab.run_experiment_file(str(config_path), str(out_dir))
    assert rc == 0
    for name in ("report.json", "report.csv", "manifest.json"):
        path = out_dir / name
        assert path.is_file()
        assert bsdelab.validate_report_file(str(path)) == 0
    report = json.loads((out_dir / "report.json").read_text())
    assert report["experiment"] == "counterexample_sqrt"
    assert report["pass"] is True


def test_errors_become_python_exceptions():
    with pytest.raises(ValueError):
        bsdelab.search_radius(bsdelab.Generator.abs_z(), 0.5)  # n <= C
    with pytest.raises(ValueError):
        bsdelab.Envelope(bsdelab.Generator.sqrt_y(), 4.0, bsdelab.EnvelopeSide.Lower)
