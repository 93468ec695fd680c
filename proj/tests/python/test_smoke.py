import math
import os
import pathlib

import pytest

import costplex

FIXTURE = pathlib.Path(
    os.environ.get("COSTPLEX_FIXTURE_DIR", pathlib.Path(__file__).resolve().parents[2] / "data" / "fixture")
)


def test_entropy():
    assert costplex.shannon_entropy([50, 50]) == 1.0
    assert costplex.shannon_entropy([10, 90]) == pytest.approx(0.469, abs=5e-4)
    assert costplex.text_entropy("tea time " * 50) == 1.0


def test_fractal_and_lacunarity():
    grid = costplex.koch_raster(5)
    dim, counts = costplex.box_counting_dimension(grid, [1, 3, 9, 27])
    assert abs(dim - math.log(4) / math.log(3)) < 0.1
    assert [s for s, _ in counts] == [1, 3, 9, 27]
    assert all(v >= 1.0 for v in costplex.lacunarity(grid, [1, 2, 4]))


def test_lyapunov():
    assert costplex.lyapunov_logistic(4.0) == pytest.approx(math.log(2), abs=0.02)
    assert costplex.lyapunov_logistic(2.5, steps=1000) < 0


def test_sandpile_and_compression():
    sizes = costplex.sandpile_avalanches(16, 16, 2000, seed=1)
    assert len(sizes) == 2000
    original, packed, ratio = costplex.description_length(b"million" * 10000)
    assert original == 70000 and packed < 1000 and ratio < 0.02
    assert costplex.logical_depth(b"x") == 1


def test_sweeps():
    kde = costplex.kde_sweep([10, 40, 160, 640], grid_points=512)
    assert len(kde["raw"]) == 4
    assert kde["raw"][0]["operation_cost"] > kde["raw"][-1]["operation_cost"]
    ann = costplex.anneal_sweep([1, 2, 3], reps=3)
    assert [row["modeling_cost"] for row in ann["raw"]][0] > 0
    assert ann["minimum"]["index"] in (0, 1, 2)


def test_network_budget():
    rows = costplex.network_budget(
        str(FIXTURE / "airports.csv"), str(FIXTURE / "routes.csv"), str(FIXTURE / "fuel.csv")
    )
    assert len(rows) == 20
    assert max(r["edge_count"] for r in rows) == 103


def test_errors_and_cli():
    with pytest.raises(costplex.ConfigError):
        costplex.box_counting_dimension([[True, False], [False, True]], [1, 2])
    with pytest.raises(ValueError):
        costplex.lyapunov_logistic(4.0, x0=1.5)
    status, out, err = costplex.run_cli(["lyapunov", "--param", "2.5", "--steps", "100"])
    assert status == 0 and float(out) < 0
    status, _, err = costplex.run_cli(["bogus"])
    assert status == 1 and err
