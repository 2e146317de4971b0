"""Shipped example inputs must reproduce shipped outputs byte for byte."""

from pathlib import Path

import pytest
from click.testing import CliRunner

import twomode
from twomode.cli import main

DATA = Path(twomode.__file__).parent / "data"

CASES = [
    (
        "analyze_calibrated_5mhz_xy.json",
        ["analyze", "--input", str(DATA / "states/calibrated_5mhz_xy.json")],
    ),
    (
        "sweep_vacuum_5x8.csv",
        ["sweep", "--input", str(DATA / "states/vacuum.json"), "--resolution", "5x8"],
    ),
    (
        "model_linear_default.csv",
        ["model", "--input", str(DATA / "calibrations/default.json"),
         "--case", "linear", "--freqs", "3:12:0.5"],
    ),
    (
        "stokes_pm45_locked.json",
        ["stokes", "--input", str(DATA / "states/calibrated_5mhz_pm45.json"),
         "--alpha-b", "10", "--lock"],
    ),
    (
        "simulate_pm45_seed7.csv",
        ["simulate", "--input", str(DATA / "states/calibrated_5mhz_pm45.json"),
         "--seed", "7"],
    ),
    (
        "oracle_random2_seed1.json",
        ["oracle", "--random", "2", "--seed", "1", "--grid-points", "21"],
    ),
]


@pytest.mark.parametrize("golden_name,args", CASES, ids=[c[0] for c in CASES])
def test_golden_outputs_stable(golden_name, args, tmp_path):
    out = tmp_path / golden_name
    result = CliRunner().invoke(main, args + ["--output", str(out)])
    assert result.exit_code == 0, result.output
    expected = (DATA / "golden" / golden_name).read_bytes()
    assert out.read_bytes() == expected
