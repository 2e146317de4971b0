"""Command-line front end; a thin client of the analysis service.

All numeric output uses fixed locale-independent formatting, CSV files carry
``#``-prefixed metadata lines (version, seed, config hash) ahead of the
header row, and JSON reports embed the same metadata under ``meta``, so a
fixed seed reproduces outputs byte for byte.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from pathlib import Path

import click

from . import __version__
from .client import ServiceClient, ServiceError
from .gaussian import load_state
from .homodyne import load_run_config
from .model import load_params
from .schemas import (
    AnalyzeRequest,
    CalibrationPayload,
    ModelRequest,
    OracleRequest,
    SimulateRequest,
    StatePayload,
    StokesRequest,
    SweepRequest,
)

ENV_SEED = "TWOMODE_SEED"


def _fmt(x: float) -> str:
    x = float(x)
    if x == 0.0:
        x = 0.0
    return format(x, ".12g")


def _config_hash(request) -> str:
    canonical = json.dumps(request.model_dump(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def _meta(subcommand: str, request, seed: int | None = None) -> dict:
    meta = {
        "version": __version__,
        "subcommand": subcommand,
        "config_hash": _config_hash(request),
    }
    if seed is not None:
        meta["seed"] = seed
    return meta


def _write_json(payload: dict, output: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def _write_csv(meta: dict, header: list[str], rows, output: str | None) -> None:
    lines = [f"# twomode v{meta['version']}", f"# subcommand: {meta['subcommand']}"]
    if "seed" in meta:
        lines.append(f"# seed: {meta['seed']}")
    lines.append(f"# config_hash: {meta['config_hash']}")
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def _resolve_seed(flag: int | None, config_seed: int | None = None) -> int:
    if flag is not None:
        return flag
    if config_seed is not None:
        return config_seed
    env = os.environ.get(ENV_SEED)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise click.ClickException(f"{ENV_SEED} must be an integer, got {env!r}")
    return 0


def _load_state_payload(path: str) -> StatePayload:
    try:
        state = load_state(path)
    except (OSError, ValueError) as exc:
        raise click.ClickException(str(exc))
    return StatePayload.from_state(state)


def _load_rotation(path: str):
    """Rotation JSON: either {"alpha","beta","phi"} or {"jones": rows of [re,im]}."""
    import numpy as np

    from .basis import PolarizationRotation

    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise click.ClickException(f"malformed rotation JSON: {exc}")
    try:
        if "jones" in data:
            rows = data["jones"]
            u = np.array([[complex(*rows[i][j]) for j in range(2)] for i in range(2)])
            return PolarizationRotation(u)
        return PolarizationRotation.from_alpha_beta_phi(
            data["alpha"], data["beta"], data["phi"]
        )
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise click.ClickException(f"invalid rotation specification: {exc}")


def _parse_resolution(text: str) -> tuple[int, int]:
    try:
        lat, lon = text.lower().split("x")
        return int(lat), int(lon)
    except ValueError:
        raise click.ClickException(f"--resolution must look like LATxLON, got {text!r}")


def _parse_freqs(text: str) -> list[float]:
    try:
        start, stop, step = (float(v) for v in text.split(":"))
    except ValueError:
        raise click.ClickException(f"--freqs must look like start:stop:step, got {text!r}")
    if step <= 0 or stop < start:
        raise click.ClickException("--freqs needs step > 0 and stop >= start")
    freqs = []
    f = start
    while f <= stop + 1e-9:
        freqs.append(round(f, 12))
        f += step
    return freqs


def _client(server: str | None) -> ServiceClient:
    return ServiceClient(base_url=server)


_server_option = click.option(
    "--server", default=None, metavar="URL",
    help="Base URL of a running twomode service; default runs in-process.",
)


@click.group()
@click.version_option(version=__version__, prog_name="twomode")
def main():
    """Entanglement and squeezing analysis of two-mode Gaussian states."""


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--output", "output_path", default=None, type=click.Path(dir_okay=False))
@click.option("--rotate", "rotate_path", default=None, type=click.Path(exists=True, dir_okay=False),
              help="Rotation JSON applied to the state before analysis.")
@_server_option
def analyze(input_path, output_path, rotate_path, server):
    """Full entanglement report for a state file."""
    payload = _load_state_payload(input_path)
    if rotate_path:
        rotation = _load_rotation(rotate_path)
        payload = StatePayload.from_state(rotation.apply(payload.to_state()))
    request = AnalyzeRequest(state=payload)
    try:
        response = _client(server).analyze(request)
    except ServiceError as exc:
        raise click.ClickException(str(exc))
    result = response.model_dump()
    _write_json({"meta": _meta("analyze", request), "result": result}, output_path)
    if output_path:
        r = response
        click.echo(f"I_min (input basis)  = {_fmt(r.input_basis.i_min)}")
        click.echo(f"I*    (maximal)      = {_fmt(r.maximal.report.i_min)}")
        click.echo(f"sigma_min / sigma_max = {_fmt(r.sigma_min)} / {_fmt(r.sigma_max)}")
        click.echo(f"entangled at best basis: {r.maximal.report.i_min < 2.0}")
        click.echo(f"report written to {output_path}")


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--output", "output_path", default=None, type=click.Path(dir_okay=False))
@click.option("--resolution", default="19x36", metavar="LATxLON", show_default=True)
@_server_option
def sweep(input_path, output_path, resolution, server):
    """Poincare-sphere map of I_min and the squeezing sum (CSV)."""
    n_lat, n_lon = _parse_resolution(resolution)
    request = SweepRequest(state=_load_state_payload(input_path), n_lat=n_lat, n_lon=n_lon)
    try:
        response = _client(server).sweep(request)
    except ServiceError as exc:
        raise click.ClickException(str(exc))
    _write_csv(_meta("sweep", request), list(response.columns), response.rows, output_path)


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Calibration JSON (KerrSpectrumParams fields).")
@click.option("--output", "output_path", default=None, type=click.Path(dir_okay=False))
@click.option("--case", type=click.Choice(["linear", "circular"]), default="linear",
              show_default=True)
@click.option("--freqs", default="3:12:0.5", metavar="START:STOP:STEP", show_default=True)
@_server_option
def model(input_path, output_path, case, freqs, server):
    """Frequency sweep of the atomic-Kerr model (CSV)."""
    try:
        params = load_params(input_path)
    except (OSError, ValueError) as exc:
        raise click.ClickException(str(exc))
    request = ModelRequest(
        params=CalibrationPayload(**params.to_dict()),
        case=case,
        freqs_mhz=_parse_freqs(freqs),
    )
    try:
        response = _client(server).model(request)
    except ServiceError as exc:
        raise click.ClickException(str(exc))
    rows = [
        (r.freq_mhz, r.v_min_x, r.v_min_y, r.i_45, r.i_star, r.phi_c)
        for r in response.rows
    ]
    _write_csv(
        _meta("model", request),
        ["freq_mhz", "vmin_x", "vmin_y", "i45", "istar", "phi_c"],
        rows,
        output_path,
    )


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--output", "output_path", default=None, type=click.Path(dir_okay=False))
@click.option("--alpha-b", "alpha_lo", type=float, required=True,
              help="Local-oscillator amplitude alpha_B.")
@click.option("--theta-b", "theta_b", type=float, default=None,
              help="B-field phase in radians.")
@click.option("--lock", is_flag=True, help="Lock theta_B to the I_ab minimizer.")
@click.option("--mode", type=click.Choice(["analytic", "sampled"]), default="analytic",
              show_default=True)
@click.option("--alpha-a", type=float, default=0.0, show_default=True)
@click.option("--alpha-b-mode", "alpha_b_mode", type=float, default=0.0, show_default=True,
              help="Mean amplitude of mode b.")
@click.option("--noise-figure", type=float, default=1.0, show_default=True)
@click.option("--samples", "n_samples", type=int, default=200_000, show_default=True)
@click.option("--seed", type=int, default=None)
@_server_option
def stokes(input_path, output_path, alpha_lo, theta_b, lock, mode, alpha_a,
           alpha_b_mode, noise_figure, n_samples, seed, server):
    """Polarization-entanglement report via Stokes operators (JSON)."""
    if lock == (theta_b is not None):
        raise click.ClickException("provide exactly one of --theta-b or --lock")
    seed = _resolve_seed(seed)
    request = StokesRequest(
        state=_load_state_payload(input_path),
        alpha_lo=alpha_lo,
        theta_b=theta_b,
        lock=lock,
        mode=mode,
        alpha_a=alpha_a,
        alpha_b=alpha_b_mode,
        noise_figure=noise_figure,
        n_samples=n_samples,
        seed=seed,
    )
    try:
        response = _client(server).stokes(request)
    except ServiceError as exc:
        raise click.ClickException(str(exc))
    _write_json(
        {"meta": _meta("stokes", request, seed=seed), "result": response.model_dump()},
        output_path,
    )


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--run-config", "config_path", default=None, type=click.Path(exists=True, dir_okay=False),
              help="Run-config JSON (seed, bins, samples, efficiency).")
@click.option("--output", "output_path", default=None, type=click.Path(dir_okay=False))
@click.option("--seed", type=int, default=None, help="Overrides the run-config seed.")
@_server_option
def simulate(input_path, config_path, output_path, seed, server):
    """Homodyne measurement simulation; writes the estimated trace (CSV)."""
    config_seed = None
    config = None
    if config_path:
        try:
            config = load_run_config(config_path)
        except (OSError, ValueError) as exc:
            raise click.ClickException(str(exc))
        config_seed = config.seed
    seed = _resolve_seed(seed, config_seed)
    request = SimulateRequest(
        state=_load_state_payload(input_path),
        seed=seed,
        n_bins=config.n_bins if config else 36,
        samples_per_bin=config.samples_per_bin if config else 10_000,
        theta_start=config.theta_start if config else 0.0,
        theta_end=config.theta_end if config else math.pi,
        detector_efficiency=config.detector_efficiency if config else 1.0,
    )
    try:
        response = _client(server).simulate(request)
    except ServiceError as exc:
        raise click.ClickException(str(exc))
    rows = [(r.theta_rad, r.var1, r.var2, r.i_est, r.stderr) for r in response.rows]
    _write_csv(
        _meta("simulate", request, seed=seed),
        ["theta_rad", "var1", "var2", "i_est", "stderr"],
        rows,
        output_path,
    )


@main.command()
@click.option("--input", "input_path", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--random", "random_n", type=int, default=None,
              help="Check N seeded random physical states instead of a file.")
@click.option("--output", "output_path", default=None, type=click.Path(dir_okay=False))
@click.option("--grid-points", type=int, default=61, show_default=True)
@click.option("--seed", type=int, default=None)
@_server_option
def oracle(input_path, random_n, output_path, grid_points, seed, server):
    """Closed-form vs brute-force grid comparison (JSON diff report)."""
    if (input_path is None) == (random_n is None):
        raise click.ClickException("provide exactly one of --input or --random N")
    seed = _resolve_seed(seed)
    request = OracleRequest(
        state=_load_state_payload(input_path) if input_path else None,
        random_n=random_n,
        seed=seed,
        grid_points=grid_points,
    )
    try:
        response = _client(server).oracle(request)
    except ServiceError as exc:
        raise click.ClickException(str(exc))
    _write_json(
        {"meta": _meta("oracle", request, seed=seed), "result": response.model_dump()},
        output_path,
    )
    if output_path:
        click.echo(
            f"max |closed-form - grid| = {_fmt(response.max_abs_diff)} "
            f"(tolerance {_fmt(response.tolerance)})"
        )


if __name__ == "__main__":
    main(prog_name="twomode")
