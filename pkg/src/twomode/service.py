"""FastAPI service exposing the analysis operations.

Every endpoint is stateless: the request carries the full state or
calibration payload and the response carries the complete result, so
instances can be load-balanced freely.  The CLI drives the same handler
functions in-process.

Run with::

    uvicorn twomode.service:app
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException

from . import __version__
from .basis import PolarizationRotation
from .entanglement import (
    best_single_mode_squeezing,
    equatorial_entanglement,
    find_uncorrelated_basis,
    inseparability_min,
    maximal_entanglement,
    poincare_sweep,
    sigma_extrema,
)
from .gaussian import TwoModeState, validate
from .homodyne import estimate_inseparability_trace, simulate
from .model import frequency_sweep
from .oracle import ORACLE_TOL, run_oracle
from .schemas import (
    AnalyzeRequest,
    AnalyzeResponse,
    EntanglementSummary,
    JonesMatrix,
    MaximalEntanglement,
    ModelRequest,
    ModelResponse,
    ModelRow,
    OracleRequest,
    OracleResponse,
    OracleStateDiff,
    SimulateRequest,
    SimulateResponse,
    SimulateRow,
    StokesRequest,
    StokesResponse,
    SweepRequest,
    SweepResponse,
    UncorrelatedBasisPayload,
)
from .stokes import lock_phase, polarization_inseparability, stokes_means


def _require_physical(state: TwoModeState) -> None:
    result = validate(state)
    if not result.ok:
        raise HTTPException(status_code=422, detail=f"unphysical state: {result.describe()}")


def _jones(rotation: PolarizationRotation) -> JonesMatrix:
    rows = [
        [(float(z.real), float(z.imag)) for z in row]
        for row in np.asarray(rotation.u)
    ]
    return JonesMatrix(rows=rows)


def _summary(report) -> EntanglementSummary:
    return EntanglementSummary(
        i_min=report.i_min,
        theta_star=report.theta_star,
        sigma=report.sigma,
        trace=report.trace,
        amplitude=report.amplitude,
        separable_verdict=report.separable_verdict,
    )


def handle_analyze(request: AnalyzeRequest) -> AnalyzeResponse:
    state = request.state.to_state()
    _require_physical(state)
    uncorr = find_uncorrelated_basis(state)
    report_star, basis_star = maximal_entanglement(state)
    s_min, s_max = sigma_extrema(state)
    return AnalyzeResponse(
        state_labels=state.labels,
        input_basis=_summary(inseparability_min(state)),
        uncorrelated=UncorrelatedBasisPayload(
            jones=_jones(uncorr.rotation),
            c_u=uncorr.c_u,
            c_v=uncorr.c_v,
            k_uv=(uncorr.k_uv.real, uncorr.k_uv.imag),
        ),
        maximal=MaximalEntanglement(
            report=_summary(report_star),
            jones=_jones(basis_star),
            stokes_directions=[tuple(map(float, s)) for s in basis_star.mode_stokes_directions()],
        ),
        sigma_min=s_min,
        sigma_max=s_max,
        equatorial_i=equatorial_entanglement(state),
        best_single_mode_squeezing=best_single_mode_squeezing(state),
    )


def handle_sweep(request: SweepRequest) -> SweepResponse:
    state = request.state.to_state()
    _require_physical(state)
    rows = poincare_sweep(state, request.n_lat, request.n_lon)
    return SweepResponse(rows=[tuple(map(float, r)) for r in rows])


def handle_model(request: ModelRequest) -> ModelResponse:
    try:
        params = request.params.to_params()
        rows = frequency_sweep(params, request.case, request.freqs_mhz)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return ModelResponse(
        case=request.case,
        rows=[
            ModelRow(
                freq_mhz=r.freq_mhz,
                v_min_x=r.v_min_x,
                v_min_y=r.v_min_y,
                i_45=r.i_45,
                i_star=r.i_star,
                phi_c=r.phi_c,
            )
            for r in rows
        ],
    )


def handle_stokes(request: StokesRequest) -> StokesResponse:
    state = request.state.to_state()
    _require_physical(state)
    if request.lock:
        theta_b = lock_phase(state)
    elif request.theta_b is not None:
        theta_b = request.theta_b
    else:
        raise HTTPException(status_code=422, detail="provide theta_b or set lock=true")
    report = polarization_inseparability(
        state,
        alpha_lo=request.alpha_lo,
        theta_b=theta_b,
        mode=request.mode,
        alpha_a=request.alpha_a,
        alpha_b=request.alpha_b,
        noise_figure=request.noise_figure,
        n_samples=request.n_samples,
        seed=request.seed,
    )
    means = stokes_means(
        request.alpha_lo,
        request.alpha_a,
        request.alpha_b,
        state=state,
        noise_figure=request.noise_figure,
    )
    return StokesResponse(
        s_s2=report.s_s2,
        s_s3=report.s_s3,
        i_s_normalized=report.i_s_normalized,
        bound=report.bound,
        entangled=report.entangled,
        theta_b=report.theta_b,
        mode=report.mode,
        s1_alpha=means.s1_alpha,
        s1_beta=means.s1_beta,
        strong_lo=means.strong_lo,
    )


def handle_simulate(request: SimulateRequest) -> SimulateResponse:
    state = request.state.to_state()
    _require_physical(state)
    run = simulate(state, request.to_config())
    rows = estimate_inseparability_trace(run)
    return SimulateResponse(
        rows=[
            SimulateRow(
                theta_rad=r.theta,
                var1=r.var1,
                var2=r.var2,
                i_est=r.i_estimate,
                stderr=r.stderr,
            )
            for r in rows
        ]
    )


def handle_oracle(request: OracleRequest) -> OracleResponse:
    if request.state is None and request.random_n is None:
        raise HTTPException(status_code=422, detail="provide a state or random_n")
    states = None
    if request.state is not None:
        state = request.state.to_state()
        _require_physical(state)
        states = [state]
    diffs = run_oracle(
        states=states,
        random_n=request.random_n,
        seed=request.seed,
        n=request.grid_points,
    )
    return OracleResponse(
        diffs=[
            OracleStateDiff(
                i_closed_form=d.i_closed_form,
                i_grid=d.i_grid,
                abs_diff=d.abs_diff,
                m_uv_residual=d.m_uv_residual,
            )
            for d in diffs
        ],
        max_abs_diff=max(d.abs_diff for d in diffs),
        max_m_uv_residual=max(d.m_uv_residual for d in diffs),
        tolerance=ORACLE_TOL,
    )


app = FastAPI(title="twomode", version=__version__)


@app.get("/health")
def health():
    return {"status": "ok", "version": __version__}


@app.post("/analyze", response_model=AnalyzeResponse)
def analyze_endpoint(request: AnalyzeRequest) -> AnalyzeResponse:
    return handle_analyze(request)


@app.post("/sweep", response_model=SweepResponse)
def sweep_endpoint(request: SweepRequest) -> SweepResponse:
    return handle_sweep(request)


@app.post("/model", response_model=ModelResponse)
def model_endpoint(request: ModelRequest) -> ModelResponse:
    return handle_model(request)


@app.post("/stokes", response_model=StokesResponse)
def stokes_endpoint(request: StokesRequest) -> StokesResponse:
    return handle_stokes(request)


@app.post("/simulate", response_model=SimulateResponse)
def simulate_endpoint(request: SimulateRequest) -> SimulateResponse:
    return handle_simulate(request)


@app.post("/oracle", response_model=OracleResponse)
def oracle_endpoint(request: OracleRequest) -> OracleResponse:
    return handle_oracle(request)
