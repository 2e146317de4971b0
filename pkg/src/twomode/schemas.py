"""Pydantic request/response models for the analysis service.

These mirror the JSON file formats: a state payload carries the same fields
as a state file, a calibration payload the same fields as a calibration
file.  Complex numbers travel as [re, im] pairs.
"""

from __future__ import annotations

import math
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .gaussian import TwoModeState, state_from_dict
from .homodyne import RunConfig
from .model import KerrSpectrumParams


class StatePayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    labels: tuple[str, str] = ("a", "b")
    n_a: float
    n_b: float
    c_a: tuple[float, float] = (0.0, 0.0)
    c_b: tuple[float, float] = (0.0, 0.0)
    m_ab: tuple[float, float] = (0.0, 0.0)
    k_ab: tuple[float, float] = (0.0, 0.0)

    @field_validator("n_a", "n_b")
    @classmethod
    def _finite_scalar(cls, v):
        if not math.isfinite(v):
            raise ValueError("moments must be finite")
        return v

    @field_validator("c_a", "c_b", "m_ab", "k_ab")
    @classmethod
    def _finite_pair(cls, v):
        if not all(math.isfinite(x) for x in v):
            raise ValueError("complex moments must be finite")
        return v

    def to_state(self) -> TwoModeState:
        return state_from_dict(self.model_dump())

    @staticmethod
    def from_state(state: TwoModeState) -> "StatePayload":
        d = state.to_dict()
        return StatePayload(
            labels=tuple(d["labels"]),
            n_a=d["n_a"],
            n_b=d["n_b"],
            c_a=tuple(d["c_a"]),
            c_b=tuple(d["c_b"]),
            m_ab=tuple(d["m_ab"]),
            k_ab=tuple(d["k_ab"]),
        )


class CalibrationPayload(BaseModel):
    model_config = ConfigDict(extra="forbid")

    squeeze_depth: float = 0.05
    band_center_mhz: float = 5.0
    band_width_mhz: float = 4.5
    pump_rate_khz: float = 300.0
    corr_strength: float = 0.0
    phi_1: float = 0.0
    phi_2: float = 0.0
    excess_noise: float = 0.1

    def to_params(self) -> KerrSpectrumParams:
        return KerrSpectrumParams.from_dict(self.model_dump())


class JonesMatrix(BaseModel):
    """2x2 complex matrix as nested [re, im] pairs, row-major."""

    model_config = ConfigDict(extra="forbid")

    rows: list[list[tuple[float, float]]]


class ValidationIssue(BaseModel):
    name: str
    magnitude: float


class AnalyzeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    state: StatePayload


class UncorrelatedBasisPayload(BaseModel):
    jones: JonesMatrix
    c_u: float
    c_v: float
    k_uv: tuple[float, float]


class EntanglementSummary(BaseModel):
    i_min: float
    theta_star: float
    sigma: float
    trace: float
    amplitude: float
    separable_verdict: bool


class MaximalEntanglement(BaseModel):
    report: EntanglementSummary
    jones: JonesMatrix
    stokes_directions: list[tuple[float, float, float]]


class AnalyzeResponse(BaseModel):
    state_labels: tuple[str, str]
    input_basis: EntanglementSummary
    uncorrelated: UncorrelatedBasisPayload
    maximal: MaximalEntanglement
    sigma_min: float
    sigma_max: float
    equatorial_i: float
    best_single_mode_squeezing: float


class SweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    state: StatePayload
    n_lat: int = Field(ge=2, default=19)
    n_lon: int = Field(ge=2, default=36)


class SweepResponse(BaseModel):
    columns: tuple[str, ...] = ("s1", "s2", "s3", "i_min", "sigma")
    rows: list[tuple[float, float, float, float, float]]


class ModelRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    params: CalibrationPayload
    case: Literal["linear", "circular"] = "linear"
    freqs_mhz: list[float]


class ModelRow(BaseModel):
    freq_mhz: float
    v_min_x: float
    v_min_y: float
    i_45: float
    i_star: float
    phi_c: float


class ModelResponse(BaseModel):
    case: str
    rows: list[ModelRow]


class StokesRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    state: StatePayload
    alpha_lo: float = Field(gt=0.0)
    theta_b: Optional[float] = None
    lock: bool = False
    mode: Literal["analytic", "sampled"] = "analytic"
    alpha_a: float = 0.0
    alpha_b: float = 0.0
    noise_figure: float = 1.0
    n_samples: int = 200_000
    seed: int = 0


class StokesResponse(BaseModel):
    s_s2: float
    s_s3: float
    i_s_normalized: float
    bound: float
    entangled: bool
    theta_b: float
    mode: str
    s1_alpha: float
    s1_beta: float
    strong_lo: bool


class SimulateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    state: StatePayload
    seed: int = 0
    n_bins: int = 36
    samples_per_bin: int = Field(ge=100, default=10_000)
    theta_start: float = 0.0
    theta_end: float = math.pi
    detector_efficiency: float = Field(gt=0.0, le=1.0, default=1.0)

    def to_config(self) -> RunConfig:
        return RunConfig(
            seed=self.seed,
            n_bins=self.n_bins,
            samples_per_bin=self.samples_per_bin,
            theta_start=self.theta_start,
            theta_end=self.theta_end,
            detector_efficiency=self.detector_efficiency,
        )


class SimulateRow(BaseModel):
    theta_rad: float
    var1: float
    var2: float
    i_est: float
    stderr: float


class SimulateResponse(BaseModel):
    rows: list[SimulateRow]


class OracleRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    state: Optional[StatePayload] = None
    random_n: Optional[int] = Field(default=None, ge=1)
    seed: int = 0
    grid_points: int = Field(default=61, ge=11)


class OracleStateDiff(BaseModel):
    i_closed_form: float
    i_grid: float
    abs_diff: float
    m_uv_residual: float


class OracleResponse(BaseModel):
    diffs: list[OracleStateDiff]
    max_abs_diff: float
    max_m_uv_residual: float
    tolerance: float
