"""Parametric spectral model of the atomic-Kerr black box.

The medium squeezes both circular polarization components of the probe; this
module replaces its internal dynamics with calibrated spectra and emits
TwoModeState objects versus analysis frequency.

Shapes: each circular mode's minimal noise follows a Lorentzian squeezing
band, v_min(f) = 1 - squeeze_depth * L((f - band_center)/band_width), and the
circular cross-correlation <dA+ dA-> rolls off as a Lorentzian with knee at
the optical pumping rate, |m|(f) = corr_strength / (1 + (f/gamma_p)^2).  The
anti-squeezed quadrature carries v_max = (1 + excess_noise)/v_min so the
minimum-uncertainty product stays at 1 + excess_noise.

Phases: phi_1 is the phase of both <dA+^2> and <dA-^2> (the circular modes
are symmetric), phi_2 the phase of <dA+ dA->.  Only their difference is
physical; with phi_1 = phi_2 the correlation is parallel to the squeezing and
the dephasing angle phi_C vanishes identically.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .basis import PolarizationRotation, waveplate
from .entanglement import inseparability_min, maximal_entanglement
from .gaussian import TwoModeState, validate

_PARAM_FIELDS = (
    "squeeze_depth",
    "band_center_mhz",
    "band_width_mhz",
    "pump_rate_khz",
    "corr_strength",
    "phi_1",
    "phi_2",
    "excess_noise",
)


@dataclass(frozen=True)
class KerrSpectrumParams:
    """Calibration of the Kerr spectra; defaults reproduce the shipped
    linear-polarization working point (v_min = 0.95 at 5 MHz)."""

    squeeze_depth: float = 0.05
    band_center_mhz: float = 5.0
    band_width_mhz: float = 4.5
    pump_rate_khz: float = 300.0
    corr_strength: float = 0.0
    phi_1: float = 0.0
    phi_2: float = 0.0
    excess_noise: float = 0.1

    def __post_init__(self):
        if not 0.0 <= self.squeeze_depth < 1.0:
            raise ValueError("squeeze_depth must lie in [0, 1)")
        if self.band_width_mhz <= 0 or self.pump_rate_khz <= 0:
            raise ValueError("band width and pump rate must be positive")
        if self.corr_strength < 0 or self.excess_noise < 0:
            raise ValueError("corr_strength and excess_noise must be >= 0")

    def to_dict(self) -> dict:
        return asdict(self)

    @staticmethod
    def from_dict(data: dict) -> "KerrSpectrumParams":
        if not isinstance(data, dict):
            raise ValueError("calibration JSON must be an object")
        missing = [f for f in _PARAM_FIELDS if f not in data]
        if missing:
            raise ValueError(f"calibration JSON missing field(s): {', '.join(missing)}")
        unknown = [f for f in data if f not in _PARAM_FIELDS]
        if unknown:
            raise ValueError(f"calibration JSON has unknown field(s): {', '.join(unknown)}")
        values = {}
        for name in _PARAM_FIELDS:
            v = data[name]
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                raise ValueError(f"field '{name}' must be a finite real number")
            values[name] = float(v)
        return KerrSpectrumParams(**values)


def load_params(path: str | Path) -> KerrSpectrumParams:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed calibration JSON in {path}: {exc}") from exc
    return KerrSpectrumParams.from_dict(data)


def save_params(params: KerrSpectrumParams, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(params.to_dict(), fh, indent=2)
        fh.write("\n")


def _lorentzian(x: float) -> float:
    return 1.0 / (1.0 + x * x)


def circular_spectra(params: KerrSpectrumParams, freq_mhz: float) -> tuple[float, complex, complex]:
    """Circular-mode moments (n, c, m) at one analysis frequency.

    n and c apply to both sigma+ and sigma- (symmetric modes); m is the
    cross-correlation <dA+ dA->.  The normal cross-correlation is zero in
    this model.
    """
    if freq_mhz <= 0:
        raise ValueError("analysis frequency must be positive")
    band = _lorentzian((freq_mhz - params.band_center_mhz) / params.band_width_mhz)
    v_min = 1.0 - params.squeeze_depth * band
    v_max = (1.0 + params.excess_noise) / v_min
    n = 0.5 * (v_min + v_max)
    c = 0.25 * (v_max - v_min) * np.exp(1j * params.phi_1)
    gamma_mhz = params.pump_rate_khz / 1000.0
    m = params.corr_strength * _lorentzian(freq_mhz / gamma_mhz) * np.exp(1j * params.phi_2)
    return n, complex(c), complex(m)


def circular_basis_state(params: KerrSpectrumParams, freq_mhz: float) -> TwoModeState:
    """Symmetric (sigma+, sigma-) state of the linear-polarization case."""
    n, c, m = circular_spectra(params, freq_mhz)
    state = TwoModeState(n, n, c, c, m, 0j, labels=("sigma+", "sigma-"))
    _reject_unphysical(state, params, freq_mhz)
    return state


def linear_case_state(params: KerrSpectrumParams, freq_mhz: float) -> TwoModeState:
    """Linear-polarization case in the (x, y) basis.

    Obtained from the circular moments via A_x = (A+ + A-)/sqrt(2),
    A_y = i (A+ - A-)/sqrt(2):  c_x = c + m, c_y = -c + m, while symmetry of
    the circular modes forces m_xy = k_xy = 0 exactly, so the x, y modes are
    completely independent.
    """
    n, c, m = circular_spectra(params, freq_mhz)
    state = TwoModeState(n, n, c + m, -c + m, 0j, 0j, labels=("x", "y"))
    _reject_unphysical(state, params, freq_mhz)
    return state


def circular_case_state(params: KerrSpectrumParams, freq_mhz: float) -> TwoModeState:
    """Circular-polarization (polarization-switched) case in the
    (sigma+, sigma-) basis: sigma+ carries the Kerr spectrum, sigma- is
    exact coherent vacuum, and all cross moments vanish."""
    n, c, _ = circular_spectra(params, freq_mhz)
    state = TwoModeState(n, 1.0, c, 0j, 0j, 0j, labels=("sigma+", "sigma-"))
    _reject_unphysical(state, params, freq_mhz)
    return state


def _reject_unphysical(state: TwoModeState, params: KerrSpectrumParams, freq_mhz: float) -> None:
    result = validate(state)
    if not result.ok:
        raise ValueError(
            f"calibration produces an unphysical state at {freq_mhz} MHz: "
            f"{result.describe()}"
        )


def phi_c(params: KerrSpectrumParams, freq_mhz: float) -> float:
    """Dephasing angle aligning the y mode with x in the uncorrelated basis.

    With c = <dA+/-^2> and m = <dA+ dA->, the x and y anomalous moments are
    c + m and -(c - m); the quarter-wave dephased mode i e^{-i phi_C} A_y
    shares the minimal-noise quadrature of A_x when

        phi_C = [arg(c - m) - arg(c + m)] / 2

    which tends to 0 as the correlation dies out above the pumping rate.  If
    the x moment vanishes exactly the alignment is singular and the limiting
    value pi/2 is returned; if the y moment vanishes its phase is free and 0
    is returned.
    """
    _, c, m = circular_spectra(params, freq_mhz)
    z = (c - m) * np.conj(c + m)
    if abs(z) < 1e-300:
        return math.pi / 2.0 if abs(c + m) < abs(c - m) else 0.0
    angle = 0.5 * math.atan2(z.imag, z.real)
    return angle


@dataclass(frozen=True)
class SweepRow:
    freq_mhz: float
    v_min_x: float
    v_min_y: float
    i_45: float
    i_star: float
    phi_c: float


def frequency_sweep(
    params: KerrSpectrumParams, case: str, freqs: list[float]
) -> list[SweepRow]:
    """Per-frequency entanglement analysis.

    For each frequency the state is generated, its x/y minimal noises and the
    inseparability of the +-45 pair are evaluated, and the maximal
    entanglement I* is computed through the closed-form construction.
    I_45 >= I* holds identically (checked); the gap closes in the
    high-frequency limit where the circular correlation vanishes.
    """
    if case not in ("linear", "circular"):
        raise ValueError(f"unknown case {case!r}; expected 'linear' or 'circular'")
    if not freqs:
        raise ValueError("frequency list is empty")
    arr = np.asarray(freqs, dtype=float)
    if (arr <= 0).any():
        raise ValueError("frequencies must be positive")
    if (np.diff(arr) <= 0).any():
        raise ValueError("frequencies must be strictly ascending")

    rows = []
    for f in arr:
        if case == "linear":
            state_xy = linear_case_state(params, f)
        else:
            sigma_state = circular_case_state(params, f)
            # x = (sigma+ + sigma-)/sqrt(2), y = i (sigma+ - sigma-)/sqrt(2)
            s = 1.0 / math.sqrt(2.0)
            to_xy = PolarizationRotation(np.array([[s, s], [1j * s, -1j * s]]))
            state_xy = to_xy.apply(sigma_state).with_labels(("x", "y"))
        vx = state_xy.n_a - 2.0 * abs(state_xy.c_a)
        vy = state_xy.n_b - 2.0 * abs(state_xy.c_b)
        pm45 = waveplate("half", math.pi / 8.0).apply(state_xy)
        i45 = inseparability_min(pm45).i_min
        istar = maximal_entanglement(state_xy)[0].i_min
        if i45 < istar - 1e-9:
            raise RuntimeError(
                f"model inconsistency at {f} MHz: I_45={i45} below I*={istar}"
            )
        rows.append(
            SweepRow(
                freq_mhz=float(f),
                v_min_x=float(vx),
                v_min_y=float(vy),
                i_45=float(i45),
                i_star=float(istar),
                phi_c=float(phi_c(params, f)) if case == "linear" else 0.0,
            )
        )
    return rows
