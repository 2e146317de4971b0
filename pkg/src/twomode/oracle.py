"""Brute-force grid searches validating the closed-form results.

The searches evaluate the two EPR-combination variances directly from the
transformed second moments on a dense lattice of bases and quadrature angles;
they never touch the uncorrelated-basis construction they are checking.
Grids use 61 points per parameter for the 4-D basis search and 181 for the
2-D sphere search, each followed by one local refinement pass; the 5e-3
comparison tolerance reflects the lattice spacing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import PolarizationRotation
from .entanglement import (
    find_uncorrelated_basis,
    maximal_entanglement,
    single_mode_variance_min,
)
from .gaussian import TwoModeState, from_quadrature_covariance

GRID_POINTS_4D = 61
GRID_POINTS_2D = 181
ORACLE_TOL = 5e-3


@dataclass(frozen=True)
class OracleDiff:
    """Per-state comparison between closed form and grid search."""

    i_closed_form: float
    i_grid: float
    abs_diff: float
    m_uv_residual: float


def _symplectic_of_unitary(u: np.ndarray) -> np.ndarray:
    """4x4 real symplectic matrix acting on (X_a, Y_a, X_b, Y_b)."""
    S = np.zeros((4, 4))
    for i in range(2):
        for j in range(2):
            S[2 * i, 2 * j] = u[i, j].real
            S[2 * i, 2 * j + 1] = -u[i, j].imag
            S[2 * i + 1, 2 * j] = u[i, j].imag
            S[2 * i + 1, 2 * j + 1] = u[i, j].real
    return S


def random_state(rng: np.random.Generator, max_squeeze: float = 0.7,
                 max_thermal: float = 1.8) -> TwoModeState:
    """Random physical state via a reverse Williamson construction.

    V = M D M^T with M a random symplectic (passive rotation, single-mode
    squeezers, passive rotation) and D a thermal diagonal with symplectic
    eigenvalues >= 1, so V + i Omega >= 0 holds exactly.
    """

    def random_unitary() -> np.ndarray:
        alpha = rng.uniform(0.0, 1.0)
        beta = math.sqrt(1.0 - alpha * alpha)
        phi, psi1, psi2 = rng.uniform(0.0, 2.0 * math.pi, 3)
        mix = np.array(
            [[beta, -alpha * np.exp(1j * phi)], [alpha, beta * np.exp(1j * phi)]]
        )
        return mix @ np.diag([np.exp(1j * psi1), np.exp(1j * psi2)])

    r1, r2 = rng.uniform(-max_squeeze, max_squeeze, 2)
    squeeze = np.diag([math.exp(-r1), math.exp(r1), math.exp(-r2), math.exp(r2)])
    t1, t2 = rng.uniform(1.0, max_thermal, 2)
    thermal = np.diag([t1, t1, t2, t2])
    M = _symplectic_of_unitary(random_unitary()) @ squeeze @ _symplectic_of_unitary(
        random_unitary()
    )
    return from_quadrature_covariance(M @ thermal @ M.T)


def _grid_bases(alphas, phis, psis):
    """Jones entries of from_alpha_beta_phi(alpha, phi) @ diag(1, e^{i psi})."""
    A, P, S = np.meshgrid(alphas, phis, psis, indexing="ij")
    B = np.sqrt(np.clip(1.0 - A**2, 0.0, 1.0))
    phase = np.exp(1j * P) * np.exp(1j * S)
    return B + 0j, -A * phase, A + 0j, B * phase


def _epr_min_on_lattice(state: TwoModeState, alphas, phis, psis, thetas):
    """Minimum of I(theta) over the lattice, via the EPR-combination variances.

    Returns (min value, (alpha, phi, psi, theta) at the minimum).
    """
    b00, b01, b10, b11 = _grid_bases(alphas, phis, psis)
    c_a, c_b, m, k = state.c_a, state.c_b, state.m_ab, state.k_ab
    k00 = (state.n_a + 1.0) / 2.0
    k11 = (state.n_b + 1.0) / 2.0

    ca = b00**2 * c_a + 2.0 * b00 * b01 * m + b01**2 * c_b
    cb = b10**2 * c_a + 2.0 * b10 * b11 * m + b11**2 * c_b
    mm = b00 * b10 * c_a + (b00 * b11 + b01 * b10) * m + b01 * b11 * c_b
    na = 2.0 * (
        np.abs(b00) ** 2 * k00
        + np.abs(b01) ** 2 * k11
        + 2.0 * (b00 * np.conj(b01) * k).real
    ) - 1.0
    nb = 2.0 * (
        np.abs(b10) ** 2 * k00
        + np.abs(b11) ** 2 * k11
        + 2.0 * (b10 * np.conj(b11) * k).real
    ) - 1.0
    kk = (
        b00 * np.conj(b10) * k00
        + b00 * np.conj(b11) * k
        + b01 * np.conj(b10) * np.conj(k)
        + b01 * np.conj(b11) * k11
    ).real

    trace = na + nb
    csum = ca + cb
    best = math.inf
    best_at = None
    for theta in thetas:
        e = np.exp(-2j * theta)
        var_sum = trace + 2.0 * (csum * e).real + 4.0 * (mm * e).real + 4.0 * kk
        var_diff = trace - 2.0 * (csum * e).real + 4.0 * (mm * e).real - 4.0 * kk
        i_theta = 0.5 * (var_sum + var_diff)
        flat = int(np.argmin(i_theta))
        if i_theta.flat[flat] < best:
            best = float(i_theta.flat[flat])
            ia, ip, ips = np.unravel_index(flat, i_theta.shape)
            best_at = (alphas[ia], phis[ip], psis[ips], theta)
    return best, best_at


def brute_force_inseparability_min(
    state: TwoModeState, n: int = GRID_POINTS_4D, refine: bool = True
) -> float:
    """4-D lattice search for min I over (alpha, phi, local phase, theta)."""
    alphas = np.linspace(0.0, 1.0, n)
    phis = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    psis = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    thetas = np.linspace(0.0, math.pi, n, endpoint=False)
    best, at = _epr_min_on_lattice(state, alphas, phis, psis, thetas)
    if refine and at is not None:
        da = alphas[1] - alphas[0]
        dp = phis[1] - phis[0]
        dt = thetas[1] - thetas[0]
        a0, p0, s0, t0 = at
        local = _epr_min_on_lattice(
            state,
            np.clip(np.linspace(a0 - da, a0 + da, 13), 0.0, 1.0),
            np.linspace(p0 - dp, p0 + dp, 13),
            np.linspace(s0 - dp, s0 + dp, 13),
            np.linspace(t0 - dt, t0 + dt, 13),
        )[0]
        best = min(best, local)
    return best


def brute_force_single_mode_min(state: TwoModeState, n: int = GRID_POINTS_2D) -> float:
    """Sphere x theta lattice search for the best single-mode squeezing.

    Scans the quadrature angle explicitly instead of using the analytic
    n - 2|c| minimum, keeping the route independent.
    """
    uncorr = find_uncorrelated_basis(state)
    base = uncorr.state
    big = np.linspace(0.0, math.pi, n)
    lon = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    thetas = np.linspace(0.0, math.pi, n, endpoint=False)
    T, P = np.meshgrid(big, lon, indexing="ij")
    beta = np.cos(T / 2.0)
    alpha = np.sin(T / 2.0)
    e = np.exp(1j * P)
    n_w = (
        beta**2 * base.n_a
        + alpha**2 * base.n_b
        + 4.0 * alpha * beta * (base.k_ab * e).real
    )
    c_w = (
        beta**2 * base.c_a
        + alpha**2 * np.conj(e) ** 2 * base.c_b
        + 2.0 * alpha * beta * np.conj(e) * base.m_ab
    )
    best = math.inf
    best_at = None
    for theta in thetas:
        v = n_w + 2.0 * (c_w * np.exp(-2j * theta)).real
        flat = int(np.argmin(v))
        if v.flat[flat] < best:
            best = float(v.flat[flat])
            it, ip = np.unravel_index(flat, v.shape)
            best_at = (big[it], lon[ip])
    if best_at is not None:
        t_loc = np.clip(np.linspace(best_at[0] - big[1], best_at[0] + big[1], 41), 0.0, math.pi)
        p_loc = np.linspace(best_at[1] - lon[1], best_at[1] + lon[1], 41)
        T, P = np.meshgrid(t_loc, p_loc, indexing="ij")
        best = min(best, float(single_mode_variance_min(base, T, P).min()))
    return best


def compare_state(state: TwoModeState, n: int = GRID_POINTS_4D) -> OracleDiff:
    """Closed-form maximal entanglement vs the 4-D lattice, plus the
    residual cross-correlation left by the uncorrelated-basis construction."""
    report, _ = maximal_entanglement(state)
    grid = brute_force_inseparability_min(state, n=n)
    uncorr = find_uncorrelated_basis(state)
    return OracleDiff(
        i_closed_form=report.i_min,
        i_grid=grid,
        abs_diff=abs(report.i_min - grid),
        m_uv_residual=abs(uncorr.state.m_ab),
    )


def run_oracle(
    states: list[TwoModeState] | None = None,
    random_n: int | None = None,
    seed: int = 0,
    n: int = GRID_POINTS_4D,
) -> list[OracleDiff]:
    """Compare closed form and lattice on explicit or seeded random states."""
    if states is None:
        if random_n is None:
            raise ValueError("provide states or random_n")
        rng = np.random.default_rng(seed)
        states = [random_state(rng) for _ in range(random_n)]
    return [compare_state(s, n=n) for s in states]


def random_rotation(rng: np.random.Generator) -> PolarizationRotation:
    """Haar-ish random U(2) from the mixing parametrization with local phases."""
    alpha = math.sqrt(rng.uniform(0.0, 1.0))
    beta = math.sqrt(1.0 - alpha * alpha)
    phi, psi1, psi2 = rng.uniform(0.0, 2.0 * math.pi, 3)
    mix = PolarizationRotation.from_alpha_beta_phi(alpha, beta, phi)
    return mix @ PolarizationRotation.local_phases(psi1, psi2)
