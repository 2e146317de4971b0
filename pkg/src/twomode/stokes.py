"""Stokes-operator mapping of quadrature entanglement onto two beams.

Each quadrature-entangled mode is mixed on a polarizing beamsplitter with an
intense coherent beam B polarized at 45 degrees, producing two spatially
separated beams alpha = (A_a, B_y) and beta = (A_b, B_x).  In the strong-LO
limit the S2/S3 Stokes fluctuations of the beams are the a, b quadratures at
the locked B-field phase theta_B, so the polarization criterion

    I^S = [var(S2^a + S2^b) + var(S3^a + S3^b)]/2 < |<S1^a>| + |<S1^b>|

reduces to alpha_B^2 * I_ab(theta_B) < 2 alpha_B^2.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .entanglement import inseparability_min
from .gaussian import TwoModeState, epr_variances, to_quadrature_covariance


@dataclass(frozen=True)
class StokesMeans:
    """Mean Stokes S1 components of the two beams and the criterion bound."""

    s1_alpha: float
    s1_beta: float
    bound: float
    strong_lo: bool


@dataclass(frozen=True)
class StokesNoiseReport:
    """Normalized S2/S3 noise sums; entangled when their sum beats the bound.

    All noises are divided by 2 alpha_B^2, the normalization in which shot
    noise sits at 1 per Stokes pair and the criterion bound is 2.
    """

    s_s2: float
    s_s3: float
    i_s_normalized: float
    bound: float
    entangled: bool
    theta_b: float
    mode: str


def stokes_means(
    alpha_lo: float,
    alpha_a: float = 0.0,
    alpha_b: float = 0.0,
    state: TwoModeState | None = None,
    noise_figure: float = 1.0,
) -> StokesMeans:
    """Exact mean S1 of beams alpha and beta, including A-field terms.

    <S1^alpha> = <A_a^dag A_a> - <B_y^dag B_y> and
    <S1^beta> = <B_x^dag B_x> - <A_b^dag A_b>; occupations include the
    fluctuation contribution (n - 1)/2.  The normalized criterion bound is
    (|<S1^alpha>| + |<S1^beta>|)/alpha_B^2, which tends to 2 in the strong-LO
    limit.  Flags (without failing) configurations with alpha_B less than 10
    times the mode amplitudes.
    """
    if alpha_lo <= 0.0:
        raise ValueError("LO amplitude alpha_B must be positive")
    occ_a = occ_b = 0.0
    if state is not None:
        occ_a = (state.n_a - 1.0) / 2.0
        occ_b = (state.n_b - 1.0) / 2.0
    occ_lo = (noise_figure - 1.0) / 2.0
    s1_alpha = (alpha_a**2 + occ_a) - (alpha_lo**2 + occ_lo)
    s1_beta = (alpha_lo**2 + occ_lo) - (alpha_b**2 + occ_b)
    strong = alpha_lo >= 10.0 * max(alpha_a, alpha_b)
    if not strong:
        warnings.warn(
            "LO amplitude below 10x the mode amplitudes; strong-LO formulas "
            "are inaccurate",
            stacklevel=2,
        )
    bound = (abs(s1_alpha) + abs(s1_beta)) / alpha_lo**2
    return StokesMeans(s1_alpha, s1_beta, bound, strong)


def lock_phase(state: TwoModeState) -> float:
    """The B-field phase minimizing I_ab(theta); 0 when the trace is flat."""
    return inseparability_min(state).theta_star


def polarization_inseparability(
    state: TwoModeState,
    alpha_lo: float,
    theta_b: float,
    mode: str = "analytic",
    alpha_a: float = 0.0,
    alpha_b: float = 0.0,
    noise_figure: float = 1.0,
    n_samples: int = 200_000,
    seed: int = 0,
) -> StokesNoiseReport:
    """Normalized Stokes noise of the two beams at B-field phase theta_B.

    In "analytic" mode (strong-LO limit) s_s2 = var(X_a + X_b)/2 and
    s_s3 = var(Y_a - Y_b)/2 at theta_B, so their sum equals the quadrature
    inseparability exactly and the verdict cannot depend on alpha_B.

    In "sampled" mode the full quadratic Stokes observables are sampled with
    finite LO amplitude, retaining the A-field and LO fluctuation products
    the analytic limit drops; it converges to the analytic value as
    alpha_B / alpha_a grows.
    """
    if alpha_lo <= 0.0:
        raise ValueError("LO amplitude alpha_B must be positive")
    if mode == "analytic":
        var_sum, var_diff = epr_variances(state, theta_b)
        s2 = 0.5 * var_sum
        s3 = 0.5 * var_diff
        bound = 2.0
    elif mode == "sampled":
        s2, s3, bound = _sampled_noise(
            state, alpha_lo, theta_b, alpha_a, alpha_b, noise_figure, n_samples, seed
        )
    else:
        raise ValueError(f"unknown mode {mode!r}; expected 'analytic' or 'sampled'")
    total = s2 + s3
    return StokesNoiseReport(
        s_s2=float(s2),
        s_s3=float(s3),
        i_s_normalized=float(total),
        bound=float(bound),
        entangled=bool(total < bound),
        theta_b=float(theta_b),
        mode=mode,
    )


def _sampled_noise(state, alpha_lo, theta_b, alpha_a, alpha_b, noise_figure, n_samples, seed):
    """Monte-Carlo Stokes noise with the quadratic fluctuation terms kept."""
    if n_samples < 1000:
        raise ValueError("sampled mode needs at least 1000 samples")
    rng = np.random.default_rng(seed)
    V = to_quadrature_covariance(state)
    L = np.linalg.cholesky(V + 1e-14 * np.eye(4))
    z = rng.standard_normal((n_samples, 4)) @ L.T
    # complex mode fluctuations from (X, Y) pairs: dA = (X + iY)/2
    d_a = 0.5 * (z[:, 0] + 1j * z[:, 1])
    d_b = 0.5 * (z[:, 2] + 1j * z[:, 3])
    w = rng.standard_normal((n_samples, 4)) * np.sqrt(noise_figure)
    d_bx = 0.5 * (w[:, 0] + 1j * w[:, 1])
    d_by = 0.5 * (w[:, 2] + 1j * w[:, 3])

    lo = alpha_lo * np.exp(1j * theta_b)
    field_a = alpha_a + d_a
    field_b = alpha_b + d_b
    field_bx = lo + d_bx
    field_by = lo + d_by

    s2_alpha = field_a * np.conj(field_by) + np.conj(field_a) * field_by
    s2_beta = np.conj(field_b) * field_bx + field_b * np.conj(field_bx)
    s3_alpha = 1j * (field_a * np.conj(field_by) - np.conj(field_a) * field_by)
    s3_beta = 1j * (np.conj(field_b) * field_bx - field_b * np.conj(field_bx))

    norm = 2.0 * alpha_lo**2
    s2 = float(np.var((s2_alpha + s2_beta).real, ddof=1)) / norm
    s3 = float(np.var((s3_alpha + s3_beta).real, ddof=1)) / norm

    s1_alpha = np.mean(np.abs(field_a) ** 2 - np.abs(field_by) ** 2)
    s1_beta = np.mean(np.abs(field_bx) ** 2 - np.abs(field_b) ** 2)
    bound = (abs(s1_alpha) + abs(s1_beta)) / alpha_lo**2
    return s2, s3, float(bound)
