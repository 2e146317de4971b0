"""Inseparability analysis of a two-mode Gaussian state.

The Duan-Simon quantity evaluated here is

    I_ab(theta) = [var(X_a + X_b) + var(Y_a - Y_b)](theta) / 2
                = n_a + n_b + 4 Re(m_ab exp(-2 i theta))

which certifies entanglement when it drops below 2.  The module finds the
"uncorrelated" mode pair (u, v) with <dA_u dA_v> = 0, builds the maximally
entangled basis (the circular combinations of u and v), evaluates the
squeezing-sum extrema, and maps both quantities over the Poincare sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import PolarizationRotation, circular_rotation, mode_for_direction
from .gaussian import EPS_DEG, TwoModeState, min_max_variance

# Residual cross-correlation allowed in the rotated "uncorrelated" basis.
UNCORR_TOL = 1e-10

SEPARABILITY_BOUND = 2.0


@dataclass(frozen=True)
class EntanglementReport:
    """Result of minimizing I_ab(theta) for a fixed mode pair.

    ``i_of_theta`` is sinusoidal in 2*theta with mean ``trace`` and amplitude
    ``amplitude`` = 4 |m_ab|; ``theta_star`` is the minimizer reported in
    [0, pi) (0 by convention when the trace is flat).
    """

    i_min: float
    theta_star: float
    sigma: float
    trace: float
    amplitude: float

    @property
    def separable_verdict(self) -> bool:
        """True when the criterion does NOT certify entanglement."""
        return not self.i_min < SEPARABILITY_BOUND

    @property
    def entangled(self) -> bool:
        return self.i_min < SEPARABILITY_BOUND

    def i_at(self, theta):
        """Evaluate I_ab(theta); accepts scalars or arrays."""
        theta = np.asarray(theta, dtype=float)
        shift = 2.0 * (theta - self.theta_star)
        values = self.trace - self.amplitude * np.cos(shift)
        return float(values) if values.ndim == 0 else values


@dataclass(frozen=True)
class UncorrelatedBasis:
    """The phase-fixed basis (u, v) with <dA_u dA_v> = 0.

    Both anomalous moments are real and non-negative after phase fixing (the
    two modes' minimal noise lies on the same quadrature), and modes are
    ordered so that c_u >= c_v.  ``k_uv`` is the residual normal
    cross-correlation, unconstrained by the construction.
    """

    rotation: PolarizationRotation
    c_u: float
    c_v: float
    k_uv: complex
    state: TwoModeState


def inseparability_at(state: TwoModeState, theta: float) -> float:
    """I_ab(theta) = [var(X_a+X_b) + var(Y_a-Y_b)]/2 at quadrature angle theta."""
    return state.trace + 4.0 * (state.m_ab * np.exp(-2j * theta)).real


def inseparability_min(state: TwoModeState) -> EntanglementReport:
    """Minimize I_ab over theta.

    The minimum n_a + n_b - 4 |m_ab| is reached a quarter period past the
    correlation phase; for |m_ab| below EPS_DEG the trace is flat and
    theta_star is 0 by convention.
    """
    amp = abs(state.m_ab)
    if amp < EPS_DEG:
        return EntanglementReport(
            i_min=state.trace,
            theta_star=0.0,
            sigma=sigma(state),
            trace=state.trace,
            amplitude=0.0,
        )
    theta_star = (np.angle(state.m_ab) / 2.0 + math.pi / 2.0) % math.pi
    return EntanglementReport(
        i_min=state.trace - 4.0 * amp,
        theta_star=float(theta_star),
        sigma=sigma(state),
        trace=state.trace,
        amplitude=4.0 * amp,
    )


def sigma(state: TwoModeState) -> float:
    """Sum of the two modes' minimal quadrature variances,
    (n_a - 2|c_a|) + (n_b - 2|c_b|)."""
    return (state.n_a - 2.0 * abs(state.c_a)) + (state.n_b - 2.0 * abs(state.c_b))


def _uncorrelated_mixing(c_a: complex, c_b: complex, m: complex) -> PolarizationRotation:
    """Mixing (Phi, omega) that zeroes the anomalous cross-correlation.

    Generic branch: e^{i omega} = M/|M|, cos 2Phi = (|c_a|^2 - |c_b|^2)/N,
    sin 2Phi = -2|M|/N with M = c_a m* + c_b* m and
    N = sqrt(4|M|^2 + (|c_a|^2 - |c_b|^2)^2).

    Degenerate branches (N = 0, which forces |c_a| = |c_b|):
      * m = 0: already uncorrelated, identity mixing.
      * c_a = c_b = 0: any 50/50 mixing works; Phi = pi/4, omega = 0.
      * otherwise -2m/(c_a e^{-i w} - c_b e^{i w}) is real for every omega;
        pick omega = 0, or omega = pi/2 when c_a = c_b.
    """
    if abs(m) < EPS_DEG:
        return PolarizationRotation.identity()
    scale = max(abs(c_a), abs(c_b), abs(m))
    M = c_a * np.conj(m) + np.conj(c_b) * m
    N = math.hypot(2.0 * abs(M), abs(c_a) ** 2 - abs(c_b) ** 2)
    if N > 1e-13 * scale * scale:
        w = M / abs(M)
        two_phi = math.atan2(-2.0 * abs(M) / N, (abs(c_a) ** 2 - abs(c_b) ** 2) / N)
        phi = two_phi / 2.0
    elif abs(c_a) < EPS_DEG:
        w = 1.0 + 0j
        phi = math.pi / 4.0
    else:
        if abs(c_a - c_b) > 1e-13 * scale:
            w = 1.0 + 0j
        else:
            w = 1j
        t = -2.0 * m / (c_a * np.conj(w) - c_b * w)
        phi = math.atan(t.real) / 2.0
    cphi, sphi = math.cos(phi), math.sin(phi)
    return PolarizationRotation(np.array([[cphi, -sphi * w], [sphi, cphi * w]]))


def find_uncorrelated_basis(state: TwoModeState) -> UncorrelatedBasis:
    """Construct the uncorrelated basis (u, v) of the state.

    Steps: mixing that zeroes <dA_u dA_v>, then a phase fix multiplying each
    mode by e^{-i arg(c)/2} so both anomalous moments land on the positive
    real axis (zero phase is kept for modes with c = 0, whose fluctuations
    are isotropic), then ordering with c_u >= c_v (ties preserve input
    order).  The returned rotation is the full composition.
    """
    rot = _uncorrelated_mixing(state.c_a, state.c_b, state.m_ab)
    mixed = rot.apply(state)

    def fix_phase(c: complex) -> float:
        if abs(c) < EPS_DEG:
            return 0.0
        return -np.angle(c) / 2.0

    phase = PolarizationRotation.local_phases(fix_phase(mixed.c_a), fix_phase(mixed.c_b))
    rot = phase @ rot
    fixed = phase.apply(mixed)
    if fixed.c_b.real > fixed.c_a.real + EPS_DEG:
        swap = PolarizationRotation.swap()
        rot = swap @ rot
        fixed = swap.apply(fixed)
    fixed = fixed.with_labels(("u", "v"))
    residual = abs(fixed.m_ab)
    if residual > UNCORR_TOL:
        raise RuntimeError(f"uncorrelated-basis residual too large: {residual:.3e}")
    return UncorrelatedBasis(
        rotation=rot,
        c_u=fixed.c_a.real,
        c_v=fixed.c_b.real,
        k_uv=fixed.k_ab,
        state=fixed,
    )


def maximal_entanglement(
    state: TwoModeState,
) -> tuple[EntanglementReport, PolarizationRotation]:
    """Closed-form basis of maximal entanglement.

    The best pair is circularly polarized with respect to the uncorrelated
    modes; its inseparability equals the summed minimal noises
    (n_u - 2 c_u) + (n_v - 2 c_v), the minimum over every basis and theta.
    """
    uncorr = find_uncorrelated_basis(state)
    basis_star = circular_rotation() @ uncorr.rotation
    starred = basis_star.apply(state).with_labels(("a*", "b*"))
    report = inseparability_min(starred)
    sigma_min = (uncorr.state.n_a - 2.0 * uncorr.c_u) + (uncorr.state.n_b - 2.0 * uncorr.c_v)
    assert abs(report.i_min - sigma_min) < 1e-9
    assert report.i_min <= inseparability_min(state).i_min + 1e-9
    return report, basis_star


def sigma_extrema(state: TwoModeState) -> tuple[float, float]:
    """Extrema of the squeezing sum over all polarization bases.

    sigma_min is reached in the uncorrelated basis (and everywhere on its
    linear-combination equator); sigma_max = min(v_min(u) + v_max(v),
    v_max(u) + v_min(v)) is reached by the circular pair.
    """
    uncorr = find_uncorrelated_basis(state)
    u_min, u_max, _ = min_max_variance(uncorr.state, "a")
    v_min, v_max, _ = min_max_variance(uncorr.state, "b")
    return u_min + v_min, min(u_min + v_max, u_max + v_min)


def equatorial_entanglement(state: TwoModeState) -> float:
    """I_min of the pair at 45 degrees to the uncorrelated modes.

    These are the most entangled linearly polarized modes; their
    inseparability equals sigma_max.
    """
    uncorr = find_uncorrelated_basis(state)
    rot45 = PolarizationRotation.from_alpha_beta_phi(
        1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0), 0.0
    )
    return inseparability_min(rot45.apply(uncorr.state)).i_min


def single_mode_variance_min(
    uncorr_state: TwoModeState, big_theta, phi
) -> np.ndarray:
    """Minimal quadrature variance of the sphere mode at (big_theta, phi).

    The mode is cos(T/2) A_u + sin(T/2) e^{-i phi} A_v built on the
    uncorrelated basis; arrays broadcast.
    """
    big_theta = np.asarray(big_theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    beta = np.cos(big_theta / 2.0)
    alpha = np.sin(big_theta / 2.0)
    e = np.exp(1j * phi)
    n_u, n_v = uncorr_state.n_a, uncorr_state.n_b
    c_u, c_v = uncorr_state.c_a, uncorr_state.c_b
    m, k = uncorr_state.m_ab, uncorr_state.k_ab
    n_w = beta**2 * n_u + alpha**2 * n_v + 4.0 * alpha * beta * (k * e).real
    c_w = beta**2 * c_u + alpha**2 * np.conj(e) ** 2 * c_v + 2.0 * alpha * beta * np.conj(e) * m
    return n_w - 2.0 * np.abs(c_w)


def best_single_mode_squeezing(state: TwoModeState, refine: int = 1) -> float:
    """Smallest quadrature variance over every single mode on the sphere.

    Searched numerically on a (big_theta, phi) grid with local refinement;
    always <= min(v_min(u), v_min(v)) since the poles are grid points.  When
    the residual correlation k_uv is real the result matches the closed form
    (v_min(u) + v_min(v))/2 - sqrt((v_min(u) - v_min(v))^2 + 16 k^2)/2.
    """
    uncorr = find_uncorrelated_basis(state)
    n_grid = 181
    thetas = np.linspace(0.0, math.pi, n_grid)
    phis = np.linspace(0.0, 2.0 * math.pi, n_grid, endpoint=False)
    T, P = np.meshgrid(thetas, phis, indexing="ij")
    values = single_mode_variance_min(uncorr.state, T, P)
    idx = np.unravel_index(np.argmin(values), values.shape)
    best = float(values[idx])
    t0, p0 = thetas[idx[0]], phis[idx[1]]
    dt = thetas[1] - thetas[0]
    dp = phis[1] - phis[0]
    for _ in range(refine):
        t_loc = np.linspace(t0 - dt, t0 + dt, 41)
        p_loc = np.linspace(p0 - dp, p0 + dp, 41)
        T, P = np.meshgrid(np.clip(t_loc, 0.0, math.pi), p_loc, indexing="ij")
        values = single_mode_variance_min(uncorr.state, T, P)
        idx = np.unravel_index(np.argmin(values), values.shape)
        best = min(best, float(values[idx]))
        t0, p0 = T[idx], P[idx]
        dt, dp = dt / 20.0, dp / 20.0
    return best


def best_single_mode_squeezing_closed_form(state: TwoModeState) -> float:
    """Closed form for real residual correlation k_uv (phase zero).

    Valid when arg(k_uv) = 0 modulo pi; for k_uv = 0 it reduces to
    min(v_min(u), v_min(v)).
    """
    uncorr = find_uncorrelated_basis(state)
    x = uncorr.state.n_a - 2.0 * uncorr.c_u
    y = uncorr.state.n_b - 2.0 * uncorr.c_v
    k = uncorr.k_uv
    return 0.5 * (x + y - math.sqrt((x - y) ** 2 + 16.0 * abs(k) ** 2))


def poincare_sweep(state: TwoModeState, n_lat: int, n_lon: int) -> np.ndarray:
    """Map I_min and the squeezing sum over the Poincare sphere.

    Directions are anchored on the uncorrelated basis: the S'_1 axis holds
    the (u, v) pair itself, S'_3 the maximally entangled circular pair.  The
    grid has ``n_lat`` colatitude rings measured from the S'_3 pole
    (inclusive of both poles) and ``n_lon`` longitudes starting on S'_1.

    Returns an array of rows (s1, s2, s3, i_min, sigma) in deterministic
    row-major (lat, lon) order.
    """
    if n_lat < 2 or n_lon < 2:
        raise ValueError("sweep resolution must be at least 2x2")
    uncorr = find_uncorrelated_basis(state)
    base = uncorr.state
    lats = np.linspace(0.0, math.pi, n_lat)
    lons = np.linspace(0.0, 2.0 * math.pi, n_lon, endpoint=False)
    rows = np.zeros((n_lat * n_lon, 5))
    i = 0
    for lat in lats:
        s3 = math.cos(lat)
        ring = math.sin(lat)
        for lon in lons:
            s1 = ring * math.cos(lon)
            s2 = ring * math.sin(lon)
            pair = mode_for_direction(s1, s2, s3)
            rotated = pair.apply(base)
            report = inseparability_min(rotated)
            rows[i] = (s1, s2, s3, report.i_min, report.sigma)
            i += 1
    return rows
