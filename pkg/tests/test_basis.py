"""Tests for polarization rotations, waveplates and the beamsplitter map."""

import numpy as np
import pytest

from twomode.basis import (
    PolarizationRotation,
    beamsplitter_equivalence,
    circular_rotation,
    homodyne_splitting,
    mode_for_direction,
    waveplate,
)
from twomode.entanglement import inseparability_min, sigma
from twomode.gaussian import TwoModeState, to_quadrature_covariance, vacuum, validate
from twomode.oracle import random_rotation, random_state


def test_identity_is_noop(random_states):
    ident = PolarizationRotation.identity()
    for state in random_states[:10]:
        out = ident.apply(state)
        assert out.n_a == pytest.approx(state.n_a, abs=1e-14)
        assert out.n_b == pytest.approx(state.n_b, abs=1e-14)
        for name in ("c_a", "c_b", "m_ab", "k_ab"):
            assert abs(getattr(out, name) - getattr(state, name)) < 1e-14


def test_non_unitary_rejected():
    with pytest.raises(ValueError, match="unitary"):
        PolarizationRotation(np.array([[1.0, 0.1], [0.0, 1.0]]))


def test_alpha_beta_phi_matches_quoted_decomposition():
    alpha, beta, phi = 0.6, 0.8, 0.7
    rot = PolarizationRotation.from_alpha_beta_phi(alpha, beta, phi)
    e = np.exp(1j * phi)
    assert np.allclose(rot.u[0], [beta, -alpha * e])
    assert np.allclose(rot.u[1], [alpha, beta * e])


def test_alpha_beta_must_normalize():
    with pytest.raises(ValueError):
        PolarizationRotation.from_alpha_beta_phi(0.5, 0.5, 0.0)


def test_composition_law(rng, random_states):
    for state in random_states[:10]:
        r1 = random_rotation(rng)
        r2 = random_rotation(rng)
        a = r2.apply(r1.apply(state))
        b = (r2 @ r1).apply(state)
        assert abs(a.n_a - b.n_a) < 1e-12
        assert abs(a.m_ab - b.m_ab) < 1e-12
        assert abs(a.k_ab - b.k_ab) < 1e-12


def test_apply_matches_monte_carlo_transform(rng):
    state = random_state(rng)
    rot = random_rotation(rng)
    out = rot.apply(state)

    n = 400_000
    V = to_quadrature_covariance(state)
    L = np.linalg.cholesky(V + 1e-13 * np.eye(4))
    z = np.random.default_rng(11).standard_normal((n, 4)) @ L.T
    # complex fluctuations, transform, back to quadratures
    da = 0.5 * (z[:, 0] + 1j * z[:, 1])
    db = 0.5 * (z[:, 2] + 1j * z[:, 3])
    new_a = rot.u[0, 0] * da + rot.u[0, 1] * db
    new_b = rot.u[1, 0] * da + rot.u[1, 1] * db
    zt = np.column_stack(
        [2 * new_a.real, 2 * new_a.imag, 2 * new_b.real, 2 * new_b.imag]
    )
    est = np.cov(zt.T, ddof=1)
    Vout = to_quadrature_covariance(out)
    for i in range(4):
        for j in range(4):
            sigma_ij = np.sqrt((Vout[i, i] * Vout[j, j] + Vout[i, j] ** 2) / n)
            assert abs(est[i, j] - Vout[i, j]) < 4 * max(sigma_ij, 1e-6)


def test_circular_mixing_of_aligned_pair_maximizes_correlation():
    # on a phase-fixed uncorrelated pair the circular rotation produces the
    # +-45-type modes with |m_ab| = (c_u + c_v)/2
    state = TwoModeState(1.2, 1.15, c_a=0.06, c_b=0.04)
    assert validate(state).ok
    out = circular_rotation().apply(state)
    assert abs(out.m_ab) == pytest.approx((0.06 + 0.04) / 2, abs=1e-14)
    assert abs(out.c_a) == pytest.approx((0.06 - 0.04) / 2, abs=1e-14)


def test_trace_invariant_under_rotations(rng, random_states):
    for state in random_states:
        rot = random_rotation(rng)
        assert rot.apply(state).trace == pytest.approx(state.trace, abs=1e-10)


def test_physicality_preserved(rng, random_states):
    for state in random_states[:20]:
        rot = random_rotation(rng)
        assert validate(rot.apply(state)).ok


def test_unitarity_over_long_chains(rng):
    rot = PolarizationRotation.identity()
    for _ in range(1000):
        rot = random_rotation(rng) @ rot
    assert rot.unitarity_residual() < 1e-11


class TestWaveplates:
    def test_quarter_wave_at_zero_relative_phase(self):
        q = waveplate("quarter", 0.0)
        assert np.allclose(q.u, np.diag([1.0, np.exp(1j * np.pi / 2)]))

    def test_half_wave_at_22p5_gives_pm45(self):
        h = waveplate("half", np.pi / 8)
        s = 1 / np.sqrt(2)
        assert np.allclose(h.u, np.array([[s, s], [s, -s]]), atol=1e-12)

    def test_half_wave_matches_linear_mixing_up_to_local_phases(self, rng):
        state = random_state(rng)
        h = waveplate("half", np.pi / 8).apply(state)
        lin = PolarizationRotation.from_alpha_beta_phi(
            1 / np.sqrt(2), 1 / np.sqrt(2), 0.0
        ).apply(state)
        # same mode pair up to local phases and ordering: I and sigma agree
        assert inseparability_min(h).i_min == pytest.approx(
            inseparability_min(lin).i_min, abs=1e-12
        )
        assert sigma(h) == pytest.approx(sigma(lin), abs=1e-12)

    def test_two_half_waves_cancel(self, rng):
        for angle in rng.uniform(0, np.pi, 5):
            h = waveplate("half", angle)
            assert np.allclose((h @ h).u, np.eye(2), atol=1e-12)

    def test_quarter_then_half_extracts_circular_modes(self):
        # the dual-homodyne decomposition A1 = (Aa+Ab)/sqrt2, A2 = i(Aa-Ab)/sqrt2
        combo = waveplate("quarter", 0.0) @ waveplate("half", np.pi / 8)
        assert np.allclose(combo.u, homodyne_splitting().u, atol=1e-12)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            waveplate("third", 0.0)


class TestBeamsplitterEquivalence:
    def test_full_transmission_is_identity(self):
        rot = beamsplitter_equivalence(1.0, 0.0)
        assert np.allclose(rot.u, np.eye(2))

    def test_balanced_with_quarter_dephasing_is_maximal_mixing(self):
        rot = beamsplitter_equivalence(0.5, np.pi / 2)
        # rows mix 50/50 with a pi/2 dephasing on the second input: the
        # circular pair, i.e. the maximal-mixing rotation
        assert np.allclose(rot.u, circular_rotation().u, atol=1e-12)

    def test_balanced_without_dephasing_is_linear_45(self):
        rot = beamsplitter_equivalence(0.5, 0.0)
        s = 1 / np.sqrt(2)
        assert np.allclose(rot.u, np.array([[s, -s], [s, s]]), atol=1e-12)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            beamsplitter_equivalence(1.5, 0.0)

    def test_squeezing_sum_conserved_without_dephasing(self, rng):
        # phi = 0 keeps the squeezed and noisy quadratures unmixed when both
        # modes are squeezed on the same quadrature
        state = TwoModeState(1.2, 1.3, c_a=0.08, c_b=0.12)
        assert validate(state).ok
        for T in rng.uniform(0.05, 0.95, 5):
            out = beamsplitter_equivalence(T, 0.0).apply(state)
            assert sigma(out) == pytest.approx(sigma(state), abs=1e-10)


class TestModeForDirection:
    def test_row_directions_match_request(self, rng):
        for _ in range(20):
            v = rng.standard_normal(3)
            v /= np.linalg.norm(v)
            pair = mode_for_direction(*v)
            dirs = pair.mode_stokes_directions()
            assert np.allclose(dirs[0], v, atol=1e-12)
            assert np.allclose(dirs[1], -v, atol=1e-12)

    def test_poles_and_axes(self):
        # S'_1 is the input pair itself; S'_3 the circular pair
        assert np.allclose(mode_for_direction(1, 0, 0).u, np.array([[1, 0], [0, -1]]), atol=1e-12)
        s3 = mode_for_direction(0, 0, 1)
        assert np.allclose(np.abs(s3.u), np.full((2, 2), 1 / np.sqrt(2)), atol=1e-12)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            mode_for_direction(0.0, 0.0, 0.0)


def test_vacuum_invariant_under_any_rotation(rng):
    for _ in range(10):
        out = random_rotation(rng).apply(vacuum())
        assert out.n_a == pytest.approx(1.0, abs=1e-12)
        assert out.n_b == pytest.approx(1.0, abs=1e-12)
        assert abs(out.c_a) < 1e-12 and abs(out.c_b) < 1e-12
        assert abs(out.m_ab) < 1e-12 and abs(out.k_ab) < 1e-12
