"""Tests for the two-mode state representation and variance evaluation."""

import numpy as np
import pytest

from twomode.gaussian import (
    SYMPLECTIC_FORM,
    TwoModeState,
    epr_variances,
    from_quadrature_covariance,
    min_max_variance,
    quadrature_variance,
    state_from_dict,
    to_quadrature_covariance,
    vacuum,
    validate,
)
from twomode.oracle import random_state


def sample_quadratures(state, n, seed=0):
    """Monte-Carlo oracle: draws (X_a, Y_a, X_b, Y_b) samples of the state."""
    rng = np.random.default_rng(seed)
    V = to_quadrature_covariance(state)
    L = np.linalg.cholesky(V + 1e-13 * np.eye(4))
    return rng.standard_normal((n, 4)) @ L.T


class TestValidate:
    def test_vacuum_is_physical(self):
        assert validate(vacuum()).ok

    def test_below_vacuum_occupation_fails(self):
        result = validate(TwoModeState(0.5, 1.0))
        assert not result.ok
        assert any("uncertainty" in v.name for v in result.violations)

    def test_squeezed_pair_just_physical(self):
        # eigenvalues of V + i*Omega computed numerically: each mode block has
        # min variance 0.975, max 1.075, product 1.048125 >= 1, so the
        # smallest eigenvalue is (2.05 - sqrt(4.01))/2 > 0
        state = TwoModeState(1.025, 1.025, 0.025, 0.025)
        assert validate(state).ok
        V = to_quadrature_covariance(state)
        eigs = np.linalg.eigvalsh(V + 1j * SYMPLECTIC_FORM)
        assert eigs.min() == pytest.approx((2.05 - np.sqrt(4.01)) / 2, abs=1e-12)
        v_min, v_max, _ = min_max_variance(state, "a")
        assert v_min == pytest.approx(0.975)
        assert v_max == pytest.approx(1.075)
        assert v_min * v_max == pytest.approx(1.048125)

    def test_nan_rejected(self):
        result = validate(TwoModeState(float("nan"), 1.0))
        assert not result.ok

    def test_random_states_are_physical(self, random_states):
        for state in random_states:
            assert validate(state).ok


class TestQuadratureVariance:
    def test_vacuum_shot_noise_at_any_angle(self, rng):
        for theta in rng.uniform(0, np.pi, 10):
            assert quadrature_variance(vacuum(), "a", theta) == pytest.approx(1.0)

    def test_squeezed_minimum(self):
        state = TwoModeState(1.025, 1.0, c_a=0.025)
        assert quadrature_variance(state, "a", np.pi / 2) == pytest.approx(0.975)

    def test_pi_periodicity(self, rng, random_states):
        for state in random_states[:10]:
            for theta in rng.uniform(0, np.pi, 5):
                assert quadrature_variance(state, "a", theta) == pytest.approx(
                    quadrature_variance(state, "a", theta + np.pi), abs=1e-12
                )

    def test_invalid_mode_tag(self):
        with pytest.raises(ValueError):
            quadrature_variance(vacuum(), "c", 0.0)

    def test_matches_sampled_variance_on_theta_grid(self, rng):
        state = random_state(rng)
        n = 1_000_000
        z = sample_quadratures(state, n, seed=7)
        for theta in np.linspace(0, np.pi, 7):
            c, s = np.cos(theta), np.sin(theta)
            for mode, cols in (("a", (0, 1)), ("b", (2, 3))):
                samples = z[:, cols[0]] * c + z[:, cols[1]] * s
                est = samples.var(ddof=1)
                expected = quadrature_variance(state, mode, theta)
                sigma = np.sqrt(2.0 / n) * expected
                assert abs(est - expected) < 3 * sigma


class TestMinMaxVariance:
    def test_vacuum_isotropic(self):
        assert min_max_variance(vacuum(), "a") == (1.0, 1.0, 0.0)

    def test_extrema_values(self):
        state = TwoModeState(1.025, 1.0, c_a=0.025j)
        v_min, v_max, theta_min = min_max_variance(state, "a")
        assert v_min == pytest.approx(0.975)
        assert v_max == pytest.approx(1.075)
        assert quadrature_variance(state, "a", theta_min) == pytest.approx(v_min)

    def test_bounds_on_random_states(self, random_states):
        for state in random_states:
            for mode in ("a", "b"):
                v_min, v_max, _ = min_max_variance(state, mode)
                n = state.n_a if mode == "a" else state.n_b
                assert v_min >= 0.0
                assert v_min <= n <= v_max

    def test_theta_min_is_the_minimizer(self, random_states):
        thetas = np.linspace(0, np.pi, 721, endpoint=False)
        for state in random_states[:10]:
            v_min, _, theta_min = min_max_variance(state, "a")
            grid = [quadrature_variance(state, "a", t) for t in thetas]
            assert v_min <= min(grid) + 1e-12
            assert 0.0 <= theta_min < np.pi


class TestCovarianceRoundTrip:
    def test_vacuum_is_identity(self):
        assert np.allclose(to_quadrature_covariance(vacuum()), np.eye(4))

    def test_roundtrip_on_random_states(self, rng):
        for _ in range(100):
            state = random_state(rng)
            back = from_quadrature_covariance(to_quadrature_covariance(state))
            assert abs(back.n_a - state.n_a) < 1e-12
            assert abs(back.n_b - state.n_b) < 1e-12
            for name in ("c_a", "c_b", "m_ab", "k_ab"):
                assert abs(getattr(back, name) - getattr(state, name)) < 1e-12

    def test_rejects_non_symmetric(self):
        V = np.eye(4)
        V[0, 1] = 0.1
        with pytest.raises(ValueError, match="symmetric"):
            from_quadrature_covariance(V)

    def test_cross_moment_blocks_match_sampling(self):
        state = TwoModeState(1.6, 1.6, m_ab=0.5j, k_ab=0.05 + 0.02j)
        assert validate(state).ok
        # off-diagonal blocks carry the +-Re/Im combinations of m and k
        V = to_quadrature_covariance(state)
        assert V[0, 2] == pytest.approx(2 * state.m_ab.real + 2 * state.k_ab.real)
        assert V[0, 3] == pytest.approx(2 * state.m_ab.imag - 2 * state.k_ab.imag)
        assert V[1, 2] == pytest.approx(2 * state.m_ab.imag + 2 * state.k_ab.imag)
        assert V[1, 3] == pytest.approx(-2 * state.m_ab.real + 2 * state.k_ab.real)
        n = 1_000_000
        z = sample_quadratures(state, n, seed=3)
        V = to_quadrature_covariance(state)
        est = np.cov(z.T, ddof=1)
        for i in range(4):
            for j in range(4):
                sigma = np.sqrt((V[i, i] * V[j, j] + V[i, j] ** 2) / n)
                assert abs(est[i, j] - V[i, j]) < 3 * max(sigma, 1e-6)


class TestEprVariances:
    def test_matches_covariance_route(self, rng, random_states):
        # independent route: rotate the 4x4 covariance and contract with the
        # EPR combination vectors
        e_sum = np.array([1.0, 0.0, 1.0, 0.0])
        e_diff = np.array([0.0, 1.0, 0.0, -1.0])
        for state in random_states[:15]:
            V = to_quadrature_covariance(state)
            for theta in rng.uniform(0, np.pi, 5):
                c, s = np.cos(theta), np.sin(theta)
                R = np.array(
                    [
                        [c, s, 0, 0],
                        [-s, c, 0, 0],
                        [0, 0, c, s],
                        [0, 0, -s, c],
                    ]
                )
                Vt = R @ V @ R.T
                var_sum, var_diff = epr_variances(state, theta)
                assert var_sum == pytest.approx(e_sum @ Vt @ e_sum, abs=1e-10)
                assert var_diff == pytest.approx(e_diff @ Vt @ e_diff, abs=1e-10)


class TestStateJson:
    def test_roundtrip(self):
        state = TwoModeState(1.3, 1.1, 0.1j, -0.05, 0.02 + 0.01j, 0.03, labels=("x", "y"))
        back = state_from_dict(state.to_dict())
        assert back == state

    def test_missing_field_rejected(self):
        data = vacuum().to_dict()
        del data["m_ab"]
        with pytest.raises(ValueError, match="m_ab"):
            state_from_dict(data)

    def test_unknown_field_rejected(self):
        data = vacuum().to_dict()
        data["extra"] = 1.0
        with pytest.raises(ValueError, match="unknown"):
            state_from_dict(data)

    def test_nan_rejected(self):
        data = vacuum().to_dict()
        data["n_a"] = float("nan")
        with pytest.raises(ValueError, match="n_a"):
            state_from_dict(data)

    def test_inf_in_complex_rejected(self):
        data = vacuum().to_dict()
        data["c_a"] = [float("inf"), 0.0]
        with pytest.raises(ValueError, match="c_a"):
            state_from_dict(data)
