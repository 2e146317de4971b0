"""Polarization basis changes as 2x2 Jones unitaries.

A rotation maps old mode operators to new ones, ``new = U @ old``.  Rotations
are stored as full U(2) matrices because local phases matter for every
quadrature-angle-dependent quantity; the (alpha, beta, phi) mixing triple is a
constructor, not the storage form.

Angle convention: waveplate axis angles are measured from the first (a) mode
polarization direction, counterclockwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gaussian import TwoModeState

UNITARITY_TOL = 1e-10


@dataclass(frozen=True)
class PolarizationRotation:
    """Unitary basis change of the two polarization modes."""

    u: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=complex)
        if u.shape != (2, 2):
            raise ValueError(f"Jones matrix must be 2x2, got {u.shape}")
        object.__setattr__(self, "u", u)
        residual = self.unitarity_residual()
        if residual > UNITARITY_TOL:
            raise ValueError(f"matrix is not unitary (residual {residual:.3e})")

    @classmethod
    def from_alpha_beta_phi(cls, alpha: float, beta: float, phi: float) -> "PolarizationRotation":
        """Mixing rotation A_a = beta A_u - alpha e^{i phi} A_v,
        A_b = alpha A_u + beta e^{i phi} A_v, with alpha, beta >= 0."""
        if alpha < 0 or beta < 0:
            raise ValueError("alpha and beta must be non-negative")
        if abs(alpha**2 + beta**2 - 1.0) > 1e-10:
            raise ValueError("alpha^2 + beta^2 must equal 1")
        e = np.exp(1j * phi)
        return cls(np.array([[beta, -alpha * e], [alpha, beta * e]]))

    @classmethod
    def identity(cls) -> "PolarizationRotation":
        return cls(np.eye(2, dtype=complex))

    @classmethod
    def local_phases(cls, psi_a: float, psi_b: float) -> "PolarizationRotation":
        """Phase each mode separately: A_a -> e^{i psi_a} A_a, likewise for b."""
        return cls(np.diag([np.exp(1j * psi_a), np.exp(1j * psi_b)]))

    @classmethod
    def swap(cls) -> "PolarizationRotation":
        return cls(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))

    def unitarity_residual(self) -> float:
        return float(np.abs(self.u @ self.u.conj().T - np.eye(2)).max())

    def compose(self, other: "PolarizationRotation") -> "PolarizationRotation":
        """Rotation equivalent to applying `other` first, then `self`."""
        return PolarizationRotation(self.u @ other.u)

    def __matmul__(self, other: "PolarizationRotation") -> "PolarizationRotation":
        return self.compose(other)

    def apply(self, state: TwoModeState) -> TwoModeState:
        """Second moments of the transformed mode pair.

        Satisfies the composition law r2.apply(r1.apply(s)) ==
        (r2 @ r1).apply(s); the identity rotation is a no-op.
        """
        u = self.u
        C = u @ state.anomalous_matrix() @ u.T
        K = u @ state.normal_matrix() @ u.conj().T
        return TwoModeState(
            n_a=2.0 * K[0, 0].real - 1.0,
            n_b=2.0 * K[1, 1].real - 1.0,
            c_a=C[0, 0],
            c_b=C[1, 1],
            m_ab=C[0, 1],
            k_ab=K[0, 1],
            labels=state.labels,
        )

    def mode_stokes_directions(self) -> np.ndarray:
        """Unit Stokes vectors (s1, s2, s3) of the two output modes.

        Computed from the rows (w0, w1) of the Jones matrix as
        s = (|w0|^2 - |w1|^2, 2 Re(w0 w1*), 2 Im(w0 w1*)), relative to the
        input basis axes.
        """
        out = np.zeros((2, 3))
        for i in range(2):
            w0, w1 = self.u[i, 0], self.u[i, 1]
            cross = w0 * np.conj(w1)
            out[i] = [abs(w0) ** 2 - abs(w1) ** 2, 2.0 * cross.real, 2.0 * cross.imag]
        return out


def apply(rotation: PolarizationRotation, state: TwoModeState) -> TwoModeState:
    return rotation.apply(state)


def waveplate(kind: str, axis_angle: float) -> PolarizationRotation:
    """Jones matrix of a half- or quarter-wave plate.

    ``kind`` is "half" or "quarter"; ``axis_angle`` is the fast-axis angle in
    radians from the a-mode direction.  A quarter-wave plate at 0 applies an
    e^{i pi/2} relative phase between the axes; a half-wave plate at pi/8
    (22.5 degrees) maps (x, y) to the +-45 degree pair.
    """
    if kind == "half":
        retard = np.pi
    elif kind == "quarter":
        retard = np.pi / 2.0
    else:
        raise ValueError(f"unknown waveplate kind {kind!r}; expected 'half' or 'quarter'")
    c, s = np.cos(axis_angle), np.sin(axis_angle)
    R = np.array([[c, -s], [s, c]], dtype=complex)
    J = R @ np.diag([1.0, np.exp(1j * retard)]) @ R.T
    return PolarizationRotation(J)


def beamsplitter_equivalence(T: float, dephase: float) -> PolarizationRotation:
    """Rotation equivalent to mixing the modes on a beamsplitter.

    Transmission T maps to beta = sqrt(T), alpha = sqrt(1 - T); the second
    mode is dephased by `dephase` before mixing.  Identical to the
    (alpha, beta, phi) constructor with those parameters.
    """
    if not 0.0 <= T <= 1.0:
        raise ValueError(f"transmission must lie in [0, 1], got {T}")
    beta = np.sqrt(T)
    alpha = np.sqrt(1.0 - T)
    rot = PolarizationRotation.from_alpha_beta_phi(alpha, beta, dephase)
    expected = np.array(
        [[beta, -alpha * np.exp(1j * dephase)], [alpha, beta * np.exp(1j * dephase)]]
    )
    assert np.allclose(rot.u, expected, atol=1e-14)
    return rot


def circular_rotation() -> PolarizationRotation:
    """The maximal-mixing rotation: alpha = beta = 1/sqrt(2), phi = pi/2.

    Rows are (A_u - i A_v)/sqrt(2) and (A_u + i A_v)/sqrt(2), the circularly
    polarized pair with respect to the input modes.
    """
    s = 1.0 / np.sqrt(2.0)
    return PolarizationRotation(np.array([[s, -1j * s], [s, 1j * s]]))


def homodyne_splitting() -> PolarizationRotation:
    """Rotation to the modes measured by the dual homodyne scheme:
    A_1 = (A_a + A_b)/sqrt(2), A_2 = i (A_a - A_b)/sqrt(2)."""
    s = 1.0 / np.sqrt(2.0)
    return PolarizationRotation(np.array([[s, s], [1j * s, -1j * s]]))


def mode_for_direction(s1: float, s2: float, s3: float) -> PolarizationRotation:
    """Orthogonal mode pair for a unit Stokes direction on the Poincare sphere.

    Row 0 is the mode whose Stokes vector (relative to the input basis) is
    (s1, s2, s3); row 1 is its antipode.  Antipodal directions are orthogonal
    polarization modes.
    """
    norm = np.sqrt(s1 * s1 + s2 * s2 + s3 * s3)
    if not np.isfinite(norm) or norm < 1e-12:
        raise ValueError("Stokes direction must be a nonzero finite vector")
    s1, s2, s3 = s1 / norm, s2 / norm, s3 / norm
    theta = np.arccos(np.clip(s1, -1.0, 1.0))
    phi = np.arctan2(s3, s2)
    ch, sh = np.cos(theta / 2.0), np.sin(theta / 2.0)
    e = np.exp(-1j * phi)
    return PolarizationRotation(np.array([[ch, sh * e], [sh, -ch * e]]))
