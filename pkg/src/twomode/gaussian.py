"""Two-mode Gaussian fluctuation states in shot-noise units.

A two-mode state is described by the second moments of the bosonic mode
fluctuations delta_A = A - <A>.  Quadratures follow the Fresnel convention

    X(theta) = A exp(-i theta) + A^dag exp(+i theta),    Y = X(theta + pi/2)

so that [X, Y] = 2i and vacuum quadrature variance equals 1 (the shot-noise
unit).  Everything downstream of this module works in these units.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

# Eigenvalue tolerance for the uncertainty-relation check; leaves headroom for
# accumulated rotation round-off.
EPS_PHYS = 1e-9
# Below this magnitude a complex moment counts as zero (degeneracy handling).
EPS_DEG = 1e-12

# Symplectic form in (X_a, Y_a, X_b, Y_b) ordering for [X, Y] = 2i.
SYMPLECTIC_FORM = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)

_STATE_FIELDS = ("labels", "n_a", "n_b", "c_a", "c_b", "m_ab", "k_ab")


@dataclass(frozen=True)
class TwoModeState:
    """Second moments of two bosonic mode fluctuations (the noise ellipsoid).

    Attributes
    ----------
    n_a, n_b : float
        Symmetrized occupations <dA^dag dA + dA dA^dag> per mode; vacuum = 1.
    c_a, c_b : complex
        Anomalous single-mode moments <dA_a^2>, <dA_b^2>.
    m_ab : complex
        Anomalous cross-correlation <dA_a dA_b>.
    k_ab : complex
        Normal cross-correlation <dA_a dA_b^dag>; <dA_b dA_a^dag> is its
        conjugate because distinct-mode operators commute.
    labels : tuple of str
        Mode names, metadata only.
    """

    n_a: float
    n_b: float
    c_a: complex = 0j
    c_b: complex = 0j
    m_ab: complex = 0j
    k_ab: complex = 0j
    labels: tuple[str, str] = ("a", "b")

    def __post_init__(self):
        object.__setattr__(self, "n_a", float(self.n_a))
        object.__setattr__(self, "n_b", float(self.n_b))
        object.__setattr__(self, "c_a", complex(self.c_a))
        object.__setattr__(self, "c_b", complex(self.c_b))
        object.__setattr__(self, "m_ab", complex(self.m_ab))
        object.__setattr__(self, "k_ab", complex(self.k_ab))
        object.__setattr__(self, "labels", (str(self.labels[0]), str(self.labels[1])))

    @property
    def trace(self) -> float:
        """n_a + n_b; invariant under any polarization basis change."""
        return self.n_a + self.n_b

    def anomalous_matrix(self) -> np.ndarray:
        """Symmetric 2x2 matrix C with C[i,j] = <dA_i dA_j>."""
        return np.array([[self.c_a, self.m_ab], [self.m_ab, self.c_b]])

    def normal_matrix(self) -> np.ndarray:
        """Hermitian 2x2 matrix K with K[i,j] = <dA_i dA_j^dag>."""
        return np.array(
            [
                [(self.n_a + 1.0) / 2.0, self.k_ab],
                [np.conj(self.k_ab), (self.n_b + 1.0) / 2.0],
            ]
        )

    def with_labels(self, labels: tuple[str, str]) -> "TwoModeState":
        return replace(self, labels=(labels[0], labels[1]))

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "n_a": self.n_a,
            "n_b": self.n_b,
            "c_a": [self.c_a.real, self.c_a.imag],
            "c_b": [self.c_b.real, self.c_b.imag],
            "m_ab": [self.m_ab.real, self.m_ab.imag],
            "k_ab": [self.k_ab.real, self.k_ab.imag],
        }

    @staticmethod
    def from_dict(data: dict) -> "TwoModeState":
        return state_from_dict(data)


def vacuum(labels: tuple[str, str] = ("a", "b")) -> TwoModeState:
    """Two-mode vacuum: n = 1 per mode, all complex moments zero."""
    return TwoModeState(1.0, 1.0, labels=labels)


@dataclass(frozen=True)
class Violation:
    name: str
    magnitude: float

    def __str__(self):
        return f"{self.name} (magnitude {self.magnitude:.3e})"


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    def describe(self) -> str:
        if self.ok:
            return "physical"
        return "; ".join(str(v) for v in self.violations)


def validate(state: TwoModeState, eps: float = EPS_PHYS) -> ValidationResult:
    """Check that the state is a physical Gaussian state.

    Verdict-returning: collects violations instead of raising.  The checks are
    finiteness of all moments, symmetry of the quadrature covariance (holds by
    construction, asserted for safety) and the uncertainty relation
    V + i*Omega >= -eps.
    """
    violations = []
    values = [state.n_a, state.n_b, state.c_a, state.c_b, state.m_ab, state.k_ab]
    bad = [v for v in values if not np.all(np.isfinite([np.real(v), np.imag(v)]))]
    if bad:
        violations.append(Violation("non-finite moment", float("inf")))
        return ValidationResult(False, tuple(violations))

    V = to_quadrature_covariance(state)
    asym = float(np.abs(V - V.T).max())
    if asym > 1e-12:
        violations.append(Violation("covariance asymmetry", asym))
    eigmin = float(np.linalg.eigvalsh(V + 1j * SYMPLECTIC_FORM).min())
    if eigmin < -eps:
        violations.append(Violation("uncertainty violation (min eig of V+iOmega)", eigmin))
    return ValidationResult(not violations, tuple(violations))


def require_valid(state: TwoModeState) -> None:
    """Raise ValueError naming the violated invariant if the state is unphysical."""
    result = validate(state)
    if not result.ok:
        raise ValueError(f"unphysical state: {result.describe()}")


def quadrature_variance(state: TwoModeState, mode: str, theta: float) -> float:
    """Variance of X(theta) for one mode: n + 2 Re(c exp(-2 i theta)).

    `mode` is "a" or "b".  The result is pi-periodic in theta.
    """
    n, c = _mode_moments(state, mode)
    return n + 2.0 * (c * np.exp(-2j * theta)).real


def min_max_variance(state: TwoModeState, mode: str) -> tuple[float, float, float]:
    """Extremal quadrature variances of one mode.

    Returns ``(v_min, v_max, theta_min)`` with v_min = n - 2|c|,
    v_max = n + 2|c| and theta_min = (arg c + pi)/2 reduced to [0, pi).
    For |c| below EPS_DEG the angle is 0 by convention (isotropic noise).
    """
    n, c = _mode_moments(state, mode)
    r = abs(c)
    if r < EPS_DEG:
        return n, n, 0.0
    theta_min = ((np.angle(c) + math.pi) / 2.0) % math.pi
    return n - 2.0 * r, n + 2.0 * r, float(theta_min)


def _mode_moments(state: TwoModeState, mode: str) -> tuple[float, complex]:
    if mode == "a":
        return state.n_a, state.c_a
    if mode == "b":
        return state.n_b, state.c_b
    raise ValueError(f"unknown mode tag {mode!r}; expected 'a' or 'b'")


def to_quadrature_covariance(state: TwoModeState) -> np.ndarray:
    """Real symmetric 4x4 covariance of (X_a, Y_a, X_b, Y_b) at theta = 0."""
    n_a, n_b = state.n_a, state.n_b
    c_a, c_b, m, k = state.c_a, state.c_b, state.m_ab, state.k_ab
    V = np.zeros((4, 4))
    V[0, 0] = n_a + 2.0 * c_a.real
    V[1, 1] = n_a - 2.0 * c_a.real
    V[0, 1] = V[1, 0] = 2.0 * c_a.imag
    V[2, 2] = n_b + 2.0 * c_b.real
    V[3, 3] = n_b - 2.0 * c_b.real
    V[2, 3] = V[3, 2] = 2.0 * c_b.imag
    V[0, 2] = V[2, 0] = 2.0 * m.real + 2.0 * k.real
    V[0, 3] = V[3, 0] = 2.0 * m.imag - 2.0 * k.imag
    V[1, 2] = V[2, 1] = 2.0 * m.imag + 2.0 * k.imag
    V[1, 3] = V[3, 1] = -2.0 * m.real + 2.0 * k.real
    return V


def from_quadrature_covariance(
    V: np.ndarray, labels: tuple[str, str] = ("a", "b")
) -> TwoModeState:
    """Inverse of :func:`to_quadrature_covariance`; exact round-trip.

    Raises ValueError if the matrix is not 4x4 symmetric (tolerance 1e-10).
    """
    V = np.asarray(V, dtype=float)
    if V.shape != (4, 4):
        raise ValueError(f"covariance must be 4x4, got {V.shape}")
    asym = float(np.abs(V - V.T).max())
    if asym > 1e-10:
        raise ValueError(f"covariance matrix not symmetric (max asymmetry {asym:.3e})")
    n_a = (V[0, 0] + V[1, 1]) / 2.0
    n_b = (V[2, 2] + V[3, 3]) / 2.0
    c_a = (V[0, 0] - V[1, 1]) / 4.0 + 0.5j * V[0, 1]
    c_b = (V[2, 2] - V[3, 3]) / 4.0 + 0.5j * V[2, 3]
    m = (V[0, 2] - V[1, 3]) / 4.0 + 1j * (V[0, 3] + V[1, 2]) / 4.0
    k = (V[0, 2] + V[1, 3]) / 4.0 + 1j * (V[1, 2] - V[0, 3]) / 4.0
    return TwoModeState(n_a, n_b, c_a, c_b, m, k, labels=labels)


def epr_variances(state: TwoModeState, theta: float) -> tuple[float, float]:
    """Variances of the EPR combinations X_a + X_b and Y_a - Y_b at angle theta."""
    n_a, n_b = state.n_a, state.n_b
    e = np.exp(-2j * theta)
    csum = 2.0 * ((state.c_a + state.c_b) * e).real
    mterm = 4.0 * (state.m_ab * e).real
    kterm = 4.0 * state.k_ab.real
    var_sum = n_a + n_b + csum + mterm + kterm
    var_diff = n_a + n_b - csum + mterm - kterm
    return var_sum, var_diff


# ---------------------------------------------------------------------------
# JSON state files
# ---------------------------------------------------------------------------

def state_from_dict(data: dict) -> TwoModeState:
    """Parse the JSON state mapping; rejects missing/unknown fields and NaN/Inf."""
    if not isinstance(data, dict):
        raise ValueError("state JSON must be an object")
    missing = [f for f in _STATE_FIELDS if f not in data]
    if missing:
        raise ValueError(f"state JSON missing field(s): {', '.join(missing)}")
    unknown = [f for f in data if f not in _STATE_FIELDS]
    if unknown:
        raise ValueError(f"state JSON has unknown field(s): {', '.join(unknown)}")
    labels = data["labels"]
    if not (isinstance(labels, (list, tuple)) and len(labels) == 2):
        raise ValueError("field 'labels' must be a pair of mode names")

    def scalar(name):
        v = data[name]
        if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
            raise ValueError(f"field '{name}' must be a finite real number")
        return float(v)

    def cplx(name):
        v = data[name]
        if not (isinstance(v, (list, tuple)) and len(v) == 2):
            raise ValueError(f"field '{name}' must be a [re, im] pair")
        re, im = v
        for part in (re, im):
            if not isinstance(part, (int, float)) or isinstance(part, bool) or not math.isfinite(part):
                raise ValueError(f"field '{name}' must hold finite real numbers")
        return complex(re, im)

    return TwoModeState(
        n_a=scalar("n_a"),
        n_b=scalar("n_b"),
        c_a=cplx("c_a"),
        c_b=cplx("c_b"),
        m_ab=cplx("m_ab"),
        k_ab=cplx("k_ab"),
        labels=(str(labels[0]), str(labels[1])),
    )


def load_state(path: str | Path) -> TwoModeState:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed state JSON in {path}: {exc}") from exc
    return state_from_dict(data)


def save_state(state: TwoModeState, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(state.to_dict(), fh, indent=2)
        fh.write("\n")
