"""Pointwise model of the (lambda1, lambda2, theta)-family of hyperkahler
structures on doubled-connection space, restricted to a single fiber with
the area element normalized to one and the background hermitian form h0
the identity (adjoints are conjugate transposes).

Tangent vectors are pairs (a, phi) of trace-free complex 2x2 matrices (the
antiholomorphic connection coefficient and the Higgs coefficient).  Signs
are fixed so that g(v, v) > 0 and omega_S(v, w) = g(S v, w); with those
conventions the holomorphic pairing satisfies Omega_theta = omega_J_theta
+ i omega_K_theta and equals -2 e^{-i theta} l1 sqrt(l2) Tr(phi_w a_v -
phi_v a_w) pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class HKParams:
    lambda1: float = 1.0
    lambda2: float = 1.0
    theta: float = 0.0

    def __post_init__(self):
        if self.lambda1 <= 0 or self.lambda2 <= 0:
            raise ValueError("lambda1, lambda2 must be positive")


@dataclass(frozen=True)
class PointTangent:
    a: np.ndarray
    phi: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=complex)
        phi = np.asarray(self.phi, dtype=complex)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "phi", phi)
        for M in (a, phi):
            if M.shape != (2, 2):
                raise ValueError("components must be 2x2")
            if abs(np.trace(M)) > 1e-12 * (1 + np.abs(M).max()):
                raise ValueError("components must be trace-free")


def _adj(M: np.ndarray) -> np.ndarray:
    return M.conj().T


def apply_structure(S: str, v: PointTangent, p: HKParams) -> PointTangent:
    """Apply a complex structure: "I" multiplies by i; "J"/"K" are the
    theta-rotated structures J_theta + i K_theta = e^{i theta} (J + i K)."""
    if S == "I":
        return PointTangent(1j * v.a, 1j * v.phi)
    ph = np.exp(1j * p.theta)
    s = np.sqrt(p.lambda2)
    if S == "J":
        return PointTangent(ph / s * _adj(v.phi), -ph * s * _adj(v.a))
    if S == "K":
        return PointTangent(1j * ph / s * _adj(v.phi), -1j * ph * s * _adj(v.a))
    raise ValueError("structure must be 'I', 'J' or 'K'")


def hermitian_pairing(v: PointTangent, w: PointTangent, p: HKParams) -> complex:
    """h(v, w) = 2 l1 Tr(l2 a_v a_w^* + phi_v phi_w^*) (unit area element)."""
    return 2 * p.lambda1 * (p.lambda2 * np.trace(v.a @ _adj(w.a))
                            + np.trace(v.phi @ _adj(w.phi)))


def metric(v: PointTangent, w: PointTangent, p: HKParams) -> float:
    return float(hermitian_pairing(v, w, p).real)


def omega(S: str, v: PointTangent, w: PointTangent, p: HKParams) -> float:
    """Kahler form omega_S(v, w) = g(S v, w)."""
    return metric(apply_structure(S, v, p), w, p)


def pairings(v: PointTangent, w: PointTangent, p: HKParams) -> dict:
    """Metric, omega_I and the holomorphic pairing Omega_{I,theta} =
    omega_J + i omega_K of two tangent vectors."""
    return {
        "g": metric(v, w, p),
        "omegaI": omega("I", v, w, p),
        "OmegaItheta": omega("J", v, w, p) + 1j * omega("K", v, w, p),
    }


def holomorphic_pairing_closed_form(v: PointTangent, w: PointTangent,
                                    p: HKParams) -> complex:
    """-2 e^{-i theta} l1 sqrt(l2) Tr(phi_w a_v - phi_v a_w); agrees with
    pairings()['OmegaItheta'] to rounding."""
    return (-2 * np.exp(-1j * p.theta) * p.lambda1 * np.sqrt(p.lambda2)
            * (np.trace(w.phi @ v.a) - np.trace(v.phi @ w.a)))


def moment_residues(alpha_p, m_p, n_p, p: HKParams) -> tuple[np.ndarray, np.ndarray]:
    """Distributional levels of the complex and real moment maps at a
    puncture, as coefficients of pi delta_p dzbar ^ dz:

      M-level  = 2 i e^{-i theta} l1 sqrt(l2) [[-m, n], [0, m]]
      mu-level = -l1 l2 diag(alpha - 1/2, 1/2 - alpha)
    """
    m = complex(m_p)
    n = complex(n_p)
    a = float(alpha_p)
    Mlev = 2j * np.exp(-1j * p.theta) * p.lambda1 * np.sqrt(p.lambda2) * \
        np.array([[-m, n], [0.0, m]])
    mulev = -p.lambda1 * p.lambda2 * np.array([[a - 0.5, 0.0], [0.0, 0.5 - a]])
    return Mlev, mulev
