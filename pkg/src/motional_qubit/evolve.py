"""Time propagation of the joint state under the paired-ladder Hamiltonian.

The interaction-picture Hamiltonian is time independent, so every propagator
is ``V exp(-i E tau) V^dag`` from one Hermitian eigendecomposition.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .errors import NumericalIntegrityError
from .hamiltonian import TotalState, TrapConfig, build_hamiltonian

__all__ = [
    "PulseSpec",
    "SpectralPropagator",
    "spectral_propagator",
    "propagate",
    "analytic_h0_evolution",
    "evolve_rotation",
    "free_evolution_rephase",
    "manifold_overlaps",
]

HERMITIAN_TOL = 1e-10


@dataclass(frozen=True)
class PulseSpec:
    """Constant resonant pulse of area ``theta`` lasting ``tau = 2 theta / rabi``."""

    theta: float
    tau: float

    def __post_init__(self):
        if self.theta < 0:
            raise ValueError(f"pulse area must be nonnegative, got {self.theta}")
        if self.tau < 0:
            raise ValueError(f"pulse duration must be nonnegative, got {self.tau}")

    @classmethod
    def from_theta(cls, theta: float, rabi: float) -> PulseSpec:
        if theta == 0:
            return cls(0.0, 0.0)
        if rabi <= 0:
            raise ValueError("a nonzero pulse area needs a positive Rabi frequency")
        return cls(float(theta), 2.0 * theta / rabi)


class SpectralPropagator:
    """Cached eigendecomposition of a Hermitian matrix.

    Args:
        h: Hermitian matrix. Asymmetry above ``HERMITIAN_TOL`` raises
            :class:`NumericalIntegrityError`.
    """

    def __init__(self, h: np.ndarray):
        h = np.asarray(h)
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {h.shape}")
        defect = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
        if defect > HERMITIAN_TOL:
            raise NumericalIntegrityError(f"Hamiltonian is not Hermitian (defect {defect:.3e})")
        self.energies, self.vectors = np.linalg.eigh(h)
        self.energies.setflags(write=False)
        self.vectors.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.energies.size

    def phases(self, taus) -> np.ndarray:
        """``exp(-i E_j tau_t)`` with shape ``(dim, len(taus))``."""
        taus = np.atleast_1d(np.asarray(taus, dtype=float))
        return np.exp(-1j * np.outer(self.energies, taus))

    def to_eigenbasis(self, vecs: np.ndarray) -> np.ndarray:
        return self.vectors.conj().T @ vecs

    def evolve(self, vec: np.ndarray, tau: float) -> np.ndarray:
        coeffs = self.to_eigenbasis(np.asarray(vec, dtype=complex))
        return self.vectors @ (np.exp(-1j * self.energies * tau) * coeffs)

    def evolve_series(self, vec: np.ndarray, taus) -> np.ndarray:
        """States at every ``tau``, one per column."""
        coeffs = self.to_eigenbasis(np.asarray(vec, dtype=complex))
        return self.vectors @ (self.phases(taus) * coeffs[:, None])


@lru_cache(maxsize=32)
def spectral_propagator(cfg: TrapConfig, include_h1: bool = True) -> SpectralPropagator:
    """Shared read-only propagator for a configuration."""
    return SpectralPropagator(build_hamiltonian(cfg, include_h1))


def propagate(h: np.ndarray, state: TotalState, tau: float) -> TotalState:
    """Apply ``exp(-i h tau)`` to ``state``.

    ``h`` is in the interleaved ``(g,0), (e_p,0), (g,1), ...`` ordering.
    """
    prop = SpectralPropagator(h)
    if prop.dim != 2 * state.g_amps.size:
        raise ValueError(f"matrix dimension {prop.dim} does not match state n_max={state.n_max}")
    return TotalState.from_vector(prop.evolve(state.to_vector(), tau))


def analytic_h0_evolution(cg0: complex, ce0: complex, n: int, theta: float,
                          omega_tau: float) -> tuple[complex, complex]:
    """Closed-form resonant Rabi flop of the pair ``(|g,n>_g, |e,n>_p)``.

    Returns:
        ``(C_g(tau), C_e(tau))`` including the common phase ``exp(-i n omega tau)``.
    """
    phase = np.exp(-1j * n * omega_tau)
    c, s = math.cos(theta), math.sin(theta)
    cg = phase * (cg0 * c - 1j * ce0 * s)
    ce = phase * (ce0 * c - 1j * cg0 * s)
    return complex(cg), complex(ce)


def _check_pulse(cfg: TrapConfig, pulse: PulseSpec):
    if pulse.theta == 0 and pulse.tau == 0:
        return
    if cfg.rabi <= 0:
        raise ValueError("a nonzero pulse needs cfg.rabi > 0")
    expected = 2.0 * pulse.theta / cfg.rabi
    if abs(pulse.tau - expected) > 1e-12 * max(1.0, expected):
        raise ValueError(
            f"pulse duration {pulse.tau} inconsistent with theta={pulse.theta}, rabi={cfg.rabi}"
        )


def evolve_rotation(cfg: TrapConfig, state: TotalState, pulse: PulseSpec,
                    include_h1: bool = True) -> TotalState:
    """Drive ``state`` with a constant resonant pulse.

    With ``include_h1=False`` only the paired 2x2 blocks act, which
    reproduces :func:`analytic_h0_evolution` for every pair.
    """
    _check_pulse(cfg, pulse)
    if pulse.theta == 0:
        return state
    if state.n_max != cfg.n_max:
        raise ValueError(f"state n_max={state.n_max} does not match cfg.n_max={cfg.n_max}")
    prop = spectral_propagator(cfg, include_h1)
    return TotalState.from_vector(prop.evolve(state.to_vector(), pulse.tau))


def free_evolution_rephase(cfg: TrapConfig, state: TotalState) -> TotalState:
    """Let the state evolve undriven for one trap period ``2 pi / omega``."""
    if state.n_max != cfg.n_max:
        raise ValueError(f"state n_max={state.n_max} does not match cfg.n_max={cfg.n_max}")
    idle = replace(cfg, rabi=0.0)
    prop = spectral_propagator(idle, True)
    return TotalState.from_vector(prop.evolve(state.to_vector(), 2 * math.pi / cfg.omega))


def manifold_overlaps(before: TotalState, after: TotalState) -> tuple[float, float]:
    """``|<before|after>|`` restricted to each electronic manifold, normalised
    by the manifold population of ``before``. Empty manifolds report 1."""

    def _overlap(a, b):
        weight = np.vdot(a, a).real
        if weight == 0.0:
            return 1.0
        return float(abs(np.vdot(a, b)) / weight)

    return (_overlap(before.g_amps, after.g_amps), _overlap(before.e_amps, after.e_amps))
