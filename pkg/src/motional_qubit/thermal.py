"""Thermal motional ensembles and their effect on rotation fidelity."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import FranckCondonMatrix
from .hamiltonian import TrapConfig
from .qubit import QubitAmps
from .sweep import fidelity_curve

__all__ = [
    "ThermalEnsemble",
    "thermal_weights",
    "ground_ensemble",
    "tail_n_max",
    "mean_eta_closed_form",
    "mean_eta_numeric",
    "sample_random_phase_state",
    "zero_phase_state",
    "thermal_fidelity",
]

PRODUCTION_TAIL = 1e-10


@dataclass(frozen=True)
class ThermalEnsemble:
    """Boltzmann occupation of the truncated trap ladder.

    Attributes:
        t_ratio: ``k_B T / (hbar omega)``; zero for the motional ground state.
        n_max: Highest retained number state.
        weights: Occupations, renormalised over the retained states.
        renorm_defect: Population beyond ``n_max`` discarded before
            renormalising.
    """

    t_ratio: float
    n_max: int
    weights: np.ndarray
    renorm_defect: float

    def __post_init__(self):
        self.weights.setflags(write=False)


def thermal_weights(t_ratio: float, n_max: int) -> ThermalEnsemble:
    """Geometric occupations ``(1 - r) r^n`` with ``r = exp(-1/t_ratio)``."""
    if not t_ratio > 0:
        raise ValueError(f"t_ratio must be positive, got {t_ratio}; use ground_ensemble for T = 0")
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    n = np.arange(n_max + 1)
    raw = -math.expm1(-1.0 / t_ratio) * np.exp(-n / t_ratio)
    # tail of a geometric series: r^(n_max + 1)
    defect = math.exp(-(n_max + 1) / t_ratio)
    return ThermalEnsemble(float(t_ratio), n_max, raw / raw.sum(), defect)


def ground_ensemble(n_max: int) -> ThermalEnsemble:
    weights = np.zeros(n_max + 1)
    weights[0] = 1.0
    return ThermalEnsemble(0.0, n_max, weights, 0.0)


def tail_n_max(t_ratio: float, tol: float = PRODUCTION_TAIL) -> int:
    """Smallest ``n_max`` whose discarded thermal population is below ``tol``."""
    if t_ratio <= 0:
        return 0
    return max(0, math.ceil(-t_ratio * math.log(tol)))


def mean_eta_closed_form(t_ratio: float, eta_ld: float) -> float:
    """Thermal average of the diagonal kick overlap,
    ``exp(-eta_ld^2 coth(1 / (2 t_ratio)) / 2)``."""
    if not t_ratio > 0:
        raise ValueError(f"t_ratio must be positive, got {t_ratio}")
    coth = 1.0 / math.tanh(0.5 / t_ratio)
    return math.exp(-0.5 * eta_ld * eta_ld * coth)


def mean_eta_numeric(ens: ThermalEnsemble, fc: FranckCondonMatrix) -> float:
    if fc.n_max != ens.n_max:
        raise ValueError(f"ensemble n_max={ens.n_max} does not match fc n_max={fc.n_max}")
    # diagonal overlaps are real for a purely imaginary displacement
    return float(np.dot(ens.weights, fc.entries.diagonal().real))


def _phase(seed: int, n: int) -> float:
    # keyed by (seed, n): the phase of level n never depends on draw order
    return 2 * math.pi * np.random.default_rng([seed, n]).random()


def sample_random_phase_state(ens: ThermalEnsemble, seed: int) -> np.ndarray:
    """Pure state ``sqrt(w_n) exp(-i phi_n)`` with uniform phases drawn from
    a generator seeded by ``(seed, n)``."""
    phases = np.array([_phase(seed, n) for n in range(ens.n_max + 1)])
    c = np.sqrt(ens.weights) * np.exp(-1j * phases)
    return c / np.linalg.norm(c)


def zero_phase_state(ens: ThermalEnsemble) -> np.ndarray:
    """The pure state with amplitudes ``sqrt(w_n)`` and no phases."""
    return np.sqrt(ens.weights).astype(complex)


def thermal_fidelity(cfg: TrapConfig, ens: ThermalEnsemble, q: QubitAmps, theta: float,
                     include_h1: bool = True) -> float:
    """Fidelity for the mixture ``sum_n w_n |n><n|``, i.e. ``sum_n w_n F_n``
    with ``F_n`` the fidelity starting from ``|n>_g``."""
    if ens.n_max != cfg.n_max:
        raise ValueError(f"ensemble n_max={ens.n_max} does not match cfg n_max={cfg.n_max}")
    return float(fidelity_curve(cfg, q, [theta], weights=ens.weights, include_h1=include_h1)[0])
