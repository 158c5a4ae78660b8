"""Electronic-qubit bookkeeping: target state, partial trace and fidelity."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalIntegrityError
from .fock import FranckCondonMatrix, fc_matrix
from .hamiltonian import TotalState, p_to_g

__all__ = [
    "QubitAmps",
    "ReducedDensity",
    "target_density",
    "reduce",
    "fidelity",
    "eta_parameter",
    "analytic_reduced_density",
    "fast_pulse_coherence",
]

FIDELITY_TOL = 1e-8


@dataclass(frozen=True)
class QubitAmps:
    """Electronic state ``alpha|g> + beta|e>``."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"|alpha|^2 + |beta|^2 = {norm}, expected 1")

    @classmethod
    def balanced(cls) -> QubitAmps:
        return cls(1 / math.sqrt(2), 1 / math.sqrt(2))


@dataclass(frozen=True)
class ReducedDensity:
    """2x2 electronic density matrix; ``rho_ee = 1 - rho_gg`` by construction."""

    rho_gg: float
    rho_ge: complex

    @property
    def rho_ee(self) -> float:
        return 1.0 - self.rho_gg

    @property
    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.rho_gg, self.rho_ge], [np.conj(self.rho_ge), self.rho_ee]],
            dtype=complex,
        )

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    @classmethod
    def maximally_mixed(cls) -> ReducedDensity:
        return cls(0.5, 0j)


def target_density(q: QubitAmps, theta: float) -> ReducedDensity:
    """Density matrix of the ideally rotated qubit.

    The ideal rotation sends ``(alpha, beta)`` to
    ``(alpha cos - i beta sin, beta cos - i alpha sin)``.
    """
    a, b = complex(q.alpha), complex(q.beta)
    c, s = math.cos(theta), math.sin(theta)
    i_g = abs(a) ** 2 * c * c + abs(b) ** 2 * s * s + (1j * (a * b.conjugate() - a.conjugate() * b)).real * s * c
    i_ge = (a * b.conjugate() * c * c + b * a.conjugate() * s * s
            + 1j * (abs(a) ** 2 - abs(b) ** 2) * s * c)
    return ReducedDensity(float(i_g), complex(i_ge))


def reduce(state: TotalState, fc: FranckCondonMatrix) -> ReducedDensity:
    """Trace out the motion.

    The excited amplitudes live in the wave-packet basis, so they are mapped
    back to the ground-trap number basis before contracting with ``g_amps``.
    """
    if state.n_max != fc.n_max:
        raise ValueError(f"state n_max={state.n_max} does not match fc n_max={fc.n_max}")
    d = p_to_g(state.e_amps, fc)
    rho_gg = np.vdot(state.g_amps, state.g_amps).real
    rho_ge = np.vdot(d, state.g_amps)
    return ReducedDensity(float(rho_gg), complex(rho_ge))


def fidelity(rho_t: ReducedDensity, rho: ReducedDensity) -> float:
    """``Tr[rho_t rho]``, clamped into [0, 1] only for sub-tolerance excursions."""
    value = np.trace(rho_t.matrix @ rho.matrix)
    if abs(value.imag) > FIDELITY_TOL:
        raise NumericalIntegrityError(f"fidelity has imaginary part {value.imag:.3e}")
    f = value.real
    if f < -FIDELITY_TOL or f > 1 + FIDELITY_TOL:
        raise NumericalIntegrityError(f"fidelity {f!r} outside [0, 1]")
    return float(min(max(f, 0.0), 1.0))


def _check_amps(c: np.ndarray, fc: FranckCondonMatrix) -> np.ndarray:
    c = np.asarray(c, dtype=complex)
    if c.shape != (fc.dim,):
        raise ValueError(f"amplitudes of shape {c.shape} do not match n_max={fc.n_max}")
    return c


def eta_parameter(c, fc: FranckCondonMatrix) -> complex:
    """Quadratic form ``c^dag F c`` of the Franck-Condon matrix."""
    c = _check_amps(c, fc)
    return complex(np.vdot(c, fc.entries @ c))


def analytic_reduced_density(q: QubitAmps, theta: float, omega_tau: float, c,
                             fc: FranckCondonMatrix) -> ReducedDensity:
    """Reduced density after a resonant pulse with the neighbour coupling off.

    Args:
        q: Initial electronic amplitudes.
        theta: Pulse area.
        omega_tau: Trap phase ``omega * tau`` accumulated during the pulse.
        c: Initial motional amplitudes in the ground-trap number basis.
        fc: Franck-Condon matrix matching ``c``.

    Every pair ``n`` picks up ``exp(-i n omega tau)``, so the coherence is a
    sum of Franck-Condon double contractions between the phased ground
    amplitudes ``u`` and the phased kicked amplitudes ``v = phase * (F c)``.
    """
    c = _check_amps(c, fc)
    a, b = complex(q.alpha), complex(q.beta)
    cs = math.cos(theta) * math.sin(theta)
    cc, ss = math.cos(theta) ** 2, math.sin(theta) ** 2
    F = fc.entries
    eta = np.vdot(c, F @ c)

    i_g = abs(a) ** 2 * cc + abs(b) ** 2 * ss + (1j * (a * b.conjugate() * eta.conjugate()
                                                        - a.conjugate() * b * eta)).real * cs

    phase = np.exp(-1j * np.arange(fc.dim) * omega_tau)
    u = phase * c
    v = phase * (F @ c)
    Fu, Fv = F @ u, F @ v
    i_ge = (1j * cs * (abs(a) ** 2 * np.vdot(u, Fu) - abs(b) ** 2 * np.vdot(v, Fv))
            + a * b.conjugate() * cc * np.vdot(v, Fu)
            + a.conjugate() * b * ss * np.vdot(u, Fv))
    return ReducedDensity(float(i_g), complex(i_ge))


def fast_pulse_coherence(q: QubitAmps, theta: float, c, eta_ld: float) -> complex:
    """Coherence ``rho_ge`` for a pulse much shorter than a trap period (or
    exactly one period), from the kick overlaps at ``k_L`` and ``2 k_L``."""
    c = np.asarray(c, dtype=complex)
    n_max = c.size - 1
    eta_1 = eta_parameter(c, fc_matrix(n_max, eta_ld))
    eta_2 = eta_parameter(c, fc_matrix(n_max, 2 * eta_ld))
    a, b = complex(q.alpha), complex(q.beta)
    cs = math.cos(theta) * math.sin(theta)
    return complex(1j * (abs(a) ** 2 - abs(b) ** 2) * cs * eta_1
                   + a * b.conjugate() * math.cos(theta) ** 2
                   + a.conjugate() * b * math.sin(theta) ** 2 * eta_2)
