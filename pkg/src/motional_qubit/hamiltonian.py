"""Paired-ladder Hamiltonian for one trapped two-level atom along one axis.

Basis ordering is interleaved, ``(g,0), (e_p,0), (g,1), (e_p,1), ...``, so the
drive-plus-trap part is literally block diagonal in 2x2 blocks. Index ``2n``
is ``|g>|n>_g`` and index ``2n+1`` is ``|e>|n>_p``, where ``|n>_p`` is the
momentum-kicked wave packet ``exp(i k_L R)|n>_g``.

Units: hbar = 1 and the trap frequency ``omega`` sets the rate scale.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import FranckCondonMatrix

__all__ = [
    "TrapConfig",
    "TotalState",
    "build_h0",
    "build_h1",
    "build_hamiltonian",
    "p_to_g",
    "g_to_p",
]


@dataclass(frozen=True)
class TrapConfig:
    """Physical and truncation parameters for one run.

    Attributes:
        eta_ld: Lamb-Dicke parameter ``k_L a_x``.
        rabi: Drive Rabi frequency in units of ``omega``.
        n_max: Highest retained motional number state.
        detuning: Laser detuning (recoil shift included) in units of ``omega``.
        omega: Trap angular frequency.
    """

    eta_ld: float = 0.1
    rabi: float = 100.0
    n_max: int = 40
    detuning: float = 0.0
    omega: float = 1.0

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.rabi < 0:
            raise ValueError(f"rabi must be nonnegative, got {self.rabi}")
        if self.eta_ld < 0:
            raise ValueError(f"eta_ld must be nonnegative, got {self.eta_ld}")
        if int(self.n_max) != self.n_max or self.n_max < 0:
            raise ValueError(f"n_max must be a nonnegative integer, got {self.n_max}")

    @property
    def dim(self) -> int:
        return 2 * (self.n_max + 1)


@dataclass(frozen=True)
class TotalState:
    """Joint electronic and motional state in the mixed g/p representation.

    ``g_amps[n]`` multiplies ``|g>|n>_g`` and ``e_amps[n]`` multiplies
    ``|e>|n>_p``. Both bases are orthonormal, so the squared norm is just the
    sum of both arrays' squared moduli.
    """

    g_amps: np.ndarray
    e_amps: np.ndarray | None = None

    def __post_init__(self):
        g = np.asarray(self.g_amps, dtype=complex)
        e = np.zeros_like(g) if self.e_amps is None else np.asarray(self.e_amps, dtype=complex)
        if g.shape != e.shape or g.ndim != 1:
            raise ValueError(f"amplitude shapes differ: {g.shape} vs {e.shape}")
        object.__setattr__(self, "g_amps", g)
        object.__setattr__(self, "e_amps", e)

    @property
    def n_max(self) -> int:
        return self.g_amps.size - 1

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.g_amps, self.g_amps).real
                             + np.vdot(self.e_amps, self.e_amps).real))

    def to_vector(self) -> np.ndarray:
        vec = np.empty(2 * self.g_amps.size, dtype=complex)
        vec[0::2] = self.g_amps
        vec[1::2] = self.e_amps
        return vec

    @classmethod
    def from_vector(cls, vec) -> TotalState:
        vec = np.asarray(vec, dtype=complex)
        if vec.ndim != 1 or vec.size % 2:
            raise ValueError(f"expected an even-length vector, got shape {vec.shape}")
        return cls(vec[0::2].copy(), vec[1::2].copy())

    @classmethod
    def product(cls, alpha: complex, beta: complex, c, fc: FranckCondonMatrix) -> TotalState:
        """``(alpha|g> + beta|e>)`` times the motional state ``sum_n c_n |n>_g``.

        The excited part is re-expressed in the wave-packet basis.
        """
        c = np.asarray(c, dtype=complex)
        return cls(alpha * c, beta * g_to_p(c, fc))


def build_h0(cfg: TrapConfig) -> np.ndarray:
    """Block-diagonal trap-plus-drive part: block n is
    ``[[n w, rabi/2], [rabi/2, n w - detuning]]``."""
    n = np.arange(cfg.n_max + 1, dtype=float)
    h = np.zeros((cfg.dim, cfg.dim))
    idx = np.arange(cfg.dim)
    h[idx[0::2], idx[0::2]] = n * cfg.omega
    h[idx[1::2], idx[1::2]] = n * cfg.omega - cfg.detuning
    h[idx[0::2], idx[1::2]] = 0.5 * cfg.rabi
    h[idx[1::2], idx[0::2]] = 0.5 * cfg.rabi
    return h


def build_h1(cfg: TrapConfig) -> np.ndarray:
    """Nearest-neighbour coupling inside the excited wave-packet ladder.

    ``<e_p,n+1|H1|e_p,n> = i eta_ld omega sqrt(n+1)``; the coupling into the
    top retained level is kept.
    """
    h = np.zeros((cfg.dim, cfg.dim), dtype=complex)
    if cfg.n_max == 0:
        return h
    n = np.arange(cfg.n_max)
    up = 2 * (n + 1) + 1
    down = 2 * n + 1
    amp = 1j * cfg.eta_ld * cfg.omega * np.sqrt(n + 1.0)
    h[up, down] = amp
    h[down, up] = np.conj(amp)
    return h


def build_hamiltonian(cfg: TrapConfig, include_h1: bool = True) -> np.ndarray:
    h = build_h0(cfg).astype(complex)
    if include_h1:
        h += build_h1(cfg)
    return h


def _check_dim(amps: np.ndarray, fc: FranckCondonMatrix):
    if amps.shape != (fc.dim,):
        raise ValueError(
            f"amplitude vector of shape {amps.shape} does not match n_max={fc.n_max}"
        )


def p_to_g(e_amps, fc: FranckCondonMatrix) -> np.ndarray:
    """Rewrite wave-packet amplitudes in the ground-trap number basis.

    ``d[n'] = sum_n c[n] conj(eta[n, n'])``.
    """
    e_amps = np.asarray(e_amps, dtype=complex)
    _check_dim(e_amps, fc)
    return fc.entries.conj().T @ e_amps


def g_to_p(g_amps, fc: FranckCondonMatrix) -> np.ndarray:
    """Inverse of :func:`p_to_g`: ``c[n] = sum_n' eta[n, n'] d[n']``."""
    g_amps = np.asarray(g_amps, dtype=complex)
    _check_dim(g_amps, fc)
    return fc.entries @ g_amps
