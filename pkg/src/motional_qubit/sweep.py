"""Vectorised fidelity curves over a grid of pulse areas.

A single eigendecomposition of the Hamiltonian serves every pulse area.
Pure motional states are propagated directly. Diagonal mixtures over number
states are handled in the eigenbasis: with ``R = sum_n w_n phi_n phi_n^dag``
and an observable ``O`` rotated into the eigenbasis, the ensemble average at
time ``tau`` is ``u^dag (O ∘ R^T) u`` with ``u = exp(-i E tau)``. This equals
``sum_n w_n <psi_n(tau)|O|psi_n(tau)>`` exactly.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .evolve import spectral_propagator
from .fock import FranckCondonMatrix, fc_matrix
from .hamiltonian import TotalState, TrapConfig
from .qubit import QubitAmps, ReducedDensity, fidelity, target_density

__all__ = ["cached_fc", "reduced_curve", "mixture_reduced_curve", "fidelity_curve"]


@lru_cache(maxsize=32)
def cached_fc(n_max: int, eta_ld: float) -> FranckCondonMatrix:
    return fc_matrix(n_max, eta_ld)


def _taus(cfg: TrapConfig, thetas) -> np.ndarray:
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    if np.any(thetas < 0):
        raise ValueError("pulse areas must be nonnegative")
    if cfg.rabi <= 0:
        if np.any(thetas > 0):
            raise ValueError("a nonzero pulse area needs cfg.rabi > 0")
        return np.zeros_like(thetas)
    return 2.0 * thetas / cfg.rabi


def reduced_curve(cfg: TrapConfig, q: QubitAmps, c, thetas,
                  include_h1: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """``(rho_gg, rho_ge)`` after each pulse area, starting from
    ``(alpha|g> + beta|e>) (x) sum_n c_n |n>_g``."""
    fc = cached_fc(cfg.n_max, cfg.eta_ld)
    taus = _taus(cfg, thetas)
    prop = spectral_propagator(cfg, include_h1)
    psi0 = TotalState.product(q.alpha, q.beta, c, fc).to_vector()
    psi = prop.evolve_series(psi0, taus)
    g, e = psi[0::2], psi[1::2]
    d = fc.entries.conj().T @ e
    rho_gg = np.sum(np.abs(g) ** 2, axis=0)
    rho_ge = np.sum(np.conj(d) * g, axis=0)
    # theta = 0 is returned untouched
    zero = taus == 0
    if np.any(zero):
        rho_gg[zero] = np.vdot(psi0[0::2], psi0[0::2]).real
        rho_ge[zero] = np.vdot(fc.entries.conj().T @ psi0[1::2], psi0[0::2])
    return rho_gg, rho_ge


def mixture_reduced_curve(cfg: TrapConfig, q: QubitAmps, weights, thetas,
                          include_h1: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Like :func:`reduced_curve` for the motional mixture
    ``sum_n weights[n] |n><n|``."""
    fc = cached_fc(cfg.n_max, cfg.eta_ld)
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (fc.dim,):
        raise ValueError(f"weights of shape {weights.shape} do not match n_max={cfg.n_max}")
    taus = _taus(cfg, thetas)
    prop = spectral_propagator(cfg, include_h1)
    V = prop.vectors
    occupied = np.flatnonzero(weights > 0)

    # columns: product states for each occupied number state
    psi0 = np.zeros((prop.dim, occupied.size), dtype=complex)
    psi0[2 * occupied, np.arange(occupied.size)] = q.alpha
    psi0[1::2, :] = q.beta * fc.entries[:, occupied]
    phi = prop.to_eigenbasis(psi0)
    R = (phi * weights[occupied]) @ phi.conj().T

    Vg, Ve = V[0::2], V[1::2]
    obs_g = Vg.conj().T @ Vg
    obs_ge = Ve.conj().T @ (fc.entries @ Vg)
    B_g = obs_g * R.T
    B_ge = obs_ge * R.T

    u = prop.phases(taus)
    rho_gg = np.sum(np.conj(u) * (B_g @ u), axis=0).real
    rho_ge = np.sum(np.conj(u) * (B_ge @ u), axis=0)
    return rho_gg, rho_ge


def fidelity_curve(cfg: TrapConfig, q: QubitAmps, thetas, c=None, weights=None,
                   include_h1: bool = True) -> np.ndarray:
    """Rotation fidelity at each pulse area for a pure motional state ``c``
    or a diagonal motional mixture ``weights`` (exactly one of the two)."""
    if (c is None) == (weights is None):
        raise ValueError("pass exactly one of c or weights")
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    if c is not None:
        rho_gg, rho_ge = reduced_curve(cfg, q, c, thetas, include_h1)
    else:
        rho_gg, rho_ge = mixture_reduced_curve(cfg, q, weights, thetas, include_h1)
    return np.array([
        fidelity(target_density(q, th), ReducedDensity(float(gg), complex(ge)))
        for th, gg, ge in zip(thetas, rho_gg, rho_ge)
    ])
