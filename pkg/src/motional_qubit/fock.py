"""Franck-Condon (displacement) matrix elements over a truncated number basis.

For a plane-wave kick along the trap axis the overlap between ground-trap
number states is

    eta_nm = <n| exp(-i eta_ld (b + b^dag)) |m> = <n| D(alpha) |m>,  alpha = -i eta_ld

which for ``n >= m`` has the closed form

    sqrt(m!/n!) alpha^(n-m) exp(-|alpha|^2/2) L_m^(n-m)(|alpha|^2).

Because the exponent is a real symmetric operator times ``-i``, the matrix is
complex symmetric: ``eta_nm == eta_mn``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

__all__ = [
    "FranckCondonMatrix",
    "laguerre_assoc",
    "fc_factor",
    "fc_matrix",
    "unitarity_defect",
]


def laguerre_assoc(n: int, k: int, x: float) -> float:
    """Generalized Laguerre polynomial L_n^(k)(x) by upward recurrence."""
    if n < 0 or k < 0:
        raise ValueError(f"n and k must be nonnegative, got n={n}, k={k}")
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x}")
    prev, cur = 0.0, 1.0
    for j in range(n):
        prev, cur = cur, ((2 * j + 1 + k - x) * cur - (j + k) * prev) / (j + 1)
    return cur


def fc_factor(n: int, m: int, eta_ld: float) -> complex:
    """Single Franck-Condon factor ``<n| exp(-i eta_ld (b + b^dag)) |m>``.

    Args:
        n: Row number state.
        m: Column number state.
        eta_ld: Lamb-Dicke parameter ``k_L a_x``.

    Returns:
        The complex matrix element. Factorial ratios are taken through
        ``gammaln`` so large indices do not overflow.
    """
    if n < 0 or m < 0:
        raise ValueError(f"number states must be nonnegative, got ({n}, {m})")
    if eta_ld < 0:
        raise ValueError(f"eta_ld must be nonnegative, got {eta_ld}")
    lo, hi = min(n, m), max(n, m)
    k = hi - lo
    if eta_ld == 0.0:
        return complex(k == 0)
    x = eta_ld * eta_ld
    log_pref = 0.5 * (gammaln(lo + 1) - gammaln(hi + 1)) + k * math.log(eta_ld) - 0.5 * x
    # (-i)^k: symmetric in n, m for alpha = -i eta_ld
    phase = (-1j) ** k
    return complex(phase * math.exp(log_pref) * laguerre_assoc(lo, k, x))


@dataclass(frozen=True)
class FranckCondonMatrix:
    """Dense ``(n_max+1) x (n_max+1)`` table of Franck-Condon factors."""

    eta_ld: float
    n_max: int
    entries: np.ndarray

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.n_max + 1


def _normalized_band(n_max: int, x: float) -> np.ndarray:
    """Magnitudes ``f[m, k] = sqrt(m!/(m+k)!) x^(k/2) e^(-x/2) L_m^(k)(x)``.

    The normalisation is folded into the Laguerre recurrence so every value
    stays bounded by one; starting values come from log space.
    """
    dim = n_max + 1
    k = np.arange(dim, dtype=float)
    f = np.zeros((dim, dim))
    if x == 0.0:
        f[:, 0] = 1.0
        return f
    f[0] = np.exp(0.5 * k * math.log(x) - 0.5 * x - 0.5 * gammaln(k + 1))
    prev = np.zeros(dim)
    for m in range(n_max):
        nxt = ((2 * m + 1 + k - x) * f[m] - np.sqrt(m * (m + k)) * prev) / np.sqrt(
            (m + 1) * (m + k + 1)
        )
        prev = f[m]
        f[m + 1] = nxt
    return f


def fc_matrix(n_max: int, eta_ld: float) -> FranckCondonMatrix:
    """Assemble all Franck-Condon factors with ``0 <= n, m <= n_max``."""
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    if eta_ld < 0:
        raise ValueError(f"eta_ld must be nonnegative, got {eta_ld}")
    dim = n_max + 1
    band = _normalized_band(n_max, eta_ld * eta_ld)
    lo = np.minimum.outer(np.arange(dim), np.arange(dim))
    k = np.abs(np.subtract.outer(np.arange(dim), np.arange(dim)))
    phase = np.array([1.0, -1j, -1.0, 1j])[k % 4]
    entries = phase * band[lo, k]
    return FranckCondonMatrix(eta_ld=float(eta_ld), n_max=n_max, entries=entries)


def unitarity_defect(fc: FranckCondonMatrix, sub: int) -> float:
    """Max-norm distance of the leading ``sub x sub`` Gram blocks from identity.

    Both ``F^dag F`` and ``F F^dag`` are formed with sums over the whole
    retained basis; only their leading block is compared, since the states
    near the cut-off are never complete.
    """
    if not 0 < sub <= fc.dim:
        raise ValueError(f"sub must lie in (0, {fc.dim}], got {sub}")
    F = fc.entries
    eye = np.eye(sub)
    cols = F.conj().T @ F
    rows = F @ F.conj().T
    return float(
        max(
            np.max(np.abs(cols[:sub, :sub] - eye)),
            np.max(np.abs(rows[:sub, :sub] - eye)),
        )
    )
