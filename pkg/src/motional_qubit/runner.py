"""Fidelity sweeps, truncation refinement and plain-text output."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, replace

import numpy as np

from . import __version__
from .config import N_MAX_CAP, RunConfig
from .errors import ConvergenceError
from .hamiltonian import TrapConfig, build_h0, build_h1
from .qubit import QubitAmps
from .sweep import cached_fc, fidelity_curve
from .thermal import sample_random_phase_state, tail_n_max, thermal_weights, zero_phase_state

__all__ = [
    "Curve",
    "CurveResult",
    "SPREAD_STATE",
    "curves_for",
    "theta_grid",
    "resolve_curve",
    "run_sweep",
    "converge",
    "write_csv",
    "write_convergence",
    "dump_matrices",
    "read_matrices",
]

SPREAD_STATE = np.array([2.0, math.sqrt(2.0), 1.0]) / math.sqrt(7.0)
N_MAX_FLOOR = 16
# stricter than the 1e-10 production minimum: edge states lose norm in the
# truncated wave-packet basis, and this keeps theta = 0 exact to ~1e-13
AUTO_THERMAL_TAIL = 1e-13
CONVERGENCE_TOL = 1e-8
# norm a kicked initial state may lose to the truncation before theta = 0
# stops reproducing the initial qubit state to ~1e-13
LEAKAGE_TOL = 1e-13
COLUMNS = ("mode", "theta", "fidelity", "eta_ld", "rabi", "t_ratio", "initial_state",
           "n_max", "converged")


@dataclass(frozen=True)
class Curve:
    """One fidelity-versus-theta curve: a Lamb-Dicke parameter and an initial
    motional state (``thermal_pure`` is the pure state matching a thermal
    occupation)."""

    eta_ld: float
    initial_state: str
    t_ratio: float | None = None


@dataclass
class CurveResult:
    curve: Curve
    n_max: int
    fidelity: np.ndarray
    delta: np.ndarray
    levels: list[int]

    @property
    def converged(self) -> np.ndarray:
        return self.delta < CONVERGENCE_TOL

    @property
    def max_delta(self) -> float:
        return float(np.max(self.delta))


def curves_for(cfg: RunConfig) -> list[Curve]:
    out = []
    for eta in cfg.eta_ld:
        if cfg.mode == "fig3":
            for t in cfg.t_ratio:
                out.append(Curve(eta, "thermal", t))
                out.append(Curve(eta, "thermal_pure", t))
            continue
        for init in cfg.initial_state:
            if init == "thermal":
                out.extend(Curve(eta, init, t) for t in cfg.t_ratio)
            else:
                out.append(Curve(eta, init))
    return out


def theta_grid(cfg: RunConfig) -> np.ndarray:
    return np.linspace(cfg.theta_min, cfg.theta_max, cfg.theta_points)


def kick_leakage(curve: Curve, cfg: RunConfig, n_max: int) -> float:
    """Population the recoil kick pushes above ``n_max``, averaged over the
    initial motional state."""
    kept = np.sum(np.abs(cached_fc(n_max, curve.eta_ld).entries) ** 2, axis=0)
    motion = _motion(curve, cfg, n_max)
    if "weights" in motion:
        return float(1.0 - np.dot(motion["weights"], kept))
    return float(1.0 - np.dot(np.abs(motion["c"]) ** 2, kept))


def floor_n_max(curve: Curve, cfg: RunConfig) -> int:
    """Starting level for the doubling: at least ``N_MAX_FLOOR``, large enough
    to hold the thermal tail and doubled until the kick leaks less than
    ``LEAKAGE_TOL``."""
    need = N_MAX_FLOOR
    if curve.initial_state == "custom":
        need = max(need, len(cfg.amplitudes) - 1)
    if curve.t_ratio is not None:
        need = max(need, tail_n_max(curve.t_ratio, AUTO_THERMAL_TAIL))
    while need < N_MAX_CAP and kick_leakage(curve, cfg, need) > LEAKAGE_TOL:
        need = min(2 * need, N_MAX_CAP)
    return need


def _motion(curve: Curve, cfg: RunConfig, n_max: int) -> dict:
    dim = n_max + 1
    if curve.initial_state == "ground":
        c = np.zeros(dim, dtype=complex)
        c[0] = 1.0
        return {"c": c}
    if curve.initial_state == "spread":
        c = np.zeros(dim, dtype=complex)
        c[:3] = SPREAD_STATE
        return {"c": c}
    if curve.initial_state == "custom":
        c = np.zeros(dim, dtype=complex)
        c[:len(cfg.amplitudes)] = cfg.amplitudes
        return {"c": c / np.linalg.norm(c)}
    ens = thermal_weights(curve.t_ratio, n_max)
    if curve.initial_state == "thermal":
        return {"weights": ens.weights}
    if cfg.pure_phase == "random":
        return {"c": sample_random_phase_state(ens, cfg.seed)}
    return {"c": zero_phase_state(ens)}


def _curve_at(curve: Curve, cfg: RunConfig, n_max: int, thetas) -> np.ndarray:
    trap = TrapConfig(eta_ld=curve.eta_ld, rabi=cfg.rabi, n_max=n_max, detuning=cfg.detuning)
    q = QubitAmps(cfg.alpha, cfg.beta)
    return fidelity_curve(trap, q, thetas, include_h1=cfg.include_h1, **_motion(curve, cfg, n_max))


def resolve_curve(curve: Curve, cfg: RunConfig, thetas) -> CurveResult:
    """Fidelities plus a per-point truncation check.

    Every reported truncation ``n`` is checked against ``2 n``. With
    ``cfg.n_max`` fixed that is the only level computed. Otherwise ``n``
    doubles from a floor and the first level whose successor agrees to
    ``CONVERGENCE_TOL`` on the whole theta grid is reported; if the doubling
    reaches ``N_MAX_CAP`` first, the cap is reported with its last delta.
    """
    thetas = np.asarray(thetas, dtype=float)
    if cfg.n_max is not None:
        fid = _curve_at(curve, cfg, cfg.n_max, thetas)
        ref = _curve_at(curve, cfg, max(2 * cfg.n_max, cfg.n_max + 1), thetas)
        return CurveResult(curve, cfg.n_max, fid, np.abs(fid - ref), [cfg.n_max])

    n = min(floor_n_max(curve, cfg), N_MAX_CAP)
    levels = [n]
    fid = _curve_at(curve, cfg, n, thetas)
    while True:
        n_next = min(2 * n, N_MAX_CAP)
        if n_next == n:
            return CurveResult(curve, n, fid, np.full(thetas.shape, np.inf), levels)
        ref = _curve_at(curve, cfg, n_next, thetas)
        levels.append(n_next)
        delta = np.abs(fid - ref)
        if np.max(delta) < CONVERGENCE_TOL:
            return CurveResult(curve, n, fid, delta, levels)
        if n_next == N_MAX_CAP:
            return CurveResult(curve, n_next, ref, delta, levels)
        n, fid = n_next, ref


def run_sweep(cfg: RunConfig) -> list[CurveResult]:
    """Every curve of the configuration, in a fixed order."""
    thetas = theta_grid(cfg)
    return [resolve_curve(curve, cfg, thetas) for curve in curves_for(cfg)]


def converge(cfg: RunConfig) -> list[CurveResult]:
    """Truncation study for every curve.

    Raises:
        ConvergenceError: if any curve is still moving at ``N_MAX_CAP``;
            the partial results are attached as ``err.results``.
    """
    results = run_sweep(replace(cfg, n_max=None))
    bad = [r for r in results if not r.converged.all()]
    if bad:
        err = ConvergenceError(
            f"{len(bad)} curve(s) not converged by n_max={N_MAX_CAP}")
        err.results = results
        raise err
    return results


def _num(x: float) -> str:
    return format(float(x), ".12g")


def _header(cfg: RunConfig, out):
    out.write(f"# motional_qubit {__version__}\n")
    for line in cfg.header_lines():
        out.write(f"# {line}\n")


def write_csv(results: list[CurveResult], cfg: RunConfig, out) -> None:
    _header(cfg, out)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(COLUMNS)
    thetas = theta_grid(cfg)
    for res in results:
        c = res.curve
        t = "" if c.t_ratio is None else _num(c.t_ratio)
        for th, f, ok in zip(thetas, res.fidelity, res.converged):
            writer.writerow([cfg.mode, _num(th), _num(f), _num(c.eta_ld), _num(cfg.rabi), t,
                             c.initial_state, res.n_max, "true" if ok else "false"])


def write_convergence(results: list[CurveResult], cfg: RunConfig, out) -> None:
    _header(cfg, out)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(("eta_ld", "t_ratio", "initial_state", "n_max", "delta", "converged",
                     "levels"))
    for res in results:
        c = res.curve
        writer.writerow([_num(c.eta_ld), "" if c.t_ratio is None else _num(c.t_ratio),
                         c.initial_state, res.n_max, format(res.max_delta, ".3e"),
                         "true" if res.converged.all() else "false",
                         ";".join(str(n) for n in res.levels)])


def dump_matrices(cfg: RunConfig, out) -> None:
    """Write H0, H1 and the Franck-Condon matrix for the first ``eta_ld``.

    Each block starts with ``# matrix <name> <rows> <cols>`` followed by one
    line per row holding ``re im`` pairs for every column.
    """
    eta = cfg.eta_ld[0]
    n_max = cfg.n_max if cfg.n_max is not None else N_MAX_FLOOR
    trap = TrapConfig(eta_ld=eta, rabi=cfg.rabi, n_max=n_max, detuning=cfg.detuning)
    _header(cfg, out)
    out.write("# basis order: (g,0) (e_p,0) (g,1) (e_p,1) ...\n")
    for name, mat in (("H0", build_h0(trap)), ("H1", build_h1(trap)),
                      ("FC", cached_fc(n_max, eta).entries)):
        mat = np.asarray(mat, dtype=complex)
        out.write(f"# matrix {name} {mat.shape[0]} {mat.shape[1]}\n")
        for row in mat:
            out.write(" ".join(f"{z.real:.17g} {z.imag:.17g}" for z in row) + "\n")


def read_matrices(text: str) -> dict[str, np.ndarray]:
    """Parse the output of :func:`dump_matrices`."""
    mats = {}
    lines = io.StringIO(text).read().splitlines()
    i = 0
    while i < len(lines):
        line = lines[i]
        i += 1
        if not line.startswith("# matrix "):
            continue
        _, _, name, rows, cols = line.split()
        rows, cols = int(rows), int(cols)
        data = np.array([[float(x) for x in lines[i + r].split()] for r in range(rows)])
        mats[name] = (data[:, 0::2] + 1j * data[:, 1::2]).reshape(rows, cols)
        i += rows
    return mats
