"""Free evolution for one trap period brings every state back.

With the drive off, the ground manifold and the kicked excited manifold both
evolve under an oscillator with the same frequency, so after 2 pi / omega
every state returns to itself. In a truncated basis this holds only for
states well below the cut-off; the highest number state shows the failure.
"""
import numpy as np

from motional_qubit import TotalState, TrapConfig, free_evolution_rephase, manifold_overlaps

rng = np.random.default_rng(1)
n_max = 60
for eta in (0.1, 0.3):
    cfg = TrapConfig(eta_ld=eta, rabi=0.0, n_max=n_max)
    amps = np.zeros(n_max + 1, dtype=complex)
    amps[:30] = rng.normal(size=30) + 1j * rng.normal(size=30)
    amps /= np.linalg.norm(amps)
    st = TotalState(0.6 * amps, 0.8 * amps)
    og, oe = manifold_overlaps(st, free_evolution_rephase(cfg, st))
    print(f"eta {eta}: packet below n = 30  overlaps g {og:.12f}  e {oe:.12f}")
    for n in (10, 40, 60):
        e = np.zeros(n_max + 1)
        e[n] = 1
        edge = TotalState(np.zeros(n_max + 1), e)
        print(f"          |e_p, {n:2d}>            overlap   {manifold_overlaps(edge, free_evolution_rephase(cfg, edge))[1]:.6f}")
