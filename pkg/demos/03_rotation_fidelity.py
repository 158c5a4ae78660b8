"""Rotation fidelity against pulse area for two motional states.

The qubit starts in (|g> + |e>)/sqrt2 and is rotated by a resonant pulse with
Rabi frequency 100 trap frequencies. Tracing out the motion leaves a mixed
qubit state; its overlap with the ideal rotated state drops as the recoil
kick grows and when the atom starts out spread over several number states.
"""
import math

import numpy as np

from motional_qubit import QubitAmps, TrapConfig, fidelity_curve

thetas = np.linspace(0, 2 * math.pi, 64)
q = QubitAmps.balanced()
motion = {"ground": [1.0], "spread": [2 / math.sqrt(7), math.sqrt(2 / 7), 1 / math.sqrt(7)]}

print(f"{'eta_ld':>6}  {'state':>7}  {'mean F':>8}  {'min F':>8}  {'F(pi/2)':>8}")
for eta in (0.1, 0.3, 1.0):
    cfg = TrapConfig(eta_ld=eta, rabi=100.0, n_max=40)
    for name, amps in motion.items():
        c = np.zeros(cfg.n_max + 1, dtype=complex)
        c[:len(amps)] = amps
        f = fidelity_curve(cfg, q, thetas, c=c)
        half = fidelity_curve(cfg, q, [math.pi / 2], c=c)[0]
        print(f"{eta:6.1f}  {name:>7}  {f.mean():8.5f}  {f.min():8.5f}  {half:8.5f}")
