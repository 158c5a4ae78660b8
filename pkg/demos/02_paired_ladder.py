"""The paired ladder: Rabi flopping between |g, n> and |e_p, n>.

Without the recoil term each pair of a ground-trap number state and a kicked
wave packet oscillates on its own. The numerical propagator of the full
Hamiltonian is compared against that two-level picture, then the recoil term
is switched on to see how much it changes the answer.
"""
import math

import numpy as np

from motional_qubit import (PulseSpec, TotalState, TrapConfig, analytic_h0_evolution,
                            evolve_rotation, fc_matrix)

cfg = TrapConfig(eta_ld=0.3, rabi=10.0, n_max=30)
fc = fc_matrix(cfg.n_max, cfg.eta_ld)

c = np.zeros(cfg.n_max + 1)
c[:3] = [2, math.sqrt(2), 1]
c /= np.linalg.norm(c)
state = TotalState.product(1.0, 0.0, c, fc)

print("excited population after a pulse, starting in |g> (x) (2|0> + sqrt2|1> + |2>)/sqrt7")
print(f"{'theta/pi':>9}  {'H0 numeric':>11}  {'H0 pairs':>9}  {'H0+H1':>9}")
for theta in np.linspace(0, math.pi, 6):
    pulse = PulseSpec.from_theta(theta, cfg.rabi)
    h0 = evolve_rotation(cfg, state, pulse, include_h1=False)
    full = evolve_rotation(cfg, state, pulse)
    pairs = sum(abs(analytic_h0_evolution(state.g_amps[n], state.e_amps[n], n, theta,
                                          pulse.tau)[1]) ** 2 for n in range(cfg.n_max + 1))
    print(f"{theta / math.pi:9.2f}  {np.vdot(h0.e_amps, h0.e_amps).real:11.6f}  "
          f"{pairs:9.6f}  {np.vdot(full.e_amps, full.e_amps).real:9.6f}")
