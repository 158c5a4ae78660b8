"""A thermal atom: Boltzmann mixtures against coherent superpositions.

A thermal motional state is a diagonal mixture of number states. Its rotation
fidelity is compared with the pure state carrying the same populations and no
relative phases, and with the average over random phases, which reproduces
the mixture.
"""
import math

import numpy as np

from motional_qubit import (QubitAmps, TrapConfig, fc_matrix, fidelity_curve,
                            mean_eta_closed_form, mean_eta_numeric, sample_random_phase_state,
                            thermal_weights, zero_phase_state)
from motional_qubit.thermal import tail_n_max

q = QubitAmps.balanced()
thetas = np.array([math.pi / 4, math.pi / 2, 3 * math.pi / 4, math.pi, 2 * math.pi])
print("theta/pi:        " + "  ".join(f"{t / math.pi:8.2f}" for t in thetas))
for t in (1.0, 3.0, 10.0):
    n_max = tail_n_max(t, 1e-13)
    cfg = TrapConfig(eta_ld=0.1, rabi=100.0, n_max=n_max)
    ens = thermal_weights(t, n_max)
    mixed = fidelity_curve(cfg, q, thetas, weights=ens.weights)
    pure = fidelity_curve(cfg, q, thetas, c=zero_phase_state(ens))
    print(f"t = {t:4.1f} mixture " + "  ".join(f"{f:8.5f}" for f in mixed))
    print(f"         pure    " + "  ".join(f"{f:8.5f}" for f in pure))

# averaging random-phase pure states recovers the mixture
t, n_max = 3.0, tail_n_max(3.0, 1e-13)
cfg = TrapConfig(eta_ld=0.3, rabi=100.0, n_max=n_max)
ens = thermal_weights(t, n_max)
samples = [fidelity_curve(cfg, q, [math.pi / 2], c=sample_random_phase_state(ens, s))[0]
           for s in range(300)]
exact = fidelity_curve(cfg, q, [math.pi / 2], weights=ens.weights)[0]
print(f"\neta_ld 0.3, t = 3, theta = pi/2: mixture {exact:.5f}, "
      f"random-phase mean {np.mean(samples):.5f} +- {np.std(samples) / math.sqrt(300):.5f}")

print("\nthermal mean of <n|kick|n>, numeric against closed form")
for eta in (0.1, 0.3, 1.0):
    ens = thermal_weights(3.0, 400)
    print(f"  eta {eta}: {mean_eta_numeric(ens, fc_matrix(400, eta)):.10f}  "
          f"{mean_eta_closed_form(3.0, eta):.10f}")
