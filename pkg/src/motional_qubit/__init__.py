"""Motional decoherence of a single trapped-atom qubit under resonant rotations."""
from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source checkout
    __version__ = "0.1.0"

from .errors import ConvergenceError, NumericalIntegrityError
from .evolve import (PulseSpec, analytic_h0_evolution, evolve_rotation,
                     free_evolution_rephase, manifold_overlaps, propagate)
from .fock import FranckCondonMatrix, fc_factor, fc_matrix, laguerre_assoc, unitarity_defect
from .hamiltonian import TotalState, TrapConfig, build_h0, build_h1, g_to_p, p_to_g
from .qubit import (QubitAmps, ReducedDensity, analytic_reduced_density, eta_parameter,
                    fast_pulse_coherence, fidelity, reduce, target_density)
from .sweep import fidelity_curve
from .thermal import (ThermalEnsemble, ground_ensemble, mean_eta_closed_form,
                      mean_eta_numeric, sample_random_phase_state, thermal_fidelity,
                      thermal_weights, zero_phase_state)
