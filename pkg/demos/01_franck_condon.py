"""Franck-Condon overlaps of the recoil kick.

Absorbing a photon kicks the atom, so the motional state after excitation is
``exp(i k R)`` applied to the old one. Its matrix elements in the number
basis are the Franck-Condon factors. This script prints a few of them, checks
them against a brute-force matrix exponential and shows how the truncation
has to grow with the Lamb-Dicke parameter before the kick looks unitary.
"""
import numpy as np
from scipy.linalg import expm

from motional_qubit import fc_factor, fc_matrix, unitarity_defect

np.set_printoptions(precision=4, suppress=True)

# small block of the matrix at a moderate kick
eta = 0.3
F = fc_matrix(4, eta)
print(f"Franck-Condon block, eta_ld = {eta}")
print(F.entries)
print(f"<0|kick|0> = {fc_factor(0, 0, eta):.6f}  (exp(-eta^2/2) = {np.exp(-eta**2 / 2):.6f})")

# brute force: exponentiate -i eta (b + b^dag) in a large basis
big = 120
b = np.diag(np.sqrt(np.arange(1, big)), 1)
D = expm(-1j * eta * (b + b.T))[:5, :5]
print(f"max deviation from expm: {np.max(np.abs(F.entries - D)):.2e}")

# the retained block is only unitary once it holds the kicked states
print("\nleading 20x20 unitarity defect versus truncation")
print(f"{'n_max':>6}  {'eta=0.1':>10}  {'eta=0.3':>10}  {'eta=1.0':>10}")
for n_max in (20, 25, 30, 40, 60):
    row = [unitarity_defect(fc_matrix(n_max, e), 20) for e in (0.1, 0.3, 1.0)]
    print(f"{n_max:>6}  " + "  ".join(f"{d:10.2e}" for d in row))
