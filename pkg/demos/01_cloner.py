"""
The symmetric qutrit cloner
===========================

Build the d = 3 cloning isometry, check that it is an isometry, and look at
what each clone slot receives.
"""
import numpy as np

from qutrit_broadcast import cloning_isometry

v = cloning_isometry(3)
print("isometry defect |V'V - I| =", np.max(np.abs(v.matrix.conj().T @ v.matrix - np.eye(3))))

# %% fidelity of each clone with a basis input
for j in range(3):
    ket = np.zeros((3, 3))
    ket[j, j] = 1
    cx, cy = v.clone_marginals(ket)
    print(f"|{j}>: <j|clone_x|j> = {cx.data[j, j].real:.4f}, <j|clone_y|j> = {cy.data[j, j].real:.4f}")

# %% both clones are the input shrunk towards I/3 by 5/8
rng = np.random.default_rng(0)
g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
rho = g @ g.conj().T
rho /= np.trace(rho)
cx, _ = v.clone_marginals(rho)
shrunk = 5 / 8 * rho + 3 / 8 * np.eye(3) / 3
print("clone - (5/8 rho + 3/8 I/3) =", np.max(np.abs(cx.data - shrunk)))
