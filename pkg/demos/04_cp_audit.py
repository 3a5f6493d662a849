"""
Complete positivity of fractional propagators
=============================================

E_alpha(t^alpha L) is not a semigroup and nothing guarantees complete
positivity in general. For amplitude damping we can check numerically:
build the Choi matrix of the propagator and look at its smallest
eigenvalue.
"""

import numpy as np

from fraclindblad.analytic import matrix_ml
from fraclindblad.quantum_ops import LindbladModel, choi_matrix, lindblad_superoperator

gen = lindblad_superoperator(LindbladModel.amplitude_damping(1.0))
print("generator spectrum:", np.round(np.sort(np.linalg.eigvals(gen.entries).real), 12))

worst = 0.0
for a in np.linspace(0.3, 1.0, 8):
    lows = []
    for t in np.linspace(0.0, 10.0, 21):
        c = choi_matrix(matrix_ml(a, t, gen))
        lows.append(np.linalg.eigvalsh(0.5 * (c + c.conj().T))[0])
    worst = min(worst, min(lows))
    print(f"alpha = {a:.2f}: min Choi eigenvalue {min(lows): .2e}")
print("overall minimum", worst)

# a map that is positive but not completely positive: the transpose
swap = np.eye(4)[[0, 2, 1, 3]]
print("transpose map:", np.linalg.eigvalsh(choi_matrix(swap)))
