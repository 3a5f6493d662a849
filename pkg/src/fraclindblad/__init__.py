"""Fractional-time (Caputo) Lindblad dynamics.

Submodules
----------
mlf
    Mittag-Leffler functions ``E_{alpha,beta}(z)`` on the negative real axis.
quantum_ops
    Density matrices, Lindblad generators, vectorization, coherence and
    admissibility audits.
fde_solver
    Predictor-corrector integrator for ``D^alpha rho = L rho``.
analytic
    Operator Mittag-Leffler propagator and amplitude-damping closed forms.
cli
    ``fraclindblad`` command-line front end.
"""

from .analytic import (
    AmplitudeDampingParams,
    ad_density,
    ad_trajectory,
    fractional_coherence_decay,
    markov_coherence_decay,
    matrix_ml,
)
from .fde_solver import CaputoProblem, Trajectory, convergence_study, solve
from .mlf import ml_one, ml_two
from .quantum_ops import (
    DensityMatrix,
    LindbladModel,
    MapMatrix,
    admissibility_report,
    choi_matrix,
    l1_coherence,
    lindblad_apply,
    lindblad_superoperator,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeDampingParams",
    "CaputoProblem",
    "DensityMatrix",
    "LindbladModel",
    "MapMatrix",
    "Trajectory",
    "ad_density",
    "ad_trajectory",
    "admissibility_report",
    "choi_matrix",
    "convergence_study",
    "fractional_coherence_decay",
    "l1_coherence",
    "lindblad_apply",
    "lindblad_superoperator",
    "markov_coherence_decay",
    "matrix_ml",
    "ml_one",
    "ml_two",
    "solve",
]
