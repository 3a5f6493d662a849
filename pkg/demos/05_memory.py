"""
Memory: fractional evolution is not a semigroup
===============================================

At alpha = 1 evolving to t = 2 and restarting from the result gives the
same state at t = 4 as a single run. For alpha < 1 the restart forgets
the history and the two answers differ.
"""

from fraclindblad.fde_solver import CaputoProblem, solve
from fraclindblad.quantum_ops import DensityMatrix, LindbladModel, lindblad_superoperator

gen = lindblad_superoperator(LindbladModel.amplitude_damping(1.0))
excited = DensityMatrix.excited()

for a in (0.3, 0.5, 0.8, 1.0):
    full = solve(CaputoProblem(a, gen, excited, 4.0, 2000))
    half = solve(CaputoProblem(a, gen, excited, 2.0, 1000))
    restart = solve(CaputoProblem(a, gen, half.states[-1], 2.0, 1000, validate_state=False))
    p_full = full.states[-1, 1, 1].real
    p_restart = restart.states[-1, 1, 1].real
    print(f"alpha = {a:.1f}: rho11(4) one run {p_full:.6f}, restarted {p_restart:.6f}, "
          f"gap {abs(p_full - p_restart):.2e}")

# truncating the history (short memory) trades accuracy for cost
full = solve(CaputoProblem(0.5, gen, excited, 10.0, 1000))
for window in (50, 200, 800):
    short = solve(CaputoProblem(0.5, gen, excited, 10.0, 1000, memory=window))
    err = abs(short.states[-1, 1, 1] - full.states[-1, 1, 1])
    print(f"memory window {window:4d} steps: rho11(10) off by {err:.2e}")
