"""Fractional Adams-Bashforth-Moulton integrator for ``D^alpha y = M y``.

``D^alpha`` is the Caputo derivative of order ``0 < alpha <= 1`` and ``M`` a
constant ``d^2 x d^2`` generator acting on column-stacked density matrices.
On a uniform grid ``t_n = n h`` one PECE step reads

    predictor  y^P_{n+1} = y_0 + h^a/Gamma(a+1) sum_{j<=n} [(n+1-j)^a - (n-j)^a] M y_j
    corrector  y_{n+1}   = y_0 + h^a/Gamma(a+2) (M y^P_{n+1} + sum_{j<=n} a_{j,n+1} M y_j)

with the product-trapezoidal weights

    a_{0,n+1} = n^(a+1) - (n-a)(n+1)^a
    a_{j,n+1} = (n-j+2)^(a+1) - 2(n-j+1)^(a+1) + (n-j)^(a+1),  1 <= j <= n.

Every update is ``y_0`` plus a linear combination of ``M y_j``; a generator
whose left null space contains the trace functional therefore keeps the
trace of every step equal to ``Tr(rho_0)`` up to round-off.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import gamma as gamma_fn

from .quantum_ops import ATOL, DensityMatrix, MapMatrix, l1_coherence, unvec, vec

__all__ = [
    "SolverError",
    "CaputoProblem",
    "Trajectory",
    "ConvergenceRow",
    "solve",
    "convergence_study",
    "predictor_weights",
    "corrector_weights",
]


class SolverError(RuntimeError):
    def __init__(self, message, step=None):
        super().__init__(message if step is None else f"{message} (step {step})")
        self.step = step


@dataclass(frozen=True)
class CaputoProblem:
    """Linear Caputo initial-value problem on a uniform grid.

    Parameters
    ----------
    alpha : float
        Fractional order in ``(0, 1]``.
    generator : MapMatrix or array_like
        ``d^2 x d^2`` matrix ``M``.
    y0 : array_like
        Column-stacked initial density matrix (length ``d^2``), or the
        ``d x d`` matrix itself, or a :class:`DensityMatrix`.
    t_max : float
        Final time.
    steps : int
        Number of uniform steps ``N``; ``h = t_max / N``.
    memory : int, optional
        Short-memory window in steps. ``None`` (default) keeps the full
        history; a window discards ``M y_j`` terms older than ``memory``
        steps (the ``y_0`` term is always kept).
    """

    alpha: float
    generator: MapMatrix
    y0: np.ndarray
    t_max: float
    steps: int
    memory: Optional[int] = None
    validate_state: bool = field(default=True, repr=False)

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        if not (np.isfinite(self.t_max) and self.t_max > 0):
            raise ValueError(f"t_max must be positive, got {self.t_max!r}")
        if int(self.steps) != self.steps or self.steps < 1:
            raise ValueError(f"steps must be a positive integer, got {self.steps!r}")
        if self.memory is not None and self.memory < 1:
            raise ValueError(f"memory window must be >= 1, got {self.memory!r}")
        gen = self.generator
        if not isinstance(gen, MapMatrix):
            gen = MapMatrix(gen)
        y0 = np.asarray(self.y0, dtype=complex)
        if y0.ndim == 2:
            y0 = vec(y0)
        if y0.shape != (gen.entries.shape[0],):
            raise ValueError(
                f"initial vector has shape {y0.shape}, generator is {gen.entries.shape}"
            )
        if self.validate_state:
            DensityMatrix(unvec(y0))
        y0 = y0.copy()
        y0.setflags(write=False)
        object.__setattr__(self, "generator", gen)
        object.__setattr__(self, "y0", y0)
        object.__setattr__(self, "steps", int(self.steps))

    @property
    def dim(self):
        return self.generator.dim

    @property
    def h(self):
        return self.t_max / self.steps

    @property
    def times(self):
        return np.linspace(0.0, self.t_max, self.steps + 1)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled density matrices ``states[n] = rho(times[n])``.

    States are kept as a raw ``(N+1, d, d)`` array rather than validated
    :class:`DensityMatrix` objects so that small positivity violations can be
    audited instead of rejected.
    """

    times: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        t = np.array(self.times, dtype=float)
        s = np.array(self.states, dtype=complex)
        if s.ndim != 3 or s.shape[0] != t.shape[0]:
            raise ValueError("states must have shape (len(times), d, d)")
        if t.size == 0 or t[0] != 0.0 or np.any(np.diff(t) <= 0):
            raise ValueError("times must start at 0 and increase strictly")
        t.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "states", s)

    def __len__(self):
        return self.times.shape[0]

    def state(self, n, atol=ATOL):
        return DensityMatrix(self.states[n], atol=atol)

    def population(self, level):
        return self.states[:, level, level].real

    @cached_property
    def series(self):
        """Named scalar series: ``rho00``, ``rho11``, ``c_l1``, ``trace_defect``."""
        tr = np.trace(self.states, axis1=1, axis2=2)
        out = {
            "c_l1": l1_coherence(self.states),
            "trace_defect": np.abs(tr - 1.0),
        }
        for k in range(min(self.states.shape[1], 2)):
            out[f"rho{k}{k}"] = self.population(k)
        return out


def predictor_weights(alpha, n_max):
    """``(m+1)^a - m^a`` for ``m = 0..n_max``; weight of ``M y_j`` is entry ``n - j``."""
    m = np.arange(n_max + 2, dtype=float)
    p = m**alpha
    return p[1:] - p[:-1]


def corrector_weights(alpha, n_max):
    """``(m+1)^(a+1) - 2 m^(a+1) + (m-1)^(a+1)`` for ``m = 0..n_max``.

    Entry ``m = n - j + 1`` is ``a_{j,n+1}`` for ``1 <= j <= n``; entry 0 is
    unused and set to 1 (the implicit ``a_{n+1,n+1}``).
    """
    m = np.arange(n_max + 2, dtype=float)
    p = m ** (alpha + 1)
    w = np.empty(n_max + 1)
    w[0] = 1.0
    w[1:] = p[2:] - 2.0 * p[1:-1] + p[:-2]
    return w


def solve(problem: CaputoProblem) -> Trajectory:
    """Integrate ``problem`` with one PECE corrector pass per step."""
    a = problem.alpha
    n_steps = problem.steps
    m = problem.generator.entries
    y0 = problem.y0
    h = problem.h
    window = problem.memory

    bw = predictor_weights(a, n_steps)
    aw = corrector_weights(a, n_steps)
    cp = h**a / gamma_fn(a + 1.0)
    cc = h**a / gamma_fn(a + 2.0)

    ys = np.empty((n_steps + 1, y0.shape[0]), dtype=complex)
    fs = np.empty_like(ys)
    ys[0] = y0
    fs[0] = m @ y0
    # overflow is caught below and reported with its step index
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(n_steps):
            lo = 0 if window is None else max(0, n + 1 - window)
            # j = lo..n; predictor weight index n - j
            yp = y0 + cp * (bw[n - lo :: -1] @ fs[lo : n + 1])
            acc = m @ yp
            if lo == 0:
                acc = acc + (n ** (a + 1) - (n - a) * (n + 1) ** a) * fs[0]
                j0 = 1
            else:
                j0 = lo
            if n >= j0:
                # j = j0..n -> weight index n - j + 1 runs n-j0+1 .. 1
                acc = acc + aw[n - j0 + 1 : 0 : -1] @ fs[j0 : n + 1]
            y = y0 + cc * acc
            if not np.all(np.isfinite(y)):
                raise SolverError("non-finite state", step=n + 1)
            ys[n + 1] = y
            fs[n + 1] = m @ y
    return Trajectory(problem.times, unvec(ys))


@dataclass(frozen=True)
class ConvergenceRow:
    steps: int
    max_error: float
    ratio: float
    order: float


def convergence_study(
    problem: CaputoProblem,
    step_counts: Sequence[int],
    reference: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> list:
    """Max-norm error of :func:`solve` for each step count.

    ``reference(times)`` must return the exact states, shape
    ``(len(times), d, d)``. Without it the solution at twice the finest step
    count serves as a reference, compared on the coarse grids' nodes.

    ``ratio`` is ``error(previous) / error(current)`` and ``order`` its
    log2 normalized by the step-count ratio; both are ``nan`` in the first row.
    """
    counts = [int(n) for n in step_counts]
    if len(counts) < 2:
        raise ValueError("convergence study needs at least two step counts")
    if any(b <= a for a, b in zip(counts, counts[1:])):
        raise ValueError("step counts must be strictly increasing")

    ref_traj = None
    if reference is None:
        fine = 2 * counts[-1]
        ref_traj = solve(_with_steps(problem, fine))
        for n in counts:
            if fine % n:
                raise ValueError(f"step count {n} does not divide the reference grid {fine}")

    rows = []
    prev_err = prev_n = None
    for n in counts:
        traj = solve(_with_steps(problem, n))
        if reference is None:
            exact = ref_traj.states[:: (2 * counts[-1]) // n]
        else:
            exact = np.asarray(reference(traj.times))
        err = float(np.max(np.abs(traj.states - exact)))
        if prev_err is None:
            ratio = order = float("nan")
        else:
            ratio = prev_err / err if err > 0 else float("inf")
            order = float(np.log(ratio) / np.log(n / prev_n))
        rows.append(ConvergenceRow(n, err, ratio, order))
        prev_err, prev_n = err, n
    return rows


def _with_steps(problem, n):
    return CaputoProblem(
        problem.alpha,
        problem.generator,
        problem.y0,
        problem.t_max,
        n,
        memory=problem.memory,
        validate_state=False,
    )
