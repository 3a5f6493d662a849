"""Closed-form fractional propagators and the amplitude-damping solution.

For a time-independent generator ``L`` the Caputo problem ``D^a rho = L rho``
is solved by ``rho(t) = E_a(t^a L) rho(0)``. :func:`matrix_ml` evaluates this
operator function spectrally. For qubit amplitude damping with rate ``gamma``
the solution is explicit:

    rho11(t) = rho11(0) E_a(-gamma t^a)
    rho10(t) = rho10(0) E_a(-gamma t^a / 2)
    rho00(t) = 1 - rho11(t)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fde_solver import Trajectory
from .mlf import ml_one
from .quantum_ops import DensityMatrix, MapMatrix

__all__ = [
    "SpectralDecompositionError",
    "AmplitudeDampingParams",
    "matrix_ml",
    "ad_population",
    "ad_coherence",
    "ad_density",
    "ad_trajectory",
    "markov_coherence_decay",
    "fractional_coherence_decay",
]

# eigenvalues with |imag| above this (relative to the spectral radius) are complex
IMAG_TOL = 1e-10
# eigenvector matrices worse conditioned than this are treated as defective
COND_MAX = 1e8


class SpectralDecompositionError(ValueError):
    """The generator is not diagonalizable with a real spectrum."""


@dataclass(frozen=True)
class AmplitudeDampingParams:
    gamma: float
    alpha: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise ValueError(f"gamma must be positive, got {self.gamma!r}")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha!r}")


def _time_power(t, alpha):
    if not (math.isfinite(t) and t >= 0):
        raise ValueError(f"t must be a non-negative finite time, got {t!r}")
    return 0.0 if t == 0 else math.exp(alpha * math.log(t))


def matrix_ml(alpha, t, generator):
    """``E_alpha(t^alpha L)`` for a diagonalizable generator with real spectrum.

    Raises
    ------
    SpectralDecompositionError
        For complex or defective spectra; integrate with
        :func:`fraclindblad.fde_solver.solve` instead.
    """
    m = generator.entries if isinstance(generator, MapMatrix) else np.asarray(generator)
    n = m.shape[0]
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha!r}")
    ta = _time_power(t, alpha)
    if ta == 0.0:
        return MapMatrix.identity(int(round(math.sqrt(n))))
    lam, v = np.linalg.eig(m)
    scale = max(1.0, float(np.max(np.abs(lam))))
    if np.max(np.abs(lam.imag)) > IMAG_TOL * scale:
        raise SpectralDecompositionError(
            "generator has complex eigenvalues; use fde_solver.solve for this model"
        )
    cond = np.linalg.cond(v)
    if not np.isfinite(cond) or cond > COND_MAX:
        raise SpectralDecompositionError(
            f"generator is (numerically) defective, cond(V)={cond:.2e}; "
            "use fde_solver.solve for this model"
        )
    f = ml_one(alpha, ta * lam.real)
    prop = (v * f) @ np.linalg.inv(v)
    return MapMatrix(prop)


def ad_population(rho11_0, params: AmplitudeDampingParams, t):
    """Excited-state population ``rho11(0) E_a(-gamma t^a)``."""
    if not 0.0 <= rho11_0 <= 1.0:
        raise ValueError(f"rho11(0) must lie in [0, 1], got {rho11_0!r}")
    return rho11_0 * ml_one(params.alpha, -params.gamma * _time_power(t, params.alpha))


def ad_coherence(rho10_0, params: AmplitudeDampingParams, t):
    """Off-diagonal element ``rho10(0) E_a(-gamma t^a / 2)``."""
    if abs(rho10_0) > 0.5 + 1e-12:
        raise ValueError(f"|rho10(0)| must not exceed 1/2, got {abs(rho10_0)!r}")
    return complex(rho10_0) * ml_one(
        params.alpha, -0.5 * params.gamma * _time_power(t, params.alpha)
    )


def _assemble(rho11, rho10):
    rho11 = np.asarray(rho11, dtype=float)
    rho10 = np.asarray(rho10, dtype=complex)
    out = np.empty(rho11.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = 1.0 - rho11
    out[..., 1, 1] = rho11
    out[..., 1, 0] = rho10
    out[..., 0, 1] = np.conj(rho10)
    return out


def _qubit(rho0):
    rho0 = rho0 if isinstance(rho0, DensityMatrix) else DensityMatrix(rho0)
    if rho0.dim != 2:
        raise ValueError("amplitude damping closed forms need a qubit state")
    return rho0


def ad_density(rho0, params: AmplitudeDampingParams, t):
    """Full qubit state at time ``t`` from the closed-form populations and coherence."""
    rho0 = _qubit(rho0)
    e = rho0.entries
    return DensityMatrix(
        _assemble(ad_population(e[1, 1].real, params, t), ad_coherence(e[1, 0], params, t))
    )


def ad_trajectory(rho0, params: AmplitudeDampingParams, times):
    """Closed-form states on a time grid, as a :class:`Trajectory`."""
    rho0 = _qubit(rho0)
    times = np.asarray(times, dtype=float)
    if np.any(times < 0):
        raise ValueError("times must be non-negative")
    ta = np.where(times > 0, np.exp(params.alpha * np.log(np.where(times > 0, times, 1.0))), 0.0)
    e = rho0.entries
    pop = e[1, 1].real * ml_one(params.alpha, -params.gamma * ta)
    coh = e[1, 0] * ml_one(params.alpha, -0.5 * params.gamma * ta)
    return Trajectory(times, _assemble(pop, coh))


def markov_coherence_decay(c0, gamma, t):
    """Exponential coherence law ``C0 exp(-gamma t)``."""
    _check_decay_args(c0, gamma, t)
    return c0 * math.exp(-gamma * t)


def fractional_coherence_decay(c0, gamma, alpha, t):
    """Mittag-Leffler coherence law ``C0 E_a(-gamma t^a)``.

    Decays like ``C0 t^-a / (gamma Gamma(1-a))`` at large ``t`` for ``a < 1``.
    """
    _check_decay_args(c0, gamma, t)
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha!r}")
    return c0 * ml_one(alpha, -gamma * _time_power(t, alpha))


def _check_decay_args(c0, gamma, t):
    if not c0 >= 0:
        raise ValueError(f"initial coherence must be non-negative, got {c0!r}")
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma!r}")
    if not (math.isfinite(t) and t >= 0):
        raise ValueError(f"t must be non-negative, got {t!r}")

