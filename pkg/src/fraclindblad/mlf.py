"""Real-argument Mittag-Leffler functions.

The two-parameter function

.. math::

    E_{\\alpha,\\beta}(z) = \\sum_{k=0}^{\\infty} \\frac{z^k}{\\Gamma(\\alpha k + \\beta)}

is evaluated for ``0 < alpha <= 1``, ``beta > 0`` and real ``z``. Negative
arguments are the accuracy-critical path (they are what every relaxation
law in this package feeds in), and are split into three regimes:

* ``|z| <= SERIES_RADIUS``: the power series, summed until the terms drop
  below double-precision round-off.
* ``-z >= ASYMPTOTIC_THRESHOLD``: the algebraic expansion
  ``-sum_{k>=1} z^{-k} / Gamma(beta - alpha k)``, accepted only if it reaches
  ``ASYMPTOTIC_TOL`` before the terms start to grow.
* everything else: a real-line integral obtained by collapsing the Laplace
  inversion contour onto the branch cut of ``s^(alpha-beta) / (s^alpha - z)``,

  .. math::

      E_{\\alpha,\\beta}(-x) = \\frac{1}{\\alpha\\pi} \\int_0^\\infty
          e^{-u^{1/\\alpha}} u^{(1-\\beta)/\\alpha}
          \\frac{u \\sin(\\pi\\beta) + x \\sin(\\pi(\\beta - \\alpha))}
               {u^2 + 2 x u \\cos(\\pi\\alpha) + x^2} \\, du,

  valid for ``beta < 1 + alpha``; larger ``beta`` is brought into range with
  ``E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z``.

``alpha == 1`` has no algebraic tail, so it is handled separately: ``exp`` for
``beta == 1`` and an incomplete-beta style integral otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

__all__ = [
    "MlParams",
    "MittagLefflerDomainError",
    "MittagLefflerAccuracyError",
    "ml_one",
    "ml_two",
    "SERIES_RADIUS",
    "ASYMPTOTIC_THRESHOLD",
    "ASYMPTOTIC_TOL",
    "VALIDATED_RANGE",
]

# Regime boundaries. Validated against a 40-digit Laplace-inversion oracle
# (tests/data/ml_oracle.csv); change them together with that data.
SERIES_RADIUS = 1.0
ASYMPTOTIC_THRESHOLD = 50.0
ASYMPTOTIC_TOL = 1e-17
SERIES_TOL = 1e-17
SERIES_MAX_TERMS = 5000
ASYMPTOTIC_MAX_TERMS = 400
# e^{-u^{1/alpha}} < 1e-26 beyond u = INTEGRAL_CUTOFF**alpha
INTEGRAL_CUTOFF = 60.0
VALIDATED_RANGE = (-1e6, 1.0)


class MittagLefflerDomainError(ValueError):
    """Raised for parameters outside ``0 < alpha <= 1``, ``beta > 0``."""


class MittagLefflerAccuracyError(ArithmeticError):
    """Raised when no evaluation regime converges for the requested point."""


@dataclass(frozen=True)
class MlParams:
    alpha: float
    beta: float = 1.0

    def __post_init__(self):
        _check_params(float(self.alpha), float(self.beta))

    def __call__(self, z):
        return ml_two(self.alpha, self.beta, z)


def _check_params(alpha, beta):
    if not 0.0 < alpha <= 1.0:
        raise MittagLefflerDomainError(f"alpha must lie in (0, 1], got {alpha!r}")
    if not (math.isfinite(beta) and beta > 0.0):
        raise MittagLefflerDomainError(f"beta must be positive, got {beta!r}")


def _series(alpha, beta, z):
    terms = []
    scale = 0.0
    power = 1.0
    for k in range(SERIES_MAX_TERMS):
        term = power * special.rgamma(alpha * k + beta)
        terms.append(term)
        scale = max(scale, abs(term))
        if k > 2 and abs(term) < SERIES_TOL * max(1.0, scale):
            return math.fsum(terms)
        power *= z
        if power == 0.0:
            return math.fsum(terms)
        if not math.isfinite(power):
            break
    raise MittagLefflerAccuracyError(
        f"power series did not converge for alpha={alpha}, beta={beta}, z={z}"
    )


def _asymptotic(alpha, beta, x):
    """Algebraic expansion of E_{alpha,beta}(-x), or None if it cannot reach tolerance.

    Truncation is decided on the envelope x^-k Gamma(1 - w)/pi >= |1/Gamma(w)|,
    w = beta - alpha k <= 0, not on the terms themselves: 1/Gamma(w) passes
    arbitrarily close to zero near the poles of Gamma.
    """
    terms = []
    previous = math.inf
    log_x = math.log(x)
    for k in range(1, ASYMPTOTIC_MAX_TERMS):
        w = beta - alpha * k
        coef = special.rgamma(w)
        if w <= 0:
            log_env = math.lgamma(1.0 - w) - math.log(math.pi) - k * log_x
        else:
            log_env = math.log(abs(coef)) - k * log_x
        env = math.exp(log_env)
        if env > previous:
            return None
        terms.append(-((-1.0) ** k) * math.exp(-k * log_x) * coef)
        if env < ASYMPTOTIC_TOL:
            return math.fsum(terms)
        if w <= 0:
            previous = env
    return None


def _branch_cut_integral(alpha, beta, x):
    # requires 0 < alpha < 1 and beta < 1 + alpha
    sin_b = math.sin(math.pi * beta)
    sin_ba = math.sin(math.pi * (beta - alpha))
    cos_a = math.cos(math.pi * alpha)
    p = (1.0 - beta) / alpha
    inv_alpha = 1.0 / alpha

    def integrand(u):
        return (
            math.exp(-(u**inv_alpha))
            * u**p
            * (u * sin_b + x * sin_ba)
            / (u * u + 2.0 * x * u * cos_a + x * x)
        )

    upper = INTEGRAL_CUTOFF**alpha
    # near alpha = 1 the integrand peaks at u ~ x
    points = [x] if x < upper else None
    # full_output suppresses IntegrationWarning without touching global warning state
    val = integrate.quad(
        integrand, 0.0, upper, points=points, epsabs=1e-16, epsrel=1e-14, limit=500,
        full_output=1,
    )[0]
    return val / (alpha * math.pi)


def _middle(alpha, beta, x):
    if beta >= 1.0 + alpha:
        z = -x
        return (_middle(alpha, beta - alpha, x) - special.rgamma(beta - alpha)) / z
    return _branch_cut_integral(alpha, beta, x)


def _alpha_one(beta, z):
    if beta == 1.0:
        return math.exp(z)
    if beta < 1.0:
        return special.rgamma(beta) + z * _alpha_one(beta + 1.0, z)
    if z >= -SERIES_RADIUS:
        return _series(1.0, beta, z)
    # E_{1,b}(z) = 1/Gamma(b-1) * int_0^1 e^{zu} (1-u)^{b-2} du, b > 1
    if beta == 2.0:
        return math.expm1(z) / z
    val = integrate.quad(
        lambda u: math.exp(z * u),
        0.0,
        1.0,
        weight="alg",
        wvar=(0.0, beta - 2.0),
        epsabs=1e-16,
        epsrel=1e-14,
        full_output=1,
    )[0]
    return val * special.rgamma(beta - 1.0)


def _ml_scalar(alpha, beta, z):
    if not math.isfinite(z):
        raise MittagLefflerDomainError(f"z must be finite, got {z!r}")
    if z == 0.0:
        return float(special.rgamma(beta))
    if alpha == 1.0:
        return float(_alpha_one(beta, z))
    if z > 0.0 or -z <= SERIES_RADIUS:
        return float(_series(alpha, beta, z))
    x = -z
    if x >= ASYMPTOTIC_THRESHOLD:
        val = _asymptotic(alpha, beta, x)
        if val is not None:
            return float(val)
    return float(_middle(alpha, beta, x))


def ml_two(alpha, beta, z):
    """Two-parameter Mittag-Leffler function ``E_{alpha,beta}(z)``.

    Parameters
    ----------
    alpha : float
        Order, ``0 < alpha <= 1``.
    beta : float
        Second parameter, ``beta > 0``.
    z : float or array_like
        Real argument(s). Full accuracy (absolute error <= 1e-12) is
        guaranteed on ``VALIDATED_RANGE``; larger positive ``z`` is attempted
        with the power series.

    Returns
    -------
    float or ndarray
        Same shape as ``z``.

    Raises
    ------
    MittagLefflerDomainError
        If ``alpha`` or ``beta`` is out of range, or ``z`` is not finite.
    MittagLefflerAccuracyError
        If the series does not converge (very large positive ``z``).
    """
    alpha = float(alpha)
    beta = float(beta)
    _check_params(alpha, beta)
    if np.ndim(z) == 0:
        return _ml_scalar(alpha, beta, float(z))
    zs = np.asarray(z, dtype=float)
    out = np.empty(zs.shape)
    for idx, zi in np.ndenumerate(zs):
        out[idx] = _ml_scalar(alpha, beta, float(zi))
    return out


def ml_one(alpha, z):
    """One-parameter Mittag-Leffler function ``E_alpha(z) = E_{alpha,1}(z)``."""
    return ml_two(alpha, 1.0, z)
