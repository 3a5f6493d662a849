"""Density matrices, Lindblad generators and admissibility audits.

Vectorization is column-stacking throughout: ``vec(X)[i + d*j] = X[i, j]``,
so that ``vec(A X B) = (B.T kron A) vec(X)``. Basis index ``i`` is the ket
``|i>``; for a qubit ``|0>`` is the ground state and ``|1>`` the excited one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "ATOL",
    "POSITIVITY_TOL",
    "DimensionError",
    "InvalidStateError",
    "DensityMatrix",
    "LindbladModel",
    "MapMatrix",
    "AdmissibilityReport",
    "vec",
    "unvec",
    "lindblad_apply",
    "lindblad_superoperator",
    "l1_coherence",
    "choi_matrix",
    "min_choi_eigenvalue",
    "admissibility_report",
    "sigma_minus",
    "sigma_plus",
]

ATOL = 1e-12
POSITIVITY_TOL = 1e-10


class DimensionError(ValueError):
    pass


class InvalidStateError(ValueError):
    pass


def _frozen(a, dtype=complex):
    arr = np.array(a, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


def _square(a, name):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be a square matrix, got shape {a.shape}")
    return a


def vec(x):
    """Column-stack a (..., d, d) array into (..., d*d)."""
    x = np.asarray(x)
    d = x.shape[-1]
    return np.swapaxes(x, -1, -2).reshape(*x.shape[:-2], d * d)


def unvec(v):
    """Inverse of :func:`vec`."""
    v = np.asarray(v)
    n = v.shape[-1]
    d = int(round(np.sqrt(n)))
    if d * d != n:
        raise DimensionError(f"length {n} is not a perfect square")
    return np.swapaxes(v.reshape(*v.shape[:-1], d, d), -1, -2)


def sigma_minus():
    """Lowering operator ``|0><1|``."""
    return np.array([[0, 1], [0, 0]], dtype=complex)


def sigma_plus():
    """Raising operator ``|1><0|``."""
    return np.array([[0, 0], [1, 0]], dtype=complex)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite ``d x d`` matrix.

    Invariants are checked at construction to ``atol`` (Hermiticity, trace)
    and ``-atol`` (smallest eigenvalue). The stored array is read-only.
    """

    entries: np.ndarray
    atol: float = field(default=ATOL, repr=False, compare=False)

    def __post_init__(self):
        rho = _square(self.entries, "density matrix")
        object.__setattr__(self, "entries", _frozen(rho))
        rho = self.entries
        if not np.all(np.isfinite(rho)):
            raise InvalidStateError("density matrix has non-finite entries")
        herm = np.max(np.abs(rho - rho.conj().T))
        if herm > self.atol:
            raise InvalidStateError(f"not Hermitian (defect {herm:.3e})")
        tr = np.trace(rho)
        if abs(tr - 1.0) > self.atol:
            raise InvalidStateError(f"trace is {tr.real:.15g}, expected 1")
        lo = np.linalg.eigvalsh(rho)[0]
        if lo < -self.atol:
            raise InvalidStateError(f"not positive semidefinite (eigenvalue {lo:.3e})")

    @property
    def dim(self):
        return self.entries.shape[0]

    def vec(self):
        return vec(self.entries)

    @classmethod
    def from_vec(cls, v, atol=ATOL):
        return cls(unvec(v), atol=atol)

    @classmethod
    def basis(cls, index, dim=2):
        rho = np.zeros((dim, dim), dtype=complex)
        rho[index, index] = 1.0
        return cls(rho)

    @classmethod
    def ground(cls):
        """Qubit ground state ``|0><0|``."""
        return cls.basis(0)

    @classmethod
    def excited(cls):
        """Qubit excited state ``|1><1|``."""
        return cls.basis(1)

    @classmethod
    def plus(cls):
        """``|+><+|`` with ``|+> = (|0> + |1>)/sqrt(2)``."""
        return cls(np.full((2, 2), 0.5, dtype=complex))

    @classmethod
    def maximally_mixed(cls, dim=2):
        return cls(np.eye(dim, dtype=complex) / dim)

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)


@dataclass(frozen=True)
class LindbladModel:
    """Hamiltonian plus jump operators, with rates folded into the jump operators."""

    hamiltonian: np.ndarray
    jump_ops: tuple = ()

    def __post_init__(self):
        h = _square(self.hamiltonian, "hamiltonian")
        d = h.shape[0]
        if np.max(np.abs(h - np.conj(h).T), initial=0.0) > ATOL:
            raise ValueError("hamiltonian is not Hermitian")
        ops = []
        for k, op in enumerate(self.jump_ops):
            op = _square(op, f"jump operator {k}")
            if op.shape[0] != d:
                raise DimensionError(
                    f"jump operator {k} has dimension {op.shape[0]}, hamiltonian has {d}"
                )
            ops.append(_frozen(op))
        object.__setattr__(self, "hamiltonian", _frozen(h))
        object.__setattr__(self, "jump_ops", tuple(ops))

    @property
    def dim(self):
        return self.hamiltonian.shape[0]

    @classmethod
    def amplitude_damping(cls, gamma):
        """Qubit decay ``|1> -> |0>`` at rate ``gamma``: ``H = 0``, ``L = sqrt(gamma) sigma_-``."""
        if not gamma > 0:
            raise ValueError(f"gamma must be positive, got {gamma!r}")
        return cls(np.zeros((2, 2), dtype=complex), (np.sqrt(gamma) * sigma_minus(),))

    @classmethod
    def null(cls, dim=2):
        return cls(np.zeros((dim, dim), dtype=complex))


@dataclass(frozen=True)
class MapMatrix:
    """``d^2 x d^2`` matrix acting on column-stacked density matrices."""

    entries: np.ndarray

    def __post_init__(self):
        m = _square(self.entries, "map matrix")
        n = m.shape[0]
        d = int(round(np.sqrt(n)))
        if d * d != n:
            raise DimensionError(f"map matrix size {n} is not a perfect square")
        object.__setattr__(self, "entries", _frozen(m))

    @property
    def dim(self):
        return int(round(np.sqrt(self.entries.shape[0])))

    def apply(self, rho):
        rho = np.asarray(rho)
        if rho.shape != (self.dim, self.dim):
            raise DimensionError(f"expected a {self.dim}x{self.dim} matrix, got {rho.shape}")
        return unvec(self.entries @ vec(rho))

    def __matmul__(self, other):
        if isinstance(other, MapMatrix):
            return MapMatrix(self.entries @ other.entries)
        return self.entries @ other

    @classmethod
    def identity(cls, dim):
        return cls(np.eye(dim * dim, dtype=complex))


def lindblad_apply(model, rho):
    """Action of the Lindblad generator on a ``d x d`` matrix.

    ``-i[H, rho] + sum_k (L_k rho L_k^+ - 1/2 {L_k^+ L_k, rho})``
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (model.dim, model.dim):
        raise DimensionError(f"expected a {model.dim}x{model.dim} matrix, got {rho.shape}")
    h = model.hamiltonian
    out = -1j * (h @ rho - rho @ h)
    for op in model.jump_ops:
        op_dag = op.conj().T
        n = op_dag @ op
        out += op @ rho @ op_dag - 0.5 * (n @ rho + rho @ n)
    return out


def lindblad_superoperator(model):
    """Matrix of the Lindblad generator in the column-stacking convention."""
    d = model.dim
    eye = np.eye(d)
    h = model.hamiltonian
    sup = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for op in model.jump_ops:
        n = op.conj().T @ op
        sup = sup + np.kron(op.conj(), op) - 0.5 * np.kron(eye, n) - 0.5 * np.kron(n.T, eye)
    return MapMatrix(sup)


def l1_coherence(rho):
    """l1-norm of coherence: sum of ``|rho_ij|`` over ``i != j``.

    Accepts a single matrix or a stack of shape ``(..., d, d)``.
    """
    rho = np.asarray(rho)
    a = np.abs(rho)
    return a.sum(axis=(-1, -2)) - np.abs(np.diagonal(rho, axis1=-2, axis2=-1)).sum(axis=-1)


def choi_matrix(channel):
    """Choi matrix ``sum_ij |i><j| (x) Phi(|i><j|)`` of a propagator.

    Row index ``i*d + a`` and column index ``j*d + b`` hold
    ``Phi(|i><j|)[a, b]``.
    """
    m = channel.entries if isinstance(channel, MapMatrix) else _square(channel, "map")
    n = m.shape[0]
    d = int(round(np.sqrt(n)))
    if d * d != n:
        raise DimensionError(f"map size {n} is not a perfect square")
    # m[a + d*b, i + d*j] -> reshape index order (b, a, j, i)
    return m.reshape(d, d, d, d).transpose(3, 1, 2, 0).reshape(n, n)


def min_choi_eigenvalue(channel):
    c = choi_matrix(channel)
    c = 0.5 * (c + c.conj().T)
    return float(np.linalg.eigvalsh(c)[0])


@dataclass(frozen=True)
class AdmissibilityReport:
    trace_defect: np.ndarray
    hermiticity_defect: np.ndarray
    negativity: np.ndarray
    trace_tol: float
    hermiticity_tol: float
    positivity_tol: float

    @property
    def max_trace_defect(self):
        return float(np.max(self.trace_defect))

    @property
    def max_hermiticity_defect(self):
        return float(np.max(self.hermiticity_defect))

    @property
    def max_negativity(self):
        return float(np.max(self.negativity))

    @property
    def trace_ok(self):
        return self.max_trace_defect <= self.trace_tol

    @property
    def hermitian_ok(self):
        return self.max_hermiticity_defect <= self.hermiticity_tol

    @property
    def positive_ok(self):
        return self.max_negativity <= self.positivity_tol

    @property
    def passed(self):
        return self.trace_ok and self.hermitian_ok and self.positive_ok


def admissibility_report(
    rho_series,
    trace_tol: float = ATOL,
    hermiticity_tol: float = ATOL,
    positivity_tol: float = POSITIVITY_TOL,
) -> AdmissibilityReport:
    """Per-step trace, Hermiticity and positivity defects of a state sequence.

    ``rho_series`` is a :class:`~fraclindblad.fde_solver.Trajectory`, a
    sequence of density matrices, or an array of shape ``(n, d, d)``.
    Violations are recorded, never raised. ``negativity`` is the magnitude of
    the most negative eigenvalue of the Hermitian part (zero if none).
    """
    rhos = getattr(rho_series, "states", rho_series)
    if not isinstance(rhos, np.ndarray):
        rhos = np.stack([np.asarray(r) for r in rhos])
    rhos = np.asarray(rhos, dtype=complex)
    if rhos.ndim == 2:
        rhos = rhos[None]
    if rhos.shape[0] == 0:
        raise ValueError("empty trajectory")
    dag = np.conj(np.swapaxes(rhos, -1, -2))
    trace = np.trace(rhos, axis1=-2, axis2=-1)
    herm = np.max(np.abs(rhos - dag), axis=(-1, -2))
    lo = np.linalg.eigvalsh(0.5 * (rhos + dag))[:, 0]
    return AdmissibilityReport(
        trace_defect=np.abs(trace - 1.0),
        hermiticity_defect=herm,
        negativity=np.maximum(-lo, 0.0),
        trace_tol=trace_tol,
        hermiticity_tol=hermiticity_tol,
        positivity_tol=positivity_tol,
    )


def random_density_matrix(dim, rng, rank=None) -> np.ndarray:
    """Random full-rank (or rank-``rank``) density matrix as a plain array."""
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def random_lindblad_model(dim, rng, n_jumps=2) -> LindbladModel:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    h = 0.5 * (a + a.conj().T)
    ops: Sequence[np.ndarray] = [
        rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)) for _ in range(n_jumps)
    ]
    return LindbladModel(h, tuple(ops))
