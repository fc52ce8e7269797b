"""One-parameter coordinate-transformation families and their Jacobians."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _dual as D
from ._linalg import MAX_DIM, eigenvalues, generator_exp, lu_det
from .exceptions import DomainError

BUILTINS = ("rotation2d", "scaling2d", "shear2d", "boost1p1", "translation2d")
FAMILIES = BUILTINS + ("generator",)
METHODS = ("dual", "finite_diff")

jacobian_det = lu_det

__all__ = [
    "BUILTINS", "FAMILIES", "METHODS", "TransformFamily", "JacobianResult",
    "apply", "jacobian", "jacobian_matrix", "jacobian_det", "eigenvalues", "generator_exp",
    "default_probe",
]


@dataclass(frozen=True, eq=False)
class TransformFamily:
    """A named builtin family, or ``exp(theta * G)`` for a generator ``G``."""

    id: str
    generator: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.id not in FAMILIES:
            raise DomainError(f"unknown family {self.id!r}; expected one of {FAMILIES}")
        if self.id == "generator":
            if self.generator is None:
                raise DomainError("generator family needs a generator matrix")
            g = np.array(self.generator, dtype=float)
            if g.ndim != 2 or g.shape[0] != g.shape[1] or not 1 <= g.shape[0] <= MAX_DIM:
                raise DomainError(f"generator must be n x n with 1 <= n <= {MAX_DIM}")
            if not np.all(np.isfinite(g)):
                raise DomainError("generator entries must be finite")
            g.setflags(write=False)
            object.__setattr__(self, "generator", g)
        elif self.generator is not None:
            raise DomainError(f"{self.id} does not take a generator")

    @classmethod
    def from_generator(cls, generator) -> "TransformFamily":
        return cls("generator", np.asarray(generator, dtype=float))

    @property
    def dim(self) -> int:
        return 2 if self.generator is None else self.generator.shape[0]

    @property
    def is_linear(self) -> bool:
        return self.id != "translation2d"

    def __eq__(self, other):
        if not isinstance(other, TransformFamily):
            return NotImplemented
        if self.id != other.id:
            return False
        if self.generator is None:
            return other.generator is None
        return np.array_equal(self.generator, other.generator)

    def __hash__(self):
        g = None if self.generator is None else self.generator.tobytes()
        return hash((self.id, g))


@dataclass(frozen=True)
class JacobianResult:
    matrix: np.ndarray
    det: float
    eigenvalues: tuple[complex, ...]
    method: str


def default_probe(n: int) -> np.ndarray:
    """The point ``(1, ..., 1) / sqrt(n)``, used when none is given."""
    return np.full(n, 1.0 / math.sqrt(n))


def _point(f: TransformFamily, p) -> Sequence:
    if p is None:
        return list(default_probe(f.dim))
    if len(p) != f.dim:
        raise DomainError(f"{f.id} acts on R^{f.dim}, got a point of length {len(p)}")
    return list(p)


def _apply(f: TransformFamily, theta: float, p: Sequence) -> list:
    # written against the D.* helpers so Dual coordinates flow through unchanged
    if f.id == "rotation2d":
        c, s = D.cos(theta), D.sin(theta)
        x, y = p
        return [c * x - s * y, s * x + c * y]
    if f.id == "scaling2d":
        e = D.exp(theta)
        return [e * p[0], e * p[1]]
    if f.id == "shear2d":
        return [p[0] + theta * p[1], p[1]]
    if f.id == "boost1p1":
        ch, sh = D.cosh(theta), D.sinh(theta)
        x, t = p
        return [ch * x + sh * t, sh * x + ch * t]
    if f.id == "translation2d":
        return [p[0] + theta, p[1] + theta]
    m = generator_exp(f.generator, theta)
    n = f.dim
    return [sum((m[i, j] * p[j] for j in range(n)), 0.0) for i in range(n)]


def apply(f: TransformFamily, theta: float, p) -> np.ndarray:
    """Image of the point ``p`` under the family member at ``theta``."""
    if not math.isfinite(theta):
        raise DomainError(f"theta must be finite, got {theta!r}")
    pts = [float(v) for v in _point(f, p)]
    if not all(math.isfinite(v) for v in pts):
        raise DomainError("point coordinates must be finite")
    return np.array([D.value(v) for v in _apply(f, theta, pts)])


def _jacobian_dual(f: TransformFamily, theta: float, p: list[float]) -> np.ndarray:
    n = f.dim
    jac = np.empty((n, n))
    for j in range(n):
        seeded = [D.Dual(v, 1.0 if i == j else 0.0) for i, v in enumerate(p)]
        jac[:, j] = [D.deriv(v) for v in _apply(f, theta, seeded)]
    return jac


def _jacobian_fd(f: TransformFamily, theta: float, p: list[float]) -> np.ndarray:
    n = f.dim
    jac = np.empty((n, n))
    for j in range(n):
        h = 1e-6 * max(1.0, abs(p[j]))
        up, down = list(p), list(p)
        up[j] += h
        down[j] -= h
        # divide by the actually representable step
        step = up[j] - down[j]
        fu = np.array([D.value(v) for v in _apply(f, theta, up)])
        fd = np.array([D.value(v) for v in _apply(f, theta, down)])
        jac[:, j] = (fu - fd) / step
    return jac


def jacobian_matrix(f: TransformFamily, theta: float, p=None,
                    method: str = "dual") -> np.ndarray:
    """Just the Jacobian matrix; see :func:`jacobian`."""
    if method in ("fd", "finite-diff"):
        method = "finite_diff"
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}; expected one of {METHODS}")
    if not math.isfinite(theta):
        raise DomainError(f"theta must be finite, got {theta!r}")
    pts = [float(v) for v in _point(f, p)]
    return (_jacobian_dual if method == "dual" else _jacobian_fd)(f, theta, pts)


def jacobian(f: TransformFamily, theta: float, p=None,
             method: str = "dual") -> JacobianResult:
    """Jacobian of ``p -> apply(f, theta, p)`` with its determinant and spectrum.

    ``method="dual"`` seeds one dual number per coordinate and is exact up to
    rounding; ``method="finite_diff"`` uses central differences with step
    ``1e-6 * max(1, |p_j|)``. The probe point defaults to ``default_probe``.
    """
    if method in ("fd", "finite-diff"):
        method = "finite_diff"
    jac = jacobian_matrix(f, theta, p, method)
    return JacobianResult(matrix=jac, det=lu_det(jac),
                          eigenvalues=tuple(eigenvalues(jac)), method=method)
