"""Determinant, spectrum and exponential for small dense real matrices."""

from __future__ import annotations

import cmath
import math

import numpy as np

from .exceptions import DomainError, NumericError, RangeError

MAX_DIM = 8
# scaled squaring is refused beyond this 1-norm of theta*G
MAX_EXP_NORM = 1e4


def _square(matrix, name="matrix") -> np.ndarray:
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"{name} must be square, got shape {a.shape}")
    if not 1 <= a.shape[0] <= MAX_DIM:
        raise DomainError(f"{name} dimension must be in [1, {MAX_DIM}], got {a.shape[0]}")
    if not np.all(np.isfinite(a)):
        raise DomainError(f"{name} entries must be finite")
    return a


def lu_det(matrix) -> float:
    """Determinant by LU factorisation with partial pivoting.

    The sign flips once per row swap; an exactly zero pivot column gives 0.
    """
    a = _square(matrix)
    n = a.shape[0]
    det = 1.0
    for j in range(n):
        p = j + int(np.argmax(np.abs(a[j:, j])))
        if a[p, j] == 0.0:
            return 0.0
        if p != j:
            a[[j, p]] = a[[p, j]]
            det = -det
        det *= a[j, j]
        if j + 1 < n:
            factors = a[j + 1:, j] / a[j, j]
            a[j + 1:, j:] -= np.outer(factors, a[j, j:])
    return float(det)


def _eig2(a: np.ndarray) -> list[complex]:
    a = a.tolist()
    half_tr = 0.5 * (a[0][0] + a[1][1])
    # discriminant from the half-difference avoids cancellation in tr^2 - 4 det
    half_diff = 0.5 * (a[0][0] - a[1][1])
    disc = half_diff * half_diff + a[0][1] * a[1][0]
    if disc >= 0:
        root = math.sqrt(disc)
        big = half_tr + math.copysign(root, half_tr) if half_tr != 0 else root
        if big == 0.0:
            return [complex(0.0), complex(0.0)]
        det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
        small = det / big
        return sorted([complex(big), complex(small)], key=lambda z: -z.real)
    root = cmath.sqrt(float(disc))
    return [complex(half_tr + root), complex(half_tr - root)]


def eigenvalues(matrix) -> list[complex]:
    """All eigenvalues of a real matrix of dimension at most 8.

    Closed form up to 2x2; LAPACK's Hessenberg QR (via numpy) above that.
    """
    a = _square(matrix)
    n = a.shape[0]
    if n == 1:
        return [complex(a[0, 0])]
    if n == 2:
        return _eig2(a)
    try:
        lams = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigenvalue iteration did not converge: {exc}") from exc
    return [complex(z) for z in lams]


def _one_norm(a: np.ndarray) -> float:
    return float(np.max(np.sum(np.abs(a), axis=0)))


def taylor_exp(a: np.ndarray, terms: int) -> np.ndarray:
    """Truncated series ``sum_{k<terms} a^k / k!``."""
    out = np.eye(a.shape[0])
    term = np.eye(a.shape[0])
    for k in range(1, terms):
        term = term @ a / k
        out = out + term
    return out


def generator_exp(generator, theta: float) -> np.ndarray:
    """``exp(theta * G)`` by scaling, a degree-18 series, and squaring."""
    g = _square(generator, "generator")
    if not math.isfinite(theta):
        raise DomainError(f"theta must be finite, got {theta!r}")
    a = theta * g
    norm = _one_norm(a)
    if norm == 0.0:
        return np.eye(g.shape[0])
    if norm > MAX_EXP_NORM:
        raise RangeError(f"|theta*G| = {norm:g} exceeds {MAX_EXP_NORM:g}")
    s = max(0, math.ceil(math.log2(norm)) + 1)
    e = taylor_exp(a / 2.0 ** s, 19)
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(s):
            e = e @ e
    if not np.all(np.isfinite(e)):
        raise RangeError(f"exp(theta*G) overflows for |theta*G| = {norm:g}")
    return e
