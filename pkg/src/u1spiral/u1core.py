"""U(1) group elements and the membership axioms.

Elements are kept in polar form: a real group parameter ``theta`` and a real
``log_modulus``. The complex value is derived from them. Unit elements have
``log_modulus == 0``; spiral-deformed elements do not. Storing the modulus as a
logarithm lets :func:`unitarity_defect` evaluate ``|g g^+ - 1|`` without the
cancellation that squaring a rounded complex value would introduce.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .exceptions import DomainError, RangeError

# exp() overflows a double just above 709.78
MAX_LOG_MODULUS = 709.0

MatrixLike = Union[complex, float, np.ndarray]


def _check_finite(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")
    return x


@dataclass(frozen=True)
class GroupElement:
    """A (possibly deformed) element ``exp(log_modulus + i*theta)``.

    ``theta`` is stored rather than recovered from the argument of the value,
    so composition keeps track of whole turns.
    """

    theta: float
    log_modulus: float = 0.0

    def __post_init__(self):
        _check_finite("theta", self.theta)
        _check_finite("log_modulus", self.log_modulus)
        if self.log_modulus > MAX_LOG_MODULUS:
            raise RangeError(f"log modulus {self.log_modulus} overflows")

    @classmethod
    def from_value(cls, value: complex, theta: float | None = None) -> "GroupElement":
        """Wrap an arbitrary nonzero complex value.

        When ``theta`` is omitted the principal argument is used, which loses
        any whole turns.
        """
        value = complex(value)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise DomainError(f"value must be finite, got {value!r}")
        if value == 0:
            raise DomainError("the zero value is not a group element")
        if theta is None:
            theta = cmath.phase(value)
        return cls(theta=float(theta), log_modulus=math.log(abs(value)))

    @property
    def modulus(self) -> float:
        return math.exp(self.log_modulus)

    @property
    def value(self) -> complex:
        r = self.modulus
        return complex(r * math.cos(self.theta), r * math.sin(self.theta))

    @property
    def is_unit(self) -> bool:
        return self.log_modulus == 0.0


def u1_element(theta: float) -> GroupElement:
    """Return ``g = exp(i*theta)``.

    >>> u1_element(0.0).value
    (1+0j)
    """
    return GroupElement(theta=_check_finite("theta", theta))


IDENTITY = GroupElement(0.0)


def compose(a: GroupElement, b: GroupElement) -> GroupElement:
    """Group product. Parameters add, so ``theta`` accumulates winding."""
    return GroupElement(theta=a.theta + b.theta,
                        log_modulus=a.log_modulus + b.log_modulus)


def adjoint(g: GroupElement) -> GroupElement:
    """Complex conjugate: negates the phase, keeps the modulus."""
    return GroupElement(theta=-g.theta, log_modulus=g.log_modulus)


def unitarity_defect(g: GroupElement) -> float:
    """Return ``| g * conj(g) - 1 | = | |value|^2 - 1 |``."""
    if 2.0 * g.log_modulus > MAX_LOG_MODULUS:
        raise RangeError(f"|value|^2 overflows for log modulus {g.log_modulus:g}")
    return abs(math.expm1(2.0 * g.log_modulus))


def _as_matrix(x: MatrixLike) -> tuple[np.ndarray, bool]:
    if np.isscalar(x):
        return np.array([[complex(x)]]), True
    m = np.asarray(x, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {m.shape}")
    if not 1 <= m.shape[0] <= 8:
        raise DomainError(f"matrix dimension must be in [1, 8], got {m.shape[0]}")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix entries must be finite")
    return m, False


def _coerce(*xs: MatrixLike) -> tuple[list[np.ndarray], bool]:
    pairs = [_as_matrix(x) for x in xs]
    mats = [m for m, _ in pairs]
    if len({m.shape for m in mats}) != 1:
        raise DomainError(f"dimension mismatch: {[m.shape for m in mats]}")
    return mats, all(s for _, s in pairs)


def _bracket(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


def commutator(x: MatrixLike, y: MatrixLike) -> MatrixLike:
    """Return ``xy - yx``. Scalars are handled as 1x1 matrices."""
    (mx, my), scalar = _coerce(x, y)
    out = _bracket(mx, my)
    return complex(out[0, 0]) if scalar else out


def jacobi_residual(x: MatrixLike, y: MatrixLike, z: MatrixLike,
                    relative: bool = False) -> float:
    """Max-abs entry of ``[[x,y],z] + [[z,x],y] + [[y,z],x]``.

    With ``relative=True`` the residual is divided by the largest entry among
    the three double commutators, which is the scale rounding acts on.
    """
    (mx, my, mz), _ = _coerce(x, y, z)
    terms = [_bracket(_bracket(mx, my), mz),
             _bracket(_bracket(mz, mx), my),
             _bracket(_bracket(my, mz), mx)]
    residual = float(np.max(np.abs(terms[0] + terms[1] + terms[2])))
    if not relative:
        return residual
    scale = max(float(np.max(np.abs(t))) for t in terms)
    return residual / scale if scale > 0 else residual
