"""The infinitesimal logarithmic spiral.

A circle of radius ``k`` is unrolled into the spiral ``r = k * exp(eps * t)``,
where ``t`` is the unwrapped angle. Points that coincide on the circle (same
angle, different winding) land at distinct radii, so the map is a bijection.
The same factor ``exp(eps * theta)`` deforms a U(1) element ``exp(i*theta)``
into ``exp((eps + i) * theta)``, which leaves the group unless ``theta`` is
infinitesimal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import DomainError, RangeError
from .u1core import GroupElement, u1_element, unitarity_defect

TWO_PI = 2.0 * math.pi
# reject rather than saturate; a silent inf would corrupt defect curves
MAX_EXPONENT = 700.0


@dataclass(frozen=True)
class SpiralDeformation:
    """Spiral pitch ``epsilon``, restricted to ``0 < epsilon <= 1``."""

    epsilon: float

    def __post_init__(self):
        eps = self.epsilon
        if not (math.isfinite(eps) and 0.0 < eps <= 1.0):
            raise DomainError(f"epsilon must lie in (0, 1], got {eps!r}")

    @classmethod
    def _unchecked(cls, epsilon: float) -> "SpiralDeformation":
        # allows epsilon == 0 (the undeformed circle) for internal comparisons
        obj = object.__new__(cls)
        object.__setattr__(obj, "epsilon", float(epsilon))
        return obj


@dataclass(frozen=True)
class CirclePoint:
    angle: float
    winding: int = 0
    k: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.angle < TWO_PI:
            raise DomainError(f"angle must lie in [0, 2*pi), got {self.angle!r}")
        if not (math.isfinite(self.k) and self.k > 0):
            raise DomainError(f"circle radius k must be positive, got {self.k!r}")

    @property
    def theta_total(self) -> float:
        return self.angle + TWO_PI * self.winding


@dataclass(frozen=True)
class SpiralPoint:
    theta_total: float
    radius: float


def _growth_exponent(epsilon: float, theta: float) -> float:
    x = epsilon * theta
    if x > MAX_EXPONENT:
        raise RangeError(f"epsilon*theta = {x:g} exceeds {MAX_EXPONENT:g}")
    return x


def deform(g: GroupElement, d: SpiralDeformation) -> GroupElement:
    """Multiply ``g`` by ``exp(eps * g.theta)``; the phase is untouched."""
    x = _growth_exponent(d.epsilon, g.theta)
    return GroupElement(theta=g.theta, log_modulus=g.log_modulus + x)


def deformed_defect(theta: float, d: SpiralDeformation) -> tuple[float, float]:
    """Measured and closed-form unitarity defect of the deformed element.

    Returns ``(measured, analytic)`` where ``analytic = |exp(2 eps theta) - 1|``.
    """
    measured = unitarity_defect(deform(u1_element(theta), d))
    analytic = abs(math.expm1(2.0 * _growth_exponent(d.epsilon, theta)))
    return measured, analytic


def is_infinitesimal_member(theta: float, d: SpiralDeformation,
                            c: float = 3.0) -> bool:
    """First-order membership: defect no larger than ``c * eps * |theta|``.

    Since ``exp(2 eps theta) - 1 = 2 eps theta + O((eps theta)^2)``, any
    ``c > 2`` accepts every sufficiently small ``theta``.
    """
    if not c > 0:
        raise DomainError(f"c must be positive, got {c!r}")
    measured, _ = deformed_defect(theta, d)
    return measured <= c * d.epsilon * abs(theta)


def circle_to_spiral(p: CirclePoint, d: SpiralDeformation) -> SpiralPoint:
    t = p.theta_total
    return SpiralPoint(theta_total=t,
                       radius=p.k * math.exp(_growth_exponent(d.epsilon, t)))


def spiral_to_circle(s: SpiralPoint, k: float, d: SpiralDeformation) -> CirclePoint:
    """Inverse of :func:`circle_to_spiral`; the radius alone fixes the winding."""
    if not s.radius > 0:
        raise DomainError(f"radius must be positive, got {s.radius!r}")
    if not k > 0:
        raise DomainError(f"k must be positive, got {k!r}")
    t = (math.log(s.radius) - math.log(k)) / d.epsilon
    winding = math.floor(t / TWO_PI)
    angle = t - TWO_PI * winding
    if angle >= TWO_PI:
        angle -= TWO_PI
        winding += 1
    elif angle < 0.0:
        angle += TWO_PI
        winding -= 1
    return CirclePoint(angle=angle, winding=int(winding), k=k)
