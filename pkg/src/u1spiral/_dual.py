"""Dual numbers ``a + b*eps`` (``eps**2 == 0``) for forward-mode derivatives."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Dual:
    a: float  # value
    b: float = 0.0  # derivative

    @staticmethod
    def _lift(x) -> "Dual":
        return x if isinstance(x, Dual) else Dual(float(x), 0.0)

    def __add__(self, other):
        o = self._lift(other)
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return Dual(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __mul__(self, other):
        o = self._lift(other)
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.a == 0.0:
            raise ZeroDivisionError("dual division by a zero real part")
        return Dual(self.a / o.a, (self.b * o.a - self.a * o.b) / (o.a * o.a))

    def __rtruediv__(self, other):
        return self._lift(other) / self


def value(x) -> float:
    return x.a if isinstance(x, Dual) else float(x)


def deriv(x) -> float:
    return x.b if isinstance(x, Dual) else 0.0


def exp(x):
    if isinstance(x, Dual):
        e = math.exp(x.a)
        return Dual(e, e * x.b)
    return math.exp(x)


def sin(x):
    if isinstance(x, Dual):
        return Dual(math.sin(x.a), math.cos(x.a) * x.b)
    return math.sin(x)


def cos(x):
    if isinstance(x, Dual):
        return Dual(math.cos(x.a), -math.sin(x.a) * x.b)
    return math.cos(x)


def sinh(x):
    if isinstance(x, Dual):
        return Dual(math.sinh(x.a), math.cosh(x.a) * x.b)
    return math.sinh(x)


def cosh(x):
    if isinstance(x, Dual):
        return Dual(math.cosh(x.a), math.sinh(x.a) * x.b)
    return math.cosh(x)
