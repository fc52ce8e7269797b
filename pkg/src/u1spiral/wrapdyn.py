"""Mod-wrapped interval maps, preimage census, and the spiral lift.

A map ``x -> f(x) mod modulus`` folds the real line onto a circle of
circumference ``modulus`` and discards the integer quotient, which is what makes
it irreversible. Recording that quotient per step (the winding) and placing the
state on a logarithmic spiral restores a bijection, and the orbit can then be
run backwards exactly.

The builtin kinds are

* ``halving``:  ``f(x) = x / 2``
* ``doubling``: ``f(x) = 2 x``
* ``affine``:   ``f(x) = a x + b``
* ``identity``: ``f(x) = x``

``halving`` with modulus 1 is the map written as the Bernoulli application;
``doubling`` is its inverse, which is what the name usually refers to. Both are
provided and neither is substituted for the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DomainError, RangeError
from .spiral import MAX_EXPONENT, SpiralDeformation

KINDS = ("halving", "doubling", "affine", "identity")

# recover_initial refuses inversions whose error amplification exceeds this
MAX_BACKWARD_AMPLIFICATION = 2.0 ** 30


@dataclass(frozen=True)
class WrapMap:
    kind: str
    modulus: float = 1.0
    a: float = 1.0
    b: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown map kind {self.kind!r}; expected one of {KINDS}")
        if not (math.isfinite(self.modulus) and self.modulus > 0):
            raise DomainError(f"modulus must be positive, got {self.modulus!r}")
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError("affine coefficients must be finite")

    @property
    def k(self) -> float:
        """Radius of the circle whose circumference is ``modulus``."""
        return self.modulus / (2.0 * math.pi)

    @property
    def slope(self) -> float:
        return {"halving": 0.5, "doubling": 2.0, "identity": 1.0}.get(self.kind, self.a)

    @property
    def invertible(self) -> bool:
        return self.slope != 0.0

    def f(self, x):
        if self.kind == "halving":
            return x / 2.0
        if self.kind == "doubling":
            return 2.0 * x
        if self.kind == "identity":
            return x
        return self.a * x + self.b

    def f_inv(self, u: float) -> float:
        if self.kind == "halving":
            return 2.0 * u
        if self.kind == "doubling":
            return u / 2.0
        if self.kind == "identity":
            return u
        if self.a == 0.0:
            raise DomainError("affine map with a == 0 has no inverse")
        return (u - self.b) / self.a


@dataclass(frozen=True)
class Orbit:
    x0: float
    states: tuple[float, ...]


@dataclass(frozen=True)
class LiftedOrbit:
    orbit: Orbit
    windings: tuple[int, ...]
    epsilon: float
    modulus: float = field(default=1.0)

    @property
    def states(self) -> tuple[float, ...]:
        return self.orbit.states

    @property
    def unwrapped(self) -> list[float]:
        return [s + w * self.modulus for s, w in zip(self.states, self.windings)]

    @property
    def radii(self) -> list[float]:
        """Spiral radius ``k * exp(eps * 2 pi u / modulus)`` per step."""
        k = self.modulus / (2.0 * math.pi)
        out = []
        for u in self.unwrapped:
            x = self.epsilon * 2.0 * math.pi * u / self.modulus
            if x > MAX_EXPONENT:
                raise RangeError(f"spiral exponent {x:g} exceeds {MAX_EXPONENT:g}")
            out.append(k * math.exp(x))
        return out


def _wrap(x: float, modulus: float) -> tuple[float, int]:
    q, r = divmod(x, modulus)
    # divmod can return r == modulus for tiny negative x
    if r >= modulus:
        r -= modulus
        q += 1
    return r, int(q)


def bernoulli_step(x: float) -> float:
    """One step of ``x -> (x / 2) mod 1``."""
    return _wrap(x / 2.0, 1.0)[0]


def wrap_step(m: WrapMap, x: float) -> float:
    return _wrap(m.f(x), m.modulus)[0]


def orbit(m: WrapMap, x0: float, n: int) -> Orbit:
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    states = [_wrap(x0, m.modulus)[0]]
    for _ in range(n):
        states.append(wrap_step(m, states[-1]))
    return Orbit(x0=x0, states=tuple(states))


def _crossings(m: WrapMap, y: np.ndarray, grid_n: int) -> np.ndarray:
    """Count solutions of ``f(x) = y + j*modulus`` over ``[0, modulus)``.

    Each grid cell ``[x_i, x_{i+1})`` contributes the number of levels
    ``y + j*modulus`` its (monotone) image crosses; half-open ends keep a
    solution on a cell boundary from being counted twice.
    """
    xs = np.linspace(0.0, m.modulus, grid_n + 1)
    fx = m.f(xs)
    lo, hi = fx[:-1], fx[1:]
    y = np.atleast_1d(np.asarray(y, dtype=float))[:, None]
    mod = m.modulus
    if m.slope == 0:
        raise DomainError("a constant map has a continuum of preimages")
    if m.slope > 0:
        counts = np.ceil((hi - y) / mod) - np.ceil((lo - y) / mod)
    else:
        counts = np.floor((lo - y) / mod) - np.floor((hi - y) / mod)
    return counts.sum(axis=1).astype(int)


def preimage_count(m: WrapMap, y: float, grid_n: int = 2 ** 16) -> int:
    """Number of ``x`` in ``[0, modulus)`` with ``wrap_step(m, x) == y``."""
    if grid_n < 1000:
        raise DomainError(f"grid_n must be at least 1000, got {grid_n}")
    if not 0.0 <= y < m.modulus:
        raise DomainError(f"y must lie in [0, {m.modulus}), got {y!r}")
    return int(_crossings(m, np.array([y]), grid_n)[0])


def info_loss_bits(m: WrapMap, grid_n: int = 2 ** 14, n_samples: int = 1024) -> float:
    """``log2`` of the mean preimage multiplicity over points with a preimage.

    Image points are sampled at the midpoints of ``n_samples`` equal cells of
    ``[0, modulus)``.
    """
    if grid_n < 1000:
        raise DomainError(f"grid_n must be at least 1000, got {grid_n}")
    ys = (np.arange(n_samples) + 0.5) * (m.modulus / n_samples)
    counts = np.concatenate([_crossings(m, chunk, grid_n)
                             for chunk in np.array_split(ys, max(1, n_samples // 64))])
    hit = counts[counts > 0]
    if hit.size == 0:
        return 0.0
    return max(0.0, float(np.log2(hit.mean())))


def lifted_orbit(m: WrapMap, d: SpiralDeformation, x0: float, n: int) -> LiftedOrbit:
    """Orbit that also keeps the integer quotient dropped at every step."""
    if not m.invertible:
        raise DomainError(f"{m.kind} map with slope 0 cannot be lifted")
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    s, w = _wrap(x0, m.modulus)
    states, windings = [s], [w]
    for _ in range(n):
        s, w = _wrap(m.f(states[-1]), m.modulus)
        states.append(s)
        windings.append(w)
    return LiftedOrbit(orbit=Orbit(x0=x0, states=tuple(states)),
                       windings=tuple(windings), epsilon=d.epsilon,
                       modulus=m.modulus)


def backward_amplification(m: WrapMap, steps: int) -> float:
    """Factor by which inverting ``steps`` steps can amplify rounding error."""
    per_step = 1.0 / abs(m.slope)
    if per_step <= 1.0:
        return 1.0
    return per_step ** steps if steps * math.log2(per_step) < 1000 else math.inf


def recover_initial(lo: LiftedOrbit, m: WrapMap) -> float:
    """Run the lifted orbit backwards from its last state.

    Only the final state and the winding record are used. Inverting a
    contracting map (``|slope| < 1``, e.g. halving) expands error by
    ``1/|slope|`` per step, so such inversions are refused once the total
    amplification would exceed ``2**30``.
    """
    if len(lo.windings) != len(lo.states):
        raise DomainError(
            f"winding record has {len(lo.windings)} entries for {len(lo.states)} states")
    if lo.modulus != m.modulus:
        raise DomainError("lifted orbit was produced with a different modulus")
    if not m.invertible:
        raise DomainError(f"{m.kind} map with slope 0 cannot be inverted")
    steps = len(lo.states) - 1
    if backward_amplification(m, steps) > MAX_BACKWARD_AMPLIFICATION:
        raise DomainError(
            f"inverting {steps} steps of a map with slope {m.slope} is ill-conditioned")
    x = lo.states[-1]
    for w in reversed(lo.windings[1:]):
        x = m.f_inv(x + w * m.modulus)
    return x + lo.windings[0] * m.modulus
