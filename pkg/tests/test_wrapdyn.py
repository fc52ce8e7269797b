import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from u1spiral.exceptions import DomainError, RangeError
from u1spiral.spiral import SpiralDeformation
from u1spiral.wrapdyn import (LiftedOrbit, Orbit, WrapMap, bernoulli_step, info_loss_bits,
                              lifted_orbit, orbit, preimage_count, recover_initial,
                              wrap_step)

HALVING = WrapMap("halving")
DOUBLING = WrapMap("doubling")
D = SpiralDeformation(0.1)


def brute_force_preimages(f, y, modulus, n=200_000):
    """Independent census: roots of f(x) - y - j*modulus located by bisection."""
    xs = np.linspace(0.0, modulus, n + 1)[:-1]
    roots = set()
    for j in range(-8, 9):
        g = f(xs) - (y + j * modulus)
        hits = np.nonzero((g[:-1] <= 0) & (g[1:] > 0) | (g[:-1] >= 0) & (g[1:] < 0)
                          | (g[:-1] == 0))[0]
        roots.update(round(float(xs[i]), 4) for i in hits)
    return len(roots)


@pytest.mark.parametrize("x, expected", [(0.8, 0.4), (0.0, 0.0), (1.6, 0.8)])
def test_bernoulli_step(x, expected):
    assert bernoulli_step(x) == expected


def test_wrap_step_examples():
    assert wrap_step(WrapMap("identity", modulus=2 * math.pi), 7.0) == pytest.approx(
        7.0 - 2 * math.pi, abs=1e-15)
    assert wrap_step(WrapMap("affine", a=2.0, b=0.0), 0.75) == 0.5
    assert wrap_step(WrapMap("affine", a=1.0, b=0.25), 0.5) == 0.75


def test_wrap_step_tiny_negative_stays_in_range():
    y = wrap_step(WrapMap("identity"), -1e-20)
    assert 0.0 <= y < 1.0


@given(st.sampled_from(["halving", "doubling", "identity"]),
       st.floats(-1e6, 1e6), st.floats(0.1, 10))
def test_states_in_range(kind, x, modulus):
    y = wrap_step(WrapMap(kind, modulus=modulus), x)
    assert 0.0 <= y < modulus


def test_orbit_examples():
    assert orbit(DOUBLING, 0.3, 0).states == (0.3,)
    assert orbit(HALVING, 0.9, 2).states == (0.9, 0.45, 0.225)
    np.testing.assert_allclose(orbit(DOUBLING, 1 / 3, 4).states,
                               [1 / 3, 2 / 3, 1 / 3, 2 / 3, 1 / 3], atol=1e-14)
    assert orbit(HALVING, 1.0, 2).states == (0.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        orbit(DOUBLING, 0.1, -1)


def test_orbit_is_deterministic():
    a = orbit(WrapMap("affine", a=3.7, b=0.1, modulus=2.5), 0.123, 500)
    b = orbit(WrapMap("affine", a=3.7, b=0.1, modulus=2.5), 0.123, 500)
    assert a == b


def test_preimage_examples():
    assert preimage_count(DOUBLING, 0.3, 2 ** 20) == 2
    assert preimage_count(HALVING, 0.3) == 1
    assert preimage_count(HALVING, 0.7) == 0
    with pytest.raises(DomainError):
        preimage_count(DOUBLING, 0.3, 10)
    with pytest.raises(DomainError):
        preimage_count(DOUBLING, 1.0)
    with pytest.raises(DomainError):
        preimage_count(WrapMap("affine", a=0.0, b=0.3), 0.3)


@pytest.mark.parametrize("m", [
    DOUBLING, HALVING, WrapMap("affine", a=3.0, b=0.2), WrapMap("affine", a=-2.0, b=0.1),
    WrapMap("affine", a=2.5, b=0.0, modulus=2 * math.pi),
])
@pytest.mark.parametrize("frac", [0.05, 0.31, 0.77])
def test_preimage_count_matches_brute_force(m, frac):
    y = frac * m.modulus
    assert preimage_count(m, y) == brute_force_preimages(m.f, y, m.modulus)


def test_census_on_grid():
    ys = np.arange(1024) / 1024
    assert all(preimage_count(DOUBLING, y) == 2 for y in ys)
    for y in ys:
        assert preimage_count(HALVING, y) == (1 if y < 0.5 else 0)


def test_info_loss():
    assert info_loss_bits(DOUBLING) == pytest.approx(1.0, abs=0.01)
    assert info_loss_bits(WrapMap("affine", a=4.0, b=0.0)) == pytest.approx(2.0, abs=0.01)
    assert info_loss_bits(WrapMap("identity", modulus=2 * math.pi)) == 0.0
    assert info_loss_bits(HALVING) == 0.0
    with pytest.raises(DomainError):
        info_loss_bits(DOUBLING, grid_n=999)


def test_lift_examples():
    lo = lifted_orbit(WrapMap("identity", modulus=2 * math.pi), D, 1.3, 10)
    assert set(lo.windings) == {0}
    lo = lifted_orbit(DOUBLING, D, 0.8, 1)
    assert lo.states[1] == pytest.approx(0.6, abs=1e-15)
    assert lo.windings[1] == 1
    lo = lifted_orbit(DOUBLING, D, 0.3, 1)
    assert (lo.states[1], lo.windings[1]) == (0.6, 0)
    with pytest.raises(DomainError):
        lifted_orbit(WrapMap("affine", a=0.0), D, 0.3, 3)


def test_lift_matches_plain_orbit():
    m = WrapMap("affine", a=3.0, b=0.25, modulus=1.0)
    assert lifted_orbit(m, D, 0.4, 40).orbit.states == orbit(m, 0.4, 40).states


@given(st.floats(0, 1, exclude_max=True))
def test_lift_consistency_exact(x0):
    # coefficients exactly representable: the unwrapped value is f(previous state) exactly
    m = WrapMap("affine", a=2.0, b=0.5)
    lo = lifted_orbit(m, D, x0, 30)
    u = lo.unwrapped
    for i in range(1, len(u)):
        assert u[i] == m.f(lo.states[i - 1])


def test_spiral_radii():
    m = WrapMap("doubling", modulus=3.0)
    lo = lifted_orbit(m, D, 1.7, 20)
    for u, r in zip(lo.unwrapped, lo.radii):
        expected = m.k * math.exp(D.epsilon * 2 * math.pi * u / m.modulus)
        assert r == pytest.approx(expected, rel=1e-12)


def test_radii_overflow_guard():
    lo = LiftedOrbit(Orbit(0.0, (0.5,)), (10_000,), epsilon=1.0, modulus=1.0)
    with pytest.raises(RangeError):
        lo.radii


@pytest.mark.parametrize("m", [WrapMap("affine", a=3.0, b=0.1), WrapMap("affine", a=-2.5),
                               DOUBLING, HALVING, WrapMap("identity", modulus=2.0)])
def test_single_step_inversion(m):
    assert recover_initial(lifted_orbit(m, D, 0.37, 1), m) == pytest.approx(0.37, abs=1e-15)


def test_doubling_recovery():
    assert recover_initial(lifted_orbit(DOUBLING, D, 0.123, 50), DOUBLING) == pytest.approx(
        0.123, abs=1e-12)


def test_halving_dyadic_exact():
    assert recover_initial(lifted_orbit(HALVING, D, 0.5, 20), HALVING) == 0.5


@given(st.floats(0, 1, exclude_max=True))
def test_halving_recovery_to_30_steps(x0):
    assert recover_initial(lifted_orbit(HALVING, D, x0, 30), HALVING) == pytest.approx(
        x0, abs=1e-6)


def test_halving_recovery_refused_beyond_limit():
    with pytest.raises(DomainError):
        recover_initial(lifted_orbit(HALVING, D, 0.3, 31), HALVING)


def test_recovery_restores_out_of_range_x0():
    assert recover_initial(lifted_orbit(DOUBLING, D, 5.25, 10), DOUBLING) == 5.25


def test_mismatched_record():
    lo = lifted_orbit(DOUBLING, D, 0.3, 5)
    broken = LiftedOrbit(lo.orbit, lo.windings[:-1], lo.epsilon, lo.modulus)
    with pytest.raises(DomainError):
        recover_initial(broken, DOUBLING)
    with pytest.raises(DomainError):
        recover_initial(lo, WrapMap("doubling", modulus=2.0))


def test_wrapmap_validation():
    with pytest.raises(DomainError):
        WrapMap("tripling")
    with pytest.raises(DomainError):
        WrapMap("doubling", modulus=0.0)
    assert WrapMap("identity", modulus=2 * math.pi).k == pytest.approx(1.0)
