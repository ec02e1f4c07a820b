import math

import numpy as np
import pytest

from tropkit import (
    Semiring,
    maxplus,
    minplus,
    subtropical,
    subtropical_add,
    standard_order_leq,
)

RNG = np.random.default_rng(20260823)


def dyadic(n, lo=-(1 << 20), hi=1 << 20):
    # integers scaled by 2^-16: float addition on this lattice is exact,
    # so the semiring laws below can be asserted with ==
    return RNG.integers(lo, hi, size=n).astype(float) * 2.0**-16


# ---------------------------------------------------------------------------
# documented point examples
# ---------------------------------------------------------------------------

def test_maxplus_examples():
    mp = maxplus()
    assert mp.add(3.0, 5.0) == 5.0
    assert mp.mul(3.0, 5.0) == 8.0
    assert mp.zero == -math.inf
    assert mp.one == 0.0
    assert mp.add(2.5, -math.inf) == 2.5
    assert mp.mul(2.5, -math.inf) == -math.inf
    assert mp.mul(2.5, 0.0) == 2.5


def test_minplus_examples():
    mn = minplus()
    assert mn.add(3.0, 5.0) == 3.0
    assert mn.mul(3.0, 5.0) == 8.0
    assert mn.zero == math.inf
    assert mn.add(7.0, math.inf) == 7.0
    assert mn.mul(7.0, math.inf) == math.inf


def test_order_examples():
    mp, mn = maxplus(), minplus()
    assert mp.leq(2.0, 5.0) and not mp.leq(5.0, 2.0)
    # the min-plus order is reversed: smaller weights dominate
    assert mn.leq(5.0, 2.0) and not mn.leq(2.0, 5.0)
    assert mp.leq(-math.inf, -1e300)
    assert mn.leq(math.inf, 1e300)
    assert standard_order_leq(1.0, 1.0, mp)


def test_subtropical_examples():
    # 0 ⊕_1 0 = log 2, and scaling h scales the whole expression
    assert subtropical_add(0.0, 0.0, 1.0) == math.log(2.0)
    assert subtropical_add(0.0, 0.0, 0.25) == pytest.approx(0.25 * math.log(2.0), rel=1e-15)
    # direct evaluation of h·log(e^{u/h} + e^{v/h}) for a spread pair
    u, v, h = 3.0, 5.0, 0.5
    direct = h * math.log(math.exp(u / h) + math.exp(v / h))
    assert subtropical_add(u, v, h) == pytest.approx(direct, rel=1e-14)
    # far-apart arguments collapse to max without overflow
    assert subtropical_add(0.0, 1000.0, 0.1) == 1000.0
    assert subtropical_add(-math.inf, 4.0, 0.3) == 4.0
    assert subtropical_add(-math.inf, -math.inf, 0.3) == -math.inf


def test_subtropical_spec_object():
    s = subtropical(0.5)
    assert s.h == 0.5
    assert s.zero == -math.inf and s.one == 0.0
    assert not s.is_idempotent
    assert s.mul(3.0, 5.0) == 8.0
    with pytest.raises(ValueError):
        s.leq(1.0, 2.0)  # no canonical order without idempotency


def test_invalid_specs():
    with pytest.raises(ValueError):
        Semiring("subtropical", h=0.0)
    with pytest.raises(ValueError):
        Semiring("subtropical", h=-1.0)
    with pytest.raises(ValueError):
        Semiring("maxplus", h=0.5)  # h is meaningless without smoothing
    with pytest.raises(ValueError):
        Semiring("madplus")


def test_validate_rejects_nan_and_antibottom():
    mp = maxplus()
    mp.validate(np.array([1.0, -math.inf]))
    with pytest.raises(ValueError):
        mp.validate(np.array([1.0, math.nan]))
    with pytest.raises(ValueError):
        mp.validate(np.array([math.inf]))
    minplus().validate(np.array([math.inf, 0.0]))
    with pytest.raises(ValueError):
        minplus().validate(np.array([-math.inf]))


# ---------------------------------------------------------------------------
# algebraic laws, exact on the dyadic lattice
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("spec", [maxplus(), minplus()], ids=["maxplus", "minplus"])
def test_idempotent_laws_exact(spec):
    a, b, c = dyadic(4096), dyadic(4096), dyadic(4096)
    # sprinkle in the neutral element
    a[::97] = spec.zero
    b[::41] = spec.zero
    add, mul = spec.add, spec.mul

    assert np.array_equal(add(add(a, b), c), add(a, add(b, c)))
    assert np.array_equal(add(a, b), add(b, a))
    assert np.array_equal(add(a, a), a)
    assert np.array_equal(mul(mul(a, b), c), mul(a, mul(b, c)))
    assert np.array_equal(mul(a, b), mul(b, a))
    assert np.array_equal(mul(a, add(b, c)), add(mul(a, b), mul(a, c)))
    assert np.array_equal(mul(add(a, b), c), add(mul(a, c), mul(b, c)))
    assert np.array_equal(add(a, np.full_like(a, spec.zero)), a)
    assert np.array_equal(mul(a, np.zeros_like(a)), a)
    assert np.array_equal(mul(a, np.full_like(a, spec.zero)), np.full_like(a, spec.zero))


def test_distributivity_exact_for_arbitrary_floats():
    # max distributes over + with no rounding at all, even off the lattice
    a = RNG.standard_normal(4096) * 1e3
    b = RNG.standard_normal(4096)
    c = RNG.standard_normal(4096)
    mp = maxplus()
    lhs = mp.mul(a, mp.add(b, c))
    rhs = mp.add(mp.mul(a, b), mp.mul(a, c))
    assert np.array_equal(lhs, rhs)


def test_bottom_absorbs_even_against_antibottom():
    # -inf ⊙ +inf would be nan under plain +; the product must stay bottom
    mp = maxplus()
    assert mp.mul(-math.inf, math.inf) == -math.inf
    assert mp.mul(math.inf, -math.inf) == -math.inf
    mn = minplus()
    assert mn.mul(math.inf, -math.inf) == math.inf


def test_negation_is_an_isomorphism():
    a, b = dyadic(512), dyadic(512)
    mp, mn = maxplus(), minplus()
    assert np.array_equal(mn.add(a, b), -mp.add(-a, -b))
    assert np.array_equal(mn.mul(a, b), -mp.mul(-a, -b))


# ---------------------------------------------------------------------------
# smoothed addition: laws up to rounding, sandwich bound exactly
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("h", [1.0, 0.1, 0.01])
def test_subtropical_laws_small_relative_error(h):
    s = subtropical(h)
    a = RNG.uniform(-40.0, 40.0, size=2048)
    b = RNG.uniform(-40.0, 40.0, size=2048)
    c = RNG.uniform(-40.0, 40.0, size=2048)

    lhs = s.add(s.add(a, b), c)
    rhs = s.add(a, s.add(b, c))
    scale = np.maximum(1.0, np.abs(lhs))
    assert np.max(np.abs(lhs - rhs) / scale) < 1e-12

    assert np.array_equal(s.add(a, b), s.add(b, a))  # symmetric formula

    # distributivity over ⊙ = + is exact shifting under the log
    lhs = s.mul(c, s.add(a, b))
    rhs = s.add(s.mul(c, a), s.mul(c, b))
    assert np.max(np.abs(lhs - rhs) / np.maximum(1.0, np.abs(lhs))) < 1e-12


@pytest.mark.parametrize("h", [2.0, 1.0, 0.25, 1e-3])
def test_deformation_sandwich_no_float_violations(h):
    u = RNG.uniform(-100.0, 100.0, size=20000)
    v = RNG.uniform(-100.0, 100.0, size=20000)
    smooth = subtropical_add(u, v, h)
    hi = np.maximum(u, v)
    # max ≤ u ⊕_h v ≤ max + h log 2, with zero tolerance: the implementation
    # adds a nonnegative log1p term, and log1p rounding is monotone
    assert np.all(smooth >= hi)
    assert np.all(smooth <= hi + h * math.log(2.0))


def test_deformation_collapses_to_max():
    u = RNG.uniform(-5.0, 5.0, size=200)
    v = RNG.uniform(-5.0, 5.0, size=200)
    gaps = [np.max(subtropical_add(u, v, h) - np.maximum(u, v)) for h in (1.0, 0.1, 0.01)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] <= 0.01 * math.log(2.0)


def test_scalar_inputs_return_python_floats():
    assert isinstance(maxplus().add(1.0, 2.0), float)
    assert isinstance(subtropical_add(1.0, 2.0, 0.5), float)
