import math

import numpy as np
import pytest

from tropkit import (
    ActionState,
    DomainTooSmallError,
    GridDomain,
    GridFunction,
    MechanicalSystem,
    builtin_potential,
    dequantize_solution,
    lax_oleinik_evolve,
    lax_oleinik_step,
    maxplus,
    minplus,
    quadratic_kernel,
    superposition_check,
    viscous_solve,
)

RNG = np.random.default_rng(1759)
MP = maxplus()
MN = minplus()


def heat_quadrature(u0_vals, y, x, diffusivity, t):
    """Free-space heat propagator by trapezoidal quadrature (reference)."""
    var = 2.0 * diffusivity * t
    kern = np.exp(-((x[:, None] - y[None, :]) ** 2) / (2.0 * var)) / math.sqrt(
        2.0 * math.pi * var
    )
    return np.trapezoid(kern * u0_vals[None, :], y, axis=1)


# ---------------------------------------------------------------------------
# system construction
# ---------------------------------------------------------------------------

def test_system_validation():
    MechanicalSystem((1.0, 2.0), 0.5, 1.0)  # fine
    with pytest.raises(ValueError):
        MechanicalSystem((0.0,), 0.5, 1.0)
    with pytest.raises(ValueError):
        MechanicalSystem((1.0,), -0.5, 1.0)
    with pytest.raises(ValueError):
        MechanicalSystem((1.0,), 0.5, 0.75)  # horizon not a multiple of dt
    with pytest.raises(ValueError):
        MechanicalSystem((1.0,), 0.5, 1.0, convention="subtropical")
    sys = MechanicalSystem((1.0, 1.0, 1.0), 0.25, 1.0)
    assert sys.dim == 3 and sys.steps == 4


def test_builtin_potentials():
    assert builtin_potential("zero") is None
    quad = builtin_potential("quadratic 2.0")
    assert quad(np.array([3.0])) == 9.0  # (K/2)x² with K = 2
    well = builtin_potential("double-well")
    assert well(np.array([0.0])) == 1.0
    assert well(np.array([1.0])) == 0.0
    with pytest.raises(ValueError):
        builtin_potential("coulomb")
    with pytest.raises(ValueError):
        builtin_potential("quadratic")


def test_quadratic_kernel_values():
    dom = GridDomain(0.0, 1.0, 3)
    sys = MechanicalSystem((2.0,), 0.25, 0.25)
    kern = quadratic_kernel(dom, sys)
    # K(x, y) = m (x-y)² / (2 dt) = 4 (x-y)²
    assert kern.values[0, 2] == 4.0  # x=0, y=1
    assert kern.values[1, 1] == 0.0
    assert kern.spec == MN
    neg = quadratic_kernel(dom, MechanicalSystem((2.0,), 0.25, 0.25, convention="maxplus"))
    assert np.array_equal(neg.values, -kern.values)


# ---------------------------------------------------------------------------
# semigroup steps
# ---------------------------------------------------------------------------

def test_flat_action_is_a_fixed_point():
    dom = GridDomain(-2.0, 2.0, 101)
    zero = GridFunction.constant(0.0, dom, MN)
    sys = MechanicalSystem((1.0,), 0.5, 2.0)
    out = lax_oleinik_evolve(zero, sys)
    assert out.t == 2.0
    assert np.all(out.S.values == 0.0)  # staying put costs nothing


def test_constant_potential_accumulates_linearly():
    dom = GridDomain(-2.0, 2.0, 101)
    zero = GridFunction.constant(0.0, dom, MN)
    sys = MechanicalSystem(
        (1.0,), 0.25, 1.5, potential=lambda x: np.full_like(x, 0.3)
    )
    out = lax_oleinik_evolve(zero, sys)
    assert np.allclose(out.S.values, 0.3 * 1.5, atol=1e-12)


def test_parabola_spreads_to_quarter():
    """S₀ = x² under free flow: S(t) = x²/(1+2t), so x²/4 at t = 1.5."""
    dom = GridDomain(-2.0, 2.0, 401)
    s0 = GridFunction.sample(lambda x: x**2, dom, MN)
    sys = MechanicalSystem((1.0,), 0.5, 1.5)
    out = lax_oleinik_evolve(s0, sys)
    x = dom.axes()[0]
    assert np.max(np.abs(out.S.values - x**2 / 4.0)) <= 1e-3


def test_maxplus_convention_mirrors_minplus():
    dom = GridDomain(-2.0, 2.0, 401)
    s0 = GridFunction.sample(lambda x: -(x**2), dom, MP)
    sys = MechanicalSystem((1.0,), 1.0, 1.0, convention="maxplus")
    out = lax_oleinik_evolve(s0, sys)
    x = dom.axes()[0]
    # sup_y [-(x-y)²/2 - y²] = -x²/3
    assert np.max(np.abs(out.S.values - (-(x**2) / 3.0))) <= 1e-3


def test_discrete_semigroup_property():
    # two steps of dt against one step of 2·dt approximate the same flow
    dom = GridDomain(-2.0, 2.0, 401)
    s0 = GridFunction.sample(np.abs, dom, MN)
    twice = lax_oleinik_evolve(s0, MechanicalSystem((1.0,), 0.5, 1.0))
    once = lax_oleinik_evolve(s0, MechanicalSystem((1.0,), 1.0, 1.0))
    assert np.max(np.abs(twice.S.values - once.S.values)) <= 1e-3
    # against the closed form: the Moreau envelope of |x| at t = 1
    x = dom.axes()[0]
    exact = np.where(np.abs(x) <= 1.0, x**2 / 2.0, np.abs(x) - 0.5)
    assert np.max(np.abs(once.S.values - exact)) <= 1e-3


def test_masses_scale_the_kernel():
    # heavier particles move less: with m → ∞ the step approaches the identity
    dom = GridDomain(-1.0, 1.0, 201)
    s0 = GridFunction.sample(lambda x: x**2, dom, MN)
    heavy = lax_oleinik_evolve(s0, MechanicalSystem((1e6,), 0.5, 0.5))
    assert np.max(np.abs(heavy.S.values - s0.values)) <= 1e-3


def test_two_dimensional_step():
    dom = GridDomain((-1.5, -1.5), (1.5, 1.5), 61)
    s0 = GridFunction.sample(lambda x, y: x**2 + 2.0 * y**2, dom, MN)
    sys = MechanicalSystem((1.0, 1.0), 0.25, 0.25)
    out = lax_oleinik_evolve(s0, sys)
    xg, yg = dom.grids()
    # the axes decouple: x²/(1+2t) + 2y²/(1+4t)
    exact = xg**2 / 1.5 + 2.0 * yg**2 / 2.0
    assert np.max(np.abs(out.S.values - exact)) <= 5e-3


def test_domain_too_small():
    dom = GridDomain(-1.0, 1.0, 51)
    steep = GridFunction.sample(lambda y: 50.0 * y**2, dom, MN)
    sys = MechanicalSystem((1.0,), 0.5, 0.5)
    # support radius √(2·0.5·50) ≈ 7.1 > box width 2
    with pytest.raises(DomainTooSmallError):
        lax_oleinik_step(ActionState(steep, 0.0), sys)


def test_convention_mismatch_raises():
    dom = GridDomain(-1.0, 1.0, 11)
    s_max = GridFunction.constant(0.0, dom, MP)
    sys = MechanicalSystem((1.0,), 0.5, 0.5)  # min-plus by default
    with pytest.raises(ValueError):
        lax_oleinik_step(ActionState(s_max, 0.0), sys)
    with pytest.raises(ValueError):
        lax_oleinik_evolve(
            GridFunction.constant(0.0, GridDomain((-1.0, -1.0), (1.0, 1.0), 5), MN), sys
        )


# ---------------------------------------------------------------------------
# superposition
# ---------------------------------------------------------------------------

def test_superposition_defect_vanishes_on_dyadic_data():
    # σ = 2⁻⁶ and dt = 1/2 keep the kernel and all sums on the dyadic
    # lattice, so min-plus linearity of the step holds bit for bit
    dom = GridDomain(-2.0, 2.0, 257)
    q = 2.0**-6
    s1 = GridFunction(dom, RNG.integers(-256, 256, size=257).astype(float) * q, MN)
    s2 = GridFunction(dom, RNG.integers(-256, 256, size=257).astype(float) * q, MN)
    sys = MechanicalSystem((1.0,), 0.5, 0.5)
    report = superposition_check(s1, s2, 1.25, -0.75, sys)
    assert report.defect == 0.0
    assert np.array_equal(
        report.step_of_combination.values, report.combination_of_steps.values
    )


def test_superposition_defect_tiny_off_lattice():
    dom = GridDomain(-2.0, 2.0, 257)
    s1 = GridFunction.sample(lambda x: x**2, dom, MN)
    s2 = GridFunction.sample(lambda x: np.abs(x - 0.3), dom, MN)
    sys = MechanicalSystem((1.0,), 0.5, 0.5)
    report = superposition_check(s1, s2, 0.7, 1.3, sys)
    assert report.defect <= 1e-12


def test_superposition_grid_mismatch():
    a = GridFunction.constant(0.0, GridDomain(-1.0, 1.0, 11), MN)
    b = GridFunction.constant(0.0, GridDomain(-1.0, 1.0, 21), MN)
    with pytest.raises(ValueError):
        superposition_check(a, b, 1.0, 1.0, MechanicalSystem((1.0,), 0.5, 0.5))


# ---------------------------------------------------------------------------
# smoothed (viscous) evolution
# ---------------------------------------------------------------------------

def test_viscous_constant_equilibrium():
    dom = GridDomain(-1.0, 1.0, 33)
    ones = GridFunction.constant(1.0, dom, MP)
    u = viscous_solve(ones, MechanicalSystem((1.0,), 0.5, 1.0), h=0.1)
    assert np.allclose(u.values, 1.0, atol=1e-13)
    s = dequantize_solution(u, 0.1)
    assert np.allclose(s.values, 0.0, atol=1e-12)


def test_viscous_conserves_trapezoid_mass():
    # mirror-about-node boundaries make the discrete diffusion divergence-free
    dom = GridDomain(-1.0, 1.0, 101)
    u0 = GridFunction.sample(lambda x: 1.0 + 0.5 * np.cos(3.0 * x), dom, MP)
    sys = MechanicalSystem((1.0,), 0.5, 0.5)
    u = viscous_solve(u0, sys, h=0.2)
    x = dom.axes()[0]
    m0 = np.trapezoid(u0.values, x)
    m1 = np.trapezoid(u.values, x)
    assert m1 == pytest.approx(m0, rel=1e-12)


def test_viscous_matches_heat_quadrature():
    dom = GridDomain(-2.0, 2.0, 161)
    h = 0.1
    u0 = GridFunction.sample(lambda x: np.exp(-(x**2) / h), dom, MP)
    sys = MechanicalSystem((1.0,), 1.0, 1.0)
    u = viscous_solve(u0, sys, h)
    y = dom.axes()[0]
    ref = heat_quadrature(u0.values, y, y, diffusivity=h / 2.0, t=1.0)
    # boundary mass is ~1e-12 here, so free-space quadrature is a fair oracle
    assert np.max(np.abs(u.values - ref)) <= 1e-3


@pytest.mark.parametrize("h", [0.2, 0.1, 0.05])
def test_viscous_dequantizes_toward_hopf_lax(h):
    """h·log u(t) → -x²/(1+2t) with the documented O(h) defect."""
    dom = GridDomain(-2.0, 2.0, 161)
    u0 = GridFunction.sample(lambda x: np.exp(-(x**2) / h), dom, MP)
    sys = MechanicalSystem((1.0,), 1.0, 1.0)
    s = dequantize_solution(viscous_solve(u0, sys, h), h)
    x = dom.axes()[0]
    mid = np.abs(x) <= 1.0
    err = np.max(np.abs(s.values[mid] - (-(x[mid] ** 2) / 3.0)))
    # closed form says the defect is (h/2)·log 3 + O(h²) ≈ 0.55·h
    assert 0.3 * h <= err <= 0.8 * h


def test_viscous_convergence_is_monotone():
    dom = GridDomain(-2.0, 2.0, 161)
    sys = MechanicalSystem((1.0,), 1.0, 1.0)
    x = dom.axes()[0]
    mid = np.abs(x) <= 1.0
    errs = []
    for h in (0.2, 0.1, 0.05):
        u0 = GridFunction.sample(lambda z: np.exp(-(z**2) / h), dom, MP)
        s = dequantize_solution(viscous_solve(u0, sys, h), h)
        errs.append(np.max(np.abs(s.values[mid] - (-(x[mid] ** 2) / 3.0))))
    assert errs[0] > errs[1] > errs[2]


def test_viscous_input_checks():
    dom = GridDomain(-1.0, 1.0, 11)
    sys = MechanicalSystem((1.0,), 0.5, 0.5)
    flat = GridFunction.constant(0.0, dom, MP)
    with pytest.raises(ValueError):
        viscous_solve(flat, sys, h=0.1)  # not strictly positive
    ones = GridFunction.constant(1.0, dom, MP)
    with pytest.raises(ValueError):
        viscous_solve(ones, sys, h=0.0)
    with pytest.raises(ValueError):
        dequantize_solution(flat, 0.1)  # log of 0


def test_viscous_substep_cap():
    # an absurd resolution/horizon pairing must refuse, not spin
    dom = GridDomain(-1.0, 1.0, 4001)
    ones = GridFunction.constant(1.0, dom, MP)
    sys = MechanicalSystem((1.0,), 1000.0, 1000.0)
    with pytest.raises(ValueError, match="sub-steps"):
        viscous_solve(ones, sys, h=1.0)


def test_viscous_zero_horizon_is_identity():
    dom = GridDomain(-1.0, 1.0, 11)
    u0 = GridFunction.sample(lambda x: np.exp(x), dom, MP)
    sys = MechanicalSystem((1.0,), 0.5, 0.0)
    assert viscous_solve(u0, sys, h=0.1) is u0
