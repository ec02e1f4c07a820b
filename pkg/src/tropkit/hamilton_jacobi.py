"""Hamilton-Jacobi evolution as linear algebra over tropical semirings.

For a mechanical Hamiltonian ``H = Σ p_i²/(2 m_i) + V(x)`` the value/action
function evolves by the Lax-Oleinik semigroup.  One time step is an
idempotent integral operator with the quadratic kernel
``K(x, y) = Σ_i m_i (x_i − y_i)² / (2 Δt)`` — added over min-plus (cost
minimization), subtracted over max-plus (action maximization) — followed by
an operator-splitting potential update ``S ← S + V·Δt``.  The step is a
*linear* operator over its semiring, which is the superposition principle:
``step(λ₁ ⊙ S₁ ⊕ λ₂ ⊙ S₂) = λ₁ ⊙ step(S₁) ⊕ λ₂ ⊙ step(S₂)``.

The smoothed counterpart is the linear parabolic equation
``h·∂u/∂t = Σ_i (h²/(2 m_i))·∂²u/∂x_i² + V·u`` marched explicitly with
reflecting (mirror) boundaries; ``S = h·log u`` carries its solutions back to
the idempotent picture, with an O(h) gap that closes as h → 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .analysis import GridDomain, GridFunction, kernel_apply
from .errors import DomainTooSmallError
from .semiring import Semiring, maxplus

__all__ = [
    "MechanicalSystem",
    "ActionState",
    "SuperpositionReport",
    "builtin_potential",
    "quadratic_kernel",
    "lax_oleinik_step",
    "lax_oleinik_evolve",
    "viscous_solve",
    "dequantize_solution",
    "superposition_check",
]


@dataclass(frozen=True)
class MechanicalSystem:
    """Masses, potential, step size and horizon of one evolution problem.

    ``convention`` selects the semiring of the action: ``"minplus"`` evolves
    a cost-to-go (kernel added), ``"maxplus"`` an action being maximized
    (kernel subtracted).  The horizon must be an integer number of steps.
    """

    masses: tuple[float, ...]
    dt: float
    horizon: float
    potential: Callable | None = None
    convention: str = "minplus"

    def __post_init__(self):
        object.__setattr__(
            self, "masses", tuple(float(m) for m in np.atleast_1d(self.masses))
        )
        if not self.masses or any(not m > 0 for m in self.masses):
            raise ValueError("masses must be positive")
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if self.horizon < 0:
            raise ValueError("horizon must be nonnegative")
        steps = self.horizon / self.dt
        if abs(steps - round(steps)) > 1e-9 * max(1.0, steps):
            raise ValueError("horizon must be an integer multiple of dt")
        if self.convention not in ("minplus", "maxplus"):
            raise ValueError(f"unknown convention {self.convention!r}")

    @property
    def dim(self) -> int:
        return len(self.masses)

    @property
    def steps(self) -> int:
        return int(round(self.horizon / self.dt))


@dataclass(frozen=True)
class ActionState:
    """A sampled action function together with its time stamp."""

    S: GridFunction
    t: float


def builtin_potential(text: str) -> Callable | None:
    """Resolve a named potential: ``zero``, ``quadratic K``, ``double-well``.

    ``quadratic K`` is ``V(x) = (K/2)·Σ x_i²``; ``double-well`` is
    ``V(x) = Σ (x_i² − 1)²``.  Returns None for ``zero`` (no potential term).
    """
    parts = text.split()
    if not parts:
        raise ValueError("empty potential name")
    name = parts[0].lower()
    if name == "zero":
        if len(parts) != 1:
            raise ValueError("'zero' takes no parameter")
        return None
    if name == "quadratic":
        if len(parts) != 2:
            raise ValueError("'quadratic' needs a stiffness parameter")
        k = float(parts[1])
        return lambda *xs: 0.5 * k * sum(np.asarray(x) ** 2 for x in xs)
    if name == "double-well":
        if len(parts) != 1:
            raise ValueError("'double-well' takes no parameter")
        return lambda *xs: sum((np.asarray(x) ** 2 - 1.0) ** 2 for x in xs)
    raise ValueError(f"unknown potential {text!r}")


def _check_convention(phi: GridFunction, sys: MechanicalSystem) -> None:
    if phi.spec.variant != sys.convention:
        raise ValueError(
            f"function lives in {phi.spec.variant} but the system declares "
            f"{sys.convention}"
        )
    if phi.dim != sys.dim:
        raise ValueError(f"grid dimension {phi.dim} != system dimension {sys.dim}")


def quadratic_kernel(domain: GridDomain, sys: MechanicalSystem) -> GridFunction:
    """The one-step transition kernel on the product grid X × X.

    ``K(x, y) = ± Σ_i m_i (x_i − y_i)²/(2 Δt)`` with + for min-plus and − for
    max-plus, matching the system's convention.
    """
    d = domain.dim
    if d != sys.dim:
        raise ValueError("kernel domain does not match the system dimension")
    p = domain.points_per_axis
    total = np.zeros((p,) * (2 * d))
    for i, ax in enumerate(domain.axes()):
        shape_x = [1] * (2 * d)
        shape_x[i] = p
        shape_y = [1] * (2 * d)
        shape_y[d + i] = p
        diff = ax.reshape(shape_x) - ax.reshape(shape_y)
        total = total + sys.masses[i] * diff * diff / (2.0 * sys.dt)
    spec = Semiring(sys.convention)
    if sys.convention == "maxplus":
        total = -total
    return GridFunction(GridDomain.product(domain, domain), total, spec)


def _support_radius(phi: GridFunction, sys: MechanicalSystem) -> float:
    """How far an optimizer can usefully move in one step.

    A displacement r costs ``min(m)·r²/(2Δt)``; once that exceeds the
    oscillation of S, staying in place is always at least as good, so the
    step cannot depend on points farther away.
    """
    finite = phi.values[np.isfinite(phi.values)]
    osc = float(finite.max() - finite.min()) if finite.size else 0.0
    return math.sqrt(2.0 * sys.dt * osc / min(sys.masses))


def lax_oleinik_step(state: ActionState, sys: MechanicalSystem) -> ActionState:
    """One semigroup step: quadratic-kernel propagation, then ``+ V·Δt``.

    Raises
    ------
    DomainTooSmallError
        If the kernel's effective support exceeds the grid extent, i.e. the
        result would be dominated by boundary truncation everywhere.
    """
    phi = state.S
    _check_convention(phi, sys)
    dom = phi.domain
    extent = min(hi - lo for lo, hi in zip(dom.lower, dom.upper))
    radius = _support_radius(phi, sys)
    if radius > extent:
        raise DomainTooSmallError(
            f"one-step support radius {radius:.3g} exceeds the grid extent "
            f"{extent:.3g}; enlarge the box or shrink dt"
        )
    kern = quadratic_kernel(dom, sys)
    stepped = kernel_apply(kern, phi)
    if sys.potential is not None:
        v = np.asarray(sys.potential(*dom.grids()), dtype=float)
        stepped = stepped.with_values(stepped.values + v * sys.dt)
    return ActionState(stepped, state.t + sys.dt)


def lax_oleinik_evolve(initial: GridFunction, sys: MechanicalSystem) -> ActionState:
    """Apply :func:`lax_oleinik_step` ``horizon/dt`` times starting at t = 0."""
    state = ActionState(initial, 0.0)
    for _ in range(sys.steps):
        state = lax_oleinik_step(state, sys)
    return state


def _mirror_second_difference(u: np.ndarray, axis: int) -> np.ndarray:
    """Second difference along one axis with mirror-about-node boundaries."""
    pad = [(0, 0)] * u.ndim
    pad[axis] = (1, 1)
    padded = np.pad(u, pad, mode="reflect")
    lead = tuple(
        slice(2, None) if i == axis else slice(None) for i in range(u.ndim)
    )
    trail = tuple(
        slice(0, -2) if i == axis else slice(None) for i in range(u.ndim)
    )
    return padded[lead] - 2.0 * u + padded[trail]


_SUBSTEP_CAP = 2_000_000


def viscous_solve(u0: GridFunction, sys: MechanicalSystem, h: float) -> GridFunction:
    """March ``h·∂u/∂t = Σ (h²/2m_i)·∂²u/∂x² + V·u`` to the horizon.

    Explicit finite differences with reflecting boundaries.  The sub-step
    satisfies ``Σ_i (h/(2 m_i))·Δt/σ_i² ≤ 1/2`` (plus a comparable bound on
    the zeroth-order term), so the scheme is stable; if that would take more
    than two million sub-steps the resolution is declared infeasible.

    ``u0`` must be strictly positive so that ``h·log u`` stays meaningful.
    """
    if not h > 0:
        raise ValueError("h must be positive")
    if u0.dim != sys.dim:
        raise ValueError(f"grid dimension {u0.dim} != system dimension {sys.dim}")
    vals = u0.values
    if not np.all(vals > 0):
        raise ValueError("initial condition must be strictly positive")
    if sys.horizon == 0:
        return u0

    dom = u0.domain
    diffusivity = [h / (2.0 * m) for m in sys.masses]
    sigma = dom.spacing
    # Σ α_i ≤ 1/2 with α_i = D_i Δt / σ_i²
    diff_rate = sum(d / s**2 for d, s in zip(diffusivity, sigma))
    limits = [0.5 / diff_rate]
    vgrid = None
    if sys.potential is not None:
        vgrid = np.asarray(sys.potential(*dom.grids()), dtype=float)
        vmax = float(np.abs(vgrid).max())
        if vmax > 0:
            limits.append(0.5 * h / vmax)
    dt_sub = min(limits)
    nsub = max(1, math.ceil(sys.horizon / dt_sub))
    if nsub > _SUBSTEP_CAP:
        raise ValueError(
            f"stability requires {nsub} sub-steps (> {_SUBSTEP_CAP}); "
            "coarsen the grid or reduce the horizon"
        )
    dt = sys.horizon / nsub

    u = vals.copy()
    alphas = [d * dt / s**2 for d, s in zip(diffusivity, sigma)]
    for _ in range(nsub):
        upd = u.copy()
        for axis, alpha in enumerate(alphas):
            upd += alpha * _mirror_second_difference(u, axis)
        if vgrid is not None:
            upd += (dt / h) * vgrid * u
        u = upd
    return GridFunction(dom, u, u0.spec)


def dequantize_solution(u: GridFunction, h: float) -> GridFunction:
    """Map a positive solution of the smoothed equation to ``S = h·log u``.

    The result is a max-plus grid function (an action).
    """
    if not h > 0:
        raise ValueError("h must be positive")
    if not np.all(u.values > 0):
        raise ValueError("dequantization needs strictly positive values")
    return GridFunction(u.domain, h * np.log(u.values), maxplus())


@dataclass(frozen=True)
class SuperpositionReport:
    """Outcome of a linearity check of the one-step evolution operator."""

    defect: float
    step_of_combination: GridFunction
    combination_of_steps: GridFunction


def _sup_gap(a: np.ndarray, b: np.ndarray, bottom: float) -> float:
    """Sup-norm of a − b, counting matching bottoms as equal."""
    both_bottom = (a == bottom) & (b == bottom)
    with np.errstate(invalid="ignore"):
        diff = np.abs(a - b)
    diff = np.where(both_bottom, 0.0, diff)
    if np.isnan(diff).any():  # one side bottom, the other not
        return math.inf
    return float(diff.max())


def superposition_check(
    s1: GridFunction,
    s2: GridFunction,
    lam1: float,
    lam2: float,
    sys: MechanicalSystem,
) -> SuperpositionReport:
    """Measure the linearity defect of one step on ``λ₁ ⊙ S₁ ⊕ λ₂ ⊙ S₂``.

    Exact semigroup steps commute with ⊕ and with ⊙ by constants; on a grid
    the defect is zero in exact arithmetic and bounded by rounding noise in
    floats.  Returns the defect together with both sides of the identity.
    """
    if s1.spec != s2.spec or s1.domain != s2.domain:
        raise ValueError("superposition operands must share grid and semiring")
    _check_convention(s1, sys)
    spec = s1.spec
    combined = s1.with_values(spec.add(spec.mul(lam1, s1.values), spec.mul(lam2, s2.values)))
    lhs = lax_oleinik_step(ActionState(combined, 0.0), sys).S
    r1 = lax_oleinik_step(ActionState(s1, 0.0), sys).S
    r2 = lax_oleinik_step(ActionState(s2, 0.0), sys).S
    rhs_vals = spec.add(spec.mul(lam1, r1.values), spec.mul(lam2, r2.values))
    rhs = r1.with_values(rhs_vals)
    return SuperpositionReport(_sup_gap(lhs.values, rhs.values, spec.zero), lhs, rhs)
