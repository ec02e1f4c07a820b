"""
The vanishing-viscosity bridge
==============================

The smoothed evolution

    h·∂u/∂t = (h²/2m)·∂²u/∂x² + V·u

is an ordinary linear parabolic equation.  Writing u = e^{S/h} and letting
h → 0 turns it into the Hamilton–Jacobi flow of the action S: the heat
semigroup *is* the Lax–Oleinik semigroup, seen through deformed glasses.

Here we launch u₀ = e^{-x²/h}, whose action is -x², evolve for one unit of
time, and compare h·log u against the max-plus limit -x²/(1 + 2t) = -x²/3.
The gap closes linearly in h — the prefactor (≈ 0.55) comes from the
h·log √(1 + 2t) spreading term of the Gaussian itself.
"""
import numpy as np

from tropkit import (
    GridDomain,
    GridFunction,
    MechanicalSystem,
    dequantize_solution,
    maxplus,
    viscous_solve,
)

mp = maxplus()
dom = GridDomain(-2.0, 2.0, 321)
sys = MechanicalSystem((1.0,), 1.0, 1.0)
x = dom.axes()[0]
mid = np.abs(x) <= 1.0
limit = -(x[mid] ** 2) / 3.0

print("  h      sup |h·log u - S|   ratio to h")
prev = None
for h in (0.4, 0.2, 0.1, 0.05, 0.025):
    u0 = GridFunction.sample(lambda t: np.exp(-(t**2) / h), dom, mp)
    u = viscous_solve(u0, sys, h)
    s = dequantize_solution(u, h)
    err = np.max(np.abs(s.values[mid] - limit))
    note = "" if prev is None else f"   (halved h, error × {err / prev:.2f})"
    print(f"{h:6.3f}   {err:.6f}          {err / h:.3f}{note}")
    prev = err
