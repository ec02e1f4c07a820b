"""
Legendre duality on a grid
==========================

Over (max, +) the analogue of the Fourier transform is the Legendre
transform, and the analogue of the convolution theorem reads

    (φ ⊛ ψ)ˇ = φˇ + ψˇ,

with ⊛ the sup-convolution.  Three classics, computed numerically:

  * x²/2 is its own Fenchel conjugate,
  * sup-convolution of two concave parabolas is again a parabola,
  * double conjugation of a non-convex function is its convex envelope.
"""
import numpy as np

from tropkit import GridDomain, GridFunction, legendre_transform, maxplus, sup_convolution

mp = maxplus()
dom = GridDomain(-2.0, 2.0, 801)
xi_dom = GridDomain(-8.0, 8.0, 1601)
x = dom.axes()[0]
xi = xi_dom.axes()[0]

# self-duality: sup_x [ξx - x²/2] = ξ²/2
quad = GridFunction.sample(lambda t: t**2 / 2.0, dom, mp)
star = legendre_transform(quad, xi_dom, mode="fenchel")
band = np.abs(xi) <= 2.0  # inside the slope range the grid can certify
err = np.max(np.abs(star.values[band] - xi[band] ** 2 / 2.0))
print(f"Fenchel conjugate of x²/2 is ξ²/2 up to {err:.2e} on |ξ| ≤ 2")

# sup-convolution of two concave parabolas: sup_y [-y²/2 - (x-y)²/2] = -x²/4
cap = GridFunction.sample(lambda t: -(t**2) / 2.0, dom, mp)
conv = sup_convolution(cap, cap)
cx = conv.domain.axes()[0]
err = np.max(np.abs(conv.values - (-(cx**2) / 4.0)))
print(f"(-x²/2) ⊛ (-x²/2) = -x²/4 up to {err:.2e}   "
      f"(the support grows to [{cx[0]}, {cx[-1]}])")

# biconjugation = convex envelope: flatten a double well from below
well = GridFunction.sample(lambda t: (t**2 - 1.0) ** 2 / 4.0, dom, mp)
envelope = legendre_transform(
    legendre_transform(well, xi_dom, mode="fenchel"), dom, mode="fenchel"
)
inside = np.abs(x) <= 1.0
print()
print("double-well biconjugate:")
print(f"  flat on [-1, 1]: max |envelope| there = "
      f"{np.max(np.abs(envelope.values[inside])):.2e}")
print(f"  never above the well:  {np.all(envelope.values <= well.values + 1e-9)}")
print(f"  strictly below at x = 0: envelope {envelope.values[400]:.3f} "
      f"vs well {well.values[400]:.3f}")
