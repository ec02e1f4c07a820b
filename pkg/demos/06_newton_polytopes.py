"""Dequantizing a polynomial down to its Newton polytope.

f̂_h(x) = h·log |f(e^{x/h})| is a smooth function of the exponent vector x.
As h → 0 only the dominant monomial survives and f̂ hardens into the
piecewise-linear support function max_a ⟨a, x⟩ of the Newton polytope —
the coefficients are forgotten, the combinatorics stays.
"""
import numpy as np

from tropkit import (
    SparsePolynomial,
    dequantize_at,
    dequantize_limit,
    minkowski_mul,
    newton_polytope,
    poly_mul,
    subdifferential_at_origin,
)

f = SparsePolynomial(2, [((0, 0), 5.0), ((2, 0), 1.0), ((0, 3), -2.0), ((1, 1), 4.0)])
P = newton_polytope(f)
print("f = 5 + x² - 2y³ + 4xy")
print(f"Newton polytope vertices: {[tuple(map(int, v)) for v in P.vertices]}")

# the rescaled log |f| converges to the support function of P
direction = [1.0, 0.5]
support = max(a[0] * direction[0] + a[1] * direction[1] for a, _ in f.terms)
print()
print(f"direction {direction}: support function value {support}")
for h in (1.0, 0.25, 0.0625, 0.015625):
    print(f"  h = {h:<9} f̂_h = {dequantize_at(f, h, direction):.6f}")
print(f"  limit        {dequantize_limit(f, direction)}")

# the limit is convex, and its subdifferential at 0 rebuilds the polytope
assert subdifferential_at_origin(f) == P
print()
print("subdifferential at the origin reconstructs the polytope: True")

# multiplication of polynomials = Minkowski sum of polytopes
g = SparsePolynomial(2, [((0, 0), 1.0), ((1, 0), 1.0)])
assert newton_polytope(poly_mul(f, g)) == minkowski_mul(P, newton_polytope(g))
print("Newton(f·g) equals Newton(f) + Newton(g) (Minkowski): True")
