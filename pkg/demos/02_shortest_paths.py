"""Shortest paths as linear algebra over (min, +).

A weighted digraph is a matrix H with H[j, i] = weight of the arc i → j
(∞ where there is no arc).  Matrix powers then accumulate path weights,
the Kleene star H* collects the best path of any length, and the
single-source problem is the least solution of X = H ⊙ X ⊕ F.
"""
import numpy as np

from tropkit import SemiringMatrix, kleene_star, mat_mul, minplus, solve_bellman

mn = minplus()
INF = np.inf

# a small commuter network: 0 = depot, 4 = airport
#            0    1    2    3    4
H = np.array([
    [INF, INF, INF, INF, INF],   # nothing enters the depot
    [2.0, INF, INF, INF, INF],   # 0 → 1 costs 2
    [5.0, 1.0, INF, INF, INF],   # 0 → 2 direct is 5, via 1 is 2 + 1
    [INF, 4.0, 1.0, INF, INF],
    [INF, INF, 6.0, 2.0, INF],
], dtype=float)

Hm = SemiringMatrix(H, mn)
star = kleene_star(Hm)
print("H* (best path weight, any number of hops):")
print(star.entries)

F = np.full((5, 1), INF)
F[0, 0] = 0.0
dist = solve_bellman(SemiringMatrix(H, mn), SemiringMatrix(F, mn))
print()
print("distances from the depot:", dist.entries.ravel())

# the two routes agree entry for entry
assert np.array_equal(dist.entries, mat_mul(star, SemiringMatrix(F, mn)).entries)

# squaring the matrix is dynamic programming over two-hop paths
two_hop = mat_mul(Hm, Hm)
print()
print(f"best two-hop ride 0 → 2: {two_hop.entries[2, 0]}  (2 + 1 beats the direct 5)")
