"""Box-counting dimension from covering numbers.

N(ρ) cells of side 2ρ are needed to cover a set; the dimension is the
slope of log N against s = -log ρ.  The estimator reports the per-scale
increments too, which is the honest way to see where the scaling regime
lives.
"""
import math

import numpy as np

from tropkit import PointCloud, cantor_endpoints, hb_dimension, segment_points

# middle-thirds Cantor set, depth 10: dimension log 2 / log 3
est = hb_dimension(cantor_endpoints(10), list(range(2, 11)))
print("Cantor set (depth 10)")
print("   s   log N(e^-s)   local slope")
for s, logn, inc in zip(est.s_values, est.log_counts, np.append(est.per_scale, np.nan)):
    tail = "" if math.isnan(inc) else f"      {inc:.4f}"
    print(f"  {s:4.0f}   {logn:8.4f}{tail}")
print(f"fitted slope {est.slope:.4f}  vs  log 2 / log 3 = {math.log(2)/math.log(3):.4f}")

print()
est = hb_dimension(segment_points(8193), [2, 3, 4, 5, 6, 7])
print(f"unit segment: slope {est.slope:.4f} (expect 1)")

# a finite set saturates: N(ρ) stops growing, the slope collapses to 0
rng = np.random.default_rng(7)
est = hb_dimension(PointCloud(rng.random((40, 2))), [9, 10, 11, 12])
print(f"40 scattered points, fine scales: slope {est.slope:.2e} (expect 0)")
