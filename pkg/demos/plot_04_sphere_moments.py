"""
Averages over the unit sphere
=============================

Over uniform unit vectors of H^n the Rayleigh quotient has mean
Trace(S)/n and variance sigma^2/(2n+1), sigma^2 being the population
variance of the eigenvalues. Monte-Carlo estimates agree within a few
standard errors.
"""

from quatlin.qmatrix import QMatrix
from quatlin.rayleigh import moments, sphere_coordinate_moments

s = QMatrix.diag([1.0, 2.0])
rep = moments(s, samples=1_000_000, seed=42, workers=4)
print(f"mean     {rep.mean_estimate:.6f}  exact {rep.exact_mean:.6f}  z = {rep.mean_z:.2f}")
print(f"variance {rep.second_central_estimate:.6f}  exact {rep.exact_second_central:.6f}  z = {rep.second_central_z:.2f}")

# the ingredients: moments of coordinates of a uniform point of S^(N-1)
coords = sphere_coordinate_moments(8, samples=1_000_000, seed=42)
for key, z in coords.zscores().items():
    print(f"E[{key}] = {coords.estimates[key]:.6f}  exact {coords.exact[key]:.6f}  z = {z:.2f}")
