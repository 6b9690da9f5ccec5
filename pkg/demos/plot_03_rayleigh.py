"""
The Rayleigh quotient of a Hermitian matrix
===========================================

For Hermitian S the function v -> v*Sv / |v|^2 is real. Its critical
points on the unit sphere are eigenvectors, and the index at the j-th
eigenvalue counts the eigenvalues below it.
"""

import numpy as np

from quatlin.ceig import hermitian_right_eigen
from quatlin.generators import random_hermitian
from quatlin.qmatrix import QVector
from quatlin.rayleigh import critical_report, gradient, minmax_verify, rayleigh_quotient

rng = np.random.default_rng(0)
s = random_hermitian(3, rng)
eig = hermitian_right_eigen(s)
print("eigenvalues t:", np.round(eig.values, 6))

# away from eigenvectors the gradient is nonzero
v = QVector(rng.standard_normal((3, 4)))
print(f"R(S, v) = {rayleigh_quotient(s, v):.6f}, |grad| = {gradient(s, v).norm():.3e}")

# at eigenvectors it vanishes; each real eigenvalue spans 4 real directions,
# so the Hessian of the sphere restriction has 4 x (count below) negative values
for j, u in enumerate(eig.basis.basis, start=1):
    rep = critical_report(s, u)
    print(f"t_{j}: critical={rep.critical}, index={rep.index} (quaternionic {rep.index_quaternionic})")

# min-max: t_k is the smallest maximum of R over k-dimensional subspaces
for k in (1, 2, 3):
    r = minmax_verify(s, k, trials=100, seed=1)
    print(f"k={k}: t_k={r.t_k:+.6f}, best random max={r.min_upper:+.6f}, violations={r.violations}")
