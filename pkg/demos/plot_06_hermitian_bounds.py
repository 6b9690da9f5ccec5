"""
Bounding left eigenvalues of Hermitian matrices
===============================================

If lambda is a left eigenvalue of Hermitian S with k-dimensional
eigenspace, then t_k <= Re(lambda) <= t_(n-k+1).
"""

from quatlin import J
from quatlin.lefteig import hermitian_bound_check, left_eigs_2x2, multiplicity_corollary_check
from quatlin.qmatrix import QMatrix, direct_sum

block = QMatrix([[0, "i"], ["-i", 0]])
s = direct_sum(block, block)
rep = hermitian_bound_check(s, J)
print(f"lambda = j: dim V = {rep.eig_dim}, {rep.lower:+.1f} <= {rep.real_part:+.1f} <= {rep.upper:+.1f}")

for lam in left_eigs_2x2(block).members(5):
    r = hermitian_bound_check(s, lam)
    print(f"lambda = {lam}: bound holds {r.all_hold}")

# a large eigenspace pins the spectrum: k > n/2 forces repeated eigenvalues
print(multiplicity_corollary_check(QMatrix.diag([1.0, 2.0, 2.0, 2.0]), 2.0).to_dict())
