"""
Left eigenvalues of 2x2 matrices
================================

A left eigenvalue makes M - lambda I singular. For 2x2 matrices they
solve a quaternionic quadratic; there can be one, two or infinitely many.
"""

from quatlin import I, Quaternion
from quatlin.lefteig import hermitian_2x2_classify, left_eigs_2x2, left_membership
from quatlin.qmatrix import QMatrix

# two left eigenvalues, both real
m = QMatrix([[0, Quaternion(1, 1, 0, 0)], [Quaternion(1, -1, 0, 0), 0]])
print("[[0,1+i],[1-i,0]]:", [str(q) for q in left_eigs_2x2(m).finite_values])

# infinitely many: lambda = i * omega for every pure unit omega
s = QMatrix([[0, I], [-I, 0]])
spec = left_eigs_2x2(s)
print("[[0,i],[-i,0]]:", spec.kind)
for lam in spec.members(6):
    ok, space = left_membership(s, lam)
    print(f"  lambda = {lam}: left eigenvalue {ok}, dim V = {space.dim}")

# for Hermitian 2x2 matrices the family appears exactly when Re(b) = 0 and s = s'
print("classification:", hermitian_2x2_classify(s).to_dict()["family"]["coeff"])
print("classification:", hermitian_2x2_classify(m).family)
