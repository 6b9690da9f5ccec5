"""
Right eigenvalues through the complex adjoint
=============================================

A quaternion matrix M = U + jV is represented by the complex matrix
[[U, -conj V], [V, conj U]]. Its eigenvalues come in conjugate pairs,
each pair naming one similarity class of right eigenvalues of M.
"""

import numpy as np

from quatlin import I, J, Quaternion
from quatlin.ceig import general_complex_eigenvalues, right_eigen_classes
from quatlin.qmatrix import QMatrix, complex_adjoint, null_space

m = QMatrix([[0, J], [I, 0]])
c = complex_adjoint(m)
print("c(M) =\n", np.round(c, 3))

# the four eigenvalues are (+-1 +- i)/sqrt(2)
print("eigenvalues of c(M):", np.round(sorted(general_complex_eigenvalues(c), key=lambda z: (z.real, z.imag)), 6))

# two classes: real part -+1/sqrt(2), norm 1
for cls in right_eigen_classes(m):
    print(f"class: Re = {cls.real_part:+.6f}, |q| = {cls.norm:.6f}")

# a right eigenvalue need not be a left eigenvalue: M - qI stays invertible
q = Quaternion(1, 1, 0, 0) / 2**0.5
print("dim ker(M - qI) for q = (1+i)/sqrt2:", null_space(m.shift(q)).dim)
