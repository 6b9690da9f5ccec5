"""
Symplectic matrices
===================

Unitary quaternion matrices have unit-norm right eigenvalues whose real
parts are the eigenvalues of the Hermitian part (A + A*)/2. A 2x2
symplectic matrix has infinitely many left eigenvalues exactly when it
is a quaternion times a plane rotation.
"""

import math

from quatlin import J
from quatlin.lefteig import (
    hermitian_part_classes,
    left_membership,
    symplectic_2x2_detect,
    symplectic_2x2_spectra,
    symplectic_bound_check,
)
from quatlin.qmatrix import QMatrix

a = QMatrix([[J, -J], [J, J]]) * (math.sqrt(2) / 2)
r, theta = symplectic_2x2_detect(a)
print(f"A = r R(theta) with r = {r}, theta = {theta / math.pi:.3f} pi")
print("Hermitian part eigenvalues:", [round(x, 6) for x in hermitian_part_classes(a)])

sp = symplectic_2x2_spectra(r, theta)
s = QMatrix(0.5 * (a.data + a.adjoint().data))
for lam in sp.left_family.sample(6):
    rep = symplectic_bound_check(a, lam)
    print(f"lambda = {lam}: |lambda| = {lam.norm():.6f}, bound {rep.all_hold},"
          f" left eigenvalue of the Hermitian part: {left_membership(s, lam)[0]}")
