"""
Quaternion arithmetic
=====================

Products do not commute, similar quaternions share real part and norm,
and every pure unit quaternion has a pair of commuting pure units.
"""

from quatlin import I, J, K, Quaternion
from quatlin.quaternion import commuting_pure_units, complex_representative, conjugate_by, is_similar

# i j = k but j i = -k
print("i*j =", I * J, "  j*i =", J * I)

# (1+i)(1+j) expands to 1 + i + j + k
print("(1+i)(1+j) =", (1 + I) * (1 + J))

# inverses are conjugate over squared norm
q = Quaternion(1, 1, 1, 1)
print("inverse of 1+i+j+k =", q.inverse(), " check:", q * q.inverse())

# similarity classes are fixed by (real part, norm); the complex
# representative picks the member t + s i with s >= 0
print("class of 1+i+j+k ->", complex_representative(q))
print("j i j^-1 =", conjugate_by(I, J))
print("1+2i similar to 1-2i:", is_similar(Quaternion(1, 2, 0, 0), Quaternion(1, -2, 0, 0)))

# the two pure units commuting with (i + k)/sqrt(2)
omega = (I + K) / 2**0.5
print("units commuting with", omega, "->", [str(d) for d in commuting_pure_units(omega)])
