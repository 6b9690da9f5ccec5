"""Quaternion arithmetic and similarity classes.

Scalars are :class:`Quaternion` values (immutable, four floats). Bulk work
inside matrices uses plain ``float64`` arrays whose last axis has length 4,
ordered ``(w, x, y, z)`` for ``w + x i + y j + z k``; the ``q*`` helpers
below operate on such arrays and broadcast like numpy ufuncs.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from numbers import Real

import numpy as np

from .errors import ParseError, ZeroQuaternion

__all__ = [
    "Quaternion",
    "ONE",
    "I",
    "J",
    "K",
    "mul",
    "inverse",
    "is_similar",
    "complex_representative",
    "conjugate_by",
    "commuting_pure_units",
    "parse_quaternion",
    "format_quaternion",
    "qmul",
    "qconj",
    "qnorm2",
    "qinv",
    "left_matrix",
    "right_matrix",
]


# --------------------------------------------------------------------------
# array kernels

def qmul(p, q):
    """Hamilton product of quaternion arrays ``p`` and ``q`` (last axis 4)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    p0, p1, p2, p3 = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    q0, q1, q2, q3 = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    return np.stack(
        [
            p0 * q0 - p1 * q1 - p2 * q2 - p3 * q3,
            p0 * q1 + p1 * q0 + p2 * q3 - p3 * q2,
            p0 * q2 - p1 * q3 + p2 * q0 + p3 * q1,
            p0 * q3 + p1 * q2 - p2 * q1 + p3 * q0,
        ],
        axis=-1,
    )


def qconj(q):
    q = np.array(q, dtype=float)
    q[..., 1:] *= -1.0
    return q


def qnorm2(q):
    q = np.asarray(q, dtype=float)
    return np.sum(q * q, axis=-1)


def qinv(q):
    """Elementwise inverse; raises :class:`ZeroQuaternion` on any zero entry."""
    n2 = qnorm2(q)
    if np.any(n2 == 0.0):
        raise ZeroQuaternion("inverse of the zero quaternion")
    return qconj(q) / n2[..., None]


def left_matrix(q):
    """Real 4x4 matrix ``L`` with ``L @ p == qmul(q, p)``."""
    w, x, y, z = np.asarray(q, dtype=float)
    return np.array(
        [
            [w, -x, -y, -z],
            [x, w, -z, y],
            [y, z, w, -x],
            [z, -y, x, w],
        ]
    )


def right_matrix(q):
    """Real 4x4 matrix ``R`` with ``R @ p == qmul(p, q)``."""
    w, x, y, z = np.asarray(q, dtype=float)
    return np.array(
        [
            [w, -x, -y, -z],
            [x, w, z, -y],
            [y, -z, w, x],
            [z, y, -x, w],
        ]
    )


# --------------------------------------------------------------------------
# scalar type

@dataclass(frozen=True)
class Quaternion:
    """``w + x i + y j + z k`` with real coefficients.

    Real numbers act as quaternions with zero imaginary part, so
    ``2 * q``, ``q + 1`` and ``q * 0.5`` all work.
    """

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        for name in ("w", "x", "y", "z"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @classmethod
    def from_array(cls, a) -> Quaternion:
        a = np.asarray(a, dtype=float).reshape(4)
        return cls(a[0], a[1], a[2], a[3])

    @classmethod
    def coerce(cls, value) -> Quaternion:
        if isinstance(value, Quaternion):
            return value
        if isinstance(value, Real):
            return cls(float(value))
        if isinstance(value, complex):
            return cls(value.real, value.imag)
        if isinstance(value, str):
            return parse_quaternion(value)
        return cls.from_array(value)

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.w, self.x, self.y, self.z)

    def __iter__(self):
        return iter(self.as_tuple())

    # -- basic quantities
    @property
    def real(self) -> float:
        return self.w

    @property
    def imag(self) -> Quaternion:
        return Quaternion(0.0, self.x, self.y, self.z)

    def conjugate(self) -> Quaternion:
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return math.sqrt(self.norm2())

    def is_real(self, tol: float = 0.0) -> bool:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2) <= tol

    def is_pure(self, tol: float = 0.0) -> bool:
        return abs(self.w) <= tol

    def inverse(self) -> Quaternion:
        return inverse(self)

    # -- operators
    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)
        if isinstance(other, Real):
            return Quaternion(self.w + other, self.x, self.y, self.z)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)
        if isinstance(other, Real):
            return Quaternion(self.w - other, self.x, self.y, self.z)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Real):
            return Quaternion(other - self.w, -self.x, -self.y, -self.z)
        return NotImplemented

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return mul(self, other)
        if isinstance(other, Real):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        return NotImplemented

    def __rmul__(self, other):
        # only reached for real left operands, which commute
        if isinstance(other, Real):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Real):
            return Quaternion(self.w / other, self.x / other, self.y / other, self.z / other)
        return NotImplemented

    def __abs__(self) -> float:
        return self.norm()

    def __str__(self) -> str:
        return format_quaternion(self)


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


# --------------------------------------------------------------------------
# operations

def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``p q`` (not commutative)."""
    return Quaternion(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )


def inverse(q: Quaternion, zero_threshold: float = 0.0) -> Quaternion:
    """``conjugate(q) / |q|^2``.

    Raises :class:`ZeroQuaternion` when ``|q| <= zero_threshold``. The default
    threshold is exact zero; deciding what counts as numerically zero is left
    to the caller.
    """
    n2 = q.norm2()
    if n2 == 0.0 or math.sqrt(n2) <= zero_threshold:
        raise ZeroQuaternion(f"cannot invert {q}")
    return q.conjugate() / n2


def is_similar(p: Quaternion, q: Quaternion, tol: float = 1e-12) -> bool:
    """True when ``p`` and ``q`` have the same norm and real part within ``tol``."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return abs(p.norm() - q.norm()) <= tol and abs(p.w - q.w) <= tol


def complex_representative(q: Quaternion) -> complex:
    """The complex number ``t + s i`` similar to ``q`` with ``s >= 0``."""
    return complex(q.w, math.sqrt(q.x * q.x + q.y * q.y + q.z * q.z))


def conjugate_by(q: Quaternion, r: Quaternion) -> Quaternion:
    """``r q r^{-1}``."""
    return mul(mul(r, q), inverse(r))


def commuting_pure_units(omega: Quaternion, tol: float = 1e-12) -> tuple[Quaternion, Quaternion]:
    """Unit pure quaternions commuting with the unit pure quaternion ``omega``.

    For pure ``a`` and ``b`` the commutator ``ab - ba`` is twice the cross
    product of their vector parts, so the solutions span the kernel of the
    cross-product matrix of ``omega``. That kernel is one-dimensional, giving
    exactly the pair returned here.
    """
    v = np.array([omega.x, omega.y, omega.z])
    if abs(omega.w) > tol or abs(np.linalg.norm(v) - 1.0) > 1e3 * tol:
        raise ValueError("omega must be a unit pure quaternion")
    cross = np.array([[0.0, -v[2], v[1]], [v[2], 0.0, -v[0]], [-v[1], v[0], 0.0]])
    _, s, vt = np.linalg.svd(cross)
    kernel = vt[s <= 1e-9]
    if kernel.shape[0] != 1:
        raise ArithmeticError(f"commutation constraint has kernel of dimension {kernel.shape[0]}")
    d = kernel[0] / np.linalg.norm(kernel[0])
    if d @ v < 0:
        d = -d
    return Quaternion(0.0, *d), Quaternion(0.0, *(-d))


# --------------------------------------------------------------------------
# text form

_NUMBER = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_TERM = re.compile(rf"([+-]?)({_NUMBER})?(\*?)([ijk]?)")


def parse_quaternion(text: str) -> Quaternion:
    """Parse literals such as ``"1-2k"``, ``"i"``, ``"-0.5+2j+1e-3k"``.

    Whitespace around signs is ignored and every unit may appear at most once.
    """
    if re.search(r"[\d.ijkeE]\s+[\d.ijk]", str(text)):
        raise ParseError(f"whitespace inside a term of {text!r}")
    s = "".join(str(text).split())
    if not s:
        raise ParseError("empty quaternion literal")
    coeffs = {"": 0.0, "i": 0.0, "j": 0.0, "k": 0.0}
    seen = set()
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, number, star, unit = m.groups()
        if m.end() == pos or (number is None and not unit) or (star and not (number and unit)):
            raise ParseError(f"bad quaternion literal {text!r} at position {pos}")
        if pos > 0 and not sign:
            raise ParseError(f"missing sign before term in {text!r}")
        if unit in seen:
            raise ParseError(f"repeated {unit or 'real'} term in {text!r}")
        seen.add(unit)
        value = float(number) if number is not None else 1.0
        coeffs[unit] = -value if sign == "-" else value
        pos = m.end()
    return Quaternion(coeffs[""], coeffs["i"], coeffs["j"], coeffs["k"])


def _fmt(v: float) -> str:
    r = repr(float(v))
    return r[:-2] if r.endswith(".0") else r


def format_quaternion(q: Quaternion) -> str:
    """Shortest round-trip text form, e.g. ``"1-2.5j+k"``; zero is ``"0"``."""
    parts = []
    for value, unit in zip(q.as_tuple(), ("", "i", "j", "k")):
        if value == 0.0 and unit:
            continue
        if value == 0.0 and not unit and (q.x or q.y or q.z):
            continue
        body = _fmt(abs(value))
        if unit and body == "1":
            body = ""
        sign = "-" if math.copysign(1.0, value) < 0 else "+"
        parts.append((sign, body + unit))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out
