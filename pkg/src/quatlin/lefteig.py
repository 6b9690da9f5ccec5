"""Left eigenvalues: quaternions ``lam`` for which ``M - lam I`` is singular.

For 2x2 matrices ``[[a, b], [c, d]]`` with ``bc != 0`` the left eigenvalues
are ``a + b x`` where ``x`` solves ``x^2 + a1 x + a0 = 0`` with
``a1 = b^{-1}(a - d)`` and ``a0 = -b^{-1} c``. When ``a1`` and ``a0`` are
real and ``a1^2 - 4 a0 < 0`` they form a 2-sphere, stored here as a
:class:`LeftFamily`. Everything else reduces to null-space computations.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .ceig import SimilarityClass, hermitian_right_eigen, right_eigen_classes
from .errors import (
    AmbiguousRho,
    InvariantViolation,
    NotHermitian,
    NotLeftEigenvalue,
    NotSymplectic,
    NotTwoByTwo,
    RootSolverFailure,
)
from .qmatrix import QMatrix, QVector, Subspace, apply, hermitian_deviation, null_space, symplectic_deviation
from .quaternion import Quaternion, inverse, left_matrix, qconj, qmul, right_matrix

__all__ = [
    "LeftFamily",
    "LeftSpectrum",
    "BoundReport",
    "MultiplicityReport",
    "Hermitian2x2",
    "SymplecticSpectra",
    "default_omegas",
    "left_eigs_2x2",
    "quaternion_quadratic_roots",
    "hermitian_2x2_classify",
    "symplectic_rotation",
    "symplectic_2x2_detect",
    "symplectic_2x2_spectra",
    "left_membership",
    "general_rayleigh",
    "hermitian_bound_check",
    "multiplicity_corollary_check",
    "symplectic_bound_check",
    "hermitian_part_classes",
]

MEMBERSHIP_TOL = 1e-8
REAL_TOL = 1e-10
NEAR_REAL_TOL = 1e-6


def _qlist(q: Quaternion) -> list[float]:
    return [q.w, q.x, q.y, q.z]


def default_omegas(count: int = 16) -> list[Quaternion]:
    """Deterministic unit pure quaternions: the six axis points, then a Fibonacci lattice."""
    axes = [Quaternion(0, 1), Quaternion(0, -1), Quaternion(0, 0, 1), Quaternion(0, 0, -1),
            Quaternion(0, 0, 0, 1), Quaternion(0, 0, 0, -1)]
    if count <= len(axes):
        return axes[:count]
    m = count - len(axes)
    golden = math.pi * (3.0 - math.sqrt(5.0))
    extra = []
    for i in range(m):
        z = 1.0 - (2.0 * i + 1.0) / m
        r = math.sqrt(max(0.0, 1.0 - z * z))
        phi = golden * i
        extra.append(Quaternion(0.0, r * math.cos(phi), r * math.sin(phi), z))
    return axes + extra


@dataclass(frozen=True)
class LeftFamily:
    """The set ``{base + coeff * xi : Re(xi) = 0, |xi| = radius}``."""

    base: Quaternion
    coeff: Quaternion
    radius: float

    def member(self, omega: Quaternion) -> Quaternion:
        """Member at the unit pure quaternion ``omega`` (``xi = radius * omega``)."""
        return self.base + self.coeff * (omega * self.radius)

    def sample(self, count: int = 16) -> list[Quaternion]:
        return [self.member(w) for w in default_omegas(count)]

    def to_dict(self, count: int = 16) -> dict:
        return {
            "base": _qlist(self.base),
            "coeff": _qlist(self.coeff),
            "radius": self.radius,
            "samples": [_qlist(q) for q in self.sample(count)],
        }


@dataclass(frozen=True)
class LeftSpectrum:
    kind: str  # "finite" or "infinite"
    finite_values: tuple[Quaternion, ...] = ()
    family: LeftFamily | None = None
    near_infinite: bool = False

    @property
    def is_infinite(self) -> bool:
        return self.kind == "infinite"

    def members(self, count: int = 16) -> list[Quaternion]:
        return list(self.finite_values) if self.family is None else self.family.sample(count)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "near_infinite": self.near_infinite}
        if self.family is None:
            d["values"] = [_qlist(q) for q in self.finite_values]
        else:
            d["family"] = self.family.to_dict()
        return d


# --------------------------------------------------------------------------
# 2x2

def _require_2x2(m: QMatrix) -> None:
    if m.shape != (2, 2):
        raise NotTwoByTwo(f"expected a 2x2 matrix, got {m.rows}x{m.cols}")


def _dedupe(values: list[Quaternion], radius: float) -> list[Quaternion]:
    out: list[Quaternion] = []
    for v in values:
        if all((v - u).norm() > radius for u in out):
            out.append(v)
    return out


def _quadratic_residual(x: np.ndarray, a1: np.ndarray, a0: np.ndarray) -> np.ndarray:
    return qmul(x, x) + qmul(a1, x) + a0


def quaternion_quadratic_roots(a1: Quaternion, a0: Quaternion, tol: float = 1e-9) -> list[Quaternion]:
    """Distinct roots of ``x^2 + a1 x + a0 = 0`` by damped Newton from 81 starts.

    Starts are the points of ``{-2, 0, 2}^4`` scaled by
    ``sigma = 1 + |a1| + sqrt(|a0|)``. Converged points are kept when the
    residual is at most ``tol * sigma^2`` and merged when closer than
    ``1e-6 * sigma``.
    """
    p1, p0 = a1.as_array(), a0.as_array()
    sigma = 1.0 + a1.norm() + math.sqrt(a0.norm())
    la1 = left_matrix(p1)
    grid = np.array(np.meshgrid(*[[-2.0, 0.0, 2.0]] * 4, indexing="ij")).reshape(4, -1).T * sigma
    found: list[Quaternion] = []
    for start in grid:
        x = start.copy()
        f = _quadratic_residual(x, p1, p0)
        fn = np.linalg.norm(f)
        for _ in range(200):
            if fn <= 1e-15 * sigma * sigma:
                break
            jac = left_matrix(x) + right_matrix(x) + la1
            step = np.linalg.lstsq(jac, f, rcond=None)[0]
            alpha = 1.0
            for _ in range(40):
                xn = x - alpha * step
                fnew = _quadratic_residual(xn, p1, p0)
                if np.linalg.norm(fnew) < fn:
                    break
                alpha *= 0.5
            else:
                break
            x, f, fn = xn, fnew, np.linalg.norm(fnew)
        if fn <= tol * sigma * sigma:
            found.append(Quaternion.from_array(x))
    roots = _dedupe(found, 1e-6 * sigma)
    if not roots:
        raise RootSolverFailure(f"no root of x^2 + ({a1})x + ({a0}) found")
    return sorted(roots, key=lambda q: q.as_tuple())


def _snap(q: Quaternion, eps: float) -> Quaternion:
    a = q.as_array()
    return Quaternion.from_array(np.where(np.abs(a) <= eps, 0.0, a))


def _is_real(q: Quaternion, tol: float) -> bool:
    return q.imag.norm() <= tol * (1.0 + q.norm())


def left_eigs_2x2(m: QMatrix, tol: float = REAL_TOL) -> LeftSpectrum:
    """All left eigenvalues of a 2x2 quaternionic matrix."""
    _require_2x2(m)
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    zero = tol * max(1.0, m.max_entry_norm())
    if b.norm() <= zero or c.norm() <= zero:
        return LeftSpectrum("finite", tuple(_dedupe([a, d], 0.0)))
    binv = inverse(b)
    a1 = binv * (a - d)
    a0 = -(binv * c)
    if _is_real(a1, tol) and _is_real(a0, tol):
        r1, r0 = a1.w, a0.w
        disc = r1 * r1 - 4.0 * r0
        if disc < -tol * (1.0 + r1 * r1 + 4.0 * abs(r0)):
            fam = LeftFamily((a + d) * 0.5, b * 0.5, math.sqrt(-disc))
            return LeftSpectrum("infinite", family=fam)
        root = math.sqrt(max(disc, 0.0))
        xs = [Quaternion((-r1 + root) / 2.0), Quaternion((-r1 - root) / 2.0)]
        near = False
    else:
        xs = quaternion_quadratic_roots(a1, a0)
        near = _is_real(a1, NEAR_REAL_TOL) and _is_real(a0, NEAR_REAL_TOL)
    lams = _dedupe([a + b * x for x in xs], 1e-9 * max(1.0, m.max_entry_norm()))
    # round-off from the Newton iteration shows up as ~1e-20 components
    lams = [_snap(lam, 1e-14 * max(1.0, m.max_entry_norm())) for lam in lams]
    for lam in lams:
        if null_space(m.shift(lam), MEMBERSHIP_TOL).dim == 0:
            raise InvariantViolation(f"computed left eigenvalue {lam} leaves M - lam I invertible")
    return LeftSpectrum("finite", tuple(lams), near_infinite=near)


@dataclass(frozen=True)
class Hermitian2x2:
    real_eigs: tuple[float, float]
    family: LeftFamily | None

    def to_dict(self) -> dict:
        return {
            "real_eigs": list(self.real_eigs),
            "family": None if self.family is None else self.family.to_dict(),
        }


def hermitian_2x2_classify(s: QMatrix, tol: float = REAL_TOL) -> Hermitian2x2:
    """Real eigenvalues and (if any) the non-real left family of ``[[s, b], [b*, s']]``.

    The real eigenvalues solve ``(s - t)(s' - t) - |b|^2 = 0``. Non-real left
    eigenvalues exist exactly when ``b`` is a nonzero pure quaternion and
    ``s = s'``; they are ``s + b omega`` over unit pure ``omega``.
    """
    _require_2x2(s)
    scale = max(1.0, s.max_entry_norm())
    if hermitian_deviation(s) > tol * scale:
        raise NotHermitian("matrix is not Hermitian")
    s1, s2, b = s[0, 0].w, s[1, 1].w, s[0, 1]
    mid = 0.5 * (s1 + s2)
    rad = math.sqrt((0.5 * (s1 - s2)) ** 2 + b.norm2())
    real = (mid - rad, mid + rad)
    fam = None
    if b.norm() > tol * scale and abs(b.w) <= tol * scale and abs(s1 - s2) <= tol * scale:
        fam = LeftFamily(Quaternion(mid), b, 1.0)
    return Hermitian2x2(real, fam)


def symplectic_rotation(r: Quaternion, theta: float) -> QMatrix:
    """``r [[cos t, -sin t], [sin t, cos t]]``."""
    c, s = math.cos(theta), math.sin(theta)
    return QMatrix([[r * c, r * (-s)], [r * s, r * c]])


def symplectic_2x2_detect(a: QMatrix, tol: float = REAL_TOL) -> tuple[Quaternion, float] | None:
    """Return ``(r, theta)`` if ``A = r [[cos, -sin], [sin, cos]]`` with ``sin theta != 0``.

    ``theta`` is normalized into ``(0, pi)``, any sign going into ``r``.
    """
    _require_2x2(a)
    if symplectic_deviation(a) > tol * 10:
        raise NotSymplectic("matrix is not symplectic")
    p, q = a.data[0, 0], a.data[1, 0]
    if np.linalg.norm(p - a.data[1, 1]) > tol or np.linalg.norm(q + a.data[0, 1]) > tol:
        return None
    ref = p if np.linalg.norm(p) >= np.linalg.norm(q) else q
    r = ref / np.linalg.norm(ref)
    c, s = float(p @ r), float(q @ r)
    if np.linalg.norm(p - c * r) > tol or np.linalg.norm(q - s * r) > tol:
        return None
    if abs(s) <= tol:
        return None
    if s < 0:
        r, c, s = -r, -c, -s
    return Quaternion.from_array(r), math.atan2(s, c)


@dataclass(frozen=True)
class SymplecticSpectra:
    right: tuple[SimilarityClass, ...]
    left_family: LeftFamily
    rho: Quaternion | None

    def right_members(self) -> list[Quaternion]:
        """The two family members at ``omega = +-rho`` (left eigenvalues that are also right ones)."""
        if self.rho is None:
            return []
        return [self.left_family.member(self.rho), self.left_family.member(-self.rho)]

    def to_dict(self) -> dict:
        return {
            "right": [{"real_part": c.real_part, "imag_norm": c.imag_norm} for c in self.right],
            "left_family": self.left_family.to_dict(),
            "rho": None if self.rho is None else _qlist(self.rho),
        }


def symplectic_2x2_spectra(r: Quaternion, theta: float, tol: float = 1e-8) -> SymplecticSpectra:
    """Right classes and left family of ``r [[cos, -sin], [sin, cos]]``.

    Writing ``r = s + t rho`` with ``rho`` a unit pure quaternion, the right
    eigenvalues are the classes of ``r (cos theta +- sin theta rho)`` and the
    left eigenvalues are ``r (cos theta + sin theta omega)`` for every unit
    pure ``omega``. When ``r`` is real, ``rho`` is undefined: an
    :class:`AmbiguousRho` warning is issued and the right classes are taken
    from the eigensolver.
    """
    if abs(r.norm() - 1.0) > tol:
        raise ValueError("r must be a unit quaternion")
    c, s = math.cos(theta), math.sin(theta)
    if abs(s) <= tol:
        raise ValueError("sin(theta) must be nonzero")
    solved = right_eigen_classes(symplectic_rotation(r, theta))
    family = LeftFamily(r * c, r * s, 1.0)
    im = r.imag
    if im.norm() <= 1e-12:
        warnings.warn("r is real; rho is not determined, using eigensolver classes", AmbiguousRho, stacklevel=2)
        return SymplecticSpectra(tuple(solved), family, None)
    rho = im / im.norm()
    qs = [r * (rho * (sign * s) + c) for sign in (1.0, -1.0)]
    classes = sorted(
        (SimilarityClass(q.w, q.imag.norm()) for q in qs), key=lambda k: (k.real_part, k.imag_norm)
    )
    if len({(round(k.real_part, 9), round(k.imag_norm, 9)) for k in classes}) == 1:
        classes = [SimilarityClass(k.real_part, k.imag_norm, 2) for k in classes]
    for mine, theirs in zip(classes, solved):
        if abs(mine.real_part - theirs.real_part) > tol or abs(mine.imag_norm - theirs.imag_norm) > tol:
            raise InvariantViolation(f"formula class {mine} disagrees with eigensolver class {theirs}")
    return SymplecticSpectra(tuple(classes), family, rho)


# --------------------------------------------------------------------------
# general n

def left_membership(m: QMatrix, lam, tol: float = MEMBERSHIP_TOL) -> tuple[bool, Subspace]:
    """Whether ``lam`` is a left eigenvalue of ``M``, and the eigenspace ``V(lam)``."""
    lam = Quaternion.coerce(lam)
    space = null_space(m.shift(lam), tol)
    return space.dim >= 1, space


def general_rayleigh(a: QMatrix, v: QVector) -> float:
    """``Re(v* A v) / |v|^2`` for any square ``A``."""
    av = apply(a, v)
    return float(np.sum(v.data * av.data)) / v.norm2()


@dataclass(frozen=True)
class BoundReport:
    """Outcome of a left-right eigenvalue bound check.

    ``holds`` is the bound ``lower <= Re(lam) <= upper`` (within ``tol``);
    the remaining checks ride along and are combined by :attr:`all_hold`.
    """

    lam: Quaternion
    eig_dim: int
    lower: float
    upper: float
    real_part: float
    holds: bool
    tol: float
    realpart_error: float
    norm_check: bool
    extra: dict = field(default_factory=dict)

    @property
    def all_hold(self) -> bool:
        return self.holds and self.realpart_error <= self.tol and self.norm_check and all(
            v for v in self.extra.values() if isinstance(v, bool)
        )

    def to_dict(self) -> dict:
        return {
            "lambda": _qlist(self.lam),
            "eig_dim": self.eig_dim,
            "lower": self.lower,
            "upper": self.upper,
            "real_part": self.real_part,
            "holds": self.holds,
            "tol": self.tol,
            "realpart_error": self.realpart_error,
            "norm_check": self.norm_check,
            "extra": self.extra,
            "all_hold": self.all_hold,
        }


def _eigenspace_or_raise(m: QMatrix, lam: Quaternion, tol: float) -> Subspace:
    ok, space = left_membership(m, lam, tol)
    if not ok:
        raise NotLeftEigenvalue(f"{lam} is not a left eigenvalue")
    return space


def hermitian_bound_check(s: QMatrix, lam, tol: float = MEMBERSHIP_TOL) -> BoundReport:
    """Check ``t_k <= Re(lam) <= t_{n-k+1}`` with ``k = dim V(lam)``.

    Also checks that the Rayleigh quotient equals ``Re(lam)`` on every basis
    vector of ``V(lam)`` and that ``|lam|`` does not exceed the largest
    ``|t_i|``.
    """
    lam = Quaternion.coerce(lam)
    if hermitian_deviation(s) > REAL_TOL * max(1.0, s.max_entry_norm()):
        raise NotHermitian("matrix is not Hermitian")
    space = _eigenspace_or_raise(s, lam, tol)
    t = hermitian_right_eigen(s).values
    n, k = len(t), space.dim
    lower, upper = t[k - 1], t[n - k]
    err = max(abs(general_rayleigh(s, v) - lam.w) for v in space.basis)
    radius_ok = lam.norm() <= max(abs(x) for x in t) + tol
    holds = lower - tol <= lam.w <= upper + tol
    return BoundReport(lam, k, lower, upper, lam.w, holds, tol, err, radius_ok, {"spectral_radius_ok": radius_ok})


@dataclass(frozen=True)
class MultiplicityReport:
    n: int
    k: int
    precondition_met: bool
    values: tuple[float, ...] = ()
    multiplicity: int = 0
    holds: bool | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "precondition_met": self.precondition_met,
            "values": list(self.values),
            "multiplicity": self.multiplicity,
            "holds": self.holds,
        }


def multiplicity_corollary_check(s: QMatrix, lam, tol: float = MEMBERSHIP_TOL) -> MultiplicityReport:
    """When ``k = dim V(lam) > ceil(n/2)``: ``t_{n-k+1} = ... = t_k = Re(lam)``, multiplicity ``>= 2k - n``.

    For smaller ``k`` the report comes back with ``precondition_met=False``.
    """
    lam = Quaternion.coerce(lam)
    space = _eigenspace_or_raise(s, lam, tol)
    n, k = s.rows, space.dim
    if k <= math.ceil(n / 2):
        return MultiplicityReport(n, k, False)
    eig = hermitian_right_eigen(s)
    vals = eig.values[n - k : k]
    mult = eig.multiplicities[eig.cluster_index(k - 1)]
    ok = all(abs(v - lam.w) <= tol for v in vals) and mult >= 2 * k - n
    return MultiplicityReport(n, k, True, tuple(vals), mult, ok)


def _check_symplectic(a: QMatrix, tol: float = 1e-10) -> None:
    if not a.is_square or symplectic_deviation(a) > tol:
        raise NotSymplectic("matrix is not symplectic")


def symplectic_bound_check(a: QMatrix, lam, tol: float = MEMBERSHIP_TOL, seed: int = 0, probes: int = 8) -> BoundReport:
    """Check ``Re(q_k) <= Re(lam) <= Re(q_{n-k+1})`` and ``|lam| = 1`` for symplectic ``A``.

    Right classes are ordered by real part. Also checks ``h_A = Re(lam)`` on
    ``V(lam)`` and ``h_A = h_S`` for ``S = (A + A*)/2`` at ``probes`` random
    unit vectors.
    """
    lam = Quaternion.coerce(lam)
    _check_symplectic(a)
    space = _eigenspace_or_raise(a, lam, tol)
    classes = right_eigen_classes(a)
    n, k = a.rows, space.dim
    lower, upper = classes[k - 1].real_part, classes[n - k].real_part
    err = max(abs(general_rayleigh(a, v) - lam.w) for v in space.basis)
    norm_ok = abs(lam.norm() - 1.0) <= tol
    s = QMatrix(0.5 * (a.data + a.adjoint().data))
    rng = np.random.default_rng(seed)
    diff = 0.0
    for _ in range(probes):
        v = QVector(rng.standard_normal((n, 4))).normalized()
        diff = max(diff, abs(general_rayleigh(a, v) - general_rayleigh(s, v)))
    holds = lower - tol <= lam.w <= upper + tol
    extra = {"rayleigh_A_equals_S": diff <= 1e-12 * (1.0 + n), "rayleigh_A_S_max_diff": diff}
    return BoundReport(lam, k, lower, upper, lam.w, holds, tol, err, norm_ok, extra)


def hermitian_part_classes(a: QMatrix, tol: float = MEMBERSHIP_TOL) -> list[float]:
    """Eigenvalues of ``(A + A*)/2``, checked against the real parts of the right classes of ``A``."""
    _check_symplectic(a)
    s = QMatrix(0.5 * (a.data + a.adjoint().data))
    vals = list(hermitian_right_eigen(s).values)
    reals = sorted(c.real_part for c in right_eigen_classes(a))
    gap = max(abs(x - y) for x, y in zip(vals, reals))
    if gap > tol:
        raise InvariantViolation(f"Hermitian-part spectrum differs from right real parts by {gap:.3g}")
    return vals
