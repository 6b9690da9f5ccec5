"""Complex eigensolvers and right eigenvalues of quaternionic matrices.

Right eigenvalues of ``M`` (``M u = u q``) come in similarity classes; the
``2n`` eigenvalues of the complex adjoint ``c(M)`` are the complex
representatives ``z_1, conj(z_1), ..., z_n, conj(z_n)`` of those classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NotHermitian, PairingFailure, ReconstructionFailure
from .qmatrix import (
    QMatrix,
    QVector,
    Subspace,
    apply,
    complex_adjoint,
    complex_to_qvector,
    gram_schmidt,
    hermitian_deviation,
)
from .quaternion import Quaternion

__all__ = [
    "SimilarityClass",
    "HermitianEigen",
    "hermitian_complex_eigen",
    "hessenberg",
    "general_complex_eigenvalues",
    "right_eigen_classes",
    "hermitian_right_eigen",
    "cluster_values",
]

CLUSTER_RTOL = 1e-7


@dataclass(frozen=True)
class SimilarityClass:
    """The class ``[t + s i]`` of quaternions with real part ``t`` and norm ``sqrt(t^2 + s^2)``."""

    real_part: float
    imag_norm: float
    multiplicity: int = 1

    @property
    def norm(self) -> float:
        return math.hypot(self.real_part, self.imag_norm)

    @property
    def representative(self) -> complex:
        return complex(self.real_part, self.imag_norm)

    def quaternion(self) -> Quaternion:
        return Quaternion(self.real_part, self.imag_norm)

    def contains(self, q: Quaternion, tol: float = 1e-8) -> bool:
        return abs(q.w - self.real_part) <= tol and abs(q.norm() - self.norm) <= tol


@dataclass(frozen=True)
class HermitianEigen:
    """Diagonalization ``S = U diag(t) U*`` of a Hermitian quaternionic matrix."""

    values: tuple[float, ...]
    basis: Subspace
    multiplicities: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def distinct_values(self) -> tuple[float, ...]:
        out, pos = [], 0
        for m in self.multiplicities:
            out.append(float(np.mean(self.values[pos : pos + m])))
            pos += m
        return tuple(out)

    def cluster_index(self, j: int) -> int:
        """Cluster containing the 0-based eigenvalue position ``j``."""
        pos = 0
        for c, m in enumerate(self.multiplicities):
            if j < pos + m:
                return c
            pos += m
        raise IndexError(j)

    def unitary(self) -> QMatrix:
        return self.basis.matrix()

    def reconstruct(self) -> QMatrix:
        u = self.unitary()
        scaled = QMatrix(u.data * np.asarray(self.values)[None, :, None])
        return scaled @ u.adjoint()


# --------------------------------------------------------------------------
# Hermitian: cyclic Jacobi

def _offdiag_norm(a: np.ndarray) -> float:
    off = a[~np.eye(a.shape[0], dtype=bool)]
    return float(np.sqrt(np.sum(off.real**2 + off.imag**2)))


def hermitian_complex_eigen(h, max_sweeps: int = 64, tol: float = 1e-13):
    """Eigen-decomposition of a complex Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(values, vectors)`` with ``values`` ascending and the columns of
    the unitary ``vectors`` the matching eigenvectors.
    """
    a = np.array(h, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    scale = float(np.linalg.norm(a))
    if np.abs(a - a.conj().T).max() > 1e-10 * max(1.0, scale):
        raise NotHermitian("matrix is not Hermitian")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    target = tol * scale
    for _ in range(max_sweeps):
        if _offdiag_norm(a) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                ag = abs(g)
                if ag == 0.0 or ag <= 1e-300:
                    continue
                e = g / ag
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * ag)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, s], [-s * e.conjugate(), c * e.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ rot
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    else:
        if _offdiag_norm(a) > target:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")
    values = np.diag(a).real
    order = np.argsort(values, kind="stable")
    return values[order], v[:, order]


# --------------------------------------------------------------------------
# general: Hessenberg + shifted QR

def hessenberg(a) -> np.ndarray:
    """Upper Hessenberg matrix unitarily similar to ``a`` (Householder reflections)."""
    h = np.array(a, dtype=complex)
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1 :, k]
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        w = x.copy()
        w[0] += phase * alpha
        w /= np.linalg.norm(w)
        h[k + 1 :, :] -= 2.0 * np.outer(w, w.conj() @ h[k + 1 :, :])
        h[:, k + 1 :] -= 2.0 * np.outer(h[:, k + 1 :] @ w, w.conj())
        h[k + 2 :, k] = 0.0
    return h


def _wilkinson(a, b, c, d) -> complex:
    """Eigenvalue of ``[[a, b], [c, d]]`` closer to ``d``."""
    half = 0.5 * (a - d)
    disc = np.sqrt(half * half + b * c)
    m1 = 0.5 * (a + d) + disc
    m2 = 0.5 * (a + d) - disc
    return m1 if abs(m1 - d) < abs(m2 - d) else m2


def general_complex_eigenvalues(c, max_iter: int | None = None) -> list[complex]:
    """All eigenvalues of a square complex matrix.

    Hessenberg reduction followed by single-shift QR with Wilkinson shifts,
    exceptional shifts after 10 stagnant steps, and deflation on negligible
    subdiagonal entries. ``max_iter`` (default ``100 * dim``) caps the total
    number of QR steps.
    """
    h = hessenberg(c)
    n = h.shape[0]
    cap = 100 * n if max_iter is None else max_iter
    eps = np.finfo(float).eps
    norm = max(float(np.abs(h).max()), np.finfo(float).tiny)
    out: list[complex] = []
    hi = n - 1
    total = 0
    stagnant = 0
    while hi >= 0:
        if hi == 0:
            out.append(complex(h[0, 0]))
            break
        lo = hi
        while lo > 0:
            s = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            if s == 0.0:
                s = norm
            if abs(h[lo, lo - 1]) <= eps * s:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            out.append(complex(h[hi, hi]))
            hi -= 1
            stagnant = 0
            continue
        if total >= cap:
            raise NoConvergence(f"QR iteration did not converge in {cap} steps")
        total += 1
        stagnant += 1
        if stagnant % 10 == 0:
            mu = h[hi, hi] + abs(h[hi, hi - 1]) * np.exp(1j * stagnant)
        else:
            mu = _wilkinson(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
        blk = h[lo : hi + 1, lo : hi + 1]
        m = blk.shape[0]
        blk[np.arange(m), np.arange(m)] -= mu
        rots = []
        for k in range(m - 1):
            x, y = blk[k, k], blk[k + 1, k]
            r = math.hypot(abs(x), abs(y))
            if r == 0.0:
                g = np.eye(2, dtype=complex)
            else:
                g = np.array([[x.conjugate(), y.conjugate()], [-y, x]]) / r
            blk[k : k + 2, k:] = g @ blk[k : k + 2, k:]
            blk[k + 1, k] = 0.0
            rots.append(g)
        for k, g in enumerate(rots):
            blk[: k + 2, k : k + 2] = blk[: k + 2, k : k + 2] @ g.conj().T
        blk[np.arange(m), np.arange(m)] += mu
        h[lo : hi + 1, lo : hi + 1] = blk
    return out


# --------------------------------------------------------------------------
# right eigenvalues

def cluster_values(values, rtol: float = CLUSTER_RTOL) -> list[list[int]]:
    """Group indices of ascending ``values`` whose neighbours differ by at most ``rtol (1 + |t|)``."""
    groups: list[list[int]] = []
    for i, t in enumerate(values):
        if groups and abs(t - values[groups[-1][-1]]) <= rtol * (1.0 + abs(t)):
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def right_eigen_classes(m: QMatrix, pairing_tol: float = 1e-6) -> list[SimilarityClass]:
    """The ``n`` right-eigenvalue classes of ``M``, one per conjugate pair of ``c(M)``.

    Repeated classes are listed once per occurrence; ``multiplicity`` on each
    entry counts how many entries share its value. Sorted by real part, then
    by imaginary norm.
    """
    eigs = general_complex_eigenvalues(complex_adjoint(m))
    remaining = sorted(eigs, key=lambda z: -z.imag)
    pairs = []
    while remaining:
        z = remaining.pop(0)
        if not remaining:
            raise PairingFailure(f"eigenvalue {z} left without a partner")
        dists = [abs(w - z.conjugate()) for w in remaining]
        k = int(np.argmin(dists))
        if dists[k] > pairing_tol:
            raise PairingFailure(f"no conjugate partner for {z} within {pairing_tol} (closest {dists[k]:.3g})")
        w = remaining.pop(k)
        pairs.append((0.5 * (z.real + w.real), 0.5 * (abs(z.imag) + abs(w.imag))))
    pairs.sort()
    mult = [1] * len(pairs)
    i = 0
    while i < len(pairs):
        j = i
        while j + 1 < len(pairs) and abs(complex(*pairs[j + 1]) - complex(*pairs[i])) <= CLUSTER_RTOL * (
            1.0 + abs(complex(*pairs[i]))
        ):
            j += 1
        for k in range(i, j + 1):
            mult[k] = j - i + 1
        i = j + 1
    return [SimilarityClass(t, s, mu) for (t, s), mu in zip(pairs, mult)]


def hermitian_right_eigen(s: QMatrix, tol: float = 1e-10) -> HermitianEigen:
    """Real eigenvalues ``t_1 <= ... <= t_n`` and an orthonormal quaternionic eigenbasis.

    The ``2n`` eigenvectors of ``c(S)`` are mapped back to ``H^n`` through
    ``(a; b) -> a + j b``. Each quaternionic eigenline shows up twice (as
    ``u`` and ``u j``), so every cluster of ``2l`` equal complex eigenvalues
    is orthonormalized over H down to ``l`` vectors.
    """
    if not s.is_square:
        raise NotHermitian("matrix is not square")
    scale = max(1.0, s.max_entry_norm())
    if hermitian_deviation(s) > tol * scale:
        raise NotHermitian(f"matrix is not Hermitian (deviation {hermitian_deviation(s):.3g})")
    n = s.rows
    values, vectors = hermitian_complex_eigen(complex_adjoint(s))
    kept_vectors: list[QVector] = []
    kept_values: list[float] = []
    for group in cluster_values(values):
        if len(group) % 2:
            raise ReconstructionFailure(f"complex eigenvalue cluster of odd size {len(group)} near {values[group[0]]}")
        cands = [complex_to_qvector(vectors[:, j]) for j in group]
        sub = gram_schmidt(kept_vectors + cands, tol=1e-6)
        new = list(sub.basis[len(kept_vectors) :])
        if len(new) != len(group) // 2:
            raise ReconstructionFailure(
                f"cluster near {values[group[0]]} gave {len(new)} quaternionic vectors, expected {len(group) // 2}"
            )
        kept_vectors = list(sub.basis)
        for u in new:
            su = apply(s, u)
            kept_values.append(float(np.sum(u.data * su.data)))
    snorm = max(s.frobenius(), np.finfo(float).tiny)
    for t, u in zip(kept_values, kept_vectors):
        r = (apply(s, u) - u * t).norm()
        if r > 1e-9 * snorm:
            raise ReconstructionFailure(f"eigenvector residual {r:.3g} for eigenvalue {t}")
    order = np.argsort(kept_values, kind="stable")
    vals = tuple(kept_values[i] for i in order)
    basis = Subspace(n, tuple(kept_vectors[i] for i in order))
    mults = tuple(len(g) for g in cluster_values(vals))
    return HermitianEigen(vals, basis, mults)
