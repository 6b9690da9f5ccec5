"""Rayleigh quotient of a Hermitian quaternionic matrix.

``R(S, v) = v* S v / |v|^2`` is real for Hermitian ``S``. Restricted to the
unit sphere ``S^{4n-1}`` of H^n = R^{4n} it is written ``h``. Everything
"real" here (gradients, tangent spaces, Hessian spectra) refers to that
4n-dimensional real structure.

Random numbers come from numpy's PCG64 via :class:`numpy.random.SeedSequence`;
Monte-Carlo runs are split in fixed-size shards seeded by
``SeedSequence([seed, shard_index])`` so results do not depend on how many
workers process them.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .ceig import HermitianEigen, hermitian_right_eigen
from .errors import (
    EmptySubspace,
    IndexOutOfRange,
    InvariantViolation,
    NotCritical,
    NotHermitian,
    NotTangent,
    ZeroVector,
)
from .qmatrix import QMatrix, QVector, Subspace, apply, gram_schmidt, hermitian_deviation
from .quaternion import Quaternion, qconj, qmul

__all__ = [
    "CriticalReport",
    "MomentReport",
    "MinMaxReport",
    "SphereMomentReport",
    "rayleigh_quotient",
    "weighted_mean_oracle",
    "gradient",
    "hessian_apply",
    "tangent_basis",
    "hessian_eigenvalues",
    "critical_index",
    "critical_report",
    "subspace_extremes",
    "random_subspace",
    "minmax_verify",
    "sphere_sample",
    "sphere_samples",
    "moments",
    "sphere_coordinate_moments",
    "shard_rng",
]

HERMITIAN_TOL = 1e-10
SHARD_SIZE = 1 << 16


def _check_hermitian(s: QMatrix) -> float:
    if not s.is_square:
        raise NotHermitian(f"matrix is {s.rows}x{s.cols}")
    dev = hermitian_deviation(s)
    if dev > HERMITIAN_TOL * max(1.0, s.max_entry_norm()):
        raise NotHermitian(f"matrix is not Hermitian (deviation {dev:.3g})")
    return dev


def _vsv(s: QMatrix, v: QVector) -> Quaternion:
    return Quaternion.from_array(qmul(qconj(v.data), apply(s, v).data).sum(axis=0))


def rayleigh_quotient(s: QMatrix, v: QVector) -> float:
    """``Re(v* S v) / |v|^2``.

    The imaginary part of ``v* S v`` vanishes for Hermitian ``S``; it is
    checked against roundoff and then dropped.
    """
    dev = _check_hermitian(s)
    n2 = v.norm2()
    if n2 == 0.0:
        raise ZeroVector("Rayleigh quotient of the zero vector")
    q = _vsv(s, v)
    bound = (1e-12 * s.frobenius() + len(v) * dev) * n2 + 1e-300
    if q.imag.norm() > bound:
        raise InvariantViolation(f"v*Sv has imaginary part {q.imag.norm():.3g}")
    return q.w / n2


def weighted_mean_oracle(t: Sequence[float], x: Sequence) -> float:
    """``sum t_j |x_j|^2 / sum |x_j|^2`` for quaternion coordinates ``x_j``."""
    if len(t) != len(x):
        raise ValueError("t and x must have equal lengths")
    w = np.array([Quaternion.coerce(q).norm2() for q in x])
    total = w.sum()
    if total == 0.0:
        raise ZeroVector("all coordinates are zero")
    return float(np.dot(np.asarray(t, dtype=float), w) / total)


def gradient(s: QMatrix, v: QVector) -> QVector:
    """``(2 / |v|^2) (S v - v R(S, v))``, the Euclidean gradient of ``R(S, .)`` on R^{4n}."""
    r = rayleigh_quotient(s, v)
    return (apply(s, v) - v * r) * (2.0 / v.norm2())


def _criticality_tol(s: QMatrix) -> float:
    return 1e-8 * (1.0 + s.frobenius())


def hessian_apply(s: QMatrix, v: QVector, w: QVector) -> QVector:
    """``(2 / |v|^2) (S - t I) w`` at a critical point ``v`` with ``t = R(S, v)``."""
    g = gradient(s, v)
    if g.norm() > _criticality_tol(s):
        raise NotCritical(f"gradient norm {g.norm():.3g} at v")
    if abs(float(np.sum(v.data * w.data))) > 1e-10 * v.norm() * max(w.norm(), 1.0):
        raise NotTangent("w is not orthogonal to v")
    t = rayleigh_quotient(s, v)
    return (apply(s, w) - w * t) * (2.0 / v.norm2())


def tangent_basis(v: QVector) -> list[QVector]:
    """Orthonormal basis (over R) of the ``4n - 1`` dimensional tangent space at ``v``."""
    x = v.as_real()
    _, _, vt = np.linalg.svd(x[None, :])
    return [QVector.from_real(row) for row in vt[1:]]


def hessian_eigenvalues(s: QMatrix, v: QVector) -> np.ndarray:
    """Ascending spectrum of the Hessian of ``h`` at the critical point ``v`` (length ``4n - 1``)."""
    basis = tangent_basis(v)
    cols = [hessian_apply(s, v, b).as_real() for b in basis]
    tb = np.array([b.as_real() for b in basis])
    h = tb @ np.array(cols).T
    return np.linalg.eigvalsh(0.5 * (h + h.T))


def critical_index(s: QMatrix, j: int, eig: HermitianEigen | None = None) -> int:
    """Number of eigenvalues strictly below ``t_j`` (1-based ``j``), counted with multiplicity.

    This is the quaternionic count ``sum_{i<j} l_i``; the Hessian of ``h``
    acting on the real tangent space has four times as many negative
    eigenvalues (see :func:`critical_report`).
    """
    eig = eig or hermitian_right_eigen(s)
    if not 1 <= j <= eig.n:
        raise IndexOutOfRange(f"eigen index {j} outside 1..{eig.n}")
    c = eig.cluster_index(j - 1)
    return int(sum(eig.multiplicities[:c]))


@dataclass(frozen=True)
class CriticalReport:
    point: QVector
    value: float
    gradient_norm: float
    critical: bool
    index: int | None = None
    index_quaternionic: int | None = None
    hessian_eigs: tuple[float, ...] = ()

    def to_dict(self) -> dict:
        return {
            "point": [list(map(float, q)) for q in self.point.data],
            "value": self.value,
            "gradient_norm": self.gradient_norm,
            "critical": self.critical,
            "index": self.index,
            "index_quaternionic": self.index_quaternionic,
            "hessian_eigs": list(self.hessian_eigs),
        }


def critical_report(s: QMatrix, v: QVector, tol: float | None = None) -> CriticalReport:
    """Value, gradient and (at critical points) Hessian data of ``h`` at ``v / |v|``.

    ``index`` counts negative Hessian eigenvalues on the real tangent space;
    ``index_quaternionic`` is that count divided by four, the number of
    eigenvalues of ``S`` below the critical value.
    """
    if v.norm2() == 0.0:
        raise ZeroVector("zero vector")
    u = v.normalized()
    value = rayleigh_quotient(s, u)
    gnorm = gradient(s, u).norm()
    tol = _criticality_tol(s) if tol is None else tol
    if gnorm > tol:
        return CriticalReport(u, value, gnorm, False)
    eigs = hessian_eigenvalues(s, u)
    thresh = 1e-7 * (1.0 + s.frobenius())
    neg = int(np.sum(eigs < -thresh))
    return CriticalReport(u, value, gnorm, True, neg, neg // 4, tuple(float(e) for e in eigs))


# --------------------------------------------------------------------------
# min-max

def subspace_extremes(s: QMatrix, e: Subspace) -> tuple[float, float]:
    """``(m_E, M_E)``: min and max of ``R(S, .)`` over nonzero vectors of ``E``.

    Computed exactly as the extreme eigenvalues of the compression
    ``B* S B`` with ``B`` the orthonormal basis matrix of ``E``.
    """
    _check_hermitian(s)
    if e.dim == 0:
        raise EmptySubspace("subspace has dimension 0")
    b = e.matrix()
    t = b.adjoint() @ s @ b
    t = QMatrix(0.5 * (t.data + t.adjoint().data))
    vals = hermitian_right_eigen(t).values
    return vals[0], vals[-1]


def random_subspace(n: int, k: int, rng: np.random.Generator) -> Subspace:
    """Span of ``k`` vectors with iid Gaussian quaternion entries."""
    while True:
        sub = gram_schmidt([QVector(rng.standard_normal((n, 4))) for _ in range(k)])
        if sub.dim == k:
            return sub


@dataclass(frozen=True)
class MinMaxReport:
    k: int
    trials: int
    seed: int
    t_k: float
    t_n_minus_k_plus_1: float
    min_upper: float
    max_lower: float
    violations: int
    attained_upper: float
    attained_lower: float
    tol: float

    @property
    def equality_attained(self) -> bool:
        return abs(self.attained_upper - self.t_k) <= self.tol and abs(
            self.attained_lower - self.t_n_minus_k_plus_1
        ) <= self.tol

    @property
    def holds(self) -> bool:
        return self.violations == 0 and self.equality_attained

    def to_dict(self) -> dict:
        d = asdict(self)
        d["equality_attained"] = self.equality_attained
        d["holds"] = self.holds
        return d


def minmax_verify(
    s: QMatrix, k: int, trials: int = 200, seed: int = 0, tol: float = 1e-8, eq_tol: float = 1e-9
) -> MinMaxReport:
    """Sample ``trials`` random ``k``-dimensional subspaces and test both min-max bounds.

    Every sample must satisfy ``M_E >= t_k - tol`` and ``m_E <= t_{n-k+1} + tol``;
    the eigenbasis subspaces ``span(u_1..u_k)`` and ``span(u_{n-k+1}..u_n)``
    must attain ``t_k`` and ``t_{n-k+1}`` within ``eq_tol``.
    """
    eig = hermitian_right_eigen(s)
    n = eig.n
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"k={k} outside 1..{n}")
    tk, tnk = eig.values[k - 1], eig.values[n - k]
    rng = np.random.default_rng(np.random.SeedSequence([seed, k]))
    min_upper, max_lower = np.inf, -np.inf
    violations = 0
    for _ in range(trials):
        lo, hi = subspace_extremes(s, random_subspace(n, k, rng))
        min_upper = min(min_upper, hi)
        max_lower = max(max_lower, lo)
        if hi < tk - tol or lo > tnk + tol:
            violations += 1
    low_span = Subspace(n, eig.basis.basis[:k])
    high_span = Subspace(n, eig.basis.basis[n - k :])
    attained_upper = subspace_extremes(s, low_span)[1]
    attained_lower = subspace_extremes(s, high_span)[0]
    return MinMaxReport(
        k, trials, seed, tk, tnk, float(min_upper), float(max_lower), violations, attained_upper, attained_lower, eq_tol
    )


# --------------------------------------------------------------------------
# sphere averages

def shard_rng(seed: int, shard: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, shard]))


def sphere_samples(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """``m`` uniform points of ``S^{4n-1}`` as rows of an ``(m, 4n)`` real array."""
    g = rng.standard_normal((m, 4 * n))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def sphere_sample(n: int, rng: np.random.Generator) -> QVector:
    """One uniform unit vector of H^n (normalized Gaussian)."""
    return QVector.from_real(sphere_samples(n, 1, rng)[0])


@dataclass
class _Moments:
    """Count, mean and central power sums M2..M4, mergeable across shards."""

    count: int = 0
    mean: float = 0.0
    m2: float = 0.0
    m3: float = 0.0
    m4: float = 0.0

    @classmethod
    def of(cls, x: np.ndarray) -> _Moments:
        mean = float(np.mean(x))
        d = x - mean
        d2 = d * d
        return cls(len(x), mean, float(d2.sum()), float((d2 * d).sum()), float((d2 * d2).sum()))

    def merge(self, o: _Moments) -> _Moments:
        if self.count == 0:
            return o
        if o.count == 0:
            return self
        na, nb = self.count, o.count
        n = na + nb
        d = o.mean - self.mean
        mean = self.mean + d * nb / n
        m2 = self.m2 + o.m2 + d * d * na * nb / n
        m3 = self.m3 + o.m3 + d**3 * na * nb * (na - nb) / n**2 + 3.0 * d * (na * o.m2 - nb * self.m2) / n
        m4 = (
            self.m4
            + o.m4
            + d**4 * na * nb * (na * na - na * nb + nb * nb) / n**3
            + 6.0 * d * d * (na * na * o.m2 + nb * nb * self.m2) / n**2
            + 4.0 * d * (na * o.m3 - nb * self.m3) / n
        )
        return _Moments(n, mean, m2, m3, m4)

    @property
    def variance(self) -> float:
        return self.m2 / self.count

    @property
    def stderr_mean(self) -> float:
        return float(np.sqrt(self.m2 / max(self.count - 1, 1) / self.count))

    @property
    def stderr_variance(self) -> float:
        m2 = self.m2 / self.count
        m4 = self.m4 / self.count
        return float(np.sqrt(max(m4 - m2 * m2, 0.0) / self.count))


def _shard_sizes(samples: int, shard_size: int) -> list[int]:
    full, rest = divmod(samples, shard_size)
    return [shard_size] * full + ([rest] if rest else [])


def _run_shards(fn, samples: int, workers: int, shard_size: int) -> list:
    sizes = _shard_sizes(samples, shard_size)
    jobs = list(enumerate(sizes))
    if workers <= 1:
        return [fn(i, m) for i, m in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda a: fn(*a), jobs))


@dataclass(frozen=True)
class MomentReport:
    n: int
    samples: int
    seed: int
    mean_estimate: float
    second_central_estimate: float
    exact_mean: float
    exact_second_central: float
    stderr_mean: float
    stderr_second_central: float
    eigenvalues: tuple[float, ...] = field(default=())

    @property
    def mean_z(self) -> float:
        return _zscore(self.mean_estimate, self.exact_mean, self.stderr_mean)

    @property
    def second_central_z(self) -> float:
        return _zscore(self.second_central_estimate, self.exact_second_central, self.stderr_second_central)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["eigenvalues"] = list(self.eigenvalues)
        d["mean_z"] = self.mean_z
        d["second_central_z"] = self.second_central_z
        return d


def _zscore(est: float, exact: float, se: float) -> float:
    diff = abs(est - exact)
    if se == 0.0:
        return 0.0 if diff <= 1e-12 * max(1.0, abs(exact)) else float("inf")
    return diff / se


def moments(
    s: QMatrix, samples: int = 1_000_000, seed: int = 42, workers: int = 1, shard_size: int = SHARD_SIZE
) -> MomentReport:
    """Monte-Carlo mean and second central moment of ``h`` over ``S^{4n-1}``.

    Exact targets: ``Trace(S) / n`` for the mean and ``sigma^2 / (2n + 1)``
    for the second central moment, ``sigma^2`` being the population variance
    of the eigenvalues of ``S``.
    """
    _check_hermitian(s)
    if samples < 1000:
        raise ValueError("moments needs at least 1000 samples")
    n = s.rows
    real = s.as_real()
    real = 0.5 * (real + real.T)

    def shard(i: int, m: int) -> _Moments:
        x = sphere_samples(n, m, shard_rng(seed, i))
        h = np.einsum("ij,ij->i", x, x @ real)
        return _Moments.of(h)

    acc = _Moments()
    for part in _run_shards(shard, samples, workers, shard_size):
        acc = acc.merge(part)
    t = np.array(hermitian_right_eigen(s).values)
    return MomentReport(
        n=n,
        samples=samples,
        seed=seed,
        mean_estimate=acc.mean,
        second_central_estimate=acc.variance,
        exact_mean=float(t.mean()),
        exact_second_central=float(t.var() / (2 * n + 1)),
        stderr_mean=acc.stderr_mean,
        stderr_second_central=acc.stderr_variance,
        eigenvalues=tuple(float(x) for x in t),
    )


@dataclass(frozen=True)
class SphereMomentReport:
    dim: int
    samples: int
    seed: int
    estimates: dict
    stderrs: dict
    exact: dict

    def zscores(self) -> dict:
        return {k: _zscore(self.estimates[k], self.exact[k], self.stderrs[k]) for k in self.exact}

    def to_dict(self) -> dict:
        d = asdict(self)
        d["zscores"] = self.zscores()
        return d


def sphere_coordinate_moments(
    dim: int, samples: int = 1_000_000, seed: int = 42, workers: int = 1, shard_size: int = SHARD_SIZE
) -> SphereMomentReport:
    """Averages of ``u_1^2``, ``u_1^4`` and ``u_1^2 u_2^2`` over the unit sphere of R^dim."""
    if dim < 2:
        raise ValueError("dim must be at least 2")

    def shard(i: int, m: int):
        rng = shard_rng(seed, i)
        g = rng.standard_normal((m, dim))
        u = g / np.linalg.norm(g, axis=1, keepdims=True)
        u1, u2 = u[:, 0] ** 2, u[:, 1] ** 2
        return _Moments.of(u1), _Moments.of(u1 * u1), _Moments.of(u1 * u2)

    accs = [_Moments(), _Moments(), _Moments()]
    for parts in _run_shards(shard, samples, workers, shard_size):
        accs = [a.merge(p) for a, p in zip(accs, parts)]
    keys = ("u1^2", "u1^4", "u1^2 u2^2")
    nn = dim * (dim + 2)
    return SphereMomentReport(
        dim,
        samples,
        seed,
        {k: a.mean for k, a in zip(keys, accs)},
        {k: a.stderr_mean for k, a in zip(keys, accs)},
        {"u1^2": 1.0 / dim, "u1^4": 3.0 / nn, "u1^2 u2^2": 1.0 / nn},
    )
